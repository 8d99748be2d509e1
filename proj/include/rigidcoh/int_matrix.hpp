#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rigidcoh/error.hpp"

namespace rigidcoh {

using Integer = mpz_class;
using Rational = mpq_class;
using Vector = std::vector<Integer>;

inline Vector zero_vector(std::size_t n) { return Vector(n, Integer(0)); }

inline bool is_zero(std::span<const Integer> v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline Vector add(std::span<const Integer> a, std::span<const Integer> b) {
    Vector r(a.begin(), a.end());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Vector sub(std::span<const Integer> a, std::span<const Integer> b) {
    Vector r(a.begin(), a.end());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vector scale(std::span<const Integer> a, const Integer& c) {
    Vector r(a.begin(), a.end());
    for (auto& x : r) x *= c;
    return r;
}

inline Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Dense integer matrix, row-major. Maps act on column vectors from the left;
/// lattice bases are stored as rows.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        require(data_.size() == rows_ * cols_, ErrorCode::DimensionMismatch, "entries length differs from rows*cols");
    }
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            require(r.size() == cols_, ErrorCode::DimensionMismatch, "ragged matrix literal");
            for (long x : r) data_.emplace_back(x);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix diagonal(std::span<const Integer> d) {
        IntMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static IntMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == cols, ErrorCode::DimensionMismatch, "row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix from_columns(const std::vector<Vector>& cols, std::size_t rows) {
        IntMatrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            require(cols[j].size() == rows, ErrorCode::DimensionMismatch, "column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    const std::vector<Integer>& entries() const noexcept { return data_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

    Vector row_vector(std::size_t i) const { return Vector(row(i).begin(), row(i).end()); }
    Vector column(std::size_t j) const {
        Vector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    std::vector<Vector> row_list() const {
        std::vector<Vector> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
        return out;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const { return rigidcoh::is_zero(data_); }

    /// M·v for a column vector v.
    Vector apply(std::span<const Integer> v) const {
        require(v.size() == cols_, ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
        Vector out(rows_, Integer(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            Integer s = 0;
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    /// Rows stacked on top of each other; column counts must agree.
    IntMatrix stack(const IntMatrix& below) const {
        require(cols_ == below.cols_ || rows_ == 0 || below.rows_ == 0, ErrorCode::DimensionMismatch,
                "stack: column mismatch");
        std::size_t c = rows_ ? cols_ : below.cols_;
        IntMatrix m(rows_ + below.rows_, c);
        std::copy(data_.begin(), data_.end(), m.data_.begin());
        std::copy(below.data_.begin(), below.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
        return m;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += c * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& c) {
        if (c == 0) return;
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(src, j) != 0) (*this)(dst, j) += c * (*this)(src, j);
    }
    /// col[dst] += c * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& c) {
        if (c == 0) return;
        for (std::size_t i = 0; i < rows_; ++i)
            if ((*this)(i, src) != 0) (*this)(i, dst) += c * (*this)(i, src);
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }
    void negate_col(std::size_t j) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        require(a.cols_ == b.rows_, ErrorCode::DimensionMismatch, "matrix product size mismatch");
        IntMatrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorCode::DimensionMismatch, "matrix sum size mismatch");
        IntMatrix m = a;
        for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
        return m;
    }
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorCode::DimensionMismatch, "matrix difference size mismatch");
        IntMatrix m = a;
        for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
        return m;
    }
    friend IntMatrix operator*(const Integer& c, const IntMatrix& a) {
        IntMatrix m = a;
        for (auto& x : m.data_) x *= c;
        return m;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j).get_str();
            os << ']';
        }
        return os << ']';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const IntMatrix& a) {
    require(a.is_square(), ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& a) {
    if (!a.is_square()) return false;
    Integer d = determinant(a);
    return d == 1 || d == -1;
}

/// Block-diagonal sum of square or rectangular blocks.
inline IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    IntMatrix m(r, c);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m(ro + i, co + j) = b(i, j);
        ro += b.rows();
        co += b.cols();
    }
    return m;
}

inline std::string to_string(std::span<const Integer> v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + "]";
}

/// Floor division with nonnegative remainder for positive divisor.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer mod_nonneg(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Rounded division: the quotient q minimizing |a - q·b|.
inline Integer round_div(const Integer& a, const Integer& b) {
    Integer q = floor_div(a, b);
    Integer r = a - q * b;
    Integer twice = 2 * r;
    if (b > 0 ? twice > b : twice < b) q += 1;
    return q;
}

} // namespace rigidcoh
