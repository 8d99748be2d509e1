#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rigidcoh/int_matrix.hpp"

namespace rigidcoh {

/// Row-style Hermite normal form: transform·A = [basis; 0] with transform
/// unimodular, basis in echelon form with positive pivots and entries above
/// each pivot reduced into [0, pivot).
struct HermiteForm {
    IntMatrix basis;
    IntMatrix transform;
    std::vector<std::size_t> pivots;
    std::size_t rank() const noexcept { return pivots.size(); }
};

namespace detail {

inline std::optional<std::size_t> min_abs_in_column(const IntMatrix& a, std::size_t from, std::size_t col) {
    std::optional<std::size_t> best;
    for (std::size_t i = from; i < a.rows(); ++i) {
        if (a(i, col) == 0) continue;
        if (!best || abs(a(i, col)) < abs(a(*best, col))) best = i;
    }
    return best;
}

} // namespace detail

inline HermiteForm hermite_form(const IntMatrix& input, bool with_transform = true) {
    IntMatrix a = input;
    const std::size_t m = a.rows();
    IntMatrix w = with_transform ? IntMatrix::identity(m) : IntMatrix();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < m; ++c) {
        for (;;) {
            auto p = detail::min_abs_in_column(a, r, c);
            if (!p) break;
            a.swap_rows(r, *p);
            if (with_transform) w.swap_rows(r, *p);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (a(i, c) == 0) continue;
                Integer q = round_div(a(i, c), a(r, c));
                a.add_row_multiple(i, r, -q);
                if (with_transform) w.add_row_multiple(i, r, -q);
                if (a(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0) {
            a.negate_row(r);
            if (with_transform) w.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (a(i, c) == 0) continue;
            Integer q = floor_div(a(i, c), a(r, c));
            a.add_row_multiple(i, r, -q);
            if (with_transform) w.add_row_multiple(i, r, -q);
        }
        pivots.push_back(c);
        ++r;
    }
    IntMatrix basis(r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) basis(i, j) = a(i, j);
    return {std::move(basis), std::move(w), std::move(pivots)};
}

/// U·A·V = D with U, V unimodular and D diagonal, d₁ | d₂ | … , nonnegative.
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;

    std::vector<Integer> diagonal() const {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
        return d;
    }
};

namespace detail {

inline bool is_diagonal(const IntMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j && a(i, j) != 0) return false;
    return true;
}

} // namespace detail

/// Alternates row and column Hermite forms until diagonal, then repairs
/// divisibility with 2×2 gcd/lcm steps. Hermite reduction keeps entries small,
/// which plain pivoting does not.
inline SmithForm smith_normal_form(const IntMatrix& input) {
    IntMatrix a = input;
    const std::size_t m = a.rows(), n = a.cols();
    IntMatrix u = IntMatrix::identity(m);
    IntMatrix v = IntMatrix::identity(n);

    for (bool rows = true; !detail::is_diagonal(a); rows = !rows) {
        if (rows) {
            HermiteForm h = hermite_form(a);
            a = IntMatrix(m, n);
            for (std::size_t i = 0; i < h.rank(); ++i)
                for (std::size_t j = 0; j < n; ++j) a(i, j) = h.basis(i, j);
            u = h.transform * u;
        } else {
            HermiteForm h = hermite_form(a.transpose());
            IntMatrix at(n, m);
            for (std::size_t i = 0; i < h.rank(); ++i)
                for (std::size_t j = 0; j < m; ++j) at(i, j) = h.basis(i, j);
            a = at.transpose();
            v = v * h.transform.transpose();
        }
    }
    // The diagonal is now d₀, …, d_{r−1}, 0, … with dᵢ > 0 except possibly a lone 1×1 sign.
    const std::size_t k = std::min(m, n);
    for (std::size_t i = 0; i < k; ++i)
        if (a(i, i) < 0) {
            a.negate_row(i);
            u.negate_row(i);
        }
    for (std::size_t i = 0; i < k; ++i) {
        if (a(i, i) == 0) continue;
        for (std::size_t j = i + 1; j < k; ++j) {
            const Integer x = a(i, i), y = a(j, j);
            if (y == 0 || mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) continue;
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            const Integer xg = x / g, yg = y / g;
            // [[s, t], [−y/g, x/g]] · diag(x, y) · [[1, −t·y/g], [1, s·x/g]] = diag(g, xy/g)
            for (std::size_t c = 0; c < m; ++c) {
                Integer ui = u(i, c), uj = u(j, c);
                u(i, c) = s * ui + t * uj;
                u(j, c) = -yg * ui + xg * uj;
            }
            for (std::size_t r = 0; r < n; ++r) {
                Integer vi = v(r, i), vj = v(r, j);
                v(r, i) = vi + vj;
                v(r, j) = -t * yg * vi + s * xg * vj;
            }
            a(i, i) = g;
            a(j, j) = x * yg;
        }
    }
    // Zeros may sit before nonzeros only if the input had a zero pivot pattern; move them last.
    for (std::size_t i = 0; i < k; ++i) {
        if (a(i, i) != 0) continue;
        for (std::size_t j = i + 1; j < k; ++j)
            if (a(j, j) != 0) {
                a.swap_rows(i, j);
                a.swap_cols(i, j);
                u.swap_rows(i, j);
                v.swap_cols(i, j);
                break;
            }
    }
    return {std::move(u), std::move(a), std::move(v)};
}

/// Integer solution c of c·S = v when S has full row rank; nullopt when v is
/// not in the integer row span of S.
inline std::optional<Vector> solve_row_combination(const IntMatrix& s, std::span<const Integer> v) {
    require(v.size() == s.cols(), ErrorCode::DimensionMismatch, "solve_row_combination: length mismatch");
    HermiteForm h = hermite_form(s, true);
    Vector rest(v.begin(), v.end());
    Vector coeff(h.rank(), Integer(0));
    for (std::size_t k = 0; k < h.rank(); ++k) {
        const std::size_t c = h.pivots[k];
        if (rest[c] == 0) continue;
        if (!mpz_divisible_p(rest[c].get_mpz_t(), h.basis(k, c).get_mpz_t())) return std::nullopt;
        Integer q = rest[c] / h.basis(k, c);
        coeff[k] = q;
        for (std::size_t j = c; j < rest.size(); ++j) rest[j] -= q * h.basis(k, j);
    }
    if (!is_zero(rest)) return std::nullopt;
    // c·S = coeff·H = coeff·(W·S)[top rows]
    Vector out(s.rows(), Integer(0));
    for (std::size_t k = 0; k < h.rank(); ++k) {
        if (coeff[k] == 0) continue;
        for (std::size_t i = 0; i < s.rows(); ++i) out[i] += coeff[k] * h.transform(k, i);
    }
    return out;
}

/// Exact inverse over ℚ of a nonsingular square matrix (Gauss–Jordan).
inline std::vector<std::vector<Rational>> rational_inverse(const IntMatrix& a) {
    require(a.is_square(), ErrorCode::DimensionMismatch, "inverse of non-square matrix");
    const std::size_t n = a.rows();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a(i, j));
        m[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        require(p < n, ErrorCode::InvalidArgument, "matrix is singular");
        std::swap(m[p], m[c]);
        Rational inv = 1 / m[c][c];
        for (auto& x : m[c]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
    return out;
}

/// Inverse of a unimodular matrix, exact over ℤ.
inline IntMatrix unimodular_inverse(const IntMatrix& a) {
    auto r = rational_inverse(a);
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            require(r[i][j].get_den() == 1, ErrorCode::InvalidArgument, "matrix is not unimodular");
            out(i, j) = r[i][j].get_num();
        }
    return out;
}

/// The integer matrix X with A·X = B when it exists (A square, nonsingular).
inline std::optional<IntMatrix> integral_solve(const IntMatrix& a, const IntMatrix& b) {
    auto inv = rational_inverse(a);
    IntMatrix out(a.cols(), b.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Rational s = 0;
            for (std::size_t k = 0; k < a.rows(); ++k) s += inv[i][k] * Rational(b(k, j));
            if (s.get_den() != 1) return std::nullopt;
            out(i, j) = s.get_num();
        }
    return out;
}

} // namespace rigidcoh
