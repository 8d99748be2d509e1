#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rigidcoh/normal_form.hpp"

namespace rigidcoh {

/// A subgroup of ℤⁿ stored by its canonical (Hermite) basis. Two SubLattices
/// compare equal exactly when they are the same subgroup.
class SubLattice {
public:
    SubLattice() = default;

    explicit SubLattice(std::size_t ambient_rank) : ambient_rank_(ambient_rank), basis_(0, ambient_rank) {}

    /// Span of the rows of `generators` (any rows, dependent or zero allowed).
    static SubLattice span(const IntMatrix& generators) {
        SubLattice s(generators.cols());
        if (generators.rows() == 0) return s;
        HermiteForm h = hermite_form(generators, false);
        s.basis_ = std::move(h.basis);
        s.pivots_ = std::move(h.pivots);
        return s;
    }

    static SubLattice span(const std::vector<Vector>& generators, std::size_t ambient_rank) {
        return span(IntMatrix::from_rows(generators, ambient_rank));
    }

    static SubLattice zero(std::size_t n) { return SubLattice(n); }
    static SubLattice full(std::size_t n) { return span(IntMatrix::identity(n)); }

    std::size_t ambient_rank() const noexcept { return ambient_rank_; }
    std::size_t rank() const noexcept { return basis_.rows(); }
    const IntMatrix& basis() const noexcept { return basis_; }
    Vector basis_vector(std::size_t i) const { return basis_.row_vector(i); }

    /// Coordinates of v in the stored basis, or nullopt when v ∉ the lattice.
    std::optional<Vector> coordinates(std::span<const Integer> v) const {
        require(v.size() == ambient_rank_, ErrorCode::DimensionMismatch, "vector length differs from ambient rank");
        Vector rest(v.begin(), v.end());
        Vector c(rank(), Integer(0));
        for (std::size_t k = 0; k < rank(); ++k) {
            const std::size_t p = pivots_[k];
            if (rest[p] == 0) continue;
            if (!mpz_divisible_p(rest[p].get_mpz_t(), basis_(k, p).get_mpz_t())) return std::nullopt;
            Integer q = rest[p] / basis_(k, p);
            c[k] = q;
            for (std::size_t j = p; j < ambient_rank_; ++j)
                if (basis_(k, j) != 0) rest[j] -= q * basis_(k, j);
        }
        if (!is_zero(rest)) return std::nullopt;
        return c;
    }

    bool contains(std::span<const Integer> v) const { return coordinates(v).has_value(); }

    bool contains(const SubLattice& other) const {
        for (std::size_t i = 0; i < other.rank(); ++i)
            if (!contains(other.basis_.row(i))) return false;
        return true;
    }

    /// Reduce v modulo the lattice: pivot entries land in [0, pivot).
    Vector reduce(std::span<const Integer> v) const {
        Vector out(v.begin(), v.end());
        for (std::size_t k = 0; k < rank(); ++k) {
            const std::size_t p = pivots_[k];
            Integer q = floor_div(out[p], basis_(k, p));
            if (q == 0) continue;
            for (std::size_t j = p; j < ambient_rank_; ++j)
                if (basis_(k, j) != 0) out[j] -= q * basis_(k, j);
        }
        return out;
    }

    friend bool operator==(const SubLattice& a, const SubLattice& b) {
        return a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
    }

    friend SubLattice operator+(const SubLattice& a, const SubLattice& b) {
        require(a.ambient_rank_ == b.ambient_rank_, ErrorCode::DimensionMismatch, "sum of lattices in different ambients");
        return span(a.basis_.stack(b.basis_));
    }

    /// Image under a matrix acting on column vectors.
    SubLattice image(const IntMatrix& m) const {
        require(m.cols() == ambient_rank_, ErrorCode::DimensionMismatch, "image: matrix width differs from ambient rank");
        return span(basis_ * m.transpose());
    }

    SubLattice scaled(const Integer& c) const { return span(c * basis_); }

private:
    std::size_t ambient_rank_ = 0;
    IntMatrix basis_;
    std::vector<std::size_t> pivots_;
};

/// Full integer kernel {v ∈ ℤⁿ : A·v = 0} (always saturated).
inline SubLattice kernel_basis(const IntMatrix& a) {
    const std::size_t n = a.cols();
    if (a.rows() == 0) return SubLattice::full(n);
    HermiteForm h = hermite_form(a.transpose(), true);
    std::vector<Vector> rows;
    for (std::size_t i = h.rank(); i < n; ++i) rows.push_back(h.transform.row_vector(i));
    return SubLattice::span(rows, n);
}

/// {x ∈ ℤⁿ : M·x ∈ L} for M of shape m×n and L ⊆ ℤᵐ.
inline SubLattice preimage(const IntMatrix& m, const SubLattice& l) {
    require(m.rows() == l.ambient_rank(), ErrorCode::DimensionMismatch, "preimage: target ambient mismatch");
    const std::size_t n = m.cols(), k = l.rank();
    IntMatrix joint(m.rows(), n + k);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) joint(i, j) = m(i, j);
        for (std::size_t j = 0; j < k; ++j) joint(i, n + j) = -l.basis()(j, i);
    }
    SubLattice ker = kernel_basis(joint);
    IntMatrix proj(ker.rank(), n);
    for (std::size_t i = 0; i < ker.rank(); ++i)
        for (std::size_t j = 0; j < n; ++j) proj(i, j) = ker.basis()(i, j);
    return SubLattice::span(proj);
}

inline SubLattice intersection(const SubLattice& a, const SubLattice& b) {
    require(a.ambient_rank() == b.ambient_rank(), ErrorCode::DimensionMismatch, "intersection of lattices in different ambients");
    // x = c·A with c·A ∈ B; the preimage is taken in coefficient space.
    SubLattice coeffs = preimage(a.basis().transpose(), b);
    return SubLattice::span(coeffs.basis() * a.basis());
}

/// (ℚ·S) ∩ ℤⁿ.
inline SubLattice saturation(const SubLattice& s) {
    const std::size_t n = s.ambient_rank();
    if (s.rank() == 0) return SubLattice::zero(n);
    SubLattice orth = kernel_basis(s.basis());
    return kernel_basis(orth.basis().rows() ? orth.basis() : IntMatrix(0, n));
}

inline bool is_saturated(const SubLattice& s) { return saturation(s) == s; }

} // namespace rigidcoh
