#pragma once

#include <vector>

#include "rigidcoh/exact_lattice.hpp"

namespace rigidcoh {

/// A homomorphism ℤⁿ → ℚ/ℤ given by its values on the basis.
class TorsionCharacter {
public:
    TorsionCharacter() = default;
    explicit TorsionCharacter(std::vector<QModZ> values) : values_(std::move(values)) {}

    static TorsionCharacter zero(std::size_t n) { return TorsionCharacter(std::vector<QModZ>(n)); }

    std::size_t rank() const noexcept { return values_.size(); }
    const std::vector<QModZ>& values() const noexcept { return values_; }

    QModZ operator()(std::span<const Integer> v) const {
        require(v.size() == values_.size(), ErrorCode::DimensionMismatch, "character evaluated on vector of wrong length");
        QModZ s;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) s = s + v[i] * values_[i];
        return s;
    }

    /// χ ∘ M for M: ℤᵐ → ℤⁿ (acting on column vectors).
    TorsionCharacter pullback(const IntMatrix& m) const {
        require(m.rows() == values_.size(), ErrorCode::DimensionMismatch, "pullback along matrix of wrong shape");
        std::vector<QModZ> out;
        for (std::size_t j = 0; j < m.cols(); ++j) out.push_back((*this)(m.column(j)));
        return TorsionCharacter(std::move(out));
    }

    bool vanishes_on(const SubLattice& s) const {
        for (std::size_t i = 0; i < s.rank(); ++i)
            if (!(*this)(s.basis().row(i)).is_zero()) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& v : values_)
            if (!v.is_zero()) return false;
        return true;
    }

    /// lcm of the value orders.
    Integer order() const {
        Integer o = 1;
        for (const auto& v : values_) mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), v.order().get_mpz_t());
        return o;
    }

    friend TorsionCharacter operator+(const TorsionCharacter& a, const TorsionCharacter& b) {
        require(a.rank() == b.rank(), ErrorCode::DimensionMismatch, "sum of characters on different lattices");
        std::vector<QModZ> out;
        for (std::size_t i = 0; i < a.rank(); ++i) out.push_back(a.values_[i] + b.values_[i]);
        return TorsionCharacter(std::move(out));
    }

    friend TorsionCharacter operator*(const Integer& k, const TorsionCharacter& a) {
        std::vector<QModZ> out;
        for (const auto& v : a.values_) out.push_back(k * v);
        return TorsionCharacter(std::move(out));
    }

    friend bool operator==(const TorsionCharacter& a, const TorsionCharacter& b) { return a.values_ == b.values_; }

private:
    std::vector<QModZ> values_;
};

/// Characters of ℤⁿ vanishing on D whose restrictions to the torsion of ℤⁿ/D
/// form the dual basis of its invariant-factor decomposition.
inline std::vector<TorsionCharacter> quotient_characters(const SubLattice& d) {
    const std::size_t n = d.ambient_rank();
    std::vector<TorsionCharacter> out;
    if (d.rank() == 0) return out;
    SmithForm snf = smith_normal_form(d.basis());
    // y ∈ D ⇔ (yV)_i ∈ d_i ℤ for i < rank D and (yV)_i = 0 beyond.
    for (std::size_t i = 0; i < d.rank(); ++i) {
        const Integer& di = snf.D(i, i);
        if (di == 1) continue;
        std::vector<QModZ> vals;
        for (std::size_t k = 0; k < n; ++k) vals.push_back(QModZ(snf.V(k, i), di));
        out.emplace_back(std::move(vals));
    }
    return out;
}

/// Some t with t ∘ M = s, for M square and nonsingular: t = s·M⁻¹ computed on
/// the representatives of s in [0, 1).
inline TorsionCharacter extend_character(const TorsionCharacter& s, const IntMatrix& m) {
    require(m.is_square() && m.rows() == s.rank(), ErrorCode::DimensionMismatch, "extension along matrix of wrong shape");
    auto inv = rational_inverse(m);
    std::vector<QModZ> out;
    for (std::size_t k = 0; k < m.rows(); ++k) {
        Rational v = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) v += s.values()[i].value() * inv[i][k];
        out.emplace_back(v);
    }
    return TorsionCharacter(std::move(out));
}

} // namespace rigidcoh
