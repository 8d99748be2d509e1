#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "rigidcoh/tori.hpp"

namespace rigidcoh {

/// A finite level (Γ, n) of the band: the character module ℤ/n[Γ]₀.
///
/// The covering lattice ℤ[Γ]₀ has basis f_σ = e_σ − e_1 for σ ≠ 1, so
/// σ·f_τ = f_{στ} − f_σ (with f_1 = 0); the relations are n·ℤ[Γ]₀.
class ULevel {
public:
    ULevel(GroupPtr group, Integer n) : group_(std::move(group)), n_(std::move(n)), module_(build(group_, n_)) {}

    const GroupPtr& group_ptr() const noexcept { return group_; }
    const FiniteGroup& group() const noexcept { return *group_; }
    const Integer& n() const noexcept { return n_; }
    const FiniteGaloisModule& char_module() const noexcept { return module_; }

    /// gcd(n, |Γ|).
    Integer gcd_order() const {
        Integer g;
        Integer order(static_cast<unsigned long>(group_->order()));
        mpz_gcd(g.get_mpz_t(), n_.get_mpz_t(), order.get_mpz_t());
        return g;
    }

    /// Coordinates in ℤ[Γ]₀ of Σ_σ e_σ scaled by n/gcd: the canonical generator of the invariants.
    Vector invariant_generator() const {
        return Vector(group_->order() - 1, Integer(n_ / gcd_order()));
    }

private:
    static FiniteGaloisModule build(const GroupPtr& g, const Integer& n) {
        require(n >= 1, ErrorCode::InvalidArgument, "level n must be positive");
        const std::size_t k = g->order() - 1;
        std::vector<IntMatrix> act;
        for (std::size_t s = 0; s < g->order(); ++s) {
            IntMatrix m(k, k);
            for (std::size_t t = 1; t < g->order(); ++t) {
                std::size_t st = g->mul(s, t);
                if (st != 0) m(st - 1, t - 1) += 1;
                if (s != 0) m(s - 1, t - 1) -= 1;
            }
            act.push_back(std::move(m));
        }
        return FiniteGaloisModule::reduction(GaloisLattice(g, k, std::move(act)), n);
    }

    GroupPtr group_;
    Integer n_;
    FiniteGaloisModule module_;
};

inline ULevel char_module(GroupPtr g, const Integer& n) { return ULevel(std::move(g), n); }

/// Hom_F(u_{E/F,n}, Z) realized as (Ȳ/Y)ᴺ through λ̄ ↦ [x ↦ (nλ̄)(x)].
inline FinAbGroup hom_u_to_Z(const ULevel& level, const IsogenyPair& pair) {
    require(level.group() == pair.group(), ErrorCode::InvalidArgument, "level and pair use different Galois groups");
    Integer e = pair.cokernel().as_group().exponent();
    require(mpz_divisible_p(level.n().get_mpz_t(), e.get_mpz_t()), ErrorCode::ExponentMismatch,
            "n is not a multiple of the exponent of Ȳ/Y");
    return band_group(pair);
}

/// Change of level for fixed Γ is the identity under the realization above.
inline GroupHom hom_u_to_Z_transition(const ULevel& fine, const ULevel& coarse, const IsogenyPair& pair) {
    require(mpz_divisible_p(fine.n().get_mpz_t(), coarse.n().get_mpz_t()), ErrorCode::DivisibilityViolated,
            "coarse n does not divide fine n");
    FinAbGroup a = hom_u_to_Z(coarse, pair);
    FinAbGroup b = hom_u_to_Z(fine, pair);
    return GroupHom::induced(a, b, IntMatrix::identity(pair.rank()));
}

inline GroupHom induced_hom_u_to_Z(const PairMorphism& f) {
    return GroupHom::induced(band_group(f.source()), band_group(f.target()), f.on_ybar());
}

/// H⁰(Γ, X*(u)) computed from the finite module.
inline FinAbGroup u_invariants(const ULevel& level) { return invariants_finite(level.char_module()); }

/// H²(F, u_{E/F,n}) ≅ H⁰(Γ, X*(u))* ≅ ℤ/gcd(n, |Γ|). Element a stands for the
/// character sending the canonical invariant generator to a/gcd.
inline FinAbGroup h2_u_level(const ULevel& level) {
    FinAbGroup inv = u_invariants(level);
    const Integer g = level.gcd_order();
    std::vector<Integer> expected;
    if (g > 1) expected.push_back(g);
    require(inv.invariant_factors() == expected, ErrorCode::FormulaMismatch,
            "invariants of the character module are " + inv.to_string() + ", not cyclic of order " + g.get_str());
    if (g > 1) require(inv.element_order(inv.class_of(level.invariant_generator())) == g, ErrorCode::FormulaMismatch,
                       "canonical invariant element does not generate");
    return FinAbGroup::standard(expected);
}

/// α at this level: −1 in ℤ/gcd(n, |Γ|).
inline Vector alpha_level(const ULevel& level) {
    const Integer g = level.gcd_order();
    if (g == 1) return {};
    return Vector{g - 1};
}

/// The map ℤ/n_c[Γ_c]₀ → ℤ/n_f[Γ_f]₀ on character modules induced by
/// u_f → u_c: [γ] ↦ (n_f/n_c)·Σ_{σ ↦ γ}[σ].
class CharTransition {
public:
    CharTransition(ULevel fine, ULevel coarse, std::vector<std::size_t> quotient_map)
        : fine_(std::move(fine)), coarse_(std::move(coarse)), pi_(std::move(quotient_map)) {
        const FiniteGroup& gf = fine_.group();
        const FiniteGroup& gc = coarse_.group();
        require(mpz_divisible_p(fine_.n().get_mpz_t(), coarse_.n().get_mpz_t()), ErrorCode::DivisibilityViolated,
                "coarse n does not divide fine n");
        require(is_homomorphism(gf, gc, pi_), ErrorCode::InvalidArgument, "quotient map is not a homomorphism");
        require(is_surjective_map(gc, pi_), ErrorCode::NotSurjective, "quotient map is not surjective");

        const Integer scale = fine_.n() / coarse_.n();
        const std::size_t rf = gf.order() - 1, rc = gc.order() - 1;
        matrix_ = IntMatrix(rf, rc);
        for (std::size_t gamma = 1; gamma < gc.order(); ++gamma)
            for (std::size_t sigma = 1; sigma < gf.order(); ++sigma) {
                if (pi_[sigma] == gamma) matrix_(sigma - 1, gamma - 1) += scale;
                if (pi_[sigma] == 0) matrix_(sigma - 1, gamma - 1) -= scale;
            }

        // Relations go to relations, and T(π(σ)x) ≡ σ·T(x) modulo relations.
        const auto& cm = coarse_.char_module();
        const auto& fm = fine_.char_module();
        require(fm.relations().contains(cm.relations().image(matrix_)), ErrorCode::NotEquivariant,
                "transition does not respect relations");
        for (std::size_t sigma = 0; sigma < gf.order(); ++sigma) {
            IntMatrix diff = matrix_ * cm.lattice().action(pi_[sigma]) - fm.lattice().action(sigma) * matrix_;
            for (std::size_t j = 0; j < rc; ++j)
                require(fm.relations().contains(diff.column(j)), ErrorCode::NotEquivariant,
                        "transition is not equivariant");
        }
    }

    const ULevel& fine() const noexcept { return fine_; }
    const ULevel& coarse() const noexcept { return coarse_; }
    const std::vector<std::size_t>& quotient_map() const noexcept { return pi_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

private:
    ULevel fine_;
    ULevel coarse_;
    std::vector<std::size_t> pi_;
    IntMatrix matrix_;
};

inline CharTransition transition_char(const ULevel& fine, const ULevel& coarse, const std::vector<std::size_t>& pi) {
    return CharTransition(fine, coarse, pi);
}

/// H²(u_f) → H²(u_c), the dual of the map on invariants; must be reduction mod gcd.
inline GroupHom transition_h2(const CharTransition& t) {
    const ULevel& f = t.fine();
    const ULevel& c = t.coarse();
    const Integer gf = f.gcd_order(), gc = c.gcd_order();
    FinAbGroup hf = h2_u_level(f), hc = h2_u_level(c);
    if (gc == 1) return GroupHom(hf, hc, IntMatrix(0, hf.ngens()));

    // T(x_c) = k·x_f on the canonical invariant generators.
    FinAbGroup inv_f = u_invariants(f);
    Vector image = inv_f.class_of(t.matrix().apply(c.invariant_generator()));
    Vector xf = inv_f.class_of(f.invariant_generator());
    Integer k = 0;
    for (Integer a = 0; a < gf; ++a)
        if (inv_f.normalize(scale(xf, a)) == image) {
            k = a;
            break;
        }
    // χ_f(x_f) = a/g_f gives (χ_f ∘ T)(x_c) = k·a/g_f, i.e. k·(g_c/g_f)·a in ℤ/g_c.
    Integer num = k * gc;
    require(mpz_divisible_p(num.get_mpz_t(), gf.get_mpz_t()), ErrorCode::FormulaMismatch,
            "transition on invariants is not divisible as expected");
    Integer coeff = mod_nonneg(num / gf, gc);
    require(coeff == mod_nonneg(Integer(1), gc), ErrorCode::FormulaMismatch, "transition is not the natural projection");
    return GroupHom(hf, hc, IntMatrix{{coeff.get_si()}});
}

} // namespace rigidcoh
