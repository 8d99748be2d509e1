#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rigidcoh/tate.hpp"

namespace rigidcoh {

/// An equivariant finite-index inclusion J: Y ↪ Ȳ, the cocharacter shadow of
/// a torus S with finite central Z and S̄ = S/Z. Vectors "in Ȳ" are Ȳ-coordinates.
class IsogenyPair {
public:
    explicit IsogenyPair(EquivariantMap inclusion)
        : inclusion_(std::move(inclusion)), cokernel_(inclusion_) {
        image_ = SubLattice::span(inclusion_.matrix().transpose());
        norm_bar_ = norm_matrix(ybar());
    }

    /// Y realized as a Γ-stable full-rank sublattice of Ȳ.
    static IsogenyPair from_sublattice(const GaloisLattice& ybar, const SubLattice& y) {
        require(y.rank() == ybar.rank(), ErrorCode::InfiniteQuotient, "sublattice does not have full rank");
        return IsogenyPair(EquivariantMap(ybar.restrict_to(y), ybar, y.basis().transpose()));
    }

    /// Z = 1.
    static IsogenyPair trivial_center(const GaloisLattice& y) { return IsogenyPair(EquivariantMap::identity(y)); }

    const EquivariantMap& inclusion() const noexcept { return inclusion_; }
    const GaloisLattice& y() const noexcept { return inclusion_.source(); }
    const GaloisLattice& ybar() const noexcept { return inclusion_.target(); }
    const IntMatrix& matrix() const noexcept { return inclusion_.matrix(); }
    const FiniteGaloisModule& cokernel() const noexcept { return cokernel_; }
    const FiniteGroup& group() const noexcept { return y().group(); }
    std::size_t rank() const noexcept { return y().rank(); }
    Integer index() const { return cokernel_.order(); }

    /// J·Y inside Ȳ.
    const SubLattice& image() const noexcept { return image_; }
    const IntMatrix& norm_bar() const noexcept { return norm_bar_; }

    /// Y-coordinates of a vector of J·Y.
    Vector to_y(std::span<const Integer> ybar_vector) const {
        auto sol = integral_solve(matrix(), IntMatrix::from_columns({Vector(ybar_vector.begin(), ybar_vector.end())},
                                                                   rank()));
        require(sol.has_value(), ErrorCode::NotContained, "vector does not lie in the image of Y");
        return sol->column(0);
    }

private:
    EquivariantMap inclusion_;
    FiniteGaloisModule cokernel_;
    SubLattice image_;
    IntMatrix norm_bar_;
};

/// A representative λ̄ ∈ Ȳ with N λ̄ = 0.
class RigidClass {
public:
    RigidClass(const IsogenyPair& pair, Vector representative) : representative_(std::move(representative)) {
        require(representative_.size() == pair.rank(), ErrorCode::DimensionMismatch, "representative has wrong length");
        require(is_zero(pair.norm_bar().apply(representative_)), ErrorCode::NormNonzero,
                "representative is not in the norm kernel");
    }

    const Vector& representative() const noexcept { return representative_; }

private:
    Vector representative_;
};

/// Ȳᴺ / IY.
inline FinAbGroup rigid_h1_torus(const IsogenyPair& pair) {
    return subquotient(kernel_basis(pair.norm_bar()), augmentation_sublattice(pair.y()).image(pair.matrix()));
}

/// H¹(F, S) at this level, realized as Ĥ⁻¹(Γ, Y).
inline FinAbGroup h1_F_torus(const GaloisLattice& y) { return tate_h_neg1(y); }

/// H²(F, S) at this level, realized as Ĥ⁰(Γ, Y).
inline FinAbGroup h2_F_torus(const GaloisLattice& y) { return tate_h0(y); }

/// (Ȳ/Y)ᴺ = {λ̄ : N λ̄ ∈ JY} / JY, in Ȳ-coordinates.
inline FinAbGroup band_group(const IsogenyPair& pair) { return norm_kernel_finite(pair.cokernel()); }

/// Ĥ⁰(Γ, Y) transported into Ȳ by J: J(Yᴳ) / J(NY).
inline FinAbGroup h0_in_ybar(const IsogenyPair& pair) {
    const GaloisLattice& y = pair.y();
    return subquotient(invariants_sublattice(y).image(pair.matrix()),
                       SubLattice::span(norm_matrix(y).transpose()).image(pair.matrix()));
}

inline Vector restriction_to_band(const IsogenyPair& pair, const RigidClass& c) {
    return band_group(pair).class_of(c.representative());
}

/// [λ̄] ↦ [N λ̄] ∈ Yᴳ/NY, returned in the coordinates of tate_h0(Y).
inline Vector transgression(const IsogenyPair& pair, std::span<const Integer> lambda_bar) {
    Vector nl = pair.norm_bar().apply(lambda_bar);
    require(pair.image().contains(nl), ErrorCode::RepresentativeInvalid, "N λ̄ does not lie in Y");
    return tate_h0(pair.y()).class_of(pair.to_y(nl));
}

struct InfresReport {
    FinAbGroup h_neg1_y;  // Ĥ⁻¹(Y)
    FinAbGroup rigid;     // Ȳᴺ/IY
    FinAbGroup band;      // (Ȳ/Y)ᴺ
    FinAbGroup h0_y;      // Yᴳ/NY, transported into Ȳ
    std::optional<GroupHom> inclusion_map, restriction_map, transgression_map;
    bool injective_at_h_neg1 = false;
    bool exact_at_rigid = false;
    bool exact_at_band = false;

    bool passed() const { return injective_at_h_neg1 && exact_at_rigid && exact_at_band; }
};

/// 0 → Ĥ⁻¹(Y) → Ȳᴺ/IY → (Ȳ/Y)ᴺ → Yᴳ/NY with exactness at the three interior terms.
inline InfresReport infres_check(const IsogenyPair& pair) {
    InfresReport r;
    r.h_neg1_y = tate_h_neg1(pair.y());
    r.rigid = rigid_h1_torus(pair);
    r.band = band_group(pair);
    r.h0_y = h0_in_ybar(pair);
    r.inclusion_map = GroupHom::induced(r.h_neg1_y, r.rigid, pair.matrix());
    r.restriction_map = GroupHom::induced(r.rigid, r.band, IntMatrix::identity(pair.rank()));
    r.transgression_map = GroupHom::induced(r.band, r.h0_y, pair.norm_bar());
    r.injective_at_h_neg1 = r.inclusion_map->is_injective();
    r.exact_at_rigid = exact_at(*r.inclusion_map, *r.restriction_map);
    r.exact_at_band = exact_at(*r.restriction_map, *r.transgression_map);
    return r;
}

/// A commuting square f_Ȳ ∘ J₁ = J₂ ∘ f_Y of equivariant maps.
class PairMorphism {
public:
    PairMorphism(IsogenyPair source, IsogenyPair target, IntMatrix on_y, IntMatrix on_ybar)
        : source_(std::move(source)), target_(std::move(target)),
          on_y_(source_.y(), target_.y(), std::move(on_y)), on_ybar_(source_.ybar(), target_.ybar(), std::move(on_ybar)) {
        require(on_ybar_.matrix() * source_.matrix() == target_.matrix() * on_y_.matrix(), ErrorCode::NotEquivariant,
                "square of lattice maps does not commute");
    }

    const IsogenyPair& source() const noexcept { return source_; }
    const IsogenyPair& target() const noexcept { return target_; }
    const IntMatrix& on_y() const noexcept { return on_y_.matrix(); }
    const IntMatrix& on_ybar() const noexcept { return on_ybar_.matrix(); }

    friend PairMorphism compose(const PairMorphism& g, const PairMorphism& f) {
        return PairMorphism(f.source_, g.target_, g.on_y() * f.on_y(), g.on_ybar() * f.on_ybar());
    }

private:
    IsogenyPair source_;
    IsogenyPair target_;
    EquivariantMap on_y_;
    EquivariantMap on_ybar_;
};

inline RigidClass induced_class_map(const PairMorphism& f, const RigidClass& c) {
    return RigidClass(f.target(), f.on_ybar().apply(c.representative()));
}

inline GroupHom induced_rigid_h1(const PairMorphism& f) {
    return GroupHom::induced(rigid_h1_torus(f.source()), rigid_h1_torus(f.target()), f.on_ybar());
}

} // namespace rigidcoh
