#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigidcoh/root_datum.hpp"
#include "rigidcoh/tori.hpp"
#include "rigidcoh/torsion_character.hpp"

namespace rigidcoh {

/// [Z → G] anchored at the distinguished maximal torus S: the datum of G and
/// the pair Y = X_*(S) ↪ Ȳ = X_*(S/Z). Every root must be integral on Ȳ.
class ReductivePair {
public:
    ReductivePair(RootDatum datum, IsogenyPair center) : datum_(std::move(datum)), center_(std::move(center)) {
        require(center_.y() == datum_.y_lattice(), ErrorCode::InvalidArgument,
                "center pair is not built on the cocharacter lattice of the datum");
        IntMatrix jt = center_.matrix().transpose();
        for (const auto& a : datum_.roots())
            require(integral_solve(jt, IntMatrix::from_columns({a}, a.size())).has_value(), ErrorCode::InvalidArgument,
                    "a root is not integral on Ȳ, so Z is not central");
        ysc_bar_ = coroot_sublattice(datum_).image(center_.matrix());
    }

    static ReductivePair trivial_center(RootDatum datum) {
        IsogenyPair p = IsogenyPair::trivial_center(datum.y_lattice());
        return ReductivePair(std::move(datum), std::move(p));
    }

    /// Ȳ = Y + Σ ℤ·gᵢ for rational cocharacters gᵢ ∈ Y ⊗ ℚ.
    static ReductivePair with_center(RootDatum datum, const std::vector<std::vector<Rational>>& generators) {
        const std::size_t n = datum.rank();
        Integer d = 1;
        for (const auto& g : generators) {
            require(g.size() == n, ErrorCode::DimensionMismatch, "center generator has wrong length");
            for (const auto& x : g) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
        }
        std::vector<Vector> rows;
        for (std::size_t i = 0; i < n; ++i) {
            Vector e(n, Integer(0));
            e[i] = d;
            rows.push_back(e);
        }
        for (const auto& g : generators) {
            Vector v;
            for (const auto& x : g) {
                Rational s = x * d;
                v.push_back(s.get_num());
            }
            rows.push_back(v);
        }
        SubLattice scaled = SubLattice::span(rows, n);
        const GaloisLattice& y = datum.y_lattice();
        require(y.is_stable(scaled), ErrorCode::NotGaloisStable, "center cocharacters are not Γ-stable");
        GaloisLattice ybar = y.restrict_to(scaled);
        IntMatrix j(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            auto c = scaled.coordinates(rows[i]);
            for (std::size_t k = 0; k < n; ++k) j(k, i) = (*c)[k];
        }
        IsogenyPair p(EquivariantMap(y, std::move(ybar), std::move(j)));
        return ReductivePair(std::move(datum), std::move(p));
    }

    /// Z = Z(G) for semisimple G: Ȳ is the coweight lattice.
    static ReductivePair full_center(RootDatum datum) {
        require(datum.is_semisimple(), ErrorCode::InvalidArgument, "full center is infinite for a non-semisimple group");
        const std::size_t n = datum.rank();
        if (n == 0) return trivial_center(std::move(datum));
        std::vector<Vector> simple;
        for (auto i : datum.simple_indices()) simple.push_back(datum.roots()[i]);
        auto inv = rational_inverse(IntMatrix::from_rows(simple, n));
        std::vector<std::vector<Rational>> gens(n, std::vector<Rational>(n));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) gens[j][i] = inv[i][j];
        return with_center(std::move(datum), gens);
    }

    const RootDatum& datum() const noexcept { return datum_; }
    const IsogenyPair& center() const noexcept { return center_; }
    std::size_t rank() const noexcept { return datum_.rank(); }

    /// J·Y_sc inside Ȳ.
    const SubLattice& coroots_in_ybar() const noexcept { return ysc_bar_; }

    /// J·IY + J·Y_sc inside Ȳ.
    SubLattice dual_center_denominator() const {
        return augmentation_sublattice(center_.y()).image(center_.matrix()) + ysc_bar_;
    }

    /// {λ̄ : N λ̄ ∈ J·Y_sc}.
    SubLattice norm_kernel_mod_coroots() const { return preimage(center_.norm_bar(), ysc_bar_); }

private:
    RootDatum datum_;
    IsogenyPair center_;
    SubLattice ysc_bar_;
};

/// [Ȳ/Y_sc]ᴺ / I(Y/Y_sc), with class_of on Ȳ-representatives.
inline FinAbGroup rigid_h1_reductive(const ReductivePair& pair) {
    return subquotient(pair.norm_kernel_mod_coroots(), pair.dual_center_denominator());
}

/// Torsion of Ȳ/(IY + Y_sc).
inline FinAbGroup component_group_dual_center(const ReductivePair& pair) {
    SubLattice d = pair.dual_center_denominator();
    return subquotient(saturation(d), d);
}

/// Characters of Ȳ vanishing on IY + Y_sc whose restrictions to the
/// torsion subgroup form the dual basis of component_group_dual_center.
inline std::vector<TorsionCharacter> component_group_characters(const ReductivePair& pair) {
    return quotient_characters(pair.dual_center_denominator());
}

/// χ(c) for c ∈ [Ȳ/Y_sc]ᴺ and χ trivial on IY + Y_sc.
inline QModZ tn_pairing(const ReductivePair& pair, std::span<const Integer> c, const TorsionCharacter& chi) {
    require(c.size() == pair.rank() && chi.rank() == pair.rank(), ErrorCode::DimensionMismatch,
            "class or character has wrong length");
    require(pair.norm_kernel_mod_coroots().contains(c), ErrorCode::NormNonzero,
            "representative is not in the norm kernel modulo coroots");
    require(chi.vanishes_on(pair.dual_center_denominator()), ErrorCode::CharacterNotPlus,
            "character does not vanish on IY + Y_sc");
    return chi(c);
}

struct PerfectnessReport {
    FinAbGroup rigid;
    FinAbGroup component;
    std::vector<TorsionCharacter> characters;
    /// matrix[a][i] = ⟨generator a of rigid, character i⟩.
    std::vector<std::vector<QModZ>> matrix;
    bool injective = false;
    bool orders_equal = false;
    bool perfect() const { return injective && orders_equal; }
};

/// The pairing matrix and whether rigid_h1 → Hom(π₀, ℚ/ℤ) is an isomorphism.
inline PerfectnessReport pairing_perfectness(const ReductivePair& pair) {
    PerfectnessReport r;
    r.rigid = rigid_h1_reductive(pair);
    r.component = component_group_dual_center(pair);
    r.characters = component_group_characters(pair);
    std::vector<Integer> orders;
    for (const auto& chi : r.characters) orders.push_back(chi.order());
    FinAbGroup dual = FinAbGroup::standard(orders);
    IntMatrix m(r.characters.size(), r.rigid.ngens());
    for (std::size_t a = 0; a < r.rigid.ngens(); ++a) {
        std::vector<QModZ> row;
        for (std::size_t i = 0; i < r.characters.size(); ++i) {
            QModZ v = tn_pairing(pair, r.rigid.generator_lifts()[a], r.characters[i]);
            row.push_back(v);
            Rational scaled = v.value() * Rational(orders[i]);
            m(i, a) = scaled.get_num();
        }
        r.matrix.push_back(std::move(row));
    }
    GroupHom h(r.rigid, dual, std::move(m));
    r.injective = h.is_injective();
    r.orders_equal = r.rigid.order() == r.component.order() && dual.order() == r.component.order();
    return r;
}

struct WeylTrivialityReport {
    std::size_t weyl_elements = 0;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

/// w·λ̄ − λ̄ ∈ J·Y_sc for every w (or every simple reflection) and every basis vector of Ȳ.
inline WeylTrivialityReport weyl_quotient_triviality(const ReductivePair& pair, bool simple_only = false) {
    WeylTrivialityReport r;
    const RootDatum& rd = pair.datum();
    const IntMatrix& j = pair.center().matrix();
    const std::size_t n = rd.rank();
    std::vector<IntMatrix> elements;
    if (simple_only)
        for (auto i : rd.simple_indices()) elements.push_back(rd.reflection(i));
    else elements = rd.weyl_group();
    r.weyl_elements = elements.size();
    for (std::size_t e = 0; e < elements.size(); ++e) {
        // Ȳ-coordinates: X = J w J⁻¹, found from Jᵀ Xᵀ = (J w)ᵀ.
        auto xt = integral_solve(j.transpose(), (j * elements[e]).transpose());
        if (!xt) {
            r.failures.push_back("element " + std::to_string(e) + " does not preserve Ȳ");
            continue;
        }
        IntMatrix d = xt->transpose() - IntMatrix::identity(n);
        for (std::size_t k = 0; k < n; ++k) {
            ++r.checks;
            if (!pair.coroots_in_ybar().contains(d.column(k)))
                r.failures.push_back("element " + std::to_string(e) + " moves generator " + std::to_string(k) +
                                     " outside the coroot lattice");
        }
    }
    return r;
}

/// Ȳᴺ/IY → [Ȳ/Y_sc]ᴺ / I(Y/Y_sc), the identity on representatives.
inline GroupHom torus_to_reductive(const ReductivePair& pair) {
    return GroupHom::induced(rigid_h1_torus(pair.center()), rigid_h1_reductive(pair), IntMatrix::identity(pair.rank()));
}

// ---------------------------------------------------------------------------
// Catalogue

struct CatalogueEntry {
    std::string name;
    ReductivePair pair;
    bool simply_connected = false;
    bool elliptic = false;
    /// Z ∈ {1, Z(G)}; false for Z = 1.
    bool full_center = false;
};

namespace detail {

/// Exponent of coweights modulo coroots.
inline Integer fundamental_exponent(const IntMatrix& cartan) {
    SmithForm s = smith_normal_form(cartan);
    Integer e = 1;
    for (const auto& d : s.diagonal()) mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), d.get_mpz_t());
    return e;
}

inline void add_both_centers(std::vector<CatalogueEntry>& out, const std::string& name, const RootDatum& rd,
                             bool sc, bool elliptic) {
    out.push_back({name + " Z=1", ReductivePair::trivial_center(rd), sc, elliptic, false});
    out.push_back({name + " Z=full", ReductivePair::full_center(rd), sc, elliptic, true});
}

} // namespace detail

/// Split, quasi-split and elliptic forms of SL₂₋₄, PGL₂₋₃, Sp₄, outer A₂/A₃
/// and triality D₄, each with Z = 1 and Z = Z(G). Split forms use Γ = ℤ/m
/// with m the exponent of the fundamental group.
inline std::vector<CatalogueEntry> reductive_catalogue() {
    struct Type {
        std::string label;
        char type;
        std::size_t n;
        IsogenyForm form;
    };
    const std::vector<Type> types = {
        {"SL2", 'A', 1, IsogenyForm::SimplyConnected}, {"SL3", 'A', 2, IsogenyForm::SimplyConnected},
        {"SL4", 'A', 3, IsogenyForm::SimplyConnected}, {"PGL2", 'A', 1, IsogenyForm::Adjoint},
        {"PGL3", 'A', 2, IsogenyForm::Adjoint},        {"Sp4", 'C', 2, IsogenyForm::SimplyConnected},
        {"Spin8", 'D', 4, IsogenyForm::SimplyConnected},
    };
    std::vector<CatalogueEntry> out;
    for (const auto& t : types) {
        const bool sc = t.form == IsogenyForm::SimplyConnected;
        IntMatrix cartan = cartan_matrix(t.type, t.n);
        const Integer m = detail::fundamental_exponent(cartan);

        auto split_group = make_group(FiniteGroup::cyclic(m.get_ui()));
        RootDatum split = from_cartan(cartan, t.form, split_group, t.label);
        detail::add_both_centers(out, t.label + " split", split, sc, false);

        // Elliptic Coxeter twist: Γ = ℤ/h generated by s₁⋯s_r.
        RootDatum base = from_cartan(cartan, t.form, make_group(FiniteGroup()), t.label);
        std::vector<std::size_t> word = base.simple_indices();
        IntMatrix cox = weyl_word(base, word);
        std::size_t h = 1;
        for (IntMatrix p = cox; p != IntMatrix::identity(t.n); p = p * cox) ++h;
        auto cg = make_group(FiniteGroup::cyclic(h));
        detail::add_both_centers(out, t.label + " coxeter",
                                 base.with_action(GaloisLattice::from_generators(cg, t.n, {{1, cox}})), sc, true);

        // Diagram automorphisms and −1 = w₀θ.
        auto c2 = make_group(FiniteGroup::cyclic(2));
        IntMatrix w0 = longest_element(base);
        std::optional<IntMatrix> theta;
        if (t.type == 'A' && t.n >= 2) {
            std::vector<std::size_t> pi(t.n);
            for (std::size_t i = 0; i < t.n; ++i) pi[i] = t.n - 1 - i;
            theta = diagram_matrix(pi);
            std::string outer = t.label + " outer";
            detail::add_both_centers(out, outer, base.with_action(GaloisLattice::from_generators(c2, t.n, {{1, *theta}})),
                                     sc, false);
        }
        if (t.type == 'D') {
            auto c3 = make_group(FiniteGroup::cyclic(3));
            IntMatrix tri = diagram_matrix({2, 1, 3, 0});
            detail::add_both_centers(out, t.label + " triality",
                                     base.with_action(GaloisLattice::from_generators(c3, t.n, {{1, tri}})), sc, false);
        }
        IntMatrix minus = theta ? w0 * *theta : w0;
        detail::add_both_centers(out, t.label + " minus-one",
                                 base.with_action(GaloisLattice::from_generators(c2, t.n, {{1, minus}})), sc, true);
    }
    return out;
}

} // namespace rigidcoh
