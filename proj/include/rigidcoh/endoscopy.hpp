#pragma once

#include <string>
#include <vector>

#include "rigidcoh/reductive.hpp"

namespace rigidcoh {

/// Indices of the roots α with s(α^∨) = 0.
inline std::vector<std::size_t> kernel_locus(const RootDatum& rd, const TorsionCharacter& s) {
    require(s.rank() == rd.rank(), ErrorCode::DimensionMismatch, "parameter lives on a lattice of the wrong rank");
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < rd.num_roots(); ++k)
        if (s(rd.coroots()[k]).is_zero()) out.push_back(k);
    return out;
}

namespace detail {

/// Whether Γ maps the root subset to itself.
inline bool is_galois_stable(const RootDatum& rd, const std::vector<std::size_t>& subset) {
    std::vector<bool> in(rd.num_roots(), false);
    for (auto k : subset) in[k] = true;
    for (std::size_t s = 0; s < rd.group().order(); ++s)
        for (auto k : subset)
            if (!in[rd.galois_permutation(s)[k]]) return false;
    return true;
}

/// Root datum on the same lattices whose roots are the given subset of a
/// reflection-stable subsystem. Its simple roots are the indecomposable positive ones.
inline RootDatum subdatum(const RootDatum& rd, const std::vector<std::size_t>& subset, std::string name) {
    std::set<Vector> pos;
    for (auto k : subset)
        if (rd.is_positive(k)) pos.insert(rd.roots()[k]);
    std::vector<Vector> sr, sc;
    for (auto k : subset) {
        if (!rd.is_positive(k)) continue;
        const Vector& a = rd.roots()[k];
        bool decomposable = false;
        for (const auto& b : pos)
            if (b != a && pos.count(sub(a, b))) {
                decomposable = true;
                break;
            }
        if (decomposable) continue;
        sr.push_back(a);
        sc.push_back(rd.coroots()[k]);
    }
    RootDatum h(rd.y_lattice(), sr, sc, std::move(name));
    require(h.num_roots() == subset.size(), ErrorCode::InvalidRootDatum, "retained roots do not form a root subsystem");
    for (const auto& a : h.roots())
        require(rd.find_root(a) != RootDatum::npos, ErrorCode::InvalidRootDatum, "subsystem generated a foreign root");
    return h;
}

} // namespace detail

/// The datum of Ĥ = Z_Ĝ(s)°: coroots with s(α^∨) = 0 and their roots.
inline RootDatum endoscopic_subsystem(const ReductivePair& pair, const TorsionCharacter& s) {
    const RootDatum& rd = pair.datum();
    std::vector<std::size_t> keep = kernel_locus(rd, s);
    require(detail::is_galois_stable(rd, keep), ErrorCode::NotGaloisStable,
            "the coroots killed by s are not preserved by Γ");
    return detail::subdatum(rd, keep, rd.name().empty() ? "" : "endoscopic " + rd.name());
}

/// (pair, ṡ on Ȳ, H). The parameter s on Y is ṡ ∘ J.
class RefinedEndoscopicDatum {
public:
    RefinedEndoscopicDatum(ReductivePair pair, TorsionCharacter s_dot, RootDatum h)
        : pair_(std::move(pair)), s_dot_(std::move(s_dot)), h_(std::move(h)) {
        require(s_dot_.rank() == pair_.rank() && h_.rank() == pair_.rank(), ErrorCode::DimensionMismatch,
                "refined datum components have different ranks");
    }

    const ReductivePair& pair() const noexcept { return pair_; }
    const TorsionCharacter& s_dot() const noexcept { return s_dot_; }
    const RootDatum& h_datum() const noexcept { return h_; }
    TorsionCharacter s() const { return s_dot_.pullback(pair_.center().matrix()); }

private:
    ReductivePair pair_;
    TorsionCharacter s_dot_;
    RootDatum h_;
};

struct RefinedValidation {
    bool coroots_match = false;
    bool galois_stable = false;
    bool plus_condition = false;
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
};

inline RefinedValidation validate_refined(const RefinedEndoscopicDatum& d) {
    RefinedValidation r;
    const RootDatum& rd = d.pair().datum();
    const RootDatum& h = d.h_datum();

    std::vector<std::size_t> expected = kernel_locus(rd, d.s());
    std::set<Vector> want, have(h.coroots().begin(), h.coroots().end());
    for (auto k : expected) want.insert(rd.coroots()[k]);
    r.coroots_match = want == have && h.coroots().size() == have.size();
    if (!r.coroots_match) r.violations.push_back("(a) coroots of H differ from those killed by s");

    r.galois_stable = detail::is_galois_stable(rd, expected);
    if (r.galois_stable)
        for (std::size_t s = 0; s < rd.group().order() && r.galois_stable; ++s)
            for (const auto& c : h.coroots())
                if (!have.count(rd.y_lattice().action(s).apply(c))) {
                    r.galois_stable = false;
                    break;
                }
    if (!r.galois_stable) r.violations.push_back("(b) coroot set of H is not Γ-stable");

    const IsogenyPair& c = d.pair().center();
    r.plus_condition = d.s_dot().vanishes_on(augmentation_sublattice(c.y()).image(c.matrix()));
    if (!r.plus_condition) r.violations.push_back("(c) ṡ ∘ (σ − 1) does not vanish on Y");
    return r;
}

/// Some ṡ on Ȳ with ṡ ∘ J = s.
inline TorsionCharacter lift_to_refined(const ReductivePair& pair, const TorsionCharacter& s) {
    require(s.rank() == pair.rank(), ErrorCode::DimensionMismatch, "parameter lives on a lattice of the wrong rank");
    return extend_character(s, pair.center().matrix());
}

/// Every ṡ with ṡ ∘ J = s: the lift shifted by each character of Ȳ/Y.
inline std::vector<TorsionCharacter> all_lifts(const ReductivePair& pair, const TorsionCharacter& s) {
    TorsionCharacter base = lift_to_refined(pair, s);
    std::vector<TorsionCharacter> basis = quotient_characters(pair.center().image());
    std::vector<TorsionCharacter> out{base};
    for (const auto& chi : basis) {
        std::vector<TorsionCharacter> next;
        for (const auto& t : out)
            for (Integer k = 0; k < chi.order(); ++k) next.push_back(t + k * chi);
        out = std::move(next);
    }
    return out;
}

/// inv(δ, δ̇′) supplied as a rigid class on [Z → S].
class InvariantClass {
public:
    InvariantClass(IsogenyPair pair, const Vector& representative)
        : pair_(std::move(pair)), class_(pair_, representative) {}

    const IsogenyPair& torus_pair() const noexcept { return pair_; }
    const RigidClass& rigid_class() const noexcept { return class_; }
    const Vector& representative() const noexcept { return class_.representative(); }

private:
    IsogenyPair pair_;
    RigidClass class_;
};

/// ⟨inv, ṡ⟩⁻¹ written additively: −ṡ(representative).
inline QModZ transfer_pairing_term(const InvariantClass& inv, const TorsionCharacter& s_dot) {
    const IsogenyPair& p = inv.torus_pair();
    require(s_dot.rank() == p.rank(), ErrorCode::DimensionMismatch, "character lives on a lattice of the wrong rank");
    require(s_dot.vanishes_on(augmentation_sublattice(p.y()).image(p.matrix())), ErrorCode::CharacterNotPlus,
            "ṡ does not vanish on I·X_*(S)");
    return -s_dot(inv.representative());
}

struct EnlargementReport {
    QModZ term_small;
    QModZ term_large;
    bool restriction_matches = false;
    bool equal() const { return restriction_matches && term_small == term_large; }
};

/// K: Ȳ → Ȳ′ with K·J = J′, for Z ⊆ Z′ on the same Y.
inline IntMatrix center_inclusion(const IsogenyPair& small, const IsogenyPair& large) {
    require(small.y() == large.y(), ErrorCode::InvalidArgument, "pairs are built on different tori");
    // Kᵀ from Jᵀ Kᵀ = J′ᵀ.
    auto kt = integral_solve(small.matrix().transpose(), large.matrix().transpose());
    require(kt.has_value(), ErrorCode::NotContained, "Z is not contained in Z′");
    return kt->transpose();
}

/// The image of inv under [Z → S] → [Z′ → S].
inline InvariantClass enlarge_class(const InvariantClass& inv, const IsogenyPair& large) {
    IntMatrix k = center_inclusion(inv.torus_pair(), large);
    PairMorphism m(inv.torus_pair(), large, IntMatrix::identity(large.rank()), k);
    return InvariantClass(large, induced_class_map(m, inv.rigid_class()).representative());
}

/// A preimage s̈ of ṡ: a character on Ȳ′ with s̈ ∘ K = ṡ.
inline TorsionCharacter enlarge_character(const IsogenyPair& small, const IsogenyPair& large, const TorsionCharacter& s_dot) {
    return extend_character(s_dot, center_inclusion(small, large));
}

inline EnlargementReport enlarge_center_invariance(const IsogenyPair& pair_z, const IsogenyPair& pair_zprime,
                                                   const InvariantClass& inv, const TorsionCharacter& s_dot,
                                                   const TorsionCharacter& s_ddot) {
    require(inv.torus_pair().matrix() == pair_z.matrix() && inv.torus_pair().y() == pair_z.y(),
            ErrorCode::InvalidArgument, "class is not defined over the smaller pair");
    EnlargementReport r;
    IntMatrix k = center_inclusion(pair_z, pair_zprime);
    r.restriction_matches = s_ddot.pullback(k) == s_dot;
    r.term_small = transfer_pairing_term(inv, s_dot);
    r.term_large = transfer_pairing_term(enlarge_class(inv, pair_zprime), s_ddot);
    return r;
}

} // namespace rigidcoh
