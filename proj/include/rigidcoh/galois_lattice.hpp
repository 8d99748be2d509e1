#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "rigidcoh/exact_lattice.hpp"
#include "rigidcoh/finite_group.hpp"

namespace rigidcoh {

/// A free ℤ-module of finite rank with a left action of a finite group:
/// action(σ) acts on column vectors.
class GaloisLattice {
public:
    GaloisLattice() : group_(make_group(FiniteGroup())), rank_(0), action_{IntMatrix(0, 0)} {}

    /// Validates identity, the homomorphism law and unimodularity.
    GaloisLattice(GroupPtr group, std::size_t rank, std::vector<IntMatrix> action)
        : group_(std::move(group)), rank_(rank), action_(std::move(action)) {
        const FiniteGroup& g = *group_;
        require(action_.size() == g.order(), ErrorCode::InvalidAction, "need one action matrix per group element");
        for (const auto& a : action_)
            require(a.rows() == rank_ && a.cols() == rank_, ErrorCode::InvalidAction, "action matrix has wrong shape");
        require(action_[0] == IntMatrix::identity(rank_), ErrorCode::InvalidAction, "identity does not act trivially");
        for (std::size_t s = 0; s < g.order(); ++s)
            for (std::size_t t = 0; t < g.order(); ++t)
                require(action_[g.mul(s, t)] == action_[s] * action_[t], ErrorCode::InvalidAction,
                        "action is not a homomorphism");
    }

    static GaloisLattice trivial(GroupPtr g, std::size_t rank) {
        std::vector<IntMatrix> act(g->order(), IntMatrix::identity(rank));
        return GaloisLattice(std::move(g), rank, std::move(act));
    }

    /// ℤ[Γ/H] with basis the left cosets of H (the whole group gives ℤ[Γ]).
    static GaloisLattice permutation(GroupPtr g, const std::vector<std::size_t>& subgroup) {
        auto cosets = g->left_cosets(g->closure(subgroup));
        std::vector<std::size_t> which(g->order());
        for (std::size_t i = 0; i < cosets.size(); ++i)
            for (auto x : cosets[i]) which[x] = i;
        const std::size_t k = cosets.size();
        std::vector<IntMatrix> act;
        for (std::size_t s = 0; s < g->order(); ++s) {
            IntMatrix m(k, k);
            for (std::size_t i = 0; i < k; ++i) m(which[g->mul(s, cosets[i].front())], i) = 1;
            act.push_back(std::move(m));
        }
        return GaloisLattice(std::move(g), k, std::move(act));
    }

    /// The regular module ℤ[Γ], basis e_τ with σ·e_τ = e_{στ}.
    static GaloisLattice regular(GroupPtr g) { return permutation(std::move(g), {}); }

    /// Extends matrices given on the group's generating set to a full action.
    static GaloisLattice from_generators(GroupPtr g, std::size_t rank, const std::map<std::size_t, IntMatrix>& gens) {
        std::vector<IntMatrix> act(g->order());
        std::vector<bool> known(g->order(), false);
        act[0] = IntMatrix::identity(rank);
        known[0] = true;
        std::vector<std::size_t> frontier{0};
        for (std::size_t k = 0; k < frontier.size(); ++k)
            for (const auto& [s, m] : gens) {
                require(s < g->order(), ErrorCode::InvalidAction, "generator index out of range");
                require(m.rows() == rank && m.cols() == rank, ErrorCode::InvalidAction, "generator matrix has wrong shape");
                std::size_t x = g->mul(s, frontier[k]);
                if (known[x]) continue;
                act[x] = m * act[frontier[k]];
                known[x] = true;
                frontier.push_back(x);
            }
        require(frontier.size() == g->order(), ErrorCode::InvalidAction, "given elements do not generate the group");
        return GaloisLattice(std::move(g), rank, std::move(act));
    }

    const GroupPtr& group_ptr() const noexcept { return group_; }
    const FiniteGroup& group() const noexcept { return *group_; }
    std::size_t rank() const noexcept { return rank_; }
    const IntMatrix& action(std::size_t sigma) const { return action_[sigma]; }
    const std::vector<IntMatrix>& actions() const noexcept { return action_; }

    bool is_stable(const SubLattice& s) const {
        for (auto g : group_->generators())
            if (!s.contains(s.image(action_[g]))) return false;
        return true;
    }

    /// The action restricted to a Γ-stable sublattice, in the coordinates of its basis.
    GaloisLattice restrict_to(const SubLattice& s) const {
        require(s.ambient_rank() == rank_, ErrorCode::DimensionMismatch, "sublattice ambient mismatch");
        std::vector<IntMatrix> act;
        for (const auto& a : action_) {
            IntMatrix m(s.rank(), s.rank());
            for (std::size_t j = 0; j < s.rank(); ++j) {
                auto c = s.coordinates(a.apply(s.basis().row(j)));
                require(c.has_value(), ErrorCode::NotEquivariant, "sublattice is not Γ-stable");
                for (std::size_t i = 0; i < s.rank(); ++i) m(i, j) = (*c)[i];
            }
            act.push_back(std::move(m));
        }
        return GaloisLattice(group_, s.rank(), std::move(act));
    }

    /// The same module in a new basis: columns of `p` give the new basis vectors.
    GaloisLattice change_basis(const IntMatrix& p) const {
        require(is_unimodular(p) && p.rows() == rank_, ErrorCode::InvalidArgument, "change of basis is not unimodular");
        IntMatrix pinv = unimodular_inverse(p);
        std::vector<IntMatrix> act;
        for (const auto& a : action_) act.push_back(pinv * a * p);
        return GaloisLattice(group_, rank_, std::move(act));
    }

    /// Contragredient action (A_{σ⁻¹})ᵀ on the dual lattice.
    GaloisLattice dual() const {
        std::vector<IntMatrix> act;
        for (std::size_t s = 0; s < group_->order(); ++s) act.push_back(action_[group_->inverse(s)].transpose());
        return GaloisLattice(group_, rank_, std::move(act));
    }

    friend GaloisLattice direct_sum(const GaloisLattice& a, const GaloisLattice& b) {
        require(*a.group_ == *b.group_, ErrorCode::InvalidArgument, "direct sum over different groups");
        std::vector<IntMatrix> act;
        for (std::size_t s = 0; s < a.group_->order(); ++s) act.push_back(block_diagonal({a.action_[s], b.action_[s]}));
        return GaloisLattice(a.group_, a.rank_ + b.rank_, std::move(act));
    }

    friend bool operator==(const GaloisLattice& a, const GaloisLattice& b) {
        return *a.group_ == *b.group_ && a.action_ == b.action_;
    }

private:
    GroupPtr group_;
    std::size_t rank_;
    std::vector<IntMatrix> action_;
};

inline void require_same_group(const GaloisLattice& a, const GaloisLattice& b) {
    require(a.group_ptr() == b.group_ptr() || a.group() == b.group(), ErrorCode::InvalidArgument,
            "lattices carry actions of different groups");
}

/// A Γ-equivariant linear map source → target (matrix acts on column vectors).
class EquivariantMap {
public:
    EquivariantMap(GaloisLattice source, GaloisLattice target, IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
        require_same_group(source_, target_);
        require(matrix_.rows() == target_.rank() && matrix_.cols() == source_.rank(), ErrorCode::DimensionMismatch,
                "equivariant map has wrong shape");
        for (std::size_t s = 0; s < source_.group().order(); ++s)
            require(matrix_ * source_.action(s) == target_.action(s) * matrix_, ErrorCode::NotEquivariant,
                    "map does not commute with the action");
    }

    static EquivariantMap identity(const GaloisLattice& m) { return EquivariantMap(m, m, IntMatrix::identity(m.rank())); }

    const GaloisLattice& source() const noexcept { return source_; }
    const GaloisLattice& target() const noexcept { return target_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    friend EquivariantMap compose(const EquivariantMap& g, const EquivariantMap& f) {
        require(f.target_ == g.source_, ErrorCode::DimensionMismatch, "composition of incompatible maps");
        return EquivariantMap(f.source_, g.target_, g.matrix_ * f.matrix_);
    }

private:
    GaloisLattice source_;
    GaloisLattice target_;
    IntMatrix matrix_;
};

/// The finite Γ-module coker(P) for an injective equivariant P: L' → L
/// between lattices of equal rank.
class FiniteGaloisModule {
public:
    explicit FiniteGaloisModule(EquivariantMap presentation) : presentation_(std::move(presentation)) {
        const IntMatrix& p = presentation_.matrix();
        require(p.is_square() && determinant(p) != 0, ErrorCode::NotInjective,
                "presentation must be injective with finite cokernel");
        relations_ = SubLattice::span(p.transpose());
    }

    /// L / S for a Γ-stable full-rank sublattice S of L.
    static FiniteGaloisModule quotient(const GaloisLattice& l, const SubLattice& s) {
        require(s.rank() == l.rank(), ErrorCode::InfiniteQuotient, "sublattice does not have full rank");
        return FiniteGaloisModule(EquivariantMap(l.restrict_to(s), l, s.basis().transpose()));
    }

    /// ℤ/n ⊗ L.
    static FiniteGaloisModule reduction(const GaloisLattice& l, const Integer& n) {
        require(n >= 1, ErrorCode::InvalidArgument, "modulus must be positive");
        return FiniteGaloisModule(EquivariantMap(l, l, n * IntMatrix::identity(l.rank())));
    }

    const EquivariantMap& presentation() const noexcept { return presentation_; }
    const GaloisLattice& lattice() const noexcept { return presentation_.target(); }
    const FiniteGroup& group() const noexcept { return lattice().group(); }
    std::size_t rank() const noexcept { return lattice().rank(); }

    /// The relation lattice P(L') ⊆ L.
    const SubLattice& relations() const noexcept { return relations_; }

    /// The underlying finite abelian group L / P(L').
    FinAbGroup as_group() const { return subquotient(SubLattice::full(rank()), relations_); }
    Integer order() const { return abs(determinant(presentation_.matrix())); }

private:
    EquivariantMap presentation_;
    SubLattice relations_;
};

} // namespace rigidcoh
