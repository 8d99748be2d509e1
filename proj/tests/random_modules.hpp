#pragma once

// Seeded generators of Galois lattices, finite modules and isogeny data for
// property tests.

#include <random>
#include <vector>

#include "rigidcoh/tori.hpp"

namespace rigidcoh::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// ℤ[Γ/H]₀, the kernel of the coefficient sum on a permutation module.
inline GaloisLattice augmentation_module(const GaloisLattice& perm) {
    IntMatrix ones(1, perm.rank());
    for (std::size_t j = 0; j < perm.rank(); ++j) ones(0, j) = 1;
    return perm.restrict_to(kernel_basis(ones));
}

/// A random unimodular matrix built from elementary operations.
inline IntMatrix random_unimodular(Rng& rng, std::size_t n, int steps = 6) {
    IntMatrix p = IntMatrix::identity(n);
    if (n < 2) return p;
    for (int s = 0; s < steps; ++s) {
        std::size_t i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 1);
        if (i == j) continue;
        p.add_row_multiple(i, j, Integer(uniform(rng, -2, 2)));
    }
    return p;
}

/// A Γ-stable sublattice of full rank: the orbit span of a few random
/// vectors plus c·ℤʳ.
inline SubLattice random_stable_sublattice(Rng& rng, const GaloisLattice& m, long c) {
    const std::size_t r = m.rank();
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < r; ++i) {
        Vector e(r, Integer(0));
        e[i] = c;
        gens.push_back(e);
    }
    int nvec = static_cast<int>(uniform(rng, 0, 2));
    for (int k = 0; k < nvec; ++k) {
        Vector v(r);
        for (auto& x : v) x = uniform(rng, -2, 2);
        for (const auto& a : m.actions()) gens.push_back(a.apply(v));
    }
    return SubLattice::span(gens, r);
}

/// A random lattice assembled from permutation, augmentation and dual
/// summands, then passed to a stable sublattice and re-based.
inline GaloisLattice random_lattice(Rng& rng, const GroupPtr& g, std::size_t max_rank) {
    const FiniteGroup& grp = *g;
    std::vector<GaloisLattice> parts;
    std::size_t rank = 0;
    for (int attempt = 0; attempt < 8 && rank < max_rank; ++attempt) {
        std::vector<std::size_t> sub;
        if (uniform(rng, 0, 2) > 0) sub.push_back(uniform(rng, 0, grp.order() - 1));
        if (uniform(rng, 0, 3) == 0) sub.push_back(uniform(rng, 0, grp.order() - 1));
        GaloisLattice perm = GaloisLattice::permutation(g, sub);
        GaloisLattice piece = perm;
        switch (uniform(rng, 0, 3)) {
        case 0: break;
        case 1:
            if (perm.rank() > 1) piece = augmentation_module(perm);
            break;
        case 2:
            if (perm.rank() > 1) piece = augmentation_module(perm).dual();
            break;
        default: piece = GaloisLattice::trivial(g, 1); break;
        }
        if (piece.rank() == 0 || rank + piece.rank() > max_rank) continue;
        rank += piece.rank();
        parts.push_back(piece);
    }
    if (parts.empty()) parts.push_back(GaloisLattice::trivial(g, 1));
    GaloisLattice m = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) m = direct_sum(m, parts[i]);
    if (uniform(rng, 0, 1) == 1) m = m.restrict_to(random_stable_sublattice(rng, m, uniform(rng, 1, 3)));
    return m.change_basis(random_unimodular(rng, m.rank()));
}

/// A finite module L/S with |L/S| ≤ max_order, or nullopt if sampling failed.
inline std::optional<FiniteGaloisModule> random_finite_module(Rng& rng, const GroupPtr& g, std::size_t max_rank,
                                                              const Integer& max_order) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        GaloisLattice l = random_lattice(rng, g, max_rank);
        SubLattice s = random_stable_sublattice(rng, l, uniform(rng, 2, 4));
        FiniteGaloisModule q = FiniteGaloisModule::quotient(l, s);
        if (q.order() <= max_order && q.order() > 1) return q;
    }
    return std::nullopt;
}

/// Y ⊆ Ȳ with Ȳ random and Y a random stable sublattice of index ≤ max_index.
inline IsogenyPair random_pair(Rng& rng, const GroupPtr& g, std::size_t max_rank, const Integer& max_index) {
    for (;;) {
        GaloisLattice ybar = random_lattice(rng, g, max_rank);
        SubLattice y = uniform(rng, 0, 4) == 0 ? SubLattice::full(ybar.rank())
                                               : random_stable_sublattice(rng, ybar, uniform(rng, 1, 3));
        IsogenyPair p = IsogenyPair::from_sublattice(ybar, y);
        if (p.index() <= max_index) return p;
    }
}

} // namespace rigidcoh::testing
