#pragma once

#include <cstddef>
#include <vector>

#include "rigidcoh/galois_lattice.hpp"

namespace rigidcoh {

// Cochains f: Γ → M are stored as one vector of length |Γ|·rank, the value
// f(σ) occupying the block starting at σ·rank. Chains for H₁ use the same
// layout.

inline IntMatrix norm_matrix(const GaloisLattice& m) {
    IntMatrix n(m.rank(), m.rank());
    for (const auto& a : m.actions()) n = n + a;
    return n;
}

namespace detail {

/// Rows (A_s − 1) for each generator s, stacked: x ↦ ((s−1)x)_s.
inline IntMatrix generator_differences(const GaloisLattice& m) {
    const auto& gens = m.group().generators();
    const std::size_t r = m.rank();
    IntMatrix out(gens.size() * r, r);
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const IntMatrix& a = m.action(gens[k]);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) out(k * r + i, j) = a(i, j) - (i == j ? 1 : 0);
    }
    return out;
}

/// Direct sum of `copies` copies of a sublattice of ℤʳ.
inline SubLattice repeated(const SubLattice& s, std::size_t copies) {
    const std::size_t r = s.ambient_rank();
    IntMatrix b(copies * s.rank(), copies * r);
    for (std::size_t c = 0; c < copies; ++c)
        for (std::size_t i = 0; i < s.rank(); ++i)
            for (std::size_t j = 0; j < r; ++j) b(c * s.rank() + i, c * r + j) = s.basis()(i, j);
    return SubLattice::span(b);
}

/// Cocycle defect f ↦ (f(σs) − f(σ) − σ·f(s)) over σ ∈ Γ and generators s.
/// Its vanishing on generators is equivalent to the full cocycle identity.
inline IntMatrix cocycle_matrix(const GaloisLattice& m) {
    const FiniteGroup& g = m.group();
    const auto& gens = g.generators();
    const std::size_t r = m.rank(), n = g.order();
    IntMatrix c(n * gens.size() * r, n * r);
    for (std::size_t sigma = 0; sigma < n; ++sigma)
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const std::size_t s = gens[k];
            const std::size_t row0 = (sigma * gens.size() + k) * r;
            const std::size_t prod = g.mul(sigma, s);
            const IntMatrix& a = m.action(sigma);
            for (std::size_t i = 0; i < r; ++i) {
                c(row0 + i, prod * r + i) += 1;
                c(row0 + i, sigma * r + i) -= 1;
                for (std::size_t j = 0; j < r; ++j) c(row0 + i, s * r + j) -= a(i, j);
            }
        }
    return c;
}

/// Coboundaries m ↦ (σm − m)_σ as a sublattice of cochain space.
inline SubLattice coboundaries(const GaloisLattice& m) {
    const std::size_t r = m.rank(), n = m.group().order();
    IntMatrix b(r, n * r);  // row j: coboundary of e_j
    for (std::size_t sigma = 0; sigma < n; ++sigma)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) b(j, sigma * r + i) = m.action(sigma)(i, j) - (i == j ? 1 : 0);
    return SubLattice::span(b);
}

inline IntMatrix repeat_block(const IntMatrix& f, std::size_t copies) {
    return block_diagonal(std::vector<IntMatrix>(copies, f));
}

} // namespace detail

/// IM, the span of (σ − 1)M.
inline SubLattice augmentation_sublattice(const GaloisLattice& m) {
    const std::size_t r = m.rank();
    const auto& gens = m.group().generators();
    IntMatrix cols(gens.size() * r, r);  // row k·r + j: (s_k − 1)e_j
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < r; ++i)
                cols(k * r + j, i) = m.action(gens[k])(i, j) - (i == j ? 1 : 0);
    return SubLattice::span(cols);
}

/// Mᴳ, saturated.
inline SubLattice invariants_sublattice(const GaloisLattice& m) {
    if (m.group().generators().empty()) return SubLattice::full(m.rank());
    return kernel_basis(detail::generator_differences(m));
}

/// Ĥ⁰(Γ, M) = Mᴳ / NM.
inline FinAbGroup tate_h0(const GaloisLattice& m) {
    return subquotient(invariants_sublattice(m), SubLattice::span(norm_matrix(m).transpose()));
}

/// Ĥ⁻¹(Γ, M) = ker N / IM.
inline FinAbGroup tate_h_neg1(const GaloisLattice& m) {
    return subquotient(kernel_basis(norm_matrix(m)), augmentation_sublattice(m));
}

/// H¹(Γ, M) as cocycles modulo coboundaries in cochain space.
inline FinAbGroup h1_lattice(const GaloisLattice& m) {
    const std::size_t dim = m.group().order() * m.rank();
    SubLattice z = m.group().generators().empty() ? SubLattice::zero(dim) : kernel_basis(detail::cocycle_matrix(m));
    return subquotient(z, detail::coboundaries(m));
}

/// H¹(Γ, Q) for a finite module, in cochain space of the covering lattice.
inline FinAbGroup h1_finite(const FiniteGaloisModule& q) {
    const GaloisLattice& l = q.lattice();
    const std::size_t n = l.group().order(), ngens = l.group().generators().size();
    SubLattice rel_cochains = detail::repeated(q.relations(), n);
    SubLattice z = ngens == 0 ? rel_cochains
                              : preimage(detail::cocycle_matrix(l), detail::repeated(q.relations(), n * ngens));
    return subquotient(z, detail::coboundaries(l) + rel_cochains);
}

/// Ĥ⁻²(Γ, Q) = H₁(Γ, Q) from the bar complex, with Q made a right module by
/// m·g = g⁻¹m: d₁(m[g]) = m·g − m, d₂(m[g|h]) = (m·g)[h] − m[gh] + m[g].
inline FinAbGroup tate_h_neg2_finite(const FiniteGaloisModule& q) {
    const GaloisLattice& l = q.lattice();
    const FiniteGroup& g = l.group();
    const std::size_t r = l.rank(), n = g.order();

    IntMatrix d1(r, n * r);
    for (std::size_t x = 0; x < n; ++x) {
        const IntMatrix& a = l.action(g.inverse(x));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) d1(i, x * r + j) = a(i, j) - (i == j ? 1 : 0);
    }
    SubLattice rel_chains = detail::repeated(q.relations(), n);
    SubLattice cycles = preimage(d1, q.relations());

    // Boundaries of e_j[x|y]; those with x = 1 or y = 1 reduce to e_j[1].
    std::vector<Vector> gens;
    gens.reserve(n * n * r);
    for (std::size_t j = 0; j < r; ++j) {
        Vector v(n * r, Integer(0));
        v[j] = 1;
        gens.push_back(std::move(v));
    }
    for (std::size_t x = 1; x < n; ++x) {
        const IntMatrix& a = l.action(g.inverse(x));
        for (std::size_t y = 1; y < n; ++y)
            for (std::size_t j = 0; j < r; ++j) {
                Vector v(n * r, Integer(0));
                for (std::size_t i = 0; i < r; ++i) v[y * r + i] += a(i, j);
                v[g.mul(x, y) * r + j] -= 1;
                v[x * r + j] += 1;
                gens.push_back(std::move(v));
            }
    }
    IntMatrix bmat = rel_chains.basis().stack(IntMatrix::from_rows(gens, n * r));
    return subquotient(cycles, SubLattice::span(bmat));
}

/// Hom(Q, ℚ/ℤ) = Ext¹(Q, ℤ) with σ·χ = χ ∘ σ⁻¹, presented by Pᵀ between dual lattices.
inline FiniteGaloisModule dual_module(const FiniteGaloisModule& q) {
    const EquivariantMap& p = q.presentation();
    return FiniteGaloisModule(EquivariantMap(p.target().dual(), p.source().dual(), p.matrix().transpose()));
}

/// Qᴳ for a finite module.
inline FinAbGroup invariants_finite(const FiniteGaloisModule& q) {
    const GaloisLattice& l = q.lattice();
    const std::size_t ngens = l.group().generators().size();
    if (ngens == 0) return q.as_group();
    SubLattice fixed = preimage(detail::generator_differences(l), detail::repeated(q.relations(), ngens));
    return subquotient(fixed, q.relations());
}

/// {q ∈ Q : Nq = 0}.
inline FinAbGroup norm_kernel_finite(const FiniteGaloisModule& q) {
    return subquotient(preimage(norm_matrix(q.lattice()), q.relations()), q.relations());
}

// Functoriality. An equivariant map of lattices, or a map of finite modules
// given on covering lattices, induces homomorphisms on each group above.

inline GroupHom induced_tate_h0(const EquivariantMap& f) {
    return GroupHom::induced(tate_h0(f.source()), tate_h0(f.target()), f.matrix());
}

inline GroupHom induced_tate_h_neg1(const EquivariantMap& f) {
    return GroupHom::induced(tate_h_neg1(f.source()), tate_h_neg1(f.target()), f.matrix());
}

inline GroupHom induced_h1_lattice(const EquivariantMap& f) {
    return GroupHom::induced(h1_lattice(f.source()), h1_lattice(f.target()),
                             detail::repeat_block(f.matrix(), f.source().group().order()));
}

/// A Γ-map Q₁ → Q₂ given by an equivariant map of covering lattices that
/// carries relations into relations.
class FiniteModuleMap {
public:
    FiniteModuleMap(FiniteGaloisModule source, FiniteGaloisModule target, IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)),
          lift_(source_.lattice(), target_.lattice(), std::move(matrix)) {
        require(target_.relations().contains(source_.relations().image(lift_.matrix())), ErrorCode::NotContained,
                "map does not carry relations into relations");
    }

    const FiniteGaloisModule& source() const noexcept { return source_; }
    const FiniteGaloisModule& target() const noexcept { return target_; }
    const IntMatrix& matrix() const noexcept { return lift_.matrix(); }

private:
    FiniteGaloisModule source_;
    FiniteGaloisModule target_;
    EquivariantMap lift_;
};

inline GroupHom induced_h1_finite(const FiniteModuleMap& f) {
    return GroupHom::induced(h1_finite(f.source()), h1_finite(f.target()),
                             detail::repeat_block(f.matrix(), f.source().group().order()));
}

inline GroupHom induced_tate_h_neg2(const FiniteModuleMap& f) {
    return GroupHom::induced(tate_h_neg2_finite(f.source()), tate_h_neg2_finite(f.target()),
                             detail::repeat_block(f.matrix(), f.source().group().order()));
}

} // namespace rigidcoh
