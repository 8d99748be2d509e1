#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "rigidcoh/sublattice.hpp"

namespace rigidcoh {

/// A finite abelian group realized as a subquotient B/A of some ℤⁿ, in
/// invariant-factor form d₁ | d₂ | … (factors equal to 1 dropped).
///
/// class_of maps any vector of B to its coordinates modulo the invariant
/// factors; generator_lifts()[i] is a vector of B with class e_i.
class FinAbGroup {
public:
    FinAbGroup() = default;

    static FinAbGroup subquotient(const SubLattice& b, const SubLattice& a) {
        require(a.ambient_rank() == b.ambient_rank(), ErrorCode::DimensionMismatch,
                "subquotient: lattices live in different ambients");
        const std::size_t m = b.rank();
        IntMatrix coords(a.rank(), m);
        for (std::size_t i = 0; i < a.rank(); ++i) {
            auto c = b.coordinates(a.basis().row(i));
            require(c.has_value(), ErrorCode::NotContained, "denominator lattice is not contained in numerator");
            for (std::size_t j = 0; j < m; ++j) coords(i, j) = (*c)[j];
        }
        require(a.rank() == m, ErrorCode::InfiniteQuotient, "denominator has smaller rank than numerator");

        FinAbGroup g;
        g.numerator_ = b;
        g.denominator_ = a;
        SmithForm snf = smith_normal_form(coords);
        g.v_ = snf.V;
        IntMatrix v_inv = unimodular_inverse(snf.V);
        for (std::size_t i = 0; i < m; ++i) {
            const Integer& d = snf.D(i, i);
            if (d == 1) continue;
            g.kept_.push_back(i);
            g.factors_.push_back(d);
            Vector lift(b.ambient_rank(), Integer(0));
            for (std::size_t k = 0; k < m; ++k) {
                if (v_inv(i, k) == 0) continue;
                for (std::size_t j = 0; j < lift.size(); ++j) lift[j] += v_inv(i, k) * b.basis()(k, j);
            }
            g.lifts_.push_back(a.reduce(lift));
        }
        return g;
    }

    /// ℤ/d₁ ⊕ … ⊕ ℤ/d_k on the standard lattice ℤᵏ.
    static FinAbGroup standard(const std::vector<Integer>& factors) {
        const std::size_t k = factors.size();
        IntMatrix rel(k, k);
        for (std::size_t i = 0; i < k; ++i) rel(i, i) = factors[i];
        return subquotient(SubLattice::full(k), SubLattice::span(rel));
    }

    const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
    const std::vector<Vector>& generator_lifts() const noexcept { return lifts_; }
    const SubLattice& numerator() const noexcept { return numerator_; }
    const SubLattice& denominator() const noexcept { return denominator_; }
    std::size_t ambient_rank() const noexcept { return numerator_.ambient_rank(); }
    std::size_t ngens() const noexcept { return factors_.size(); }
    bool is_trivial() const noexcept { return factors_.empty(); }

    Integer order() const {
        Integer o = 1;
        for (const auto& d : factors_) o *= d;
        return o;
    }

    Integer exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

    bool contains(std::span<const Integer> v) const { return numerator_.contains(v); }

    Vector class_of(std::span<const Integer> v) const {
        auto c = numerator_.coordinates(v);
        require(c.has_value(), ErrorCode::NotContained, "vector is not in the numerator lattice");
        Vector out(factors_.size());
        for (std::size_t t = 0; t < kept_.size(); ++t) {
            const std::size_t i = kept_[t];
            Integer y = 0;
            for (std::size_t k = 0; k < c->size(); ++k)
                if ((*c)[k] != 0) y += (*c)[k] * v_(k, i);
            out[t] = mod_nonneg(y, factors_[t]);
        }
        return out;
    }

    /// A lift in the ambient lattice of the element with given coordinates.
    Vector lift(std::span<const Integer> coords) const {
        require(coords.size() == factors_.size(), ErrorCode::DimensionMismatch, "coordinate vector length mismatch");
        Vector out(ambient_rank(), Integer(0));
        for (std::size_t i = 0; i < coords.size(); ++i)
            for (std::size_t j = 0; j < out.size(); ++j) out[j] += coords[i] * lifts_[i][j];
        return denominator_.reduce(out);
    }

    Vector normalize(std::span<const Integer> coords) const {
        Vector out(coords.begin(), coords.end());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod_nonneg(out[i], factors_[i]);
        return out;
    }

    bool is_zero_class(std::span<const Integer> v) const { return rigidcoh::is_zero(class_of(v)); }

    Integer element_order(std::span<const Integer> coords) const {
        Integer o = 1;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            Integer g;
            Integer c = mod_nonneg(coords[i], factors_[i]);
            mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), factors_[i].get_mpz_t());
            Integer oi = factors_[i] / g;
            mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), oi.get_mpz_t());
        }
        return o;
    }

    /// Relations lattice diag(d₁,…,d_k) in coordinate space.
    SubLattice relation_lattice() const {
        IntMatrix rel(factors_.size(), factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i) rel(i, i) = factors_[i];
        return SubLattice::span(rel);
    }

    bool isomorphic_to(const FinAbGroup& other) const { return factors_ == other.factors_; }

    std::string to_string() const {
        if (factors_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) s += " + ";
            s += "Z/" + factors_[i].get_str();
        }
        return s;
    }

private:
    SubLattice numerator_;
    SubLattice denominator_;
    IntMatrix v_;
    std::vector<std::size_t> kept_;
    std::vector<Integer> factors_;
    std::vector<Vector> lifts_;
};

inline FinAbGroup subquotient(const SubLattice& b, const SubLattice& a) { return FinAbGroup::subquotient(b, a); }

/// Homomorphism between finite abelian groups in generator coordinates:
/// column j holds the class of the image of the j-th source generator.
class GroupHom {
public:
    GroupHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
        require(matrix_.rows() == target_.ngens() && matrix_.cols() == source_.ngens(), ErrorCode::DimensionMismatch,
                "homomorphism matrix shape mismatch");
        for (std::size_t j = 0; j < matrix_.cols(); ++j) {
            Vector col = matrix_.column(j);
            // d_j · (image of generator j) must vanish for a well-defined map.
            Vector scaled = scale(col, source_.invariant_factors()[j]);
            for (std::size_t i = 0; i < scaled.size(); ++i)
                require(mpz_divisible_p(scaled[i].get_mpz_t(), target_.invariant_factors()[i].get_mpz_t()),
                        ErrorCode::InvalidArgument, "generator order does not divide into target");
            for (std::size_t i = 0; i < col.size(); ++i)
                matrix_(i, j) = mod_nonneg(matrix_(i, j), target_.invariant_factors()[i]);
        }
    }

    /// The map induced by an ambient matrix M (acting on column vectors) that
    /// carries source numerator into target numerator and source denominator
    /// into target denominator.
    static GroupHom induced(const FinAbGroup& source, const FinAbGroup& target, const IntMatrix& ambient_map) {
        require(ambient_map.cols() == source.ambient_rank() && ambient_map.rows() == target.ambient_rank(),
                ErrorCode::DimensionMismatch, "ambient map shape mismatch");
        for (std::size_t i = 0; i < source.denominator().rank(); ++i) {
            Vector img = ambient_map.apply(source.denominator().basis().row(i));
            require(target.denominator().contains(img), ErrorCode::NotContained,
                    "ambient map does not carry denominator into denominator");
        }
        IntMatrix m(target.ngens(), source.ngens());
        for (std::size_t j = 0; j < source.ngens(); ++j) {
            Vector c = target.class_of(ambient_map.apply(source.generator_lifts()[j]));
            for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
        }
        return GroupHom(source, target, std::move(m));
    }

    static GroupHom identity(const FinAbGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.ngens())); }

    const FinAbGroup& source() const noexcept { return source_; }
    const FinAbGroup& target() const noexcept { return target_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    Vector apply(std::span<const Integer> coords) const { return target_.normalize(matrix_.apply(coords)); }

    /// Kernel as a lattice in source coordinate space (contains the relations).
    SubLattice kernel_lattice() const {
        if (source_.ngens() == 0) return SubLattice::zero(0);
        return preimage(matrix_, target_.relation_lattice());
    }

    /// Image as a lattice in target coordinate space (contains the relations).
    SubLattice image_lattice() const {
        IntMatrix gens = matrix_.transpose();
        return SubLattice::span(gens.stack(target_.relation_lattice().basis()));
    }

    Integer kernel_order() const {
        if (source_.ngens() == 0) return 1;
        return subquotient(kernel_lattice(), source_.relation_lattice()).order();
    }
    Integer image_order() const { return source_.order() / kernel_order(); }
    bool is_injective() const { return kernel_order() == 1; }
    bool is_surjective() const { return image_order() == target_.order(); }
    bool is_isomorphism() const { return is_injective() && is_surjective(); }
    bool is_zero() const {
        for (const auto& x : matrix_.entries())
            if (x != 0) return false;
        return true;
    }

    friend GroupHom compose(const GroupHom& g, const GroupHom& f) {
        require(f.target_.invariant_factors() == g.source_.invariant_factors(), ErrorCode::DimensionMismatch,
                "composition of incompatible homomorphisms");
        return GroupHom(f.source_, g.target_, g.matrix_ * f.matrix_);
    }

private:
    FinAbGroup source_;
    FinAbGroup target_;
    IntMatrix matrix_;
};

/// im(f) = ker(g) inside the common middle group.
inline bool exact_at(const GroupHom& f, const GroupHom& g) {
    require(f.target().invariant_factors() == g.source().invariant_factors(), ErrorCode::DimensionMismatch,
            "exactness check on incompatible maps");
    if (f.target().ngens() == 0) return true;
    return f.image_lattice() == g.kernel_lattice();
}

} // namespace rigidcoh
