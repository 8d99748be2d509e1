#pragma once

#include <cctype>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "rigidcoh/tate.hpp"

namespace rigidcoh {

/// |W| bound used when RIGIDCOH_MAX_WEYL is unset or unparsable.
inline constexpr std::size_t default_max_weyl = 1152;

inline std::size_t max_weyl_order() {
    if (const char* env = std::getenv("RIGIDCOH_MAX_WEYL")) {
        try {
            std::size_t pos = 0;
            unsigned long v = std::stoul(env, &pos);
            if (pos == std::string(env).size() && v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return default_max_weyl;
}

/// A root datum (X, R, Y, R^∨) on X = Y = ℤⁿ with the standard pairing,
/// together with a Galois action on Y. Roots are rows in X, coroots vectors in
/// Y; σ acts on X by χ ↦ χ·A_{σ⁻¹}.
///
/// Only the simple roots and coroots are supplied; the rest is generated by
/// reflections. Positive roots come first (by height), then their negatives
/// in the same order, so the simple roots have indices 0..r−1.
class RootDatum {
public:
    /// A torus of rank 0 over the trivial group.
    RootDatum() : RootDatum(GaloisLattice(), {}, {}) {}

    RootDatum(GaloisLattice y, const std::vector<Vector>& simple_roots, const std::vector<Vector>& simple_coroots,
              std::string name = "")
        : y_(std::move(y)), name_(std::move(name)), weyl_(std::make_shared<WeylCache>()) {
        generate(simple_roots, simple_coroots);
        validate();
    }

    /// Same roots, different Galois action on Y.
    RootDatum with_action(GaloisLattice y) const {
        std::vector<Vector> sr, sc;
        for (std::size_t i = 0; i < semisimple_rank_; ++i) {
            sr.push_back(roots_[i]);
            sc.push_back(coroots_[i]);
        }
        return RootDatum(std::move(y), sr, sc, name_);
    }

    static RootDatum torus(GaloisLattice y, std::string name = "torus") { return RootDatum(std::move(y), {}, {}, std::move(name)); }

    const std::string& name() const noexcept { return name_; }
    std::size_t rank() const noexcept { return y_.rank(); }
    std::size_t semisimple_rank() const noexcept { return semisimple_rank_; }
    bool is_semisimple() const noexcept { return semisimple_rank_ == rank(); }
    const GaloisLattice& y_lattice() const noexcept { return y_; }
    GaloisLattice x_lattice() const { return y_.dual(); }
    const GroupPtr& group_ptr() const noexcept { return y_.group_ptr(); }
    const FiniteGroup& group() const noexcept { return y_.group(); }

    const std::vector<Vector>& roots() const noexcept { return roots_; }
    const std::vector<Vector>& coroots() const noexcept { return coroots_; }
    std::size_t num_roots() const noexcept { return roots_.size(); }
    std::vector<std::size_t> simple_indices() const {
        std::vector<std::size_t> s(semisimple_rank_);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
        return s;
    }
    /// Coefficients of root k in the simple roots.
    const Vector& root_coefficients(std::size_t k) const { return coefficients_[k]; }
    bool is_positive(std::size_t k) const { return k < roots_.size() / 2; }

    /// Roots as the rows of a matrix (|R| × n).
    IntMatrix root_matrix() const { return IntMatrix::from_rows(roots_, rank()); }

    /// Index permutation of R induced by σ.
    const std::vector<std::size_t>& galois_permutation(std::size_t sigma) const { return galois_perm_[sigma]; }

    /// Whether every σ preserves the base.
    bool is_based() const {
        for (const auto& perm : galois_perm_)
            for (std::size_t i = 0; i < semisimple_rank_; ++i)
                if (perm[i] >= semisimple_rank_) return false;
        return true;
    }

    /// s_α on Y: λ ↦ λ − ⟨α, λ⟩α^∨.
    IntMatrix reflection(std::size_t k) const {
        IntMatrix m = IntMatrix::identity(rank());
        for (std::size_t a = 0; a < rank(); ++a)
            for (std::size_t b = 0; b < rank(); ++b) m(a, b) -= coroots_[k][a] * roots_[k][b];
        return m;
    }

    /// Index of a coroot, or npos.
    std::size_t find_coroot(std::span<const Integer> v) const {
        auto it = coroot_index_.find(Vector(v.begin(), v.end()));
        return it == coroot_index_.end() ? npos : it->second;
    }
    std::size_t find_root(std::span<const Integer> v) const {
        auto it = root_index_.find(Vector(v.begin(), v.end()));
        return it == root_index_.end() ? npos : it->second;
    }

    /// W(G, S) as matrices on Y, generated by the simple reflections; the
    /// identity comes first. Computed once per datum.
    const std::vector<IntMatrix>& weyl_group() const {
        const std::size_t bound = max_weyl_order();
        std::call_once(weyl_->once, [&] { weyl_->elements = close_weyl(bound); });
        require(weyl_->elements.size() <= bound, ErrorCode::TooLarge,
                "Weyl group has order " + std::to_string(weyl_->elements.size()) + " above the bound " +
                    std::to_string(bound));
        return weyl_->elements;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    struct WeylCache {
        std::once_flag once;
        std::vector<IntMatrix> elements;
    };

    void generate(const std::vector<Vector>& sr, const std::vector<Vector>& sc) {
        const std::size_t n = rank();
        const std::size_t r = sr.size();
        require(sc.size() == r, ErrorCode::InvalidRootDatum, "need one simple coroot per simple root");
        for (std::size_t i = 0; i < r; ++i)
            require(sr[i].size() == n && sc[i].size() == n, ErrorCode::InvalidRootDatum, "root vector of wrong length");
        semisimple_rank_ = r;
        if (r > 0) {
            require(SubLattice::span(sr, n).rank() == r && SubLattice::span(sc, n).rank() == r,
                    ErrorCode::InvalidRootDatum, "simple roots or coroots are linearly dependent");
        }
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                Integer a = dot(sr[j], sc[i]), b = dot(sr[i], sc[j]);
                if (i == j) require(a == 2, ErrorCode::InvalidRootDatum, "⟨α, α^∨⟩ ≠ 2 for a simple root");
                else
                    require(a <= 0 && ((a == 0) == (b == 0)), ErrorCode::InvalidRootDatum,
                            "simple roots do not form a Cartan matrix");
            }

        // Reflection closure on (root, coroot, coefficients).
        struct Entry {
            Vector root, coroot, coeff;
        };
        std::vector<Entry> all;
        std::map<Vector, std::size_t> seen;
        for (std::size_t i = 0; i < r; ++i) {
            Vector c(r, Integer(0));
            c[i] = 1;
            seen[sr[i]] = all.size();
            all.push_back({sr[i], sc[i], c});
        }
        constexpr std::size_t max_roots = 4096;
        for (std::size_t k = 0; k < all.size(); ++k)
            for (std::size_t i = 0; i < r; ++i) {
                Entry e = all[k];
                Integer p = dot(e.root, sc[i]), q = dot(sr[i], e.coroot);
                for (std::size_t a = 0; a < n; ++a) {
                    e.root[a] -= p * sr[i][a];
                    e.coroot[a] -= q * sc[i][a];
                }
                e.coeff[i] -= p;
                if (seen.count(e.root)) continue;
                require(all.size() < max_roots, ErrorCode::InvalidRootDatum, "root system is not finite");
                seen[e.root] = all.size();
                all.push_back(std::move(e));
            }

        std::vector<Entry> pos;
        for (auto& e : all) {
            bool nonneg = true, nonpos = true;
            for (const auto& c : e.coeff) {
                if (c < 0) nonneg = false;
                if (c > 0) nonpos = false;
            }
            require(nonneg || nonpos, ErrorCode::InvalidRootDatum, "root with mixed-sign coefficients");
            if (nonneg) pos.push_back(e);
        }
        require(pos.size() * 2 == all.size(), ErrorCode::InvalidRootDatum, "roots do not come in ± pairs");
        auto height = [](const Vector& c) {
            Integer h = 0;
            for (const auto& x : c) h += x;
            return h;
        };
        std::stable_sort(pos.begin(), pos.end(), [&](const Entry& a, const Entry& b) {
            Integer ha = height(a.coeff), hb = height(b.coeff);
            if (ha != hb) return ha < hb;
            return a.coeff > b.coeff;
        });
        for (const auto& e : pos) {
            roots_.push_back(e.root);
            coroots_.push_back(e.coroot);
            coefficients_.push_back(e.coeff);
        }
        for (const auto& e : pos) {
            roots_.push_back(scale(e.root, -1));
            coroots_.push_back(scale(e.coroot, -1));
            coefficients_.push_back(scale(e.coeff, -1));
        }
        for (std::size_t k = 0; k < roots_.size(); ++k) {
            root_index_[roots_[k]] = k;
            coroot_index_[coroots_[k]] = k;
        }
        require(root_index_.size() == roots_.size() && coroot_index_.size() == roots_.size(),
                ErrorCode::InvalidRootDatum, "repeated roots or coroots");
    }

    void validate() {
        const std::size_t n = rank();
        for (std::size_t k = 0; k < roots_.size(); ++k) {
            require(dot(roots_[k], coroots_[k]) == 2, ErrorCode::InvalidRootDatum, "⟨α, α^∨⟩ ≠ 2");
            for (std::size_t j = 0; j < roots_.size(); ++j) {
                Integer p = dot(roots_[j], coroots_[k]), q = dot(roots_[k], coroots_[j]);
                Vector a = roots_[j], c = coroots_[j];
                for (std::size_t i = 0; i < n; ++i) {
                    a[i] -= p * roots_[k][i];
                    c[i] -= q * coroots_[k][i];
                }
                std::size_t ia = find_root(a);
                require(ia != npos && find_coroot(c) == ia, ErrorCode::InvalidRootDatum,
                        "reflections do not permute the roots and coroots");
            }
        }
        const FiniteGroup& g = group();
        galois_perm_.assign(g.order(), {});
        for (std::size_t s = 0; s < g.order(); ++s) {
            const IntMatrix& a = y_.action(s);
            const IntMatrix& ainv = y_.action(g.inverse(s));
            for (std::size_t k = 0; k < roots_.size(); ++k) {
                std::size_t j = find_coroot(a.apply(coroots_[k]));
                require(j != npos, ErrorCode::InvalidRootDatum, "Galois action does not permute the coroots");
                require(ainv.transpose().apply(roots_[k]) == roots_[j], ErrorCode::InvalidRootDatum,
                        "Galois action on roots and coroots is not compatible");
                galois_perm_[s].push_back(j);
            }
        }
    }

    std::vector<IntMatrix> close_weyl(std::size_t bound) const {
        std::vector<IntMatrix> gens;
        for (std::size_t i = 0; i < semisimple_rank_; ++i) gens.push_back(reflection(i));
        std::vector<IntMatrix> out{IntMatrix::identity(rank())};
        std::set<Vector> seen{out[0].entries()};
        for (std::size_t k = 0; k < out.size(); ++k)
            for (const auto& s : gens) {
                IntMatrix w = s * out[k];
                if (!seen.insert(w.entries()).second) continue;
                require(out.size() < bound, ErrorCode::TooLarge,
                        "Weyl group exceeds the bound " + std::to_string(bound));
                out.push_back(std::move(w));
            }
        return out;
    }

    GaloisLattice y_;
    std::string name_;
    std::size_t semisimple_rank_ = 0;
    std::vector<Vector> roots_, coroots_, coefficients_;
    std::map<Vector, std::size_t> root_index_, coroot_index_;
    std::vector<std::vector<std::size_t>> galois_perm_;
    std::shared_ptr<WeylCache> weyl_;
};

/// Span of the coroots in Y.
inline SubLattice coroot_sublattice(const RootDatum& rd) { return SubLattice::span(rd.coroots(), rd.rank()); }

/// Swaps X and Y and roots with coroots; Γ acts on the new Y by the contragredient.
inline RootDatum dual_root_datum(const RootDatum& rd) {
    std::vector<Vector> sr, sc;
    for (auto i : rd.simple_indices()) {
        sr.push_back(rd.coroots()[i]);
        sc.push_back(rd.roots()[i]);
    }
    return RootDatum(rd.y_lattice().dual(), sr, sc, rd.name().empty() ? "" : "dual " + rd.name());
}

/// rank Yᴳ = rank X_*(Z(G)°)ᴳ.
inline bool is_elliptic(const RootDatum& rd) {
    SubLattice inv = invariants_sublattice(rd.y_lattice());
    SubLattice central = kernel_basis(rd.root_matrix());
    return inv.rank() == intersection(inv, central).rank();
}

/// The element of W sending every positive root to a negative one.
inline IntMatrix longest_element(const RootDatum& rd) {
    const std::size_t half = rd.num_roots() / 2;
    for (const auto& w : rd.weyl_group()) {
        bool all_neg = true;
        for (std::size_t k = 0; k < half && all_neg; ++k) all_neg = rd.find_coroot(w.apply(rd.coroots()[k])) >= half;
        if (all_neg) return w;
    }
    throw Error(ErrorCode::InvalidRootDatum, "no longest element found");
}

/// Product s_{i₁}⋯s_{i_k} of simple reflections on Y.
inline IntMatrix weyl_word(const RootDatum& rd, const std::vector<std::size_t>& word) {
    IntMatrix w = IntMatrix::identity(rd.rank());
    for (auto i : word) {
        require(i < rd.semisimple_rank(), ErrorCode::InvalidArgument, "simple reflection index out of range");
        w = w * rd.reflection(i);
    }
    return w;
}

// ---------------------------------------------------------------------------
// Cartan types

enum class IsogenyForm { SimplyConnected, Adjoint };

/// a_ij = ⟨α_j, α_i^∨⟩ for types A_n, B_n, C_n (n ≥ 2), D_n (n ≥ 4), G_2.
inline IntMatrix cartan_matrix(char type, std::size_t n) {
    require(n >= 1, ErrorCode::InvalidArgument, "Cartan rank must be positive");
    IntMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i) c(i, i) = 2;
    auto link = [&](std::size_t i, std::size_t j) { c(i, j) = c(j, i) = -1; };
    switch (type) {
    case 'A':
        for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
        break;
    case 'B':
    case 'C':
        require(n >= 2, ErrorCode::InvalidArgument, "types B and C need rank at least 2");
        for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
        // α_n short in B_n, long in C_n.
        if (type == 'B') c(n - 1, n - 2) = -2;
        else c(n - 2, n - 1) = -2;
        break;
    case 'D':
        require(n >= 4, ErrorCode::InvalidArgument, "type D needs rank at least 4");
        for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1);
        link(n - 3, n - 1);
        break;
    case 'G':
        require(n == 2, ErrorCode::InvalidArgument, "type G exists only in rank 2");
        c(0, 1) = -1;
        c(1, 0) = -3;
        break;
    default: throw Error(ErrorCode::InvalidArgument, std::string("unsupported Cartan type ") + type);
    }
    return c;
}

/// Semisimple datum from a Cartan matrix. Simply connected: Y has basis the
/// simple coroots. Adjoint: X has basis the simple roots. Γ acts trivially.
inline RootDatum from_cartan(const IntMatrix& cartan, IsogenyForm form, GroupPtr g, std::string name = "") {
    require(cartan.is_square(), ErrorCode::InvalidRootDatum, "Cartan matrix must be square");
    const std::size_t n = cartan.rows();
    std::vector<Vector> sr, sc;
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n, Integer(0));
        e[i] = 1;
        if (form == IsogenyForm::SimplyConnected) {
            sc.push_back(e);
            sr.push_back(cartan.column(i));
        } else {
            sr.push_back(e);
            sc.push_back(cartan.row_vector(i));
        }
    }
    return RootDatum(GaloisLattice::trivial(std::move(g), n), sr, sc, std::move(name));
}

/// Parses e.g. "A2" into (type, rank).
inline std::pair<char, std::size_t> parse_cartan_type(const std::string& s) {
    require(s.size() >= 2, ErrorCode::InvalidArgument, "malformed Cartan type '" + s + "'");
    std::size_t n = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        require(std::isdigit(static_cast<unsigned char>(s[i])) != 0, ErrorCode::InvalidArgument,
                "malformed Cartan type '" + s + "'");
        n = n * 10 + static_cast<std::size_t>(s[i] - '0');
    }
    return {s[0], n};
}

/// Permutation matrix on Y for a diagram automorphism π of the simple nodes;
/// in both the sc and adjoint bases it sends e_i to e_{π(i)}.
inline IntMatrix diagram_matrix(const std::vector<std::size_t>& pi) {
    IntMatrix m(pi.size(), pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) m(pi[i], i) = 1;
    return m;
}

} // namespace rigidcoh
