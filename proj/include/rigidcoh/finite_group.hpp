#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "rigidcoh/error.hpp"

namespace rigidcoh {

/// A finite group given by its Cayley table; element 0 is the identity.
class FiniteGroup {
public:
    using Table = std::vector<std::vector<std::size_t>>;

    FiniteGroup() : FiniteGroup(Table{{0}}, "1") {}

    /// Validates the table (Latin square, identity at 0, associativity).
    explicit FiniteGroup(Table table, std::string name = "") : table_(std::move(table)), name_(std::move(name)) {
        const std::size_t n = table_.size();
        require(n > 0, ErrorCode::InvalidGroup, "group table is empty");
        for (const auto& row : table_) {
            require(row.size() == n, ErrorCode::InvalidGroup, "group table is not square");
            std::vector<bool> seen(n, false);
            for (auto x : row) {
                require(x < n && !seen[x], ErrorCode::InvalidGroup, "group table is not a Latin square");
                seen[x] = true;
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<bool> seen(n, false);
            for (std::size_t i = 0; i < n; ++i) {
                require(!seen[table_[i][j]], ErrorCode::InvalidGroup, "group table is not a Latin square");
                seen[table_[i][j]] = true;
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            require(table_[0][i] == i && table_[i][0] == i, ErrorCode::InvalidGroup, "element 0 is not the identity");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    require(table_[table_[a][b]][c] == table_[a][table_[b][c]], ErrorCode::InvalidGroup,
                            "group table is not associative");
        inverse_.resize(n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (table_[a][b] == 0) inverse_[a] = b;
        generators_ = compute_generators();
    }

    static FiniteGroup trivial() { return FiniteGroup(); }

    static FiniteGroup cyclic(std::size_t n) {
        require(n >= 1, ErrorCode::InvalidGroup, "cyclic group order must be positive");
        Table t(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
        return FiniteGroup(std::move(t), "C" + std::to_string(n));
    }

    /// Dihedral group of order 2n; element a + n·b stands for r^a s^b.
    static FiniteGroup dihedral(std::size_t n) {
        require(n >= 1, ErrorCode::InvalidGroup, "dihedral parameter must be positive");
        const std::size_t order = 2 * n;
        Table t(order, std::vector<std::size_t>(order));
        for (std::size_t x = 0; x < order; ++x)
            for (std::size_t y = 0; y < order; ++y) {
                std::size_t a = x % n, b = x / n, c = y % n, d = y / n;
                std::size_t rot = b == 0 ? (a + c) % n : (a + n - c) % n;
                t[x][y] = rot + n * ((b + d) % 2);
            }
        return FiniteGroup(std::move(t), "D" + std::to_string(n));
    }

    /// Quaternion group {±1, ±i, ±j, ±k}; index 2u + sign with u ∈ {1,i,j,k}.
    static FiniteGroup quaternion() {
        // unit products: u·v = sign · w, encoded as (w, negative?)
        static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> prod{{
            {{{0, 0}, {1, 0}, {2, 0}, {3, 0}}},
            {{{1, 0}, {0, 1}, {3, 0}, {2, 1}}},
            {{{2, 0}, {3, 1}, {0, 1}, {1, 0}}},
            {{{3, 0}, {2, 0}, {1, 1}, {0, 1}}},
        }};
        Table t(8, std::vector<std::size_t>(8));
        for (std::size_t x = 0; x < 8; ++x)
            for (std::size_t y = 0; y < 8; ++y) {
                auto [w, neg] = prod[x / 2][y / 2];
                std::size_t sign = (x % 2 + y % 2 + neg) % 2;
                t[x][y] = 2 * w + sign;
            }
        return FiniteGroup(std::move(t), "Q8");
    }

    /// Closure of a set of permutations of {0..m-1}; the identity becomes element 0.
    static FiniteGroup from_permutations(const std::vector<std::vector<std::size_t>>& gens, std::string name = "") {
        require(!gens.empty(), ErrorCode::InvalidGroup, "no generating permutations");
        const std::size_t m = gens.front().size();
        for (const auto& g : gens) {
            require(g.size() == m, ErrorCode::InvalidGroup, "permutations of different degrees");
            std::vector<std::size_t> sorted = g;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t i = 0; i < m; ++i)
                require(sorted[i] == i, ErrorCode::InvalidGroup, "generator is not a permutation");
        }
        using Perm = std::vector<std::size_t>;
        auto compose = [m](const Perm& p, const Perm& q) {  // p ∘ q
            Perm r(m);
            for (std::size_t i = 0; i < m; ++i) r[i] = p[q[i]];
            return r;
        };
        Perm id(m);
        std::iota(id.begin(), id.end(), std::size_t{0});
        std::vector<Perm> elems{id};
        std::map<Perm, std::size_t> index{{id, 0}};
        for (std::size_t k = 0; k < elems.size(); ++k)
            for (const auto& g : gens) {
                Perm p = compose(g, elems[k]);
                if (index.emplace(p, elems.size()).second) elems.push_back(p);
            }
        const std::size_t n = elems.size();
        Table t(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
        return FiniteGroup(std::move(t), std::move(name));
    }

    static FiniteGroup symmetric(std::size_t m) {
        require(m >= 1 && m <= 5, ErrorCode::TooLarge, "symmetric group degree out of range");
        if (m == 1) return FiniteGroup();
        std::vector<std::size_t> swap(m), cycle(m);
        std::iota(swap.begin(), swap.end(), std::size_t{0});
        std::swap(swap[0], swap[1]);
        for (std::size_t i = 0; i < m; ++i) cycle[i] = (i + 1) % m;
        return from_permutations({swap, cycle}, "S" + std::to_string(m));
    }

    /// Direct product; element a·|H| + b stands for (a, b).
    static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h) {
        const std::size_t m = h.order(), n = g.order() * m;
        Table t(n, std::vector<std::size_t>(n));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) t[x][y] = g.mul(x / m, y / m) * m + h.mul(x % m, y % m);
        return FiniteGroup(std::move(t), g.name() + "x" + h.name());
    }

    std::size_t order() const noexcept { return table_.size(); }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    const Table& table() const noexcept { return table_; }
    const std::string& name() const noexcept { return name_; }

    /// A small deterministic generating set (never contains the identity).
    const std::vector<std::size_t>& generators() const noexcept { return generators_; }

    std::size_t element_order(std::size_t a) const {
        std::size_t k = 1, x = a;
        while (x != 0) {
            x = mul(x, a);
            ++k;
        }
        return k;
    }

    bool is_abelian() const {
        for (std::size_t a = 0; a < order(); ++a)
            for (std::size_t b = 0; b < order(); ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    bool is_cyclic() const {
        for (std::size_t a = 0; a < order(); ++a)
            if (element_order(a) == order()) return true;
        return false;
    }

    /// Subgroup generated by the given elements, sorted.
    std::vector<std::size_t> closure(const std::vector<std::size_t>& gens) const {
        std::vector<bool> in(order(), false);
        std::vector<std::size_t> elems{0};
        in[0] = true;
        for (std::size_t k = 0; k < elems.size(); ++k)
            for (auto g : gens) {
                std::size_t x = mul(elems[k], g);
                if (!in[x]) {
                    in[x] = true;
                    elems.push_back(x);
                }
            }
        std::sort(elems.begin(), elems.end());
        return elems;
    }

    /// Left cosets gH of a subgroup, each sorted, ordered by smallest element.
    std::vector<std::vector<std::size_t>> left_cosets(const std::vector<std::size_t>& subgroup) const {
        std::vector<int> which(order(), -1);
        std::vector<std::vector<std::size_t>> cosets;
        for (std::size_t g = 0; g < order(); ++g) {
            if (which[g] >= 0) continue;
            std::vector<std::size_t> c;
            for (auto h : subgroup) c.push_back(mul(g, h));
            std::sort(c.begin(), c.end());
            for (auto x : c) which[x] = static_cast<int>(cosets.size());
            cosets.push_back(std::move(c));
        }
        return cosets;
    }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

private:
    std::vector<std::size_t> compute_generators() const {
        std::vector<std::size_t> gens;
        std::vector<std::size_t> sub{0};
        for (std::size_t a = 1; a < order(); ++a) {
            if (std::binary_search(sub.begin(), sub.end(), a)) continue;
            gens.push_back(a);
            sub = closure(gens);
            if (sub.size() == order()) break;
        }
        return gens;
    }

    Table table_;
    std::string name_;
    std::vector<std::size_t> inverse_;
    std::vector<std::size_t> generators_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr make_group(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// A map of element indices G → H; checks the homomorphism property.
inline bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const std::vector<std::size_t>& f) {
    if (f.size() != g.order()) return false;
    for (auto x : f)
        if (x >= h.order()) return false;
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            if (f[g.mul(a, b)] != h.mul(f[a], f[b])) return false;
    return true;
}

inline bool is_surjective_map(const FiniteGroup& h, const std::vector<std::size_t>& f) {
    std::vector<bool> hit(h.order(), false);
    for (auto x : f)
        if (x < hit.size()) hit[x] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

/// Normal subgroups (each sorted) among those generated by at most two
/// elements, plus the whole group. For order ≤ 8 this is all of them.
inline std::vector<std::vector<std::size_t>> normal_subgroups(const FiniteGroup& g) {
    std::set<std::vector<std::size_t>> found{g.closure(g.generators())};
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = a; b < g.order(); ++b) {
            auto h = g.closure({a, b});
            bool normal = true;
            for (std::size_t x = 0; x < g.order() && normal; ++x)
                for (auto y : h)
                    if (!std::binary_search(h.begin(), h.end(), g.mul(g.mul(x, y), g.inverse(x)))) {
                        normal = false;
                        break;
                    }
            if (normal) found.insert(h);
        }
    return {found.begin(), found.end()};
}

/// Γ/N with its projection; cosets are numbered by smallest element, so the
/// identity coset is 0.
inline std::pair<FiniteGroup, std::vector<std::size_t>> quotient_group(const FiniteGroup& g,
                                                                       const std::vector<std::size_t>& normal) {
    auto cosets = g.left_cosets(normal);
    std::vector<std::size_t> proj(g.order());
    for (std::size_t i = 0; i < cosets.size(); ++i)
        for (auto x : cosets[i]) proj[x] = i;
    FiniteGroup::Table t(cosets.size(), std::vector<std::size_t>(cosets.size()));
    for (std::size_t i = 0; i < cosets.size(); ++i)
        for (std::size_t j = 0; j < cosets.size(); ++j) t[i][j] = proj[g.mul(cosets[i].front(), cosets[j].front())];
    return {FiniteGroup(std::move(t), g.name() + "/N"), std::move(proj)};
}

/// One representative of each isomorphism type of order ≤ 8.
inline std::vector<FiniteGroup> small_groups() {
    auto c = FiniteGroup::cyclic;
    return {
        c(1),
        c(2),
        c(3),
        c(4),
        FiniteGroup::product(c(2), c(2)),
        c(5),
        c(6),
        FiniteGroup::symmetric(3),
        c(7),
        c(8),
        FiniteGroup::product(c(4), c(2)),
        FiniteGroup::product(FiniteGroup::product(c(2), c(2)), c(2)),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
    };
}

} // namespace rigidcoh
