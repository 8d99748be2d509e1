#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rigidcoh/exact_lattice.hpp"

using namespace rigidcoh;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
    return m;
}

// Oracle: gcd of all k×k minors (determinantal divisors), by brute-force
// enumeration of row and column subsets.
Integer minor_gcd(const IntMatrix& a, std::size_t k) {
    Integer g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    std::function<void(std::size_t, std::size_t)> pick_rows, pick_cols;
    pick_cols = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            IntMatrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
            Integer d = determinant(sub);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            return;
        }
        for (std::size_t c = start; c < a.cols(); ++c) {
            cols[depth] = c;
            pick_cols(c + 1, depth + 1);
        }
    };
    pick_rows = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            pick_cols(0, 0);
            return;
        }
        for (std::size_t r = start; r < a.rows(); ++r) {
            rows[depth] = r;
            pick_rows(r + 1, depth + 1);
        }
    };
    pick_rows(0, 0);
    return g;
}

} // namespace

TEST(SmithNormalForm, ZeroMatrix) {
    SmithForm s = smith_normal_form(IntMatrix{{0}});
    EXPECT_EQ(s.D, (IntMatrix{{0}}));
    EXPECT_EQ(s.U, (IntMatrix{{1}}));
    EXPECT_EQ(s.V, (IntMatrix{{1}}));
}

TEST(SmithNormalForm, TwoByTwoMatchesBruteForceSearch) {
    IntMatrix a{{2, 4}, {6, 8}};
    SmithForm s = smith_normal_form(a);
    EXPECT_EQ(s.D, (IntMatrix{{2, 0}, {0, 4}}));

    // Oracle: search small unimodular U, V for a diagonal U·A·V with d₁ | d₂.
    std::set<std::pair<long, long>> found;
    std::vector<IntMatrix> unimodular;
    for (long p = -2; p <= 2; ++p)
        for (long q = -2; q <= 2; ++q)
            for (long r = -2; r <= 2; ++r)
                for (long t = -2; t <= 2; ++t)
                    if (p * t - q * r == 1 || p * t - q * r == -1) unimodular.push_back(IntMatrix{{p, q}, {r, t}});
    for (const auto& u : unimodular)
        for (const auto& v : unimodular) {
            IntMatrix d = u * a * v;
            if (d(0, 1) != 0 || d(1, 0) != 0 || d(0, 0) <= 0 || d(1, 1) <= 0) continue;
            if (!mpz_divisible_p(d(1, 1).get_mpz_t(), d(0, 0).get_mpz_t())) continue;
            found.insert({d(0, 0).get_si(), d(1, 1).get_si()});
        }
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(*found.begin(), std::make_pair(2L, 4L));
}

TEST(SmithNormalForm, Identity) {
    SmithForm s = smith_normal_form(IntMatrix::identity(3));
    EXPECT_EQ(s.D, IntMatrix::identity(3));
}

TEST(SmithNormalForm, RandomAgreesWithDeterminantalDivisors) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> dim(1, 4);
        IntMatrix a = random_matrix(rng, dim(rng), dim(rng), -6, 6);
        SmithForm s = smith_normal_form(a);
        EXPECT_EQ(s.U * a * s.V, s.D);
        EXPECT_TRUE(is_unimodular(s.U));
        EXPECT_TRUE(is_unimodular(s.V));
        auto d = s.diagonal();
        Integer prod = 1;
        for (std::size_t k = 1; k <= d.size(); ++k) {
            prod *= d[k - 1];
            EXPECT_EQ(prod, minor_gcd(a, k)) << a;
        }
    }
}

TEST(KernelBasis, RankOneKernel) {
    SubLattice k = kernel_basis(IntMatrix{{1, 1}});
    EXPECT_EQ(k, SubLattice::span(IntMatrix{{1, -1}}));
}

TEST(KernelBasis, InjectiveMap) { EXPECT_EQ(kernel_basis(IntMatrix{{2}}).rank(), 0u); }

TEST(KernelBasis, EnumeratedSmallVectorsLieInKernel) {
    IntMatrix a{{1, 2, 3}, {2, 4, 6}};
    SubLattice k = kernel_basis(a);
    EXPECT_EQ(k.rank(), 2u);
    EXPECT_TRUE(k.contains(Vector{2, -1, 0}));
    EXPECT_TRUE(k.contains(Vector{3, 0, -1}));
    // Oracle: every small integer solution is in the lattice, and nothing else is.
    for (long x = -4; x <= 4; ++x)
        for (long y = -4; y <= 4; ++y)
            for (long z = -4; z <= 4; ++z) {
                Vector v{x, y, z};
                EXPECT_EQ(k.contains(v), is_zero(a.apply(v)));
            }
}

TEST(Subquotient, ElementaryAbelian) {
    FinAbGroup g = subquotient(SubLattice::full(2), SubLattice::span(IntMatrix{{2, 0}, {0, 2}}));
    EXPECT_EQ(g.invariant_factors(), (std::vector<Integer>{2, 2}));
}

TEST(Subquotient, IndexTwoSublatticeByCosetEnumeration) {
    IntMatrix abasis{{1, 1}, {1, -1}};
    FinAbGroup g = subquotient(SubLattice::full(2), SubLattice::span(abasis));
    EXPECT_EQ(g.invariant_factors(), (std::vector<Integer>{2}));
    // Oracle: v ~ w iff v - w solves to an integer combination (Cramer's rule).
    auto same = [&](long dx, long dy) {
        // c₁(1,1) + c₂(1,-1) = (dx, dy): c₁ = (dx+dy)/2, c₂ = (dx-dy)/2
        return (dx + dy) % 2 == 0 && (dx - dy) % 2 == 0;
    };
    std::vector<std::pair<long, long>> reps;
    for (long x = 0; x < 4; ++x)
        for (long y = 0; y < 4; ++y) {
            bool fresh = true;
            for (auto [rx, ry] : reps)
                if (same(x - rx, y - ry)) fresh = false;
            if (fresh) reps.emplace_back(x, y);
        }
    EXPECT_EQ(g.order(), Integer(reps.size()));
}

TEST(Subquotient, EqualLatticesGiveTrivialGroup) {
    SubLattice b = SubLattice::span(IntMatrix{{3, 1}, {0, 2}});
    EXPECT_TRUE(subquotient(b, b).is_trivial());
}

TEST(Subquotient, ErrorsAreReported) {
    try {
        subquotient(SubLattice::span(IntMatrix{{2, 0}, {0, 2}}), SubLattice::full(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotContained);
    }
    try {
        subquotient(SubLattice::full(2), SubLattice::span(IntMatrix{{2, 0}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InfiniteQuotient);
    }
}

TEST(Saturation, Examples) {
    EXPECT_EQ(saturation(SubLattice::span(IntMatrix{{2, 0}})), SubLattice::span(IntMatrix{{1, 0}}));
    EXPECT_EQ(saturation(SubLattice::span(IntMatrix{{2, 2}})), SubLattice::span(IntMatrix{{1, 1}}));
    SubLattice s = SubLattice::span(IntMatrix{{1, 0}, {0, 3}});
    EXPECT_EQ(saturation(s), SubLattice::full(2));
    // index check through Smith form of the basis
    EXPECT_EQ(smith_normal_form(s.basis()).diagonal(), (std::vector<Integer>{1, 3}));
}

TEST(LatticeProperties, RandomSubquotients) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<int> dim(1, 4);
        const std::size_t n = dim(rng);
        IntMatrix bgen = random_matrix(rng, n, n, -4, 4);
        if (determinant(bgen) == 0) continue;
        IntMatrix change = random_matrix(rng, n, n, -3, 3);
        if (determinant(change) == 0) continue;
        SubLattice b = SubLattice::span(bgen);
        SubLattice a = SubLattice::span(change * bgen);
        FinAbGroup g = subquotient(b, a);
        Integer det = determinant(change);
        EXPECT_EQ(g.order(), abs(det));
        for (std::size_t i = 0; i < g.ngens(); ++i) {
            Vector e(g.ngens(), Integer(0));
            e[i] = 1;
            EXPECT_EQ(g.class_of(g.generator_lifts()[i]), e);
        }
        // class_of vanishes exactly on A, and is additive
        std::uniform_int_distribution<long> coef(-5, 5);
        for (int s = 0; s < 10; ++s) {
            Vector u(n, Integer(0)), w(n, Integer(0));
            for (std::size_t i = 0; i < n; ++i) {
                Integer cu = coef(rng), cw = coef(rng);
                for (std::size_t j = 0; j < n; ++j) {
                    u[j] += cu * b.basis()(i, j);
                    w[j] += cw * b.basis()(i, j);
                }
            }
            EXPECT_EQ(g.is_zero_class(u), a.contains(u));
            Vector sum = g.normalize(add(g.class_of(u), g.class_of(w)));
            EXPECT_EQ(g.class_of(add(u, w)), sum);
        }
        SubLattice sat = saturation(a);
        EXPECT_EQ(saturation(sat), sat);
        EXPECT_TRUE(sat.contains(a));
    }
}

TEST(QModZ, NormalizesIntoUnitInterval) {
    EXPECT_EQ(QModZ::parse("-1/4").to_string(), "3/4");
    EXPECT_EQ(QModZ::parse("6/4").to_string(), "1/2");
    EXPECT_EQ(QModZ::parse("3").to_string(), "0/1");
    EXPECT_EQ((QModZ::parse("1/2") + QModZ::parse("1/2")).to_string(), "0/1");
    EXPECT_THROW(QModZ::parse("1/0"), Error);
    EXPECT_THROW(QModZ::parse("x"), Error);
}

TEST(GroupHom, KernelImageAndExactness) {
    // 0 → ℤ/2 → ℤ/4 → ℤ/2 → 0
    FinAbGroup z2 = FinAbGroup::standard({2}), z4 = FinAbGroup::standard({4});
    GroupHom inc(z2, z4, IntMatrix{{2}});
    GroupHom proj(z4, z2, IntMatrix{{1}});
    EXPECT_TRUE(inc.is_injective());
    EXPECT_TRUE(proj.is_surjective());
    EXPECT_TRUE(exact_at(inc, proj));
    EXPECT_FALSE(exact_at(GroupHom(z2, z4, IntMatrix{{0}}), proj));
    EXPECT_THROW(GroupHom(z2, z4, IntMatrix{{1}}), Error);
}
