#include <gtest/gtest.h>

#include "random_modules.hpp"

using namespace rigidcoh;
using namespace rigidcoh::testing;

namespace {

GroupPtr c2() { return make_group(FiniteGroup::cyclic(2)); }

GaloisLattice sign_z(const GroupPtr& g) { return GaloisLattice::from_generators(g, 1, {{1, IntMatrix{{-1}}}}); }

// μ₂ ⊂ 𝔾_m split: Y = ℤ ↪ Ȳ = ½ℤ, written Ȳ = ℤ with J = ×2.
IsogenyPair split_mu2(const GroupPtr& g) {
    GaloisLattice z = GaloisLattice::trivial(g, 1);
    return IsogenyPair(EquivariantMap(z, z, IntMatrix{{2}}));
}

// Elliptic torus of SL₂ with Z = μ₂: Γ = ℤ/2 acting by −1, J = ×2.
IsogenyPair norm_one_mu2(const GroupPtr& g) {
    GaloisLattice s = sign_z(g);
    return IsogenyPair(EquivariantMap(s, s, IntMatrix{{2}}));
}

std::vector<Integer> f(std::initializer_list<long> xs) { return std::vector<Integer>(xs.begin(), xs.end()); }

} // namespace

TEST(RigidH1Torus, Examples) {
    auto g = c2();
    EXPECT_TRUE(rigid_h1_torus(split_mu2(g)).is_trivial());
    IsogenyPair norm_one = IsogenyPair::trivial_center(sign_z(g));
    EXPECT_EQ(rigid_h1_torus(norm_one).invariant_factors(), f({2}));
    EXPECT_EQ(rigid_h1_torus(norm_one).invariant_factors(), tate_h_neg1(sign_z(g)).invariant_factors());
    EXPECT_TRUE(rigid_h1_torus(split_mu2(make_group(FiniteGroup()))).is_trivial());
    // Hand computation: ker N = ℤ, J(IY) = 2·2ℤ.
    EXPECT_EQ(rigid_h1_torus(norm_one_mu2(g)).invariant_factors(), f({4}));
}

TEST(RigidClass, RejectsNormNonzero) {
    try {
        RigidClass(split_mu2(c2()), Vector{1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NormNonzero);
    }
}

TEST(TorusAliases, Examples) {
    auto g = c2();
    EXPECT_EQ(h1_F_torus(sign_z(g)).invariant_factors(), f({2}));
    EXPECT_TRUE(h1_F_torus(GaloisLattice::trivial(g, 2)).is_trivial());
    EXPECT_TRUE(h1_F_torus(GaloisLattice::regular(g)).is_trivial());
    EXPECT_EQ(h2_F_torus(GaloisLattice::trivial(g, 1)).invariant_factors(), f({2}));
    EXPECT_TRUE(h2_F_torus(sign_z(g)).is_trivial());
    EXPECT_TRUE(h2_F_torus(GaloisLattice::regular(g)).is_trivial());
}

TEST(RestrictionToBand, Examples) {
    auto g = c2();
    IsogenyPair p = norm_one_mu2(g);
    EXPECT_TRUE(is_zero(restriction_to_band(p, RigidClass(p, Vector{2}))));
    EXPECT_TRUE(is_zero(restriction_to_band(p, RigidClass(p, Vector{0}))));
    EXPECT_EQ(restriction_to_band(p, RigidClass(p, Vector{1})), Vector{1});
    EXPECT_EQ(band_group(p).invariant_factors(), f({2}));
}

TEST(Transgression, Examples) {
    auto g = c2();
    IsogenyPair p = split_mu2(g);
    EXPECT_TRUE(is_zero(transgression(p, Vector{0})));
    EXPECT_EQ(transgression(p, Vector{1}), Vector{1});
    IsogenyPair q = norm_one_mu2(g);
    EXPECT_TRUE(is_zero(transgression(q, Vector{1})));
    try {
        IsogenyPair t(EquivariantMap(GaloisLattice::trivial(g, 1), GaloisLattice::trivial(g, 1), IntMatrix{{4}}));
        transgression(t, Vector{1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RepresentativeInvalid);
    }
}

TEST(Infres, ClosedFormExamples) {
    auto g = c2();
    InfresReport a = infres_check(IsogenyPair::trivial_center(sign_z(g)));
    EXPECT_TRUE(a.passed());
    EXPECT_EQ(a.h_neg1_y.invariant_factors(), f({2}));
    EXPECT_EQ(a.rigid.invariant_factors(), f({2}));
    EXPECT_TRUE(a.band.is_trivial());
    EXPECT_TRUE(a.h0_y.is_trivial());

    InfresReport b = infres_check(split_mu2(g));
    EXPECT_TRUE(b.passed());
    EXPECT_TRUE(b.h_neg1_y.is_trivial());
    EXPECT_TRUE(b.rigid.is_trivial());
    EXPECT_EQ(b.band.invariant_factors(), f({2}));
    EXPECT_EQ(b.h0_y.invariant_factors(), f({2}));
    EXPECT_TRUE(b.transgression_map->is_injective());

    GaloisLattice y = GaloisLattice::regular(make_group(FiniteGroup::cyclic(3)));
    InfresReport c = infres_check(IsogenyPair::trivial_center(y));
    EXPECT_TRUE(c.passed());
    EXPECT_TRUE(c.band.is_trivial());
    EXPECT_TRUE(c.rigid.isomorphic_to(c.h_neg1_y));
}

TEST(Infres, RandomPairsAreExact) {
    Rng rng(31337);
    auto groups = small_groups();
    for (int trial = 0; trial < 100; ++trial) {
        auto g = make_group(groups[uniform(rng, 0, groups.size() - 1)]);
        IsogenyPair p = random_pair(rng, g, 4, 36);
        InfresReport r = infres_check(p);
        EXPECT_TRUE(r.passed()) << g->name();
        // restriction kills the image of Ĥ⁻¹(Y)
        EXPECT_TRUE(compose(*r.restriction_map, *r.inclusion_map).is_zero());
    }
}

TEST(Infres, TrivialCenterGivesTateNakayama) {
    Rng rng(4);
    auto groups = small_groups();
    for (int trial = 0; trial < 30; ++trial) {
        auto g = make_group(groups[uniform(rng, 0, groups.size() - 1)]);
        GaloisLattice y = random_lattice(rng, g, 4);
        InfresReport r = infres_check(IsogenyPair::trivial_center(y));
        EXPECT_EQ(r.rigid.invariant_factors(), h1_F_torus(y).invariant_factors());
        EXPECT_TRUE(r.inclusion_map->is_isomorphism());
    }
}

TEST(InducedClassMap, Examples) {
    auto g = c2();
    IsogenyPair p = IsogenyPair::trivial_center(sign_z(g));
    PairMorphism id(p, p, IntMatrix{{1}}, IntMatrix{{1}});
    RigidClass c(p, Vector{1});
    EXPECT_EQ(induced_class_map(id, c).representative(), Vector{1});

    PairMorphism twice(p, p, IntMatrix{{2}}, IntMatrix{{2}});
    FinAbGroup h = rigid_h1_torus(p);
    EXPECT_TRUE(h.is_zero_class(induced_class_map(twice, c).representative()));
    EXPECT_TRUE(induced_rigid_h1(twice).is_zero());

    // Z = 1 into Z = μ₂ on the same torus: Ȳ₁ = Y ↪ Ȳ₂ = ½Y, i.e. ×2 in coordinates.
    IsogenyPair big = norm_one_mu2(g);
    PairMorphism incl(p, big, IntMatrix{{1}}, IntMatrix{{2}});
    RigidClass d = induced_class_map(incl, c);
    EXPECT_EQ(d.representative(), Vector{2});
    EXPECT_EQ(rigid_h1_torus(big).class_of(d.representative()), Vector{2});

    EXPECT_THROW(PairMorphism(p, big, IntMatrix{{1}}, IntMatrix{{1}}), Error);
}

TEST(InducedClassMap, RespectsComposition) {
    Rng rng(12);
    auto g = make_group(FiniteGroup::cyclic(4));
    for (int trial = 0; trial < 10; ++trial) {
        IsogenyPair p = random_pair(rng, g, 3, 36);
        Integer a = uniform(rng, -3, 3), b = uniform(rng, -3, 3);
        IntMatrix ia = a * IntMatrix::identity(p.rank()), ib = b * IntMatrix::identity(p.rank());
        PairMorphism fa(p, p, ia, ia), fb(p, p, ib, ib);
        PairMorphism fab = compose(fb, fa);
        EXPECT_EQ(compose(induced_rigid_h1(fb), induced_rigid_h1(fa)).matrix(), induced_rigid_h1(fab).matrix());
        RigidClass zero(p, Vector(p.rank(), Integer(0)));
        EXPECT_TRUE(is_zero(induced_class_map(fab, zero).representative()));
    }
}
