#include <gtest/gtest.h>

#include <set>

#include "random_modules.hpp"
#include "rigidcoh/endoscopy.hpp"

using namespace rigidcoh;
using namespace rigidcoh::testing;

namespace {

GroupPtr trivial_group() { return make_group(FiniteGroup()); }
GroupPtr c2() { return make_group(FiniteGroup::cyclic(2)); }

RootDatum sl2(GroupPtr g) { return from_cartan(cartan_matrix('A', 1), IsogenyForm::SimplyConnected, std::move(g)); }

TorsionCharacter chi(std::initializer_list<std::pair<long, long>> vals) {
    std::vector<QModZ> v;
    for (auto [a, b] : vals) v.emplace_back(a, b);
    return TorsionCharacter(std::move(v));
}

// Torus Y = ℤ² with Γ = ℤ/2 acting by −1 and Z cyclic of order m embedded diagonally.
IsogenyPair diagonal_mu(long m) {
    GaloisLattice y = GaloisLattice::from_generators(c2(), 2, {{1, IntMatrix{{-1, 0}, {0, -1}}}});
    if (m == 1) return IsogenyPair::trivial_center(y);
    return ReductivePair::with_center(RootDatum::torus(y), {{Rational(1, m), Rational(1, m)}}).center();
}

} // namespace

TEST(EndoscopicSubsystem, Examples) {
    ReductivePair sl3 = ReductivePair::trivial_center(
        from_cartan(cartan_matrix('A', 2), IsogenyForm::SimplyConnected, trivial_group()));
    EXPECT_EQ(endoscopic_subsystem(sl3, TorsionCharacter::zero(2)).num_roots(), 6u);

    ReductivePair p = ReductivePair::trivial_center(sl2(trivial_group()));
    RootDatum h = endoscopic_subsystem(p, chi({{1, 2}}));
    EXPECT_EQ(h.num_roots(), 0u);
    EXPECT_EQ(h.rank(), 1u);
}

TEST(EndoscopicSubsystem, A2AgainstDirectEvaluation) {
    for (auto form : {IsogenyForm::SimplyConnected, IsogenyForm::Adjoint}) {
        RootDatum rd = from_cartan(cartan_matrix('A', 2), form, trivial_group());
        ReductivePair p = ReductivePair::trivial_center(rd);
        const Rational s0(1, 3), s1(2, 3);
        std::set<Vector> expect;
        for (const auto& c : rd.coroots()) {
            Rational v = s0 * Rational(c[0]) + s1 * Rational(c[1]);
            if (v.get_den() == 1) expect.insert(c);
        }
        RootDatum h = endoscopic_subsystem(p, chi({{1, 3}, {2, 3}}));
        EXPECT_EQ(std::set<Vector>(h.coroots().begin(), h.coroots().end()), expect);
        EXPECT_EQ(h.num_roots(), expect.size());
    }
    // In the simply connected basis only ±(α₁ + α₂) survive.
    RootDatum sc = from_cartan(cartan_matrix('A', 2), IsogenyForm::SimplyConnected, trivial_group());
    EXPECT_EQ(endoscopic_subsystem(ReductivePair::trivial_center(sc), chi({{1, 3}, {2, 3}})).num_roots(), 2u);
}

TEST(EndoscopicSubsystem, ClosedUnderCorootSums) {
    Rng rng(21);
    auto cat = reductive_catalogue();
    int subsystems = 0;
    for (const auto& e : cat) {
        const RootDatum& rd = e.pair.datum();
        if (rd.group().order() != 1 && !rd.group().is_cyclic()) continue;
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<QModZ> vals;
            for (std::size_t i = 0; i < rd.rank(); ++i) vals.emplace_back(uniform(rng, 0, 5), 6);
            TorsionCharacter s(vals);
            RootDatum h;
            try {
                h = endoscopic_subsystem(e.pair, s);
            } catch (const Error& err) {
                EXPECT_EQ(err.code(), ErrorCode::NotGaloisStable);
                continue;
            }
            ++subsystems;
            std::set<Vector> kept(h.coroots().begin(), h.coroots().end());
            for (const auto& a : h.coroots())
                for (const auto& b : h.coroots()) {
                    Vector sum = add(a, b);
                    if (rd.find_coroot(sum) != RootDatum::npos) {
                        EXPECT_TRUE(kept.count(sum)) << e.name;
                    }
                }
            for (const auto& c : h.coroots()) EXPECT_TRUE(s(c).is_zero());
        }
    }
    EXPECT_GT(subsystems, 20);
}

TEST(EndoscopicSubsystem, RejectsUnstableSelection) {
    RootDatum a2 = from_cartan(cartan_matrix('A', 2), IsogenyForm::SimplyConnected, c2());
    RootDatum outer = a2.with_action(GaloisLattice::from_generators(c2(), 2, {{1, diagram_matrix({1, 0})}}));
    try {
        endoscopic_subsystem(ReductivePair::trivial_center(outer), chi({{1, 3}, {0, 1}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotGaloisStable);
    }
}

TEST(ValidateRefined, Examples) {
    ReductivePair p = ReductivePair::full_center(sl2(trivial_group()));
    RefinedEndoscopicDatum zero(p, TorsionCharacter::zero(1), p.datum());
    EXPECT_TRUE(validate_refined(zero).valid());

    TorsionCharacter s_dot = chi({{1, 4}});
    RefinedEndoscopicDatum d(p, s_dot, endoscopic_subsystem(p, s_dot.pullback(p.center().matrix())));
    EXPECT_TRUE(validate_refined(d).valid());
    EXPECT_EQ(d.s().values()[0], QModZ(1, 2));

    // Wrong H: keeping the root although s(α^∨) = 1/2.
    RefinedEndoscopicDatum bad(p, s_dot, p.datum());
    auto r = validate_refined(bad);
    EXPECT_FALSE(r.coroots_match);
    EXPECT_TRUE(r.plus_condition);

    GaloisLattice swap = GaloisLattice::from_generators(c2(), 2, {{1, IntMatrix{{0, 1}, {1, 0}}}});
    ReductivePair t = ReductivePair::trivial_center(RootDatum::torus(swap));
    RefinedEndoscopicDatum moved(t, chi({{1, 2}, {0, 1}}), t.datum());
    auto m = validate_refined(moved);
    EXPECT_FALSE(m.valid());
    EXPECT_FALSE(m.plus_condition);
    EXPECT_TRUE(m.coroots_match);
    ASSERT_EQ(m.violations.size(), 1u);
    EXPECT_EQ(m.violations[0].substr(0, 3), "(c)");
}

TEST(LiftToRefined, Examples) {
    ReductivePair p = ReductivePair::full_center(sl2(trivial_group()));
    EXPECT_TRUE(lift_to_refined(p, TorsionCharacter::zero(1)).is_zero());
    TorsionCharacter lift = lift_to_refined(p, chi({{1, 2}}));
    EXPECT_TRUE(lift.values()[0] == QModZ(1, 4) || lift.values()[0] == QModZ(3, 4));
    auto lifts = all_lifts(p, chi({{1, 2}}));
    std::set<std::string> got;
    for (const auto& l : lifts) got.insert(l.values()[0].to_string());
    EXPECT_EQ(got, (std::set<std::string>{"1/4", "3/4"}));

    ReductivePair q = ReductivePair::trivial_center(sl2(trivial_group()));
    EXPECT_EQ(lift_to_refined(q, chi({{1, 2}})), chi({{1, 2}}));
}

TEST(LiftToRefined, LiftsFormTorsor) {
    Rng rng(99);
    for (const auto& e : reductive_catalogue()) {
        if (!e.full_center) continue;
        const ReductivePair& p = e.pair;
        // s = lift of a character that kills IY: start from ℚ/ℤ multiples of the component characters.
        std::vector<TorsionCharacter> plus = quotient_characters(augmentation_sublattice(p.center().y()));
        TorsionCharacter s = TorsionCharacter::zero(p.rank());
        for (const auto& c : plus) s = s + Integer(uniform(rng, 0, 3)) * c;
        auto lifts = all_lifts(p, s);
        EXPECT_EQ(Integer(static_cast<unsigned long>(lifts.size())), p.center().index()) << e.name;
        std::set<std::vector<std::string>> distinct;
        for (const auto& l : lifts) {
            EXPECT_EQ(l.pullback(p.center().matrix()), s);
            std::vector<std::string> key;
            for (const auto& v : l.values()) key.push_back(v.to_string());
            distinct.insert(key);
            RootDatum h;
            try {
                h = endoscopic_subsystem(p, s);
            } catch (const Error&) {
                continue;
            }
            EXPECT_TRUE(validate_refined(RefinedEndoscopicDatum(p, l, h)).valid()) << e.name;
        }
        EXPECT_EQ(distinct.size(), lifts.size());
    }
}

TEST(TransferPairingTerm, Examples) {
    GaloisLattice sgn = GaloisLattice::from_generators(c2(), 1, {{1, IntMatrix{{-1}}}});
    IsogenyPair mu2(EquivariantMap(sgn, sgn, IntMatrix{{2}}));
    EXPECT_TRUE(transfer_pairing_term(InvariantClass(mu2, Vector{0}), chi({{1, 4}})).is_zero());
    EXPECT_EQ(transfer_pairing_term(InvariantClass(mu2, Vector{1}), chi({{1, 4}})), QModZ(3, 4));
    // Denominator divides the order of the class in ℤ/4.
    EXPECT_EQ(transfer_pairing_term(InvariantClass(mu2, Vector{2}), chi({{1, 4}})).order() % 2, 0);
    try {
        transfer_pairing_term(InvariantClass(mu2, Vector{1}), chi({{1, 8}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CharacterNotPlus);
    }
}

TEST(TransferPairingTerm, RepresentativeIndependence) {
    Rng rng(3);
    auto groups = small_groups();
    for (int trial = 0; trial < 30; ++trial) {
        auto g = make_group(groups[uniform(rng, 0, groups.size() - 1)]);
        IsogenyPair p = random_pair(rng, g, 3, 36);
        FinAbGroup h = rigid_h1_torus(p);
        SubLattice ia = augmentation_sublattice(p.y()).image(p.matrix());
        for (const auto& s_dot : quotient_characters(ia))
            for (const auto& lift : h.generator_lifts()) {
                QModZ base = transfer_pairing_term(InvariantClass(p, lift), s_dot);
                for (std::size_t i = 0; i < ia.rank(); ++i) {
                    Vector shifted = add(lift, ia.basis().row(i));
                    EXPECT_EQ(transfer_pairing_term(InvariantClass(p, shifted), s_dot), base);
                }
            }
    }
}

TEST(EnlargeCenter, Examples) {
    IsogenyPair a = diagonal_mu(2), b = diagonal_mu(4);
    FinAbGroup h = rigid_h1_torus(a);
    int checked = 0;
    for (const auto& lift : h.generator_lifts())
        for (const auto& s_dot : quotient_characters(augmentation_sublattice(a.y()).image(a.matrix()))) {
            InvariantClass inv(a, lift);
            TorsionCharacter s_ddot = enlarge_character(a, b, s_dot);
            EnlargementReport r = enlarge_center_invariance(a, b, inv, s_dot, s_ddot);
            EXPECT_TRUE(r.equal());
            // Direct evaluation on the Z′ side.
            IntMatrix k = center_inclusion(a, b);
            EXPECT_EQ(r.term_large, -s_ddot(k.apply(lift)));
            ++checked;
        }
    EXPECT_GT(checked, 0);

    // Z = Z′ with representatives differing by an element of IY.
    IsogenyPair sl2_mu2 = ReductivePair::full_center(sl2(c2()).with_action(
                                                         GaloisLattice::from_generators(c2(), 1, {{1, IntMatrix{{-1}}}})))
                              .center();
    TorsionCharacter s_dot = chi({{1, 4}});
    EnlargementReport same = enlarge_center_invariance(sl2_mu2, sl2_mu2, InvariantClass(sl2_mu2, Vector{5}), s_dot, s_dot);
    EXPECT_TRUE(same.equal());
    EXPECT_EQ(same.term_small, QModZ(3, 4));

    // A preimage that does not restrict correctly is reported.
    EnlargementReport wrong = enlarge_center_invariance(a, b, InvariantClass(a, h.generator_lifts().at(0)),
                                                        quotient_characters(augmentation_sublattice(a.y()).image(a.matrix())).at(0),
                                                        TorsionCharacter::zero(2));
    EXPECT_FALSE(wrong.restriction_matches);
}

TEST(EnlargeCenter, CatalogueNestedCenters) {
    auto cat = reductive_catalogue();
    int checked = 0;
    for (std::size_t i = 0; i + 1 < cat.size(); ++i) {
        if (cat[i].full_center || !cat[i + 1].full_center) continue;
        const IsogenyPair& small = cat[i].pair.center();
        const IsogenyPair& large = cat[i + 1].pair.center();
        SubLattice ia = augmentation_sublattice(small.y()).image(small.matrix());
        FinAbGroup rigid = rigid_h1_torus(small);
        for (const auto& lift : rigid.generator_lifts())
            for (const auto& s_dot : quotient_characters(ia)) {
                auto r = enlarge_center_invariance(small, large, InvariantClass(small, lift), s_dot,
                                                   enlarge_character(small, large, s_dot));
                EXPECT_TRUE(r.equal()) << cat[i].name;
                ++checked;
            }
    }
    EXPECT_GT(checked, 10);
}
