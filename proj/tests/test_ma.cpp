#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace blowup3;

namespace {

RatVector rv(std::initializer_list<long long> xs) {
    RatVector v;
    for (long long x : xs) v.push_back(Rat(x));
    return v;
}

Rat residual_of(const std::vector<std::pair<std::string, Rat>>& table, const std::string& name) {
    for (const auto& [n, r] : table)
        if (n == name) return r;
    FAIL("no residual for " + name);
    return Rat(0);
}

/// Test-side ring computation of the blowdown defect, independent of the
/// checked implementation's internal cross-check.
H22Class ring_defect(const VarietyModel& blown, const VarietyModel& parent, const H11Class& a,
                     const H11Class& b) {
    const H11Class down_up = blowup_pullback11(blown, parent, blowup_pushforward11(blown, parent, a));
    return blowup_pushforward22(blown, parent, blown.cup(down_up, b)) -
           blowup_pushforward22(blown, parent, blown.cup(a, b));
}

}  // namespace

TEST_CASE("condition (C) residuals of JX", "[ma]") {
    const PseudoIsoModel jx = standard_jx();
    const VarietyModel& x = jx.target();

    const auto on_h = condition_c_residual(jx, x.h11("H"));
    REQUIRE(on_h.size() == 6);
    for (const auto& [name, r] : on_h) CHECK(r == 1);

    const H11Class eta(rv({2, -1, -1, -1, -1}));
    CHECK(condition_c_holds(condition_c_residual(jx, eta)));

    // E0 meets exactly the strict transforms of lines through e0, i.e. the
    // Sigma~_{i,j} with 0 outside {i,j}.
    const auto on_e0 = condition_c_residual(jx, x.h11("E0"));
    CHECK(residual_of(on_e0, "Sigma~_{1,2}") == 1);
    CHECK(residual_of(on_e0, "Sigma~_{1,3}") == 1);
    CHECK(residual_of(on_e0, "Sigma~_{2,3}") == 1);
    CHECK(residual_of(on_e0, "Sigma~_{0,1}") == 0);
    CHECK(residual_of(on_e0, "Sigma~_{0,2}") == 0);
    CHECK(residual_of(on_e0, "Sigma~_{0,3}") == 0);

    CHECK(condition_c_holds(condition_c_residual(jx, H11Class(5))));  // zero class
}

TEST_CASE("condition (C) kernel", "[ma]") {
    const PseudoIsoModel jx = standard_jx();
    const auto kernel = condition_c_kernel(jx);
    REQUIRE(kernel.size() == 1);
    CHECK(kernel[0].c == rv({2, -1, -1, -1, -1}));
    for (const auto& name : jx.indeterminacy_backward())
        CHECK(jx.target().pair(kernel[0], jx.target().curve(name).cls) == 0);

    const VarietyModel x = standard_x();
    const PseudoIsoModel no_indet = identity_map(x);
    CHECK(condition_c_kernel(no_indet).size() == 5);

    // A single constraint against L0 kills only E0.
    const PseudoIsoModel one_curve("one", x, x, RatMatrix::identity(5), std::nullopt, false, {},
                                   {"L0"});
    const auto k = condition_c_kernel(one_curve);
    REQUIRE(k.size() == 4);
    CHECK(k[0].c == rv({1, 0, 0, 0, 0}));
    CHECK(k[1].c == rv({0, 0, 1, 0, 0}));
    CHECK(k[2].c == rv({0, 0, 0, 1, 0}));
    CHECK(k[3].c == rv({0, 0, 0, 0, 1}));
}

TEST_CASE("blowdown defect on the line blowup", "[ma]") {
    const VarietyModel p3 = projective3();
    const VarietyModel m = blowup_rational_curve(p3, "line", "E", "F");
    const H11Class e = m.h11("E");

    const DefectReport rep = blowdown_defect(m, p3, e, e);
    CHECK(rep.defect_class == p3.h22("H2"));  // (-1)(-1) [line]
    CHECK_FALSE(rep.vanishes);
    CHECK(residual_of(rep.per_curve_residuals, "line") == 1);

    const DefectReport pulled = blowdown_defect(m, p3, m.h11("H"), e);
    CHECK(pulled.vanishes);
    CHECK(pulled.defect_class.is_zero());
}

TEST_CASE("blowdown defect matches the ring computation on random classes", "[ma][property]") {
    const VarietyModel p3 = projective3();
    const VarietyModel line_blowup = blowup_rational_curve(p3, "line", "E", "F");
    const VarietyModel x = standard_x();
    const VarietyModel sigma_blowup = blowup_rational_curve(x, "Sigma~_{0,1}", "E01", "F01");

    testing::Rng rng(80808);
    const std::pair<const VarietyModel*, const VarietyModel*> cases[] = {{&line_blowup, &p3},
                                                                         {&sigma_blowup, &x}};
    for (const auto& [blown, parent] : cases) {
        const H22Class& gamma = blown->provenance().back().center_class;
        const H22Class fiber = blown->h22(blown->provenance().back().new_curve);
        for (int i = 0; i < 100; ++i) {
            const H11Class a = testing::rand_h11(rng, *blown);
            const H11Class b = testing::rand_h11(rng, *blown);
            const H22Class formula = (blown->pair(a, fiber) * blown->pair(b, fiber)) * gamma;
            REQUIRE(ring_defect(*blown, *parent, a, b) == formula);
            REQUIRE(blowdown_defect(*blown, *parent, a, b).defect_class == formula);
        }
    }
}

TEST_CASE("blowdown defect rejects mismatched towers and corrupt tables", "[ma]") {
    const VarietyModel p3 = projective3();
    const VarietyModel m = blowup_rational_curve(p3, "line", "E", "F");
    const VarietyModel pt = blowup_point(p3, "p", "EP", "LP");
    CHECK_THROWS_AS(blowdown_defect(pt, p3, pt.h11("EP"), pt.h11("EP")), std::invalid_argument);
    CHECK_THROWS_AS(blowdown_defect(p3, p3, p3.h11("H"), p3.h11("H")), std::invalid_argument);

    // Corrupt the E-cup-E entry: formula and ring sides now disagree.
    std::vector<H22Class> cup;
    for (std::size_t i = 0; i < m.h11_dim(); ++i)
        for (std::size_t j = 0; j < m.h11_dim(); ++j) cup.push_back(m.cup_entry(i, j));
    cup[1 * m.h11_dim() + 1] = H22Class(rv({1, 0}));
    const VarietyModel corrupt(m.name(), m.h11_basis(), m.h22_basis(), m.pairing_matrix(), cup,
                               m.canonical(), m.curves(), m.provenance());
    CHECK_THROWS_AS(blowdown_defect(corrupt, p3, corrupt.h11("E"), corrupt.h11("E")),
                    std::logic_error);
}

TEST_CASE("pullback-product defect of JX", "[ma]") {
    const PseudoIsoModel jx = standard_jx();
    const VarietyModel& x = jx.source();
    const H11Class h = x.h11("H");
    const H11Class eta(rv({2, -1, -1, -1, -1}));

    const DefectReport hh = pullback_product_defect(jx, h, h);
    CHECK(hh.defect_class.c == rv({6, -3, -3, -3, -3}));
    CHECK_FALSE(hh.vanishes);
    for (const auto& [name, r] : hh.per_curve_residuals) CHECK(r == 1);

    CHECK(pullback_product_defect(jx, eta, eta).vanishes);
    // The vanishing clause needs the condition only on the first argument.
    CHECK(pullback_product_defect(jx, eta, h).vanishes);
    CHECK(pullback_product_defect(jx, eta, x.h11("E0")).vanishes);

    const DefectReport he0 = pullback_product_defect(jx, h, x.h11("E0"));
    CHECK(he0.defect_class.c == rv({3, 0, -2, -2, -2}));
    CHECK_FALSE(he0.vanishes);
}

TEST_CASE("defect vanishes for every second argument once condition (C) holds",
          "[ma][property]") {
    const PseudoIsoModel jx = standard_jx();
    const VarietyModel& x = jx.source();
    const H11Class eta(rv({2, -1, -1, -1, -1}));
    testing::Rng rng(11235);
    for (int i = 0; i < 100; ++i) {
        const H11Class theta1 = testing::rand_rat(rng) * eta;
        REQUIRE(condition_c_holds(condition_c_residual(jx, theta1)));
        REQUIRE(pullback_product_defect(jx, theta1, testing::rand_h11(rng, x)).vanishes);
    }
}

TEST_CASE("defect is bilinear in the cohomology classes", "[ma][property]") {
    const PseudoIsoModel jx = standard_jx();
    const VarietyModel& x = jx.source();
    testing::Rng rng(271828);
    for (int i = 0; i < 50; ++i) {
        const H11Class t1 = testing::rand_h11(rng, x), t1p = testing::rand_h11(rng, x);
        const H11Class t2 = testing::rand_h11(rng, x);
        const Rat lambda = testing::rand_rat(rng);
        const H22Class lhs = pullback_product_defect(jx, t1 + lambda * t1p, t2).defect_class;
        const H22Class rhs = pullback_product_defect(jx, t1, t2).defect_class +
                             lambda * pullback_product_defect(jx, t1p, t2).defect_class;
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("total masses", "[ma]") {
    const PseudoIsoModel jx = standard_jx();
    const VarietyModel& x = jx.source();

    const H11Class h_minus_e0(rv({1, -1, 0, 0, 0}));
    CHECK(jx.pullback11(h_minus_e0).c == rv({2, -2, -1, -1, -1}));
    CHECK(ma_total_mass(jx, h_minus_e0) == -3);

    CHECK(ma_total_mass(identity_map(x), x.h11("H")) == 1);

    const H11Class eta(rv({2, -1, -1, -1, -1}));
    CHECK(ma_total_mass(jx, eta) == 4);
    CHECK(ma_total_mass(jx, eta) == x.triple(eta, eta, eta));  // eta is fixed by the involution
}

TEST_CASE("nef check against the declared generators", "[ma]") {
    const VarietyModel x = standard_x();
    const H11Class eta(rv({2, -1, -1, -1, -1}));

    const NefVerdict eta_verdict = nef_check(x, eta);
    CHECK(eta_verdict.is_nef_on_generators);
    CHECK_FALSE(eta_verdict.witness.has_value());
    // The 15 generator values: 2 against the generic line, 1 against each
    // L_i and each line through one point, 0 against the Sigma~ lines.
    for (const auto& [name, info] : x.curves()) {
        if (!info.nef_generator) continue;
        const Rat v = x.pair(eta, info.cls);
        if (name == "line")
            CHECK(v == 2);
        else if (name.rfind("Sigma", 0) == 0)
            CHECK(v == 0);
        else
            CHECK(v == 1);
    }

    CHECK(nef_check(x, x.h11("H")).is_nef_on_generators);

    const NefVerdict e0_verdict = nef_check(x, x.h11("E0"));
    CHECK_FALSE(e0_verdict.is_nef_on_generators);
    REQUIRE(e0_verdict.witness.has_value());
    CHECK(e0_verdict.witness->first == "L0");
    CHECK(e0_verdict.witness->second == -1);

    CHECK(nef_check(x, H11Class(5)).is_nef_on_generators);  // zero class

    const VarietyModel bare("bare", {"H"}, {"H2"}, RatMatrix::identity(1),
                            {H22Class(rv({1}))}, H11Class(rv({-4})), {}, {});
    CHECK_THROWS_AS(nef_check(bare, H11Class(rv({1}))), std::invalid_argument);
}

TEST_CASE("defect reports are consistent records", "[ma][property]") {
    const PseudoIsoModel jx = standard_jx();
    const VarietyModel& x = jx.source();
    testing::Rng rng(64406);
    for (int i = 0; i < 50; ++i) {
        const DefectReport rep =
            pullback_product_defect(jx, testing::rand_h11(rng, x), testing::rand_h11(rng, x));
        REQUIRE(rep.vanishes == rep.defect_class.is_zero());
        REQUIRE(rep.context == "pullback-product");
        REQUIRE(rep.per_curve_residuals.size() == 6);
    }
}
