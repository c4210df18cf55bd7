#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace blowup3;

namespace {

RatVector rv(std::initializer_list<long long> xs) {
    RatVector v;
    for (long long x : xs) v.push_back(Rat(x));
    return v;
}

/// The two models must agree under the bijection induced by basis labels.
void check_isomorphic_under_labels(const VarietyModel& a, const VarietyModel& b) {
    REQUIRE(a.h11_dim() == b.h11_dim());
    REQUIRE(a.h22_dim() == b.h22_dim());
    std::vector<std::size_t> sigma(a.h11_dim()), tau(a.h22_dim());
    for (std::size_t i = 0; i < a.h11_dim(); ++i) sigma[i] = b.h11_index(a.h11_basis()[i]);
    for (std::size_t j = 0; j < a.h22_dim(); ++j) tau[j] = b.h22_index(a.h22_basis()[j]);

    for (std::size_t i = 0; i < a.h11_dim(); ++i)
        for (std::size_t j = 0; j < a.h22_dim(); ++j)
            REQUIRE(a.pairing_matrix()(i, j) == b.pairing_matrix()(sigma[i], tau[j]));
    for (std::size_t i = 0; i < a.h11_dim(); ++i)
        for (std::size_t j = 0; j < a.h11_dim(); ++j)
            for (std::size_t k = 0; k < a.h22_dim(); ++k)
                REQUIRE(a.cup_entry(i, j).c[k] == b.cup_entry(sigma[i], sigma[j]).c[tau[k]]);
    for (std::size_t i = 0; i < a.h11_dim(); ++i)
        REQUIRE(a.canonical().c[i] == b.canonical().c[sigma[i]]);
    REQUIRE(a.curves().size() == b.curves().size());
    for (const auto& [name, info] : a.curves()) {
        REQUIRE(b.has_curve(name));
        const CurveInfo& other = b.curve(name);
        for (std::size_t k = 0; k < a.h22_dim(); ++k)
            REQUIRE(info.cls.c[k] == other.cls.c[tau[k]]);
        REQUIRE(info.effective == other.effective);
        REQUIRE(info.nef_generator == other.nef_generator);
        REQUIRE(info.indeterminacy_eligible == other.indeterminacy_eligible);
    }
}

}  // namespace

TEST_CASE("projective 3-space", "[blowup]") {
    const VarietyModel p3 = projective3();
    const H11Class h = p3.h11("H");
    CHECK(p3.triple(h, h, h) == 1);
    CHECK(p3.pair(p3.canonical(), p3.cup(h, h)) == -4);
    CHECK(p3.validate().all_pass());
    CHECK(p3.has_curve("line"));
    CHECK(p3.curve("line").nef_generator);
}

TEST_CASE("point blowup", "[blowup]") {
    const VarietyModel one = blowup_point(projective3(), "p", "E", "L");
    const H11Class e = one.h11("E");
    CHECK(one.triple(e, e, e) == 1);
    CHECK(one.pair(e, one.h22("L")) == -1);
    CHECK(one.canonical().c == rv({-4, 2}));
    CHECK(one.validate().all_pass());

    CHECK_THROWS_AS(blowup_point(one, "q", "E", "L2"), std::invalid_argument);
    CHECK_THROWS_AS(blowup_point(one, "q", "E2", "L"), std::invalid_argument);
}

TEST_CASE("canonical class of X", "[blowup]") {
    const VarietyModel x = standard_x();
    CHECK(x.canonical().c == rv({-4, 2, 2, 2, 2}));
    // Adjunction cross-check on the strict-transform lines: K.gamma + n = -2
    // with n derived below in the curve-blowup tests; here K.gamma = 0.
    for (const auto& [name, info] : x.curves())
        if (name.rfind("Sigma", 0) == 0) CHECK(x.pair(x.canonical(), info.cls) == 0);
}

TEST_CASE("curve blowup of a line in P^3", "[blowup]") {
    const VarietyModel m = blowup_rational_curve(projective3(), "line", "E", "F");
    REQUIRE(m.provenance().size() == 1);
    CHECK(m.provenance().back().normal_degree == 2);  // n = -K.gamma - 2 = 4 - 2

    const H11Class e = m.h11("E");
    const H11Class pulled_h = m.h11("H");
    CHECK(m.pair(e, m.h22("F")) == -1);
    CHECK(m.triple(e, e, e) == -2);

    // Fibration oracle: the pencil of planes through the line pulls back to a
    // base-point-free class, so its top self-intersection vanishes.
    const H11Class pencil = pulled_h - e;
    CHECK(m.triple(pencil, pencil, pencil) == 0);

    CHECK(m.validate().all_pass());
    CHECK_THROWS_AS(blowup_rational_curve(projective3(), "nope"), std::out_of_range);
}

TEST_CASE("curve blowup with derived negative normal degree", "[blowup]") {
    const VarietyModel x = standard_x();
    CHECK(x.pair(x.canonical(), x.curve("Sigma~_{0,1}").cls) == 0);  // so n = -0 - 2
    const VarietyModel m = blowup_rational_curve(x, "Sigma~_{0,1}", "E01", "F01");
    REQUIRE(m.provenance().back().normal_degree == -2);
    const H11Class e = m.h11("E01");
    CHECK(m.triple(e, e, e) == 2);
    CHECK(m.pair(m.canonical(), m.h22("F01")) == -1);
    CHECK(m.validate().all_pass());
}

TEST_CASE("derive is refused for non-rational centers", "[blowup]") {
    VarietyModel p3 = projective3();
    CurveInfo cubic{H22Class(rv({3})), true, false, false, /*rational=*/false};
    const VarietyModel m = register_curve(p3, "elliptic_cubic", cubic);
    CHECK_THROWS_AS(blowup_rational_curve(m, "elliptic_cubic", "E", "F"), std::invalid_argument);
    // Supplying the degree explicitly is fine: deg N = -K.C + 2g - 2 = 12.
    const VarietyModel blown = blowup_rational_curve(m, "elliptic_cubic", "E", "F", Rat(12));
    CHECK(blown.triple(blown.h11("E"), blown.h11("E"), blown.h11("E")) == -12);
}

TEST_CASE("standard X registry", "[blowup]") {
    const VarietyModel x = standard_x();
    CHECK(x.name() == "X");
    CHECK(x.curve("Sigma~_{0,1}").cls == x.h22("H2") - x.h22("L2") - x.h22("L3"));
    CHECK(x.curve("Sigma~_{2,3}").cls == x.h22("H2") - x.h22("L0") - x.h22("L1"));
    CHECK(x.pair(x.h11("E2"), x.curve("Sigma~_{0,1}").cls) == 1);
    CHECK(x.curve("Sigma~_{0,1}").indeterminacy_eligible);
    CHECK_FALSE(x.curve("L0").indeterminacy_eligible);
    CHECK(x.nef_generators().size() == 15);
    CHECK(x.validate().all_pass());
}

TEST_CASE("standard Z", "[blowup]") {
    const VarietyModel z = standard_z();
    CHECK(z.name() == "Z");
    CHECK(z.h11_dim() == 11);
    CHECK(z.h22_dim() == 11);
    for (const auto& step : z.provenance())
        if (step.kind == BlowupStep::Kind::RationalCurve) {
            const H11Class e = z.h11(step.new_divisor);
            CHECK(step.normal_degree == -2);
            CHECK(z.triple(e, e, e) == 2);
            CHECK(z.pair(e, z.h22(step.new_curve)) == -1);
        }
    CHECK(z.exceptional_divisors().size() == 10);
    CHECK(z.validate().all_pass());
}

TEST_CASE("projection formula along towers", "[blowup][property]") {
    testing::Rng rng(90125);
    const VarietyModel p3 = projective3();
    const VarietyModel line_blowup = blowup_rational_curve(p3, "line", "E", "F");
    const VarietyModel x = standard_x();
    const VarietyModel z = standard_z();

    const std::pair<const VarietyModel*, const VarietyModel*> towers[] = {
        {&line_blowup, &p3}, {&x, &p3}, {&z, &x}};
    for (const auto& [blown, parent] : towers) {
        for (int i = 0; i < 100; ++i) {
            const H11Class a = testing::rand_h11(rng, *parent);
            const H11Class b = testing::rand_h11(rng, *parent);
            const H11Class c = testing::rand_h11(rng, *parent);
            REQUIRE(blown->triple(blowup_pullback11(*blown, *parent, a),
                                  blowup_pullback11(*blown, *parent, b),
                                  blowup_pullback11(*blown, *parent, c)) ==
                    parent->triple(a, b, c));
        }
    }
}

TEST_CASE("pushforward inverts pullback on basis classes", "[blowup]") {
    const VarietyModel x = standard_x();
    const VarietyModel z = standard_z();
    for (std::size_t i = 0; i < x.h11_dim(); ++i) {
        const H11Class a = x.basis11(i);
        CHECK(blowup_pushforward11(z, x, blowup_pullback11(z, x, a)) == a);
    }
    for (std::size_t j = 0; j < x.h22_dim(); ++j) {
        const H22Class c = x.basis22(j);
        CHECK(blowup_pushforward22(z, x, blowup_pullback22(z, x, c)) == c);
    }
    // Exceptional classes die under pushforward.
    CHECK(blowup_pushforward11(z, x, z.h11("E_{0,1}")).is_zero());
    CHECK(blowup_pushforward22(z, x, z.h22("F_{0,1}")).is_zero());
}

TEST_CASE("blowing up the six disjoint curves in any order gives the same model",
          "[blowup]") {
    const VarietyModel x = standard_x();
    auto build = [&](const std::vector<std::pair<int, int>>& order) {
        VarietyModel m = x;
        for (const auto& [i, j] : order) {
            const std::string suffix = "_{" + std::to_string(i) + "," + std::to_string(j) + "}";
            m = blowup_rational_curve(m, "Sigma~" + suffix, "E" + suffix, "F" + suffix);
        }
        return with_name(m, "Z");
    };
    const VarietyModel z1 = build({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    const VarietyModel z2 = build({{2, 3}, {0, 3}, {1, 2}, {0, 1}, {1, 3}, {0, 2}});
    check_isomorphic_under_labels(z1, z2);
    check_isomorphic_under_labels(z1, standard_z());
}

TEST_CASE("tower helpers reject foreign models", "[blowup]") {
    const VarietyModel x = standard_x();
    const VarietyModel other = blowup_point(projective3(), "q", "Q", "LQ");
    CHECK_THROWS_AS(blowup_pullback11(x, other, other.h11("Q")), std::invalid_argument);
}
