#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace blowup3;

TEST_CASE("rationals reduce to canonical form", "[rational]") {
    CHECK(rat_num(make_rat(2, 4)) == 1);
    CHECK(rat_den(make_rat(2, 4)) == 2);
    CHECK(rat_num(make_rat(-6, -4)) == 3);
    CHECK(rat_den(make_rat(-6, -4)) == 2);
    CHECK(rat_num(make_rat(1, -2)) == -1);
    CHECK(rat_den(make_rat(1, -2)) == 2);
    CHECK(rat_num(make_rat(0, 7)) == 0);
    CHECK(rat_den(make_rat(0, 7)) == 1);
    CHECK_THROWS_AS(make_rat(1, 0), std::invalid_argument);
}

TEST_CASE("rational text form", "[rational]") {
    CHECK(rat_str(make_rat(3, 2)) == "3/2");
    CHECK(rat_str(make_rat(-3, 2)) == "-3/2");
    CHECK(rat_str(make_rat(7)) == "7");
    CHECK(rat_str(Rat(0)) == "0");

    CHECK(rat_parse("3/2") == make_rat(3, 2));
    CHECK(rat_parse("-3/2") == make_rat(-3, 2));
    CHECK(rat_parse("2/4") == make_rat(1, 2));
    CHECK(rat_parse("7") == Rat(7));
    CHECK(rat_parse("-0") == Rat(0));
    CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("a/2"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
}

TEST_CASE("rational invariants and field laws on random triples", "[rational][property]") {
    testing::Rng rng(20240901);
    std::uniform_int_distribution<long long> num(-1000, 1000);
    std::uniform_int_distribution<long long> den(1, 400);
    for (int i = 0; i < 1000; ++i) {
        const Rat a = make_rat(num(rng), num(rng) >= 0 ? den(rng) : -den(rng));
        const Rat b = make_rat(num(rng), den(rng));
        const Rat c = make_rat(num(rng), den(rng));
        REQUIRE(rat_den(a) > 0);
        REQUIRE(gcd(abs(rat_num(a)), rat_den(a)) == 1);
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        const Rat sum = a + b;
        REQUIRE(rat_den(sum) > 0);
        REQUIRE(gcd(abs(rat_num(sum)), rat_den(sum)) == 1);
    }
}
