#include <catch2/catch_amalgamated.hpp>

#include "conserv/field.hpp"

using namespace conserv;

TEST_CASE("rationals are reduced with positive denominator") {
    Rationals Q;
    auto a = Q.div(Q.from_int(4), Q.from_int(-6));
    CHECK(Q.to_string(a) == "-2/3");
    CHECK(Q.to_string(Q.add(a, Q.from_int(1))) == "1/3");
    CHECK(Q.is_zero(Q.sub(a, a)));
    CHECK_THROWS_AS(Q.inv(Q.zero()), error);
}

TEST_CASE("prime field canonical residues and inverses") {
    PrimeField F5(5);
    CHECK(F5.from_int(-3) == 2);
    CHECK(F5.mul(3, 4) == 2);
    for (long long a = 1; a < 5; ++a) CHECK(F5.mul(a, F5.inv(a)) == 1);
    CHECK_THROWS_AS(F5.inv(0), error);
    CHECK_THROWS_AS(PrimeField(6), error);
}

TEST_CASE("field spec parsing") {
    CHECK(FieldSpec::parse("Q")->kind == FieldSpec::Kind::rationals);
    CHECK(FieldSpec::parse("F101")->p == 101);
    CHECK(!FieldSpec::parse("F4"));   // non-prime order: v1 restriction
    CHECK(!FieldSpec::parse("F"));
    CHECK(!FieldSpec::parse("GF8"));
    CHECK(FieldSpec::prime(7).name() == "F7");
}

TEST_CASE("exact token parsing rejects non-exact input") {
    Rationals Q;
    CHECK(Q.to_string(*Q.parse("-3")) == "-3");
    CHECK(Q.to_string(*Q.parse("4/6")) == "2/3");
    CHECK(!Q.parse("1.5"));
    CHECK(!Q.parse("1e3"));
    CHECK(!Q.parse("2/0"));
    CHECK(!Q.parse(" 1"));
    PrimeField F7(7);
    CHECK(!F7.parse("2/7")); // denominator vanishes in F7
    CHECK(*F7.parse("-3") == 4);
    CHECK(*F7.parse("2/3") == F7.div(2, 3));
}
