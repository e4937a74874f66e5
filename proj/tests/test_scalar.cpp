#include <catch2/catch_amalgamated.hpp>

#include "osclat/scalar.hpp"

using namespace osclat;

TEST_CASE("rational floor and fractional part handle negatives")
{
    CHECK(rat_floor(Rational(7, 2)) == 3);
    CHECK(rat_floor(Rational(-7, 2)) == -4);
    CHECK(rat_floor(Rational(-4)) == -4);
    CHECK(frac_mod1(Rational(-1, 4)) == Rational(3, 4));
    CHECK(frac_mod1(Rational(9, 4)) == Rational(1, 4));
    CHECK(frac_mod1(Rational(2)) == 0);
}

TEST_CASE("rational gcd generates the group spanned by its arguments")
{
    CHECK(rat_gcd(Rational(1, 2), Rational(1, 3)) == Rational(1, 6));
    CHECK(rat_gcd(Rational(3, 4), Rational(1, 2)) == Rational(1, 4));
    CHECK(rat_gcd(Rational(-2), Rational(3)) == Rational(1));
    CHECK(rat_gcd(Rational(0), Rational(5, 7)) == Rational(5, 7));
}

TEST_CASE("rational literals parse strictly and round trip")
{
    CHECK(parse_rational("3/4", "t") == Rational(3, 4));
    CHECK(parse_rational("-12", "t") == Rational(-12));
    CHECK(format_rational(Rational(-5, 3)) == "-5/3");
    CHECK(parse_rational(format_rational(Rational(22, 7)), "t") == Rational(22, 7));
    CHECK_THROWS_AS(parse_rational("", "t"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0", "t"), ParseError);
    CHECK_THROWS_AS(parse_rational("1//2", "t"), ParseError);
    CHECK_THROWS_AS(parse_rational("2.5", "t"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2 ", "t"), ParseError);
}

TEST_CASE("field arithmetic in Q(sqrt 3)")
{
    REQUIRE(discriminant() == 3);
    Scalar a = Scalar(1) + Scalar::sqrt_d(Rational(2));     // 1 + 2 sqrt3
    Scalar b = Scalar(3) - Scalar::sqrt_d();                // 3 - sqrt3
    CHECK(a * b == Scalar(Rational(-3), Rational(5)));      // -3 + 5 sqrt3
    CHECK((a - a).is_zero());
    CHECK(a + b == Scalar(Rational(4), Rational(1)));

    Scalar g = Scalar(1) + Scalar::sqrt_d();
    CHECK(g * g.inverse() == Scalar(1));
    CHECK(g.inverse() == Scalar(Rational(-1, 2), Rational(1, 2)));
    CHECK_THROWS_AS(Scalar(0).inverse(), InternalError);
}

TEST_CASE("sign comparison is exact near close irrational values")
{
    // sqrt3 = 1.732..., straddled by 3/2 and 7/4.
    CHECK((Scalar::sqrt_d() - Scalar(Rational(3, 2))).sign() > 0);
    CHECK((Scalar::sqrt_d() - Scalar(Rational(7, 4))).sign() < 0);
    CHECK((Scalar::sqrt_d() - Scalar::sqrt_d()).sign() == 0);
    CHECK(Scalar(Rational(-1, 1000000)).sign() < 0);
    // Mixed-sign coefficients: 5 - 2 sqrt3 > 0 but 3 - 2 sqrt3 < 0.
    CHECK(Scalar(Rational(5), Rational(-2)).sign() > 0);
    CHECK(Scalar(Rational(3), Rational(-2)).sign() < 0);
}

TEST_CASE("floor brackets irrational values")
{
    CHECK(Scalar::sqrt_d().floor() == 1);
    CHECK((-Scalar::sqrt_d()).floor() == -2);
    CHECK((Scalar(1) + Scalar::sqrt_d()).floor() == 2);
    CHECK(Scalar(Rational(10), Rational(3)).floor() == 15); // 10 + 3 sqrt3 = 15.19...
    CHECK(Scalar(Rational(-5, 2)).floor() == -3);
    CHECK(Scalar(Rational(4)).floor() == 4);
}

TEST_CASE("rational part extraction is checked")
{
    CHECK(Scalar(Rational(2, 3)).as_rational() == Rational(2, 3));
    CHECK(Scalar(Rational(2, 3)).is_rational());
    CHECK_FALSE(Scalar::sqrt_d().is_rational());
    CHECK_THROWS_AS(Scalar::sqrt_d().as_rational(), InternalError);
}

TEST_CASE("scalar literals round trip through the canonical format")
{
    const char* cases[] = {"0",           "-3",          "1/2",      "sqrt(3)",
                           "-sqrt(3)",    "2/3*sqrt(3)", "-1/2*sqrt(3)",
                           "1/2+1/3*sqrt(3)", "1/2-sqrt(3)", "-2+sqrt(3)"};
    for (const char* text : cases) {
        Scalar v = parse_scalar(text, "t");
        CHECK(parse_scalar(format_scalar(v), "t") == v);
    }
    CHECK(format_scalar(Scalar(Rational(1, 2), Rational(1, 2))) == "1/2+1/2*sqrt(3)");
    CHECK(format_scalar(Scalar(Rational(0), Rational(-1))) == "-sqrt(3)");
    CHECK_THROWS_AS(parse_scalar("sqrt(2)", "t"), ParseError);
    CHECK_THROWS_AS(parse_scalar("1/2+", "t"), ParseError);
    CHECK_THROWS_AS(parse_scalar("", "t"), ParseError);
    CHECK_THROWS_AS(parse_scalar("sqrt(3)*2", "t"), ParseError);
}

TEST_CASE("parse errors carry the field path")
{
    try {
        parse_scalar("x+y", "lattice.x");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("lattice.x") != std::string::npos);
    }
}

TEST_CASE("integer helpers")
{
    CHECK(int_gcd(Integer(6), Integer(-4)) == 2);
    CHECK(int_lcm(Integer(4), Integer(6)) == 12);
    CHECK(is_integer(Rational(8, 2)));
    CHECK_FALSE(is_integer(Rational(8, 3)));
    CHECK(to_integer(Rational(-9, 3)) == -3);
    CHECK_THROWS_AS(to_integer(Rational(1, 2)), InternalError);
    CHECK(floor_div(Integer(-7), Integer(2)) == -4);
    CHECK(floor_div(Integer(7), Integer(-2)) == -4);
    CHECK(floor_div(Integer(6), Integer(3)) == 2);
}
