#include <catch2/catch_amalgamated.hpp>

#include "osclat/io.hpp"

using namespace osclat;

namespace {

void expect_parse_error(const std::string& text, const std::string& needle)
{
    try {
        parse_spec_text(text);
        FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
        INFO(e.what());
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
}

} // namespace

TEST_CASE("standard documents parse into validated specs")
{
    SpecDocument doc = parse_spec_text(R"json({"kind":"standard","r":2,"lambda":"pi/2",
        "x":"0","y":"1","xi":["0","1/2"],"z0":"7"})json");
    REQUIRE(doc.kind == SpecDocument::Kind::standard);
    REQUIRE(doc.spec.has_value());
    CHECK(doc.spec->r == 2);
    CHECK(doc.spec->B.lambda == Angle{AngleBase::pi_half, 0});
    CHECK(doc.spec->xi2 == Rational(1, 2));
    CHECK(doc.spec->z0 == Scalar(7));

    // xi0 is accepted as an alias, integers may be bare numbers, z0 defaults.
    SpecDocument alias = parse_spec_text(R"json({"kind":"standard","r":1,
        "lambda":{"base":"pi","k":1},"x":"1/4","y":"3/2","xi0":["0","0"]})json");
    CHECK(alias.spec->z0 == Scalar(0));
    CHECK(alias.spec->B.lambda == Angle{AngleBase::pi, 1});

    SpecDocument corner = parse_spec_text(R"json({"kind":"standard","r":1,"lambda":"pi/3",
        "x":"1/2","y":"1/2*sqrt(3)","xi":["1/2","0"]})json");
    CHECK(corner.spec->B.y == Scalar::sqrt_d(Rational(1, 2)));
}

TEST_CASE("generator documents parse into raw inputs")
{
    SpecDocument doc = parse_spec_text(R"json({"kind":"generators","form_scale":"2",
        "lambda":{"pi_multiple":"1/4"},"x":"0","y":"1",
        "generators":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],
                      ["5","0","1/2",2]]})json");
    REQUIRE(doc.kind == SpecDocument::Kind::generators);
    REQUIRE(doc.raw.has_value());
    CHECK(doc.raw->form_scale == Rational(2));
    CHECK(doc.raw->lambda_over_pi == Rational(1, 4));
    CHECK(doc.raw->generators.size() == 4);
    CHECK(doc.raw->generators[3].z == Scalar(5));
    CHECK(doc.raw->generators[3].t == Rational(2));

    // The admissible literal forms work here too.
    SpecDocument named = parse_spec_text(R"json({"kind":"generators","form_scale":1,
        "lambda":"pi","x":"0","y":"1","generators":[["1","0","0","0"],["0","1","0","0"],
        ["0","0","1","0"],["0","0","0","1"]]})json");
    CHECK(named.raw->lambda_over_pi == Rational(1));
}

TEST_CASE("parse errors name the offending field")
{
    expect_parse_error(R"json({"r":1})json", "kind");
    expect_parse_error(R"json({"kind":"other"})json", "kind");
    expect_parse_error(R"json({"kind":"standard","lambda":"pi","x":"0","y":"1","xi":["0","0"]})json",
                       "r");
    expect_parse_error(
        R"json({"kind":"standard","r":0,"lambda":"pi","x":"0","y":"1","xi":["0","0"]})json", "r");
    expect_parse_error(
        R"json({"kind":"standard","r":1,"lambda":"pi/5","x":"0","y":"1","xi":["0","0"]})json", "lambda");
    expect_parse_error(
        R"json({"kind":"standard","r":1,"lambda":{"base":"pi","k":-1},"x":"0","y":"1","xi":["0","0"]})json",
        "lambda.k");
    expect_parse_error(
        R"json({"kind":"standard","r":1,"lambda":{"pi_multiple":"1/4"},"x":"0","y":"1","xi":["0","0"]})json",
        "pi_multiple");
    expect_parse_error(R"json({"kind":"standard","r":1,"lambda":"pi","x":"0","y":"1"})json", "xi0");
    expect_parse_error(R"json({"kind":"standard","r":1,"lambda":"pi","x":"0","y":"1","xi":["0"]})json",
                       "xi0");
    expect_parse_error(
        R"json({"kind":"standard","r":1,"lambda":"pi","x":"0","y":"1","xi":["0","1/0"]})json", "xi0[1]");
    expect_parse_error(
        R"json({"kind":"standard","r":1,"lambda":"pi","x":"zebra","y":"1","xi":["0","0"]})json", "x");
    expect_parse_error(
        R"json({"kind":"standard","r":1,"lambda":"pi","x":"0","y":"-1","xi":["0","0"]})json", "y");
    expect_parse_error(R"json({"kind":"generators","form_scale":"0","lambda":"pi","x":"0","y":"1",
        "generators":[["0","0","0","1"]]})json",
                       "form_scale");
    expect_parse_error(R"json({"kind":"generators","form_scale":"1","lambda":"pi","x":"0","y":"1",
        "generators":[]})json",
                       "generators");
    expect_parse_error(R"json({"kind":"generators","form_scale":"1","lambda":"pi","x":"0","y":"1",
        "generators":[["0","0","1"]]})json",
                       "generators[0]");
    expect_parse_error("not json at all", "JSON");
}

TEST_CASE("classification output re-parses as an equivalent input")
{
    SpecDocument doc = parse_spec_text(R"json({"kind":"standard","r":2,"lambda":"pi/2",
        "x":"0","y":"1","xi":["1/2","0"],"z0":"7"})json");
    LatticeData  data = classify_lattice(*doc.spec);
    std::string  line = data_to_json(data).dump();

    SpecDocument back = parse_spec_text(line);
    REQUIRE(back.kind == SpecDocument::Kind::standard);
    CHECK(classify_lattice(*back.spec) == data);
    CHECK(data_to_json(classify_lattice(*back.spec)).dump() == line);
}

TEST_CASE("scalar and matrix serialization uses exact literals")
{
    LatticeData data{1, Angle{AngleBase::pi_third, 0},
                     FundamentalPoint(Scalar(Rational(1, 2)), Scalar::sqrt_d(Rational(1, 2))),
                     Rational(1, 2), Rational(0)};
    auto j = data_to_json(data);
    CHECK(j["y"] == "1/2*sqrt(3)");
    CHECK(j["xi0"][0] == "1/2");
    CHECK(j["lambda"]["base"] == "pi/3");
    CHECK(j["lambda"]["k"] == 0);
    CHECK(j["r"] == 1);

    auto m = mat_to_json(Mat2(1, -1, 0, 1));
    CHECK(m[0][1] == "-1");
    CHECK(m[1][0] == "0");
}
