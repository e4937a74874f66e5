#include <catch2/catch_amalgamated.hpp>

#include "osclat/normalize.hpp"

using namespace osclat;

namespace {

RawGenerator gen(Scalar z, Rational x1, Rational x2, Rational t)
{
    return RawGenerator{std::move(z), std::move(x1), std::move(x2), std::move(t)};
}

// Standard generating set of the scale-r lattice plus a time-one element.
RawLatticeInput standard_input(int r, Rational lambda_over_pi)
{
    RawLatticeInput in;
    in.form_scale     = Rational(r);
    in.lambda_over_pi = std::move(lambda_over_pi);
    in.x              = Scalar(0);
    in.y              = Scalar(1);
    in.generators     = {gen(Scalar(1), 0, 0, 0), gen(Scalar(0), 1, 0, 0),
                         gen(Scalar(0), 0, 1, 0), gen(Scalar(0), 0, 0, 1)};
    return in;
}

} // namespace

TEST_CASE("column reduction finds a basis and kernel of integer columns")
{
    std::vector<std::array<Integer, 2>> cols = {{2, 0}, {3, 3}, {0, 6}};
    ColumnReduction                     red  = column_reduce_2xN(cols);
    REQUIRE(red.rank == 2);
    CHECK(red.h1[0] > 0);
    CHECK(red.h2[0] == 0);
    // M * U reproduces [h1 h2 0 ...]; in particular trailing U columns are
    // kernel vectors.
    auto image = [&](std::size_t j) {
        std::array<Integer, 2> v{};
        for (std::size_t i = 0; i < cols.size(); ++i) {
            v[0] += cols[i][0] * red.u[i][j];
            v[1] += cols[i][1] * red.u[i][j];
        }
        return v;
    };
    CHECK(image(0) == red.h1);
    CHECK(image(1) == red.h2);
    CHECK(image(2) == std::array<Integer, 2>{0, 0});
    // A rank-one family.
    std::vector<std::array<Integer, 2>> line = {{2, 4}, {3, 6}, {-1, -2}};
    CHECK(column_reduce_2xN(line).rank == 1);
    std::vector<std::array<Integer, 2>> zero = {{0, 0}, {0, 0}};
    CHECK(column_reduce_2xN(zero).rank == 0);
}

TEST_CASE("extended gcd returns certifying coefficients")
{
    std::vector<Integer> v = {6, 4};
    ExtendedGcd          g = extended_gcd(v);
    CHECK(g.g == 2);
    CHECK(g.coeff[0] * 6 + g.coeff[1] * 4 == 2);
    std::vector<Integer> w = {0, 5, 0, 3};
    ExtendedGcd          h = extended_gcd(w);
    CHECK(h.g == 1);
    CHECK(h.coeff[1] * 5 + h.coeff[3] * 3 == 1);
}

TEST_CASE("heisenberg invariant of the standard lattices")
{
    std::vector<RawGenerator> g1 = {gen(Scalar(1), 0, 0, 0), gen(Scalar(0), 1, 0, 0),
                                    gen(Scalar(0), 0, 1, 0)};
    CHECK(heisenberg_invariant(g1, Rational(1)) == 1);
    CHECK(heisenberg_invariant(g1, Rational(2)) == 2);

    // A sheared presentation of the scale-2 lattice.
    std::vector<RawGenerator> sheared = {gen(Scalar(1), 0, 0, 0), gen(Scalar(1), 1, 1, 0),
                                         gen(Scalar(0), 0, 1, 0)};
    CHECK(heisenberg_invariant(sheared, Rational(2)) == 2);

    // Redundant and composite generators do not change the invariant.
    std::vector<RawGenerator> redundant = {gen(Scalar(1), 0, 0, 0), gen(Scalar(0), 1, 0, 0),
                                           gen(Scalar(0), 0, 1, 0), gen(Scalar(3), 2, 1, 0),
                                           gen(Scalar(-1), 0, 0, 0)};
    CHECK(heisenberg_invariant(redundant, Rational(3)) == 3);

    CHECK_THROWS_AS(heisenberg_invariant({gen(Scalar(0), 1, 0, 1)}, Rational(1)),
                    std::invalid_argument);
}

TEST_CASE("degenerate generating sets are rejected")
{
    // Rank-deficient plane projection.
    std::vector<RawGenerator> thin = {gen(Scalar(1), 0, 0, 0), gen(Scalar(0), 1, 0, 0),
                                      gen(Scalar(0), 2, 0, 0)};
    CHECK_THROWS_AS(heisenberg_invariant(thin, Rational(1)), NonLatticeError);

    // Incommensurable central values cannot come from a lattice.
    std::vector<RawGenerator> dense = {gen(Scalar(1), 0, 0, 0), gen(Scalar::sqrt_d(), 0, 0, 0),
                                       gen(Scalar(0), 1, 0, 0), gen(Scalar(0), 0, 1, 0)};
    CHECK_THROWS_AS(heisenberg_invariant(dense, Rational(1)), NonLatticeError);

    // Plane part produces a fractional pairing against the center.
    std::vector<RawGenerator> frac = {gen(Scalar(Rational(1, 3)), 0, 0, 0),
                                      gen(Scalar(0), 1, 0, 0), gen(Scalar(0), 0, 1, 0)};
    CHECK(heisenberg_invariant(frac, Rational(1)) == 3);
}

TEST_CASE("normalization of an already standard presentation is the identity")
{
    NormalizationResult n = normalize(standard_input(2, Rational(1, 2)));
    CHECK(n.r == 2);
    CHECK(n.S == Mat2::identity());
    CHECK(n.a == Scalar(1));
    CHECK(n.t0 == Rational(1));
    CHECK(n.z0 == Scalar(0));
    CHECK(n.xi0 == std::pair<Rational, Rational>(0, 0));
    CHECK(n.lambda == Angle{AngleBase::pi_half, 0});
    CHECK(n.x == Scalar(0));
    CHECK(n.y == Scalar(1));
}

TEST_CASE("time rescaling folds the smallest positive time to one")
{
    // Angle pi/4 with time step 2: the rescaled angle is pi/2.
    RawLatticeInput in;
    in.form_scale     = 2;
    in.lambda_over_pi = Rational(1, 4);
    in.x              = Scalar(0);
    in.y              = Scalar(1);
    in.generators     = {gen(Scalar(1), 0, 0, 0), gen(Scalar(0), 1, 0, 0),
                         gen(Scalar(0), 0, 1, 0), gen(Scalar(5), 0, Rational(1, 2), 2)};
    NormalizationResult n = normalize(in);
    CHECK(n.t0 == Rational(2));
    CHECK(n.lambda == Angle{AngleBase::pi_half, 0});
    CHECK(n.xi0 == std::pair<Rational, Rational>(0, Rational(1, 2)));
    CHECK(n.z0 == Scalar(5));
    CHECK(n.r == 2);

    // Time subgroup generated by 1/3 under angle 3pi/2.
    RawLatticeInput third = standard_input(1, Rational(3, 2));
    third.generators.push_back(gen(Scalar(0), 0, 0, Rational(1, 3)));
    NormalizationResult m = normalize(third);
    CHECK(m.t0 == Rational(1, 3));
    CHECK(m.lambda == Angle{AngleBase::pi_half, 0});

    // A rescale that leaves the admissible angle set cannot be a lattice.
    RawLatticeInput bad = standard_input(1, Rational(1, 4));
    CHECK_THROWS_AS(normalize(bad), NonLatticeError);
}

TEST_CASE("normalization inverts a unimodular shear of the plane lattice")
{
    // Push the standard scale-2 generators through xi |-> T xi with
    // T = [[1,1],[0,1]]; z parts follow the Heisenberg embedding.
    RawLatticeInput in;
    in.form_scale     = 2;
    in.lambda_over_pi = Rational(1);
    in.x              = Scalar(0);
    in.y              = Scalar(1);
    in.generators     = {gen(Scalar(1), 0, 0, 0), gen(Scalar(0), 1, 0, 0),
                         gen(Scalar(0), 1, 1, 0), gen(Scalar(0), 0, 0, 1)};
    NormalizationResult n = normalize(in);
    CHECK(n.r == 2);
    CHECK(n.t0 == Rational(1));
    CHECK(n.S.det() == Scalar(1));
    // The conjugated derivation stays at the square point for a half turn.
    CHECK(n.lambda == Angle{AngleBase::pi, 0});
    CHECK(n.xi0 == std::pair<Rational, Rational>(0, 0));
}

TEST_CASE("normalization requires a time direction")
{
    RawLatticeInput in;
    in.form_scale     = 1;
    in.lambda_over_pi = Rational(1, 2);
    in.x              = Scalar(0);
    in.y              = Scalar(1);
    in.generators     = {gen(Scalar(1), 0, 0, 0), gen(Scalar(0), 1, 0, 0),
                         gen(Scalar(0), 0, 1, 0)};
    CHECK_THROWS_AS(normalize(in), NonLatticeError);
}

TEST_CASE("normalized images of the generators stay in the produced lattice")
{
    // A messier presentation: scaled form, composite generators, offset
    // distinguished element.
    RawLatticeInput in;
    in.form_scale     = Rational(3);
    in.lambda_over_pi = Rational(1);
    in.x              = Scalar(0);
    in.y              = Scalar(1);
    in.generators     = {gen(Scalar(2), 0, 0, 0), gen(Scalar(1), 0, 0, 0),
                         gen(Scalar(0), 1, 0, 0), gen(Scalar(Rational(3, 2)), 1, 1, 0),
                         gen(Scalar(0), Rational(1, 3), 0, 1)};
    NormalizationResult n = normalize(in);
    CHECK(n.r == 3);
    CHECK(n.xi0.first == Rational(1, 3));
    CHECK(n.xi0.second == Rational(0));
}
