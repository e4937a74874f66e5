#include <catch2/catch_amalgamated.hpp>

#include "osclat/group.hpp"

using namespace osclat;

namespace {

StructureMatrix square_B()
{
    return StructureMatrix(Angle{AngleBase::pi_half, 0}, Scalar(0), Scalar(1));
}

StructureMatrix corner_B(AngleBase base, long k = 0)
{
    return StructureMatrix(Angle{base, k}, Scalar(Rational(1, 2)), Scalar::sqrt_d(Rational(1, 2)));
}

} // namespace

TEST_CASE("structure matrices square to minus the identity")
{
    CHECK(square_B().bxy() * square_B().bxy() == -Mat2::identity());
    CHECK(corner_B(AngleBase::pi_third).bxy() * corner_B(AngleBase::pi_third).bxy() ==
          -Mat2::identity());
    StructureMatrix generic(Angle{AngleBase::pi, 0}, Scalar(Rational(1, 4)),
                            Scalar(Rational(3, 2)));
    CHECK(generic.bxy() * generic.bxy() == -Mat2::identity());
    CHECK_THROWS_AS(StructureMatrix(Angle{AngleBase::pi, 0}, Scalar(0), Scalar(-1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(StructureMatrix(Angle{AngleBase::pi, 0}, Scalar(0), Scalar(0)),
                    std::invalid_argument);
}

TEST_CASE("integer exponentials of the admissible angles")
{
    // Quarter turn at the square point, order four.
    StructureMatrix sq = square_B();
    CHECK(sq.exp_tB(1) == Mat2(0, -1, 1, 0));
    CHECK(sq.exp_tB(2) == -Mat2::identity());
    CHECK(sq.exp_tB(4) == Mat2::identity());
    CHECK(sq.exp_tB(-1) == Mat2(0, 1, -1, 0));

    // Hexagonal family at the corner point.
    CHECK(corner_B(AngleBase::pi_third).exp_tB(1) == Mat2(1, -1, 1, 0));
    CHECK(corner_B(AngleBase::two_pi_third).exp_tB(1) == Mat2(0, -1, 1, -1));
    CHECK(corner_B(AngleBase::pi_third, 1).exp_tB(1) == Mat2(-1, 1, -1, 0));  // 4pi/3
    CHECK(corner_B(AngleBase::two_pi_third, 1).exp_tB(1) == Mat2(0, 1, -1, 1)); // 5pi/3

    // Half and full turns are point independent.
    StructureMatrix generic(Angle{AngleBase::pi, 0}, Scalar(Rational(1, 4)),
                            Scalar(Rational(3, 2)));
    CHECK(generic.exp_tB(1) == -Mat2::identity());
    StructureMatrix full(Angle{AngleBase::pi, 1}, Scalar(Rational(1, 4)), Scalar(Rational(3, 2)));
    CHECK(full.exp_tB(1) == Mat2::identity());
    StructureMatrix threehalf(Angle{AngleBase::pi_half, 1}, Scalar(0), Scalar(1));
    CHECK(threehalf.exp_tB(1) == Mat2(0, 1, -1, 0));
}

TEST_CASE("rotation orders of the admissible angles")
{
    CHECK(angle_rotation_order(Angle{AngleBase::pi_third, 0}) == 6);
    CHECK(angle_rotation_order(Angle{AngleBase::pi_half, 0}) == 4);
    CHECK(angle_rotation_order(Angle{AngleBase::two_pi_third, 0}) == 3);
    CHECK(angle_rotation_order(Angle{AngleBase::pi, 0}) == 2);
    CHECK(angle_rotation_order(Angle{AngleBase::pi, 1}) == 1);
    CHECK(angle_rotation_order(Angle{AngleBase::pi_third, 1}) == 3);     // 4pi/3
    CHECK(angle_rotation_order(Angle{AngleBase::two_pi_third, 1}) == 6); // 5pi/3
    CHECK(angle_rotation_order(Angle{AngleBase::pi_half, 1}) == 4);      // 3pi/2
}

TEST_CASE("inadmissible angle multiples are rejected")
{
    CHECK_FALSE(angle_from_over_pi(Rational(1, 4)).has_value());
    CHECK_FALSE(angle_from_over_pi(Rational(1, 6)).has_value());
    CHECK_FALSE(angle_from_over_pi(Rational(7, 5)).has_value());
    CHECK_FALSE(angle_from_over_pi(Rational(0)).has_value());
    CHECK_FALSE(angle_from_over_pi(Rational(-1, 2)).has_value());
    CHECK(angle_from_over_pi(Rational(5, 2)) == Angle{AngleBase::pi_half, 2});
    CHECK(angle_from_over_pi(Rational(2)) == Angle{AngleBase::pi, 1});
    CHECK(angle_from_over_pi(Rational(5, 3)) == Angle{AngleBase::two_pi_third, 1});
    CHECK_FALSE(trig_of_pi_multiple(Rational(1, 5)).has_value());
}

TEST_CASE("group multiplication twists the plane part by the exponential")
{
    StructureMatrix B = square_B();
    SymplecticForm  form = SymplecticForm::standard(1);
    GroupElement    g(Scalar(0), Vec2(1, 0), 1);
    GroupElement    h(Scalar(0), Vec2(0, 1), 0);
    // e^B(0,1) = (-1,0), so the plane parts cancel and the cocycle vanishes.
    CHECK(multiply(g, h, form, B) == GroupElement(Scalar(0), Vec2(), 1));
    CHECK(multiply(h, g, form, B) == GroupElement(Scalar(Rational(-1, 2)), Vec2(1, 1), 1));

    GroupElement e = GroupElement::identity();
    CHECK(multiply(g, e, form, B) == g);
    CHECK(multiply(e, g, form, B) == g);
    CHECK(multiply(g, invert(g, B), form, B) == e);
    CHECK(multiply(invert(h, B), h, form, B) == e);
}

TEST_CASE("group multiplication is associative")
{
    StructureMatrix B = corner_B(AngleBase::pi_third);
    SymplecticForm  form = SymplecticForm::standard(3);
    GroupElement    g(Scalar(Rational(1, 2)), Vec2(Scalar(Rational(1, 3)), Scalar(2)), 2);
    GroupElement    h(Scalar::sqrt_d(), Vec2(Scalar(Rational(-1, 2)), Scalar(Rational(5, 3))), -1);
    GroupElement    k(Scalar(-1), Vec2(Scalar(1), Scalar::sqrt_d(Rational(1, 2))), 3);
    CHECK(multiply(multiply(g, h, form, B), k, form, B) ==
          multiply(g, multiply(h, k, form, B), form, B));
    CHECK(invert(multiply(g, h, form, B), B) ==
          multiply(invert(h, B), invert(g, B), form, B));
}

TEST_CASE("powers agree with repeated multiplication")
{
    StructureMatrix B = square_B();
    SymplecticForm  form = SymplecticForm::standard(2);
    GroupElement    g(Scalar(Rational(1, 3)), Vec2(Scalar(1), Scalar(Rational(1, 2))), 1);
    GroupElement    acc = GroupElement::identity();
    for (int n = 0; n <= 5; ++n) {
        CHECK(power(g, n, form, B) == acc);
        acc = multiply(acc, g, form, B);
    }
    CHECK(power(g, -3, form, B) == invert(power(g, 3, form, B), B));
}

TEST_CASE("standard lattice membership uses the half skew correction")
{
    // (z, xi, 0) lies in the scale-r lattice iff z - (r/2) xi1 xi2 is integral.
    CHECK(gamma_member(GroupElement(Scalar(Rational(1, 2)), Vec2(1, 1), 0), 1));
    CHECK_FALSE(gamma_member(GroupElement(Scalar(0), Vec2(1, 1), 0), 1));
    CHECK(gamma_member(GroupElement(Scalar(1), Vec2(2, 3), 0), 2));
    CHECK(gamma_member(GroupElement(Scalar(-4), Vec2(0, 7), 3), 3) == false); // nonzero t
    CHECK_FALSE(gamma_member(GroupElement(Scalar(0), Vec2(Scalar(Rational(1, 2)), Scalar(0)), 0), 2));
    CHECK_FALSE(gamma_member(GroupElement(Scalar::sqrt_d(), Vec2(1, 0), 0), 1));

    // The commutator of the two unit translations is the r-th central power.
    StructureMatrix B = square_B();
    SymplecticForm  form = SymplecticForm::standard(2);
    GroupElement    alpha(Scalar(0), Vec2(1, 0), 0), beta(Scalar(0), Vec2(0, 1), 0);
    GroupElement    comm = multiply(multiply(alpha, beta, form, B),
                                    invert(multiply(beta, alpha, form, B), B), form, B);
    CHECK(comm == GroupElement(Scalar(2), Vec2(), 0));
}

TEST_CASE("heisenberg conjugation needs a time-zero argument")
{
    StructureMatrix B = square_B();
    SymplecticForm  form = SymplecticForm::standard(2);
    GroupElement    g(Scalar(Rational(1, 4)), Vec2(Scalar(Rational(1, 2)), Scalar(0)), 1);
    GroupElement    h(Scalar(1), Vec2(2, -1), 0);
    GroupElement    direct = multiply(multiply(g, h, form, B), invert(g, B), form, B);
    CHECK(conjugate_heisenberg(g, h, form, B) == direct);
    CHECK(conjugate_heisenberg(g, h, form, B).t == 0);
    CHECK_THROWS_AS(conjugate_heisenberg(g, g, form, B), std::invalid_argument);
}

TEST_CASE("definiteness of the twisted form is decided exactly")
{
    StructureMatrix B = square_B();
    SymplecticForm  form = SymplecticForm::standard(1);
    CHECK(definiteness_check(form, B) == -1);
    CHECK(definiteness_sign(form, -B.bxy()) == 1);
    StructureMatrix generic(Angle{AngleBase::pi, 0}, Scalar(Rational(1, 4)),
                            Scalar(Rational(3, 2)));
    CHECK(definiteness_check(form, generic) == -1);
    // omega(M., .) degenerates for M without the rotation shape.
    CHECK_THROWS_AS(definiteness_sign(form, Mat2::identity()), std::invalid_argument);
    CHECK_THROWS_AS(definiteness_sign(form, Mat2(1, 1, 0, 1)), std::invalid_argument);
}

TEST_CASE("symplectic form scale must be a nonzero rational")
{
    CHECK_THROWS_AS(SymplecticForm(Rational(0)), std::invalid_argument);
    CHECK(SymplecticForm::standard(3).r() == 3);
    SymplecticForm form = SymplecticForm::standard(2);
    CHECK(omega(form, Vec2(1, 0), Vec2(0, 1)) == Scalar(2));
    CHECK(omega(form, Vec2(0, 1), Vec2(1, 0)) == Scalar(-2));
}
