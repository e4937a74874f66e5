#pragma once

#include <optional>
#include <string>

#include "osclat/errors.hpp"
#include "osclat/rational.hpp"
#include "osclat/scalar.hpp"

namespace osclat {

// The rotation angles whose matrix exponential can have integer entries.
enum class AngleBase { pi_third, pi_half, two_pi_third, pi };

inline Rational angle_base_over_pi(AngleBase b)
{
    switch (b) {
    case AngleBase::pi_third: return Rational(1, 3);
    case AngleBase::pi_half: return Rational(1, 2);
    case AngleBase::two_pi_third: return Rational(2, 3);
    case AngleBase::pi: return Rational(1);
    }
    throw InternalError("angle_base_over_pi: bad enum value");
}

inline std::string angle_base_name(AngleBase b)
{
    switch (b) {
    case AngleBase::pi_third: return "pi/3";
    case AngleBase::pi_half: return "pi/2";
    case AngleBase::two_pi_third: return "2pi/3";
    case AngleBase::pi: return "pi";
    }
    throw InternalError("angle_base_name: bad enum value");
}

inline std::optional<AngleBase> angle_base_from_name(const std::string& name)
{
    if (name == "pi/3")
        return AngleBase::pi_third;
    if (name == "pi/2")
        return AngleBase::pi_half;
    if (name == "2pi/3")
        return AngleBase::two_pi_third;
    if (name == "pi")
        return AngleBase::pi;
    return std::nullopt;
}

/**
 * Admissible rotation angle lambda = base + k*pi with k >= 0.  These are
 * exactly the positive angles with 2*cos(lambda) an integer, the necessary
 * shape for integer structure exponentials.
 */
struct Angle {
    AngleBase base;
    long      k = 0;

    bool operator==(const Angle& o) const { return base == o.base && k == o.k; }
    bool operator!=(const Angle& o) const { return !(*this == o); }
};

inline Rational angle_over_pi(const Angle& a)
{
    return angle_base_over_pi(a.base) + Rational(a.k);
}

// Inverse of angle_over_pi on its image; nullopt when q*pi is not admissible.
inline std::optional<Angle> angle_from_over_pi(const Rational& q)
{
    if (q <= 0)
        return std::nullopt;
    Rational f = frac_mod1(q);
    if (f == Rational(1, 3))
        return Angle{AngleBase::pi_third, static_cast<long>(rat_floor(q).convert_to<long>())};
    if (f == Rational(1, 2))
        return Angle{AngleBase::pi_half, static_cast<long>(rat_floor(q).convert_to<long>())};
    if (f == Rational(2, 3))
        return Angle{AngleBase::two_pi_third, static_cast<long>(rat_floor(q).convert_to<long>())};
    if (f == 0)
        return Angle{AngleBase::pi, static_cast<long>(rat_floor(q).convert_to<long>()) - 1};
    return std::nullopt;
}

struct Trig {
    Scalar c, s;
};

// Exact cos/sin of q*pi for the eight admissible residues of q mod 2.  The
// sqrt(3)/2 entries require discriminant 3.
inline std::optional<Trig> trig_of_pi_multiple(const Rational& q)
{
    Rational f = q - 2 * Rational(rat_floor(q / 2));
    auto     half_root3 = [](int sgn) {
        if (discriminant() != 3)
            throw NonLatticeError("trig_of_pi_multiple: sin value needs sqrt(3) but the active "
                                  "discriminant is " + std::to_string(discriminant()));
        return Scalar::sqrt_d(Rational(sgn, 2));
    };
    if (f == 0)
        return Trig{Scalar(1), Scalar(0)};
    if (f == Rational(1, 3))
        return Trig{Scalar(Rational(1, 2)), half_root3(1)};
    if (f == Rational(1, 2))
        return Trig{Scalar(0), Scalar(1)};
    if (f == Rational(2, 3))
        return Trig{Scalar(Rational(-1, 2)), half_root3(1)};
    if (f == 1)
        return Trig{Scalar(-1), Scalar(0)};
    if (f == Rational(4, 3))
        return Trig{Scalar(Rational(-1, 2)), half_root3(-1)};
    if (f == Rational(3, 2))
        return Trig{Scalar(0), Scalar(-1)};
    if (f == Rational(5, 3))
        return Trig{Scalar(Rational(1, 2)), half_root3(-1)};
    return std::nullopt;
}

inline Trig angle_trig(const Angle& a)
{
    auto t = trig_of_pi_multiple(angle_over_pi(a));
    internal_check(t.has_value(), "angle_trig: admissible angle has no trig table entry");
    return *t;
}

// Multiplicative order of the rotation by lambda, i.e. the least m >= 1 with
// m*lambda in 2*pi*Z.  Always one of 1, 2, 3, 4, 6.
inline long angle_rotation_order(const Angle& a)
{
    Rational q = angle_over_pi(a); // order = least m with m*q even
    Integer  u = numerator(q), v = denominator(q);
    Integer  m = 2 * v / int_gcd(u, 2 * v);
    long     order = m.convert_to<long>();
    internal_check(order >= 1 && order <= 6, "angle_rotation_order: order outside 1..6");
    return order;
}

} // namespace osclat
