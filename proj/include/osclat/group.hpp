#pragma once

#include <string>

#include "osclat/angle.hpp"
#include "osclat/errors.hpp"
#include "osclat/matrix.hpp"
#include "osclat/rational.hpp"
#include "osclat/scalar.hpp"

namespace osclat {

/**
 * Scaled standard symplectic form omega(xi, eta) = scale * (xi1*eta2 - xi2*eta1)
 * on R^2.  The standard lattice form uses a positive integer scale r.
 */
struct SymplecticForm {
    Rational scale;

    explicit SymplecticForm(Rational s) : scale(std::move(s))
    {
        if (scale == 0)
            throw std::invalid_argument("SymplecticForm: scale must be nonzero");
    }

    static SymplecticForm standard(const Integer& r)
    {
        if (r < 1)
            throw std::invalid_argument("SymplecticForm::standard: r must be a positive integer");
        return SymplecticForm(Rational(r));
    }

    Integer r() const
    {
        internal_check(is_integer(scale) && scale > 0,
                       "SymplecticForm::r: scale is not a positive integer");
        return numerator(scale);
    }
};

inline Scalar omega(const SymplecticForm& form, const Vec2& a, const Vec2& b)
{
    return Rational(form.scale) * (a.c1 * b.c2 - a.c2 * b.c1);
}

/**
 * Structure data (lambda, x, y) of the derivation matrix lambda * B_{x,y},
 * where B_{x,y} = [[x/y, -x^2/y - y], [1/y, -x/y]] has square -I.  The point
 * (x, y) lies in the upper half plane and lambda is an admissible angle, so
 * exp(t * lambda * B_{x,y}) = cos(t*lambda) I + sin(t*lambda) B_{x,y} is exact
 * at every integer t.
 */
struct StructureMatrix {
    Angle  lambda;
    Scalar x, y;

    StructureMatrix(Angle l, Scalar px, Scalar py)
        : lambda(l), x(std::move(px)), y(std::move(py))
    {
        if (y.sign() <= 0)
            throw std::invalid_argument("StructureMatrix: y must be positive");
        internal_check(bxy() * bxy() == -Mat2::identity(),
                       "StructureMatrix: B_{x,y} squared is not -I");
    }

    Mat2 bxy() const
    {
        Scalar inv_y = y.inverse();
        return {x * inv_y, -(x * x) * inv_y - y, inv_y, -x * inv_y};
    }

    Mat2 exp_tB(const Integer& t) const
    {
        auto trig = trig_of_pi_multiple(Rational(t) * angle_over_pi(lambda));
        internal_check(trig.has_value(), "StructureMatrix::exp_tB: angle left the admissible set");
        return trig->c * Mat2::identity() + trig->s * bxy();
    }
};

/**
 * Element (z, xi, t) of the oscillator group built from a symplectic form and
 * a structure matrix; the product twists the xi part by exp(t * lambda * B).
 * Exact arithmetic restricts t to integers, which covers every group that
 * contains a lattice in normalized position.
 */
struct GroupElement {
    Scalar  z;
    Vec2    xi;
    Integer t;

    GroupElement() : z(0), xi(), t(0) {}
    GroupElement(Scalar zz, Vec2 x, Integer tt) : z(std::move(zz)), xi(std::move(x)), t(std::move(tt)) {}

    static GroupElement identity() { return GroupElement(); }

    bool operator==(const GroupElement& o) const { return z == o.z && xi == o.xi && t == o.t; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
};

inline GroupElement multiply(const GroupElement& g, const GroupElement& h,
                             const SymplecticForm& form, const StructureMatrix& B)
{
    Vec2 eta = B.exp_tB(g.t) * h.xi;
    return GroupElement(g.z + h.z + Rational(1, 2) * omega(form, g.xi, eta), g.xi + eta, g.t + h.t);
}

inline GroupElement invert(const GroupElement& g, const StructureMatrix& B)
{
    return GroupElement(-g.z, -(B.exp_tB(-g.t) * g.xi), -g.t);
}

inline GroupElement power(const GroupElement& g, const Integer& n, const SymplecticForm& form,
                          const StructureMatrix& B)
{
    if (n < 0)
        return power(invert(g, B), -n, form, B);
    GroupElement acc  = GroupElement::identity();
    GroupElement base = g;
    Integer      k    = n;
    while (k > 0) {
        if (k % 2 == 1)
            acc = multiply(acc, base, form, B);
        base = multiply(base, base, form, B);
        k /= 2;
    }
    return acc;
}

// Membership in the standard lattice of the time-zero subgroup: t = 0, integer
// xi, and z - (r/2) xi1 xi2 an integer.  The same formula covers even and odd r.
inline bool gamma_member(const GroupElement& g, const Integer& r)
{
    if (g.t != 0 || !g.xi.is_integral() || !g.z.is_rational())
        return false;
    Rational shifted = g.z.rat() - Rational(r, 2) * g.xi.c1.rat() * g.xi.c2.rat();
    return is_integer(shifted);
}

// Conjugation of a time-zero element: both the direct product computation and
// the closed form (v + omega(xi, exp(tB) eta), exp(tB) eta, 0) are evaluated
// and must agree.
inline GroupElement conjugate_heisenberg(const GroupElement& g, const GroupElement& h,
                                         const SymplecticForm& form, const StructureMatrix& B)
{
    if (h.t != 0)
        throw std::invalid_argument("conjugate_heisenberg: conjugated element must have t = 0");
    GroupElement direct = multiply(multiply(g, h, form, B), invert(g, B), form, B);
    Vec2         eta    = B.exp_tB(g.t) * h.xi;
    GroupElement closed(h.z + omega(form, g.xi, eta), eta, 0);
    internal_check(direct == closed, "conjugate_heisenberg: closed form disagrees with product");
    return direct;
}

// Sign of the quadratic form xi -> omega(M xi, xi); throws when the form is
// not definite.  In coordinates the form is A xi1^2 + C xi1 xi2 + E xi2^2, so
// definiteness is the exact condition C^2 - 4 A E < 0.  Passing B_{x,y}
// decides the definiteness of the full structure matrix, whose positive
// factor lambda cannot change any sign.
inline int definiteness_sign(const SymplecticForm& form, const Mat2& m)
{
    Scalar a = Rational(form.scale) * -m.m21;
    Scalar c = Rational(form.scale) * (m.m11 - m.m22);
    Scalar e = Rational(form.scale) * m.m12;
    if ((c * c - Rational(4) * a * e).sign() >= 0)
        throw std::invalid_argument("definiteness_sign: omega(M xi, xi) is not definite");
    return a.sign();
}

inline int definiteness_check(const SymplecticForm& form, const StructureMatrix& B)
{
    return definiteness_sign(form, B.bxy());
}

} // namespace osclat
