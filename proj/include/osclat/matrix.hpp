#pragma once

#include <string>

#include "osclat/errors.hpp"
#include "osclat/scalar.hpp"

namespace osclat {

struct Vec2 {
    Scalar c1, c2;

    Vec2() = default;
    Vec2(Scalar a, Scalar b) : c1(std::move(a)), c2(std::move(b)) {}

    Vec2 operator+(const Vec2& o) const { return {c1 + o.c1, c2 + o.c2}; }
    Vec2 operator-(const Vec2& o) const { return {c1 - o.c1, c2 - o.c2}; }
    Vec2 operator-() const { return {-c1, -c2}; }

    bool operator==(const Vec2& o) const { return c1 == o.c1 && c2 == o.c2; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }

    bool is_zero() const { return c1.is_zero() && c2.is_zero(); }
    bool is_rational() const { return c1.is_rational() && c2.is_rational(); }
    bool is_integral() const
    {
        return is_rational() && is_integer(c1.rat()) && is_integer(c2.rat());
    }
};

inline Vec2 operator*(const Scalar& s, const Vec2& v) { return {s * v.c1, s * v.c2}; }

struct Mat2 {
    Scalar m11, m12, m21, m22;

    Mat2() = default;
    Mat2(Scalar a, Scalar b, Scalar c, Scalar d)
        : m11(std::move(a)), m12(std::move(b)), m21(std::move(c)), m22(std::move(d))
    {
    }

    static Mat2 identity() { return {1, 0, 0, 1}; }

    Mat2 operator+(const Mat2& o) const
    {
        return {m11 + o.m11, m12 + o.m12, m21 + o.m21, m22 + o.m22};
    }
    Mat2 operator-(const Mat2& o) const
    {
        return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22};
    }
    Mat2 operator-() const { return {-m11, -m12, -m21, -m22}; }

    Mat2 operator*(const Mat2& o) const
    {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }

    Vec2 operator*(const Vec2& v) const
    {
        return {m11 * v.c1 + m12 * v.c2, m21 * v.c1 + m22 * v.c2};
    }

    bool operator==(const Mat2& o) const
    {
        return m11 == o.m11 && m12 == o.m12 && m21 == o.m21 && m22 == o.m22;
    }
    bool operator!=(const Mat2& o) const { return !(*this == o); }

    Scalar det() const { return m11 * m22 - m12 * m21; }
    Scalar trace() const { return m11 + m22; }

    Mat2 inverse() const
    {
        Scalar d = det();
        if (d.is_zero())
            throw InternalError("Mat2::inverse: singular matrix");
        Scalar r = d.inverse();
        return {r * m22, r * -m12, r * -m21, r * m11};
    }

    bool is_rational() const
    {
        return m11.is_rational() && m12.is_rational() && m21.is_rational() && m22.is_rational();
    }

    bool is_integral() const
    {
        return is_rational() && is_integer(m11.rat()) && is_integer(m12.rat()) &&
               is_integer(m21.rat()) && is_integer(m22.rat());
    }
};

inline Mat2 operator*(const Scalar& s, const Mat2& m)
{
    return {s * m.m11, s * m.m12, s * m.m21, s * m.m22};
}

// Solves M * w = rhs exactly; throws on singular M.
inline Vec2 solve2(const Mat2& m, const Vec2& rhs)
{
    Scalar d = m.det();
    if (d.is_zero())
        throw InternalError("solve2: singular system");
    return {(rhs.c1 * m.m22 - rhs.c2 * m.m12) / d, (m.m11 * rhs.c2 - m.m21 * rhs.c1) / d};
}

} // namespace osclat
