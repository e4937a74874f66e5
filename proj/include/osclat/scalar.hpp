#pragma once

#include <cstdlib>
#include <string>

#include "osclat/errors.hpp"
#include "osclat/rational.hpp"

namespace osclat {

namespace detail {

inline bool square_free(long d)
{
    if (d < 2)
        return false;
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0)
            return false;
    return true;
}

inline long& discriminant_slot()
{
    static long d = [] {
        if (const char* env = std::getenv("OSCLAT_DISCRIMINANT")) {
            long v = std::atol(env);
            if (!square_free(v))
                throw ParseError("OSCLAT_DISCRIMINANT: value must be a square-free integer >= 2");
            return v;
        }
        return 3L;
    }();
    return d;
}

} // namespace detail

// Discriminant D of the coefficient field Q(sqrt(D)).  Global: every Scalar in
// a process lives in the same field.  Default 3 covers the hexagonal point.
inline long discriminant() { return detail::discriminant_slot(); }

inline void set_discriminant(long d)
{
    if (!detail::square_free(d))
        throw ParseError("set_discriminant: value must be a square-free integer >= 2");
    detail::discriminant_slot() = d;
}

inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

/**
 * Element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)).  All
 * arithmetic, comparison and floor operations are exact; D square-free keeps
 * the representation unique, so equality is coefficient-wise.
 */
class Scalar {
public:
    Scalar() : _a(0), _b(0) {}
    Scalar(int v) : _a(v), _b(0) {}
    Scalar(const Integer& v) : _a(v), _b(0) {}
    Scalar(const Rational& v) : _a(v), _b(0) {}
    Scalar(Rational a, Rational b) : _a(std::move(a)), _b(std::move(b)) {}

    static Scalar sqrt_d(const Rational& coeff = 1) { return Scalar(0, coeff); }

    const Rational& rat() const { return _a; }
    const Rational& irr() const { return _b; }

    bool is_zero() const { return _a == 0 && _b == 0; }
    bool is_rational() const { return _b == 0; }

    Rational as_rational() const
    {
        if (!is_rational())
            throw InternalError("Scalar::as_rational: " + str() + " has an irrational part");
        return _a;
    }

    Scalar operator-() const { return Scalar(-_a, -_b); }

    Scalar operator+(const Scalar& o) const { return Scalar(_a + o._a, _b + o._b); }
    Scalar operator-(const Scalar& o) const { return Scalar(_a - o._a, _b - o._b); }

    Scalar operator*(const Scalar& o) const
    {
        return Scalar(_a * o._a + _b * o._b * discriminant(), _a * o._b + _b * o._a);
    }

    Scalar inverse() const
    {
        Rational norm = _a * _a - _b * _b * discriminant();
        if (norm == 0)
            throw InternalError("Scalar::inverse: division by zero");
        return Scalar(_a / norm, -_b / norm);
    }

    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    bool operator==(const Scalar& o) const { return _a == o._a && _b == o._b; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Exact sign; |a| and |b|sqrt(D) are compared through their squares, so no
    // approximation enters.  a^2 = b^2 D with a, b nonzero would force D to be
    // a rational square, which square-freeness excludes.
    int sign() const
    {
        int sa = _a.sign();
        int sb = _b.sign();
        if (sb == 0)
            return sa;
        if (sa == 0 || sa == sb)
            return sb;
        Rational aa = _a * _a;
        Rational bb = _b * _b * discriminant();
        if (aa == bb)
            throw InternalError("Scalar::sign: discriminant is a rational square");
        return aa > bb ? sa : sb;
    }

    bool operator<(const Scalar& o) const { return (*this - o).sign() < 0; }
    bool operator>(const Scalar& o) const { return (*this - o).sign() > 0; }
    bool operator<=(const Scalar& o) const { return (*this - o).sign() <= 0; }
    bool operator>=(const Scalar& o) const { return (*this - o).sign() >= 0; }

    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    // Largest integer n <= value, found by bisecting an integer bracket with
    // exact sign tests.
    Integer floor() const
    {
        if (is_rational())
            return rat_floor(_a);
        Integer root_bound = boost::multiprecision::sqrt(Integer(discriminant())) + 1;
        Integer slack      = rat_floor(Rational(boost::multiprecision::abs(numerator(_b)) * root_bound,
                                                denominator(_b))) + 1;
        Integer lo = rat_floor(_a) - slack;
        Integer hi = rat_floor(_a) + slack + 1;
        while (lo < hi) {
            Integer mid = floor_div(lo + hi + 1, 2);
            if ((*this - Scalar(Rational(mid))).sign() >= 0)
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    }

    std::string str() const;

private:
    Rational _a, _b;
};

inline Scalar operator*(const Rational& q, const Scalar& s) { return Scalar(q) * s; }
inline Scalar operator*(const Scalar& s, const Rational& q) { return s * Scalar(q); }

inline std::string format_scalar(const Scalar& s)
{
    if (s.is_rational())
        return format_rational(s.rat());
    Rational    c    = boost::multiprecision::abs(s.irr());
    std::string root = (c == 1 ? std::string() : format_rational(c) + "*") + "sqrt(" +
                       std::to_string(discriminant()) + ")";
    if (s.rat() == 0)
        return (s.irr() < 0 ? "-" : "") + root;
    return format_rational(s.rat()) + (s.irr() < 0 ? "-" : "+") + root;
}

inline std::string Scalar::str() const { return format_scalar(*this); }

namespace detail {

// One term of the scalar grammar: either a plain rational or
// [rational *] sqrt(N) with N equal to the global discriminant.
inline Scalar parse_scalar_term(const std::string& term, const std::string& where)
{
    if (term.empty())
        throw ParseError(where + ": empty scalar term");
    auto check_root = [&](const std::string& root) {
        const std::string want = "sqrt(" + std::to_string(discriminant()) + ")";
        if (root != want)
            throw ParseError(where + ": '" + root + "' does not match the active discriminant term " +
                             want);
    };
    if (term.rfind("sqrt(", 0) == 0) {
        check_root(term);
        return Scalar::sqrt_d();
    }
    if ((term[0] == '+' || term[0] == '-') && term.compare(1, 5, "sqrt(") == 0) {
        check_root(term.substr(1));
        return Scalar::sqrt_d(term[0] == '-' ? -1 : 1);
    }
    std::size_t star = term.find('*');
    if (star == std::string::npos)
        return Scalar(parse_rational(term, where));
    check_root(term.substr(star + 1));
    return Scalar::sqrt_d(parse_rational(term.substr(0, star), where));
}

} // namespace detail

// Grammar: term, or term followed by a signed sqrt term.  Examples: "5",
// "-3/2", "1/2+1/2*sqrt(3)", "sqrt(3)", "0-2*sqrt(3)".
inline Scalar parse_scalar(const std::string& text, const std::string& where)
{
    if (text.empty())
        throw ParseError(where + ": empty scalar literal");
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < text.size(); ++i) {
        if ((text[i] == '+' || text[i] == '-') && text[i - 1] != '(' && text[i - 1] != '*' &&
            text[i - 1] != '/' && text[i - 1] != '+' && text[i - 1] != '-') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        return detail::parse_scalar_term(text, where);

    Scalar head = detail::parse_scalar_term(text.substr(0, split), where);
    if (!head.is_rational())
        throw ParseError(where + ": sqrt term must come last in '" + text + "'");
    Scalar tail = detail::parse_scalar_term(text.substr(split + 1), where);
    if (tail.is_rational() || tail.rat() != 0)
        throw ParseError(where + ": second term must be a sqrt term in '" + text + "'");
    return text[split] == '-' ? head - tail : head + tail;
}

} // namespace osclat
