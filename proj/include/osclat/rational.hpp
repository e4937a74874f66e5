#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "osclat/errors.hpp"

namespace osclat {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer int_gcd(const Integer& a, const Integer& b)
{
    return boost::multiprecision::gcd(a, b);
}

inline Integer int_lcm(const Integer& a, const Integer& b)
{
    return boost::multiprecision::lcm(a, b);
}

inline bool is_integer(const Rational& q)
{
    return denominator(q) == 1;
}

inline Integer to_integer(const Rational& q)
{
    if (!is_integer(q))
        throw InternalError("to_integer: value " + q.str() + " is not an integer");
    return numerator(q);
}

// Largest integer n with n <= q.
inline Integer rat_floor(const Rational& q)
{
    Integer n = numerator(q) / denominator(q);
    if (q < 0 && n * denominator(q) != numerator(q))
        --n;
    return n;
}

// q - floor(q), always in [0, 1).
inline Rational frac_mod1(const Rational& q)
{
    return q - Rational(rat_floor(q));
}

// Nonnegative generator of the group a*Z + b*Z inside Q.
inline Rational rat_gcd(const Rational& a, const Rational& b)
{
    Integer num = int_gcd(numerator(a) * denominator(b), numerator(b) * denominator(a));
    Integer den = denominator(a) * denominator(b);
    return Rational(num, den);
}

// Signed p or p/q with q > 0; also used as a building block of the scalar
// grammar.  The full input must be consumed.
inline Rational parse_rational(const std::string& text, const std::string& where)
{
    std::size_t pos  = 0;
    bool        neg  = false;
    auto        fail = [&](const std::string& why) -> Rational {
        throw ParseError(where + ": " + why + " in rational literal '" + text + "'");
    };

    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
    }
    std::size_t digits_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos == digits_start)
        return fail("missing numerator digits");
    Integer num(text.substr(digits_start, pos - digits_start));
    Integer den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::size_t den_start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == den_start)
            return fail("missing denominator digits");
        den = Integer(text.substr(den_start, pos - den_start));
        if (den == 0)
            return fail("zero denominator");
    }
    if (pos != text.size())
        return fail("trailing characters");
    Rational q(num, den);
    return neg ? Rational(-q) : q;
}

inline std::string format_rational(const Rational& q)
{
    std::string s = numerator(q).str();
    if (denominator(q) != 1)
        s += "/" + denominator(q).str();
    return s;
}

} // namespace osclat
