#pragma once

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "osclat/errors.hpp"
#include "osclat/group.hpp"
#include "osclat/matrix.hpp"

namespace osclat {

/**
 * Automorphism of the oscillator group, parametrized by (mu, a, m, b, S) with
 * mu = +-1, S B = mu B S and det S = a != 0:
 *
 *   phi(z, xi, t) = (a z + (1/2) omega(S xi, E b + b) + m t + (1/2) omega(E b, b),
 *                    S xi + E b - b,  mu t),            E = exp(t mu lambda B).
 *
 * Every continuous automorphism has this shape.
 */
struct Automorphism {
    int    mu = 1;
    Scalar a  = Scalar(1);
    Scalar m  = Scalar(0);
    Vec2   b;
    Mat2   S  = Mat2::identity();
};

inline Automorphism identity_automorphism() { return Automorphism{}; }

inline void validate(const Automorphism& phi, const StructureMatrix& B)
{
    if (phi.mu != 1 && phi.mu != -1)
        throw std::invalid_argument("validate: mu must be +1 or -1");
    if (phi.a.is_zero())
        throw std::invalid_argument("validate: a must be nonzero");
    if (phi.S.det() != phi.a)
        throw std::invalid_argument("validate: det S must equal the scaling factor a");
    Mat2 bxy = B.bxy();
    if (phi.S * bxy != Scalar(phi.mu) * (bxy * phi.S))
        throw std::invalid_argument("validate: S B = mu B S fails");
}

namespace detail {

// Shared image formula for automorphisms and lattice isomorphisms.  The
// exponential twist runs in the codomain: E = exp(exp_sign * t * lambda B_dst)
// and the time coordinate picks up t_factor.
inline GroupElement twist_image(const Scalar& a, const Scalar& m, const Vec2& b, const Mat2& S,
                                int exp_sign, int t_factor, const SymplecticForm& dst_form,
                                const StructureMatrix& dst_B, const GroupElement& g)
{
    Mat2   E  = dst_B.exp_tB(Integer(exp_sign) * g.t);
    Vec2   eb = E * b;
    Scalar z  = a * g.z + Rational(1, 2) * omega(dst_form, S * g.xi, eb + b) +
               m * Scalar(Rational(g.t)) + Rational(1, 2) * omega(dst_form, eb, b);
    return GroupElement(z, S * g.xi + eb - b, Integer(t_factor) * g.t);
}

inline int parity(const Integer& v)
{
    return static_cast<int>(boost::multiprecision::abs(v) % 2);
}

// Unique beta in {0,1}^2 such that b = beta/2 mod Z^2 makes the time-zero map
// (z, xi) -> (az + omega_r(S xi, b), S xi) send the standard lattice into
// itself for odd r; for even r the solution is beta = 0.  Solves the mod-2
// linear system coming from the two lattice generators (the system matrix is
// S-dependent but always invertible mod 2).
inline std::pair<int, int> gamma_offset_beta(const Mat2& S, bool odd_r)
{
    if (!odd_r)
        return {0, 0};
    internal_check(S.is_integral(), "gamma_offset_beta: S must be an integer matrix");
    int s11 = parity(to_integer(S.m11.rat()));
    int s12 = parity(to_integer(S.m12.rat()));
    int s21 = parity(to_integer(S.m21.rat()));
    int s22 = parity(to_integer(S.m22.rat()));
    return {(s11 * s12 * (s21 + s22)) % 2, (s21 * s22 * (s11 + s12)) % 2};
}

} // namespace detail

inline GroupElement apply(const Automorphism& phi, const GroupElement& g,
                          const SymplecticForm& form, const StructureMatrix& B)
{
    return detail::twist_image(phi.a, phi.m, phi.b, phi.S, phi.mu, phi.mu, form, B, g);
}

// Composition phi1 after phi2.  The linear data multiplies directly; the
// central slope m of the composite is read off the image of (0, 0, 1).
inline Automorphism compose(const Automorphism& phi1, const Automorphism& phi2,
                            const SymplecticForm& form, const StructureMatrix& B)
{
    Automorphism out;
    out.mu = phi1.mu * phi2.mu;
    out.a  = phi1.a * phi2.a;
    out.b  = phi1.b + phi1.S * phi2.b;
    out.S  = phi1.S * phi2.S;
    out.m  = Scalar(0);
    GroupElement image = apply(phi1, apply(phi2, GroupElement(Scalar(0), Vec2(), 1), form, B), form, B);
    Vec2         eb    = B.exp_tB(out.mu) * out.b;
    out.m              = image.z - Rational(1, 2) * omega(form, eb, out.b);
    return out;
}

inline Automorphism inverse(const Automorphism& phi, const SymplecticForm& form,
                            const StructureMatrix& B)
{
    Automorphism psi;
    psi.mu = phi.mu;
    psi.a  = phi.a.inverse();
    psi.m  = Scalar(0);
    psi.S  = phi.S.inverse();
    psi.b  = -(psi.S * phi.b);
    Scalar dz = apply(phi, apply(psi, GroupElement(Scalar(0), Vec2(), 1), form, B), form, B).z;
    psi.m     = -(dz / phi.a);
    return psi;
}

/**
 * All integer matrices S with det S = +-1 and S B_{x,y} = (det S) B_{x,y} S.
 * Commuting solutions are S = c I + n y B_{x,y} and anticommuting ones are
 * those times R_x = [[1, -2x], [0, -1]], both on the circle c^2 + n^2 y^2 = 1,
 * so integrality cuts the search to finitely many (c, n).  Pairs are
 * (S, det S), sorted by entries.
 */
inline std::vector<std::pair<Mat2, int>> integer_S_set(const StructureMatrix& B)
{
    const Scalar& x  = B.x;
    const Scalar& y  = B.y;
    const Scalar  x2 = x * x, y2 = y * y;

    std::vector<std::pair<Mat2, int>> out;
    auto try_push = [&](const Mat2& s, int mu) {
        if (s.is_integral())
            out.emplace_back(s, mu);
    };

    Integer nmax = 0;
    while (Scalar(Rational((nmax + 1) * (nmax + 1))) * y2 <= Scalar(1))
        ++nmax;

    // det +1: integer trace forces c into (1/2) Z, and |c| <= 1.
    const Rational c_half[5] = {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2),
                                Rational(1)};
    for (const Rational& c : c_half) {
        Scalar rem = Scalar(Rational(1) - c * c); // n^2 y^2 must equal this
        if (rem.is_zero()) {
            try_push(Mat2(Scalar(c), 0, 0, Scalar(c)), +1);
            continue;
        }
        Scalar q = rem / y2;
        if (!q.is_rational() || !is_integer(q.rat()) || q.sign() <= 0)
            continue;
        Integer qq = to_integer(q.rat());
        Integer n0 = boost::multiprecision::sqrt(qq);
        if (n0 * n0 != qq)
            continue;
        for (const Integer& n : std::array<Integer, 2>{n0, Integer(-n0)}) {
            Scalar nn{Rational(n)};
            try_push(Mat2(Scalar(c) + nn * x, -(nn * (x2 + y2)), Scalar(Rational(n)),
                          Scalar(c) - nn * x),
                     +1);
        }
    }

    // det -1: S = (c I + n y B) R_x has zero trace and corner entries
    // (c + n x, ..., n, -(c + n x)), so c + n x must land on an integer.
    for (Integer n = -nmax; n <= nmax; ++n) {
        Scalar nn{Rational(n)};
        Scalar rem = Scalar(1) - nn * nn * y2; // c^2 must equal this
        if (rem.sign() < 0)
            continue;
        Integer mid = (nn * x).floor();
        for (Integer s11 = mid - 2; s11 <= mid + 2; ++s11) {
            Scalar c = Scalar(Rational(s11)) - nn * x;
            if (c * c != rem)
                continue;
            try_push(Mat2(Scalar(Rational(s11)), Scalar(-2) * x * c + nn * (y2 - x2), nn,
                          Scalar(-Rational(s11))),
                     -1);
        }
    }

    auto key = [](const std::pair<Mat2, int>& p) {
        return std::array<Integer, 5>{to_integer(p.first.m11.rat()), to_integer(p.first.m12.rat()),
                                      to_integer(p.first.m21.rat()), to_integer(p.first.m22.rat()),
                                      Integer(p.second)};
    };
    std::sort(out.begin(), out.end(),
              [&](const auto& l, const auto& r) { return key(l) < key(r); });
    out.erase(std::unique(out.begin(), out.end(),
                          [&](const auto& l, const auto& r) { return key(l) == key(r); }),
              out.end());
    return out;
}

// Decides whether a valid automorphism maps the standard lattice of scale r
// onto itself: S integer with a = mu = det S, and r b in the mod-2 coset
// solved by gamma_offset_beta.  The coset condition is exact, not merely
// sufficient.
inline bool is_gamma_preserving(const Automorphism& phi, const Integer& r,
                                const StructureMatrix& B)
{
    validate(phi, B);
    if (r < 1)
        throw std::invalid_argument("is_gamma_preserving: r must be a positive integer");
    if (!phi.S.is_integral())
        return false;
    if (phi.a != Scalar(phi.mu))
        return false;
    if (!phi.b.is_rational())
        return false;
    auto     beta = detail::gamma_offset_beta(phi.S, r % 2 != 0);
    Rational u1   = Rational(r) * phi.b.c1.rat() - Rational(beta.first, 2);
    Rational u2   = Rational(r) * phi.b.c2.rat() - Rational(beta.second, 2);
    return is_integer(u1) && is_integer(u2);
}

// One automorphism per (S, b-residue) pair: the complete list of lattice
// preserving maps up to the free central slope m and integer shifts of b.
inline std::vector<Automorphism> gamma_preserving_generators(const StructureMatrix& B,
                                                             const Integer& r)
{
    if (r < 1)
        throw std::invalid_argument("gamma_preserving_generators: r must be a positive integer");
    std::vector<Automorphism> out;
    for (const auto& [S, mu] : integer_S_set(B)) {
        auto beta = detail::gamma_offset_beta(S, r % 2 != 0);
        for (Integer j1 = 0; j1 < r; ++j1) {
            for (Integer j2 = 0; j2 < r; ++j2) {
                Automorphism phi;
                phi.mu = mu;
                phi.a  = Scalar(mu);
                phi.m  = Scalar(0);
                phi.S  = S;
                phi.b  = Vec2(Scalar(Rational(2 * j1 + beta.first, 2 * r)),
                              Scalar(Rational(2 * j2 + beta.second, 2 * r)));
                internal_check(is_gamma_preserving(phi, r, B),
                               "gamma_preserving_generators: produced a non-preserving map");
                out.push_back(std::move(phi));
            }
        }
    }
    return out;
}

/**
 * Isomorphism Osc(omega_r, lambda B) -> Osc(omega_r, lambda S B S^{-1}) from
 * an integer matrix S with det S = +-1, chosen so that the standard lattice
 * maps onto the standard lattice.  For det S = -1 the target derivation is
 * -lambda B_{x', y'}, recorded as dst_sign = -1 over the flipped point.
 */
struct LatticeIso {
    Scalar          a;
    Vec2            b;
    Mat2            S;
    int             dst_sign;
    SymplecticForm  form;
    StructureMatrix dst_B;
};

inline GroupElement iso_apply(const LatticeIso& iso, const GroupElement& g)
{
    return detail::twist_image(iso.a, Scalar(0), iso.b, iso.S, iso.dst_sign, 1, iso.form,
                               iso.dst_B, g);
}

// Target point of the Moebius-style action S . (x, y): the conjugate
// S B_{x,y} S^{-1} equals sign * B_{x', y'} with sign = det S.
inline std::pair<Scalar, Scalar> conjugate_point(const Mat2& S, const StructureMatrix& B)
{
    Mat2   M   = S * B.bxy() * S.inverse();
    int    sgn = S.det().sign();
    Scalar y   = (Scalar(sgn) * M.m21).inverse();
    internal_check(y.sign() > 0, "conjugate_point: target point left the upper half plane");
    Scalar x = Scalar(sgn) * M.m11 * y;
    return {x, y};
}

inline LatticeIso conjugating_iso(const Mat2& S, const Integer& r, const StructureMatrix& B)
{
    if (!S.is_integral())
        throw std::invalid_argument("conjugating_iso: S must be an integer matrix");
    Scalar d = S.det();
    if (d != Scalar(1) && d != Scalar(-1))
        throw std::invalid_argument("conjugating_iso: S must be unimodular");
    if (r < 1)
        throw std::invalid_argument("conjugating_iso: r must be a positive integer");

    auto [x, y] = conjugate_point(S, B);
    // The mod-2 offset works uniformly: for even r it is also a lattice b.
    auto beta = detail::gamma_offset_beta(S, true);
    return LatticeIso{d,
                      Vec2(Scalar(Rational(beta.first, 2)), Scalar(Rational(beta.second, 2))),
                      S,
                      d.sign(),
                      SymplecticForm::standard(r),
                      StructureMatrix(B.lambda, x, y)};
}

// Time reversal (z, xi, t) -> (z, xi, -t), an isomorphism onto the group with
// negated derivation.
inline GroupElement time_flip(const GroupElement& g) { return GroupElement(g.z, g.xi, -g.t); }

} // namespace osclat
