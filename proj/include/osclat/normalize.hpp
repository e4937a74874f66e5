#pragma once

#include <utility>
#include <vector>

#include "osclat/automorphism.hpp"
#include "osclat/errors.hpp"
#include "osclat/group.hpp"
#include "osclat/intlinalg.hpp"

namespace osclat {

// One generator (z, (xi1, xi2), t) of a candidate lattice.  Time and xi
// projections are rational by assumption; the central part may live in the
// quadratic field.
struct RawGenerator {
    Scalar   z;
    Rational xi1, xi2;
    Rational t;
};

// Candidate lattice presentation inside Osc(form_scale * omega_std, q pi B_{x,y}).
// The angle is a free positive rational multiple of pi: admissibility is only
// required after the time rescale, so e.g. q = 1/4 with time group 2 Z is fine.
struct RawLatticeInput {
    Rational                  form_scale;
    Rational                  lambda_over_pi;
    Scalar                    x, y;
    std::vector<RawGenerator> generators;
};

/**
 * Data of the normalizing isomorphism and the resulting standard position:
 * after rescaling time by t0 and applying the (a, b_vec, S) isomorphism plus a
 * central shift removing z0, the lattice becomes <standard lattice of scale r,
 * (0, xi0, 1)> inside Osc(omega_r, lambda B_{x,y}).
 */
struct NormalizationResult {
    Integer                       r;
    Mat2                          S;
    Scalar                        a;
    Vec2                          b_vec;
    Rational                      t0;
    Scalar                        z0;
    std::pair<Rational, Rational> xi0;
    Angle                         lambda; // rescaled angle
    Scalar                        x, y;   // conjugated point
};

namespace detail {

// Positive generator of the group the given central values generate in R;
// fails when the values are not commensurable (center not discrete) or all
// vanish.
inline Scalar central_generator(const std::vector<Scalar>& values)
{
    const Scalar* w0 = nullptr;
    for (const Scalar& v : values)
        if (!v.is_zero()) {
            w0 = &v;
            break;
        }
    internal_check(w0 != nullptr, "central_generator: no nonzero central value");
    Rational g = 0;
    for (const Scalar& v : values) {
        if (v.is_zero())
            continue;
        Scalar q = v / *w0;
        if (!q.is_rational())
            throw NonLatticeError("central_generator: central values " + w0->str() + " and " +
                                  v.str() + " are incommensurable, the center is not discrete");
        g = rat_gcd(g, q.rat());
    }
    Scalar c = Scalar(g) * *w0;
    return c.sign() < 0 ? -c : c;
}

struct HeisAnalysis {
    Vec2                 u, v;       // lattice basis of the xi projections, omega(u, v) > 0
    std::vector<Integer> word_u, word_v;
    Scalar               c;          // positive generator of the central subgroup
    Integer              r;
};

// Evaluates prod gens[i]^{e[i]} with ascending i.
inline GroupElement word_eval(const std::vector<GroupElement>& gens, const std::vector<Integer>& e,
                              const SymplecticForm& form, const StructureMatrix& B)
{
    GroupElement acc = GroupElement::identity();
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (e[i] != 0)
            acc = multiply(acc, power(gens[i], e[i], form, B), form, B);
    return acc;
}

// Core Heisenberg lattice analysis of time-zero elements: basis of the xi
// projection lattice, generator of the central values, and their ratio r.
// extra_xi contributes the commutator values omega(w, u), omega(w, v) for
// each listed w.
inline HeisAnalysis analyze_heisenberg(const std::vector<GroupElement>& gens,
                                       const SymplecticForm& form, const StructureMatrix& B,
                                       const std::vector<Vec2>& extra_xi)
{
    Integer q = 1;
    for (const GroupElement& g : gens) {
        internal_check(g.t == 0, "analyze_heisenberg: generators must have t = 0");
        if (!g.xi.is_rational())
            throw NonLatticeError("analyze_heisenberg: xi projection " + format_scalar(g.xi.c1) +
                                  ", " + format_scalar(g.xi.c2) + " is irrational");
        q = int_lcm(q, int_lcm(denominator(g.xi.c1.rat()), denominator(g.xi.c2.rat())));
    }
    std::vector<std::array<Integer, 2>> cols;
    cols.reserve(gens.size());
    for (const GroupElement& g : gens)
        cols.push_back({to_integer(Rational(q) * g.xi.c1.rat()),
                        to_integer(Rational(q) * g.xi.c2.rat())});

    ColumnReduction red = column_reduce_2xN(cols);
    if (red.rank < 2)
        throw NonLatticeError("analyze_heisenberg: xi projections span rank " +
                              std::to_string(red.rank) + ", a lattice needs rank 2");

    HeisAnalysis out;
    out.u = Vec2(Scalar(Rational(red.h1[0], q)), Scalar(Rational(red.h1[1], q)));
    out.v = Vec2(Scalar(Rational(red.h2[0], q)), Scalar(Rational(red.h2[1], q)));
    out.word_u.resize(gens.size());
    out.word_v.resize(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        out.word_u[i] = red.u[i][0];
        out.word_v[i] = red.u[i][1];
    }
    if (omega(form, out.u, out.v).sign() < 0) {
        std::swap(out.u, out.v);
        std::swap(out.word_u, out.word_v);
    }

    std::vector<Scalar> central;
    for (std::size_t j = red.rank; j < gens.size(); ++j) {
        std::vector<Integer> e(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i)
            e[i] = red.u[i][j];
        GroupElement w = word_eval(gens, e, form, B);
        internal_check(w.xi.is_zero() && w.t == 0,
                       "analyze_heisenberg: kernel word is not central");
        central.push_back(w.z);
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            central.push_back(omega(form, gens[i].xi, gens[j].xi));
    for (const Vec2& w : extra_xi) {
        central.push_back(omega(form, w, out.u));
        central.push_back(omega(form, w, out.v));
    }

    out.c = central_generator(central);
    Scalar ratio = omega(form, out.u, out.v) / out.c;
    if (!ratio.is_rational() || !is_integer(ratio.rat()) || ratio.sign() <= 0)
        throw NonLatticeError("analyze_heisenberg: cell area over central generator is " +
                              ratio.str() + ", not a positive integer");
    out.r = to_integer(ratio.rat());
    return out;
}

} // namespace detail

// Invariant r of a finitely generated discrete Heisenberg subgroup given by
// time-zero generators: the symplectic area of its xi projection lattice
// divided by the generator of its central subgroup.
inline Integer heisenberg_invariant(const std::vector<RawGenerator>& generators,
                                    const Rational& form_scale)
{
    SymplecticForm  form{form_scale};
    StructureMatrix dummy(Angle{AngleBase::pi_half, 0}, Scalar(0), Scalar(1));
    std::vector<GroupElement> gens;
    gens.reserve(generators.size());
    for (const RawGenerator& g : generators) {
        if (g.t != 0)
            throw std::invalid_argument("heisenberg_invariant: generators must have t = 0");
        gens.emplace_back(g.z, Vec2(Scalar(g.xi1), Scalar(g.xi2)), Integer(0));
    }
    return detail::analyze_heisenberg(gens, form, dummy, {}).r;
}

/**
 * Carries a generator presentation to standard position.  Steps: rescale time
 * by the gcd t0 of the time values (the rescaled angle must become
 * admissible), split off a distinguished element of time 1, close the
 * time-zero part under its conjugation, analyze the resulting Heisenberg
 * lattice, and conjugate it onto the standard lattice of scale r.  Inputs
 * that fail any lattice property raise NonLatticeError.
 */
inline NormalizationResult normalize(const RawLatticeInput& input)
{
    if (input.generators.empty())
        throw NonLatticeError("normalize: no generators");
    if (input.form_scale <= 0)
        throw std::invalid_argument("normalize: form scale must be positive");
    if (input.lambda_over_pi <= 0)
        throw std::invalid_argument("normalize: angle must be a positive multiple of pi");
    if (input.y.sign() <= 0)
        throw std::invalid_argument("normalize: y must be positive");

    Rational t0 = 0;
    for (const RawGenerator& g : input.generators)
        t0 = rat_gcd(t0, g.t);
    if (t0 == 0)
        throw NonLatticeError("normalize: the time projection of the generators is trivial");

    Rational q_new = t0 * input.lambda_over_pi;
    auto     angle = angle_from_over_pi(q_new);
    if (!angle)
        throw NonLatticeError("normalize: rescaled angle (" + format_rational(q_new) +
                              ")pi is not admissible");
    StructureMatrix B(*angle, input.x, input.y);
    SymplecticForm  form{input.form_scale};

    std::vector<GroupElement> rescaled;
    std::vector<Integer>      tvals;
    rescaled.reserve(input.generators.size());
    for (const RawGenerator& g : input.generators) {
        Integer c = to_integer(g.t / t0);
        rescaled.emplace_back(g.z, Vec2(Scalar(g.xi1), Scalar(g.xi2)), c);
        tvals.push_back(c);
    }

    ExtendedGcd bez = extended_gcd(tvals);
    internal_check(bez.g == 1, "normalize: rescaled time values have gcd " + bez.g.str());
    GroupElement gstar = detail::word_eval(rescaled, bez.coeff, form, B);
    internal_check(gstar.t == 1, "normalize: distinguished word has time " + gstar.t.str());

    // Time-zero part: h_i = g_i gstar^{-t_i}, closed under conjugation by
    // powers of gstar up to the rotation order.
    std::vector<GroupElement> hgens;
    long                      rot = angle_rotation_order(*angle);
    for (long k = 0; k < rot; ++k) {
        GroupElement gk  = power(gstar, k, form, B);
        GroupElement gki = invert(gk, B);
        for (std::size_t i = 0; i < rescaled.size(); ++i) {
            GroupElement h =
                multiply(rescaled[i], power(gstar, Integer(-tvals[i]), form, B), form, B);
            hgens.push_back(multiply(multiply(gk, h, form, B), gki, form, B));
        }
    }
    GroupElement gm = power(gstar, rot, form, B);
    internal_check(B.exp_tB(gm.t) == Mat2::identity(),
                   "normalize: rotation order does not close the exponential");

    detail::HeisAnalysis heis = detail::analyze_heisenberg(hgens, form, B, {gm.xi});

    // Basis change onto the standard lattice: S maps (u, v) to (e1, e2); the
    // central rescale is a = 1/c; b_vec realizes the z-correction delta as
    // omega_r(S xi, b).
    Scalar a = heis.c.inverse();
    Mat2   muv(heis.u.c1, heis.v.c1, heis.u.c2, heis.v.c2);
    Mat2   S = muv.inverse();

    Scalar z_u = detail::word_eval(hgens, heis.word_u, form, B).z;
    Scalar z_v = detail::word_eval(hgens, heis.word_v, form, B).z;
    Vec2   delta =
        solve2(Mat2(heis.u.c1, heis.u.c2, heis.v.c1, heis.v.c2), Vec2(-(a * z_u), -(a * z_v)));
    SymplecticForm form_r = SymplecticForm::standard(heis.r);
    Scalar         rr{Rational(heis.r)};
    Vec2           b_vec = solve2(Mat2(-(rr * S.m21), rr * S.m11, -(rr * S.m22), rr * S.m12), delta);

    auto [xn, yn] = conjugate_point(S, B);
    StructureMatrix Bn(*angle, xn, yn);
    LatticeIso      iso{a, b_vec, S, 1, form_r, Bn};

    for (const GroupElement& h : hgens)
        if (!gamma_member(iso_apply(iso, h), heis.r))
            throw NonLatticeError("normalize: time-zero part does not map onto the standard "
                                  "lattice");

    GroupElement d0 = iso_apply(iso, gstar);
    if (!d0.xi.is_rational())
        throw NonLatticeError("normalize: distinguished element has irrational xi part");
    Integer      n1 = rat_floor(d0.xi.c1.rat());
    Integer      n2 = rat_floor(d0.xi.c2.rat());
    GroupElement shift(Scalar(Rational(heis.r * n1 * n2, 2)),
                       Vec2(Scalar(-Rational(n1)), Scalar(-Rational(n2))), 0);
    internal_check(gamma_member(shift, heis.r), "normalize: xi reduction left the lattice");
    GroupElement d1 = multiply(shift, d0, form_r, Bn);

    NormalizationResult out;
    out.r      = heis.r;
    out.S      = S;
    out.a      = a;
    out.b_vec  = b_vec;
    out.t0     = t0;
    out.z0     = d1.z;
    out.xi0    = {d1.xi.c1.rat(), d1.xi.c2.rat()};
    out.lambda = *angle;
    out.x      = xn;
    out.y      = yn;

    // Final coset check: every generator image must land in <Gamma_r, d> with
    // d = (0, xi0, 1) after the central shift removing z0.
    GroupElement d(Scalar(0), d1.xi, 1);
    for (const GroupElement& g : rescaled) {
        GroupElement img = iso_apply(iso, g);
        img.z -= out.z0 * Scalar(Rational(img.t));
        GroupElement w = multiply(img, power(invert(d, Bn), img.t, form_r, Bn), form_r, Bn);
        if (!gamma_member(w, heis.r))
            throw NonLatticeError("normalize: generator image leaves the standard lattice coset");
    }
    return out;
}

} // namespace osclat
