#pragma once

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "osclat/classify.hpp"

namespace osclat {

struct VerifyOptions {
    int                r_max               = 12;
    int                oracle_cutoff       = 12;
    unsigned long long seed                = 0x05CUL;
    int                invariance_trials   = 1000;
    int                homomorphism_trials = 1000;
    int                conjugator_trials   = 200;
    int                scramble_rounds     = 100;
    int                reduction_trials    = 500;
};

struct CheckResult {
    std::string name;
    bool        pass;
    std::string detail;
};

namespace detail {

// All (angle, point) cells of the classification table, with one sample point
// per point family of the angle-pi column and both rotation signs per base.
struct TableCell {
    Angle            lambda;
    FundamentalPoint pt;
};

inline FundamentalPoint corner_point()
{
    return FundamentalPoint(Scalar(Rational(1, 2)), Scalar::sqrt_d(Rational(1, 2)));
}

inline std::vector<TableCell> table_cells()
{
    std::vector<TableCell> cells;
    FundamentalPoint       corner = corner_point();
    FundamentalPoint       square(Scalar(0), Scalar(1));
    for (long k : {0L, 1L}) {
        cells.push_back({Angle{AngleBase::pi_third, k}, corner});
        cells.push_back({Angle{AngleBase::two_pi_third, k}, corner});
        cells.push_back({Angle{AngleBase::pi_half, k}, square});
        for (const FundamentalPoint& pt :
             {FundamentalPoint(Scalar(Rational(1, 4)), Scalar(Rational(3, 2))),
              FundamentalPoint(Scalar(0), Scalar(Rational(3, 2))), square,
              FundamentalPoint(Scalar(Rational(1, 2)), Scalar(Rational(3, 2))), corner,
              FundamentalPoint(Scalar(Rational(5, 13)), Scalar(Rational(12, 13)))})
            cells.push_back({Angle{AngleBase::pi, k}, pt});
    }
    return cells;
}

inline Rational random_rational(std::mt19937_64& rng, int num_range, int den_range)
{
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return Rational(num(rng), den(rng));
}

inline Mat2 random_sl2z_word(std::mt19937_64& rng, int max_len)
{
    const Mat2 gens[4] = {Mat2(1, 1, 0, 1), Mat2(1, -1, 0, 1), Mat2(0, -1, 1, 0),
                          Mat2(0, 1, -1, 0)};
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> pick(0, 3);
    Mat2                               w = Mat2::identity();
    int                                n = len(rng);
    for (int i = 0; i < n; ++i)
        w = w * gens[pick(rng)];
    return w;
}

// Exact Moebius action W . (x + i y) for det W = 1 matrices.
inline std::pair<Scalar, Scalar> moebius_point(const Mat2& w, const Scalar& x, const Scalar& y)
{
    Scalar denom = (w.m21 * x + w.m22) * (w.m21 * x + w.m22) + w.m21 * w.m21 * y * y;
    internal_check(denom.sign() > 0, "moebius_point: degenerate denominator");
    Scalar nx = (w.m11 * w.m21 * (x * x + y * y) + (w.m11 * w.m22 + w.m12 * w.m21) * x +
                 w.m12 * w.m22) /
                denom;
    return {nx, y / denom};
}

template <typename F>
CheckResult run_check(const std::string& name, F&& body)
{
    try {
        return CheckResult{name, true, body()};
    } catch (const std::exception& e) {
        return CheckResult{name, false, e.what()};
    }
}

inline void require(bool cond, const std::string& msg)
{
    if (!cond)
        throw std::runtime_error(msg);
}

} // namespace detail

// Regenerates every compatible classification table cell for r = 1 .. r_max
// and checks the closed-form representatives form an exact transversal of the
// computed orbit partition with class sizes summing to r^2.
inline CheckResult check_table_regeneration(const VerifyOptions& opt)
{
    return detail::run_check("table regeneration", [&] {
        long cells = 0;
        for (const auto& cell : detail::table_cells()) {
            for (int r = 1; r <= opt.r_max; ++r) {
                auto entries = classification_table(cell.lambda, cell.pt, r);
                long total   = 0;
                for (const auto& e : entries)
                    total += e.class_size;
                detail::require(total == static_cast<long>(r) * r,
                                "class sizes do not sum to r^2");
                ++cells;
            }
        }
        return std::to_string(cells) + " cells regenerated and transversal-checked";
    });
}

// The constructive canonical representative must induce exactly the orbit
// partition computed by brute force.
inline CheckResult check_partition_agreement(const VerifyOptions& opt)
{
    return detail::run_check("constructive vs orbit partition", [&] {
        long orbits = 0;
        for (const auto& cell : detail::table_cells()) {
            StructureMatrix B(cell.lambda, cell.pt.x, cell.pt.y);
            for (int r = 1; r <= opt.r_max; ++r) {
                std::set<std::pair<Rational, Rational>> seen;
                for (const auto& orbit : orbit_partition(r, B)) {
                    auto rep = canonical_xi_constructive(orbit.front(), r, cell.lambda, cell.pt);
                    for (const auto& p : orbit)
                        detail::require(canonical_xi_constructive(p, r, cell.lambda, cell.pt) ==
                                            rep,
                                        "constructive representative differs inside one orbit");
                    detail::require(
                        std::binary_search(orbit.begin(), orbit.end(), rep),
                        "constructive representative is outside its orbit");
                    detail::require(seen.insert(rep).second,
                                    "two orbits share a constructive representative");
                    ++orbits;
                }
            }
        }
        return std::to_string(orbits) + " orbits agree";
    });
}

// Classification must be constant along the action of random lattice
// preserving automorphisms on the distinguished element.
inline CheckResult check_automorphism_invariance(const VerifyOptions& opt)
{
    return detail::run_check("automorphism invariance", [&] {
        std::mt19937_64 rng(opt.seed + 3);
        auto            cells = detail::table_cells();
        std::uniform_int_distribution<std::size_t> cell_pick(0, cells.size() - 1);
        std::uniform_int_distribution<int>         r_pick(1, opt.r_max);
        for (int trial = 0; trial < opt.invariance_trials; ++trial) {
            const auto&     cell = cells[cell_pick(rng)];
            Integer         r    = r_pick(rng);
            StructureMatrix B(cell.lambda, cell.pt.x, cell.pt.y);
            SymplecticForm  form = SymplecticForm::standard(r);

            auto grid = admissible_xi(r, B);
            std::uniform_int_distribution<std::size_t> g_pick(0, grid.size() - 1);
            auto        xi = grid[g_pick(rng)];
            LatticeSpec spec{r, B, xi.first, xi.second,
                             Scalar(detail::random_rational(rng, 6, 4))};
            LatticeData base = classify_lattice(spec, opt.oracle_cutoff);

            auto sset = integer_S_set(B);
            std::uniform_int_distribution<std::size_t> s_pick(0, sset.size() - 1);
            auto [S, mu] = sset[s_pick(rng)];
            auto beta    = detail::gamma_offset_beta(S, r % 2 != 0);
            std::uniform_int_distribution<long> j_pick(0, r.convert_to<long>() - 1);
            Automorphism phi;
            phi.mu = mu;
            phi.a  = Scalar(mu);
            phi.m  = Scalar(detail::random_rational(rng, 6, 4));
            phi.S  = S;
            phi.b  = Vec2(Scalar(Rational(Integer(2 * j_pick(rng) + beta.first), Integer(2 * r))),
                          Scalar(Rational(Integer(2 * j_pick(rng) + beta.second), Integer(2 * r))));
            detail::require(is_gamma_preserving(phi, r, B), "sampled map is not preserving");

            GroupElement d(spec.z0, Vec2(Scalar(xi.first), Scalar(xi.second)), 1);
            GroupElement img = apply(phi, d, form, B);
            if (phi.mu == -1)
                img = invert(img, B);
            detail::require(img.t == 1 && img.xi.is_rational(), "image has unusable shape");
            LatticeSpec moved{r, B, frac_mod1(img.xi.c1.rat()), frac_mod1(img.xi.c2.rat()),
                              img.z};
            detail::require(classify_lattice(moved, opt.oracle_cutoff) == base,
                            "classification changed along an automorphism");
        }
        return std::to_string(opt.invariance_trials) + " trials invariant";
    });
}

// Random maps of the characterized shape must be homomorphisms.
inline CheckResult check_homomorphism_property(const VerifyOptions& opt)
{
    return detail::run_check("automorphism homomorphism property", [&] {
        std::mt19937_64                    rng(opt.seed + 4);
        std::uniform_int_distribution<int> res_pick(0, 7), k_pick(0, 2), coin(0, 1);
        std::uniform_int_distribution<int> t_pick(-3, 3);
        const Rational residues[8] = {Rational(1, 3), Rational(1, 2), Rational(2, 3),
                                      Rational(1),    Rational(4, 3), Rational(3, 2),
                                      Rational(5, 3), Rational(2)};
        for (int trial = 0; trial < opt.homomorphism_trials; ++trial) {
            Angle lambda = *angle_from_over_pi(residues[res_pick(rng)] + 2 * k_pick(rng));
            Scalar x(detail::random_rational(rng, 4, 4));
            Scalar y;
            if (coin(rng) && discriminant() == 3) {
                x = Scalar(Rational(1, 2));
                y = Scalar::sqrt_d(Rational(1, 2));
            } else {
                y = Scalar(abs(detail::random_rational(rng, 4, 4)) + Rational(1, 3));
            }
            StructureMatrix B(lambda, x, y);
            SymplecticForm  form(Rational(1 + std::uniform_int_distribution<int>(0, 5)(rng)));

            // Rational circle point (c, s), scale rho, optional anticommuting
            // factor R_x.
            Rational q  = detail::random_rational(rng, 3, 3);
            Rational c  = (1 - q * q) / (1 + q * q);
            Rational s  = (2 * q) / (1 + q * q);
            Rational rho = detail::random_rational(rng, 3, 3);
            if (rho == 0)
                rho = 1;
            Mat2 S = Scalar(rho) * (Scalar(c) * Mat2::identity() + Scalar(s) * B.bxy());
            int  mu = 1;
            if (coin(rng)) {
                mu = -1;
                S  = S * Mat2(1, Scalar(-2) * x, 0, -1);
            }
            Automorphism phi;
            phi.mu = mu;
            phi.S  = S;
            phi.a  = S.det();
            phi.m  = Scalar(detail::random_rational(rng, 5, 3));
            phi.b  = Vec2(Scalar(detail::random_rational(rng, 5, 3),
                                 detail::random_rational(rng, 2, 3)),
                          Scalar(detail::random_rational(rng, 5, 3)));
            validate(phi, B);

            auto rand_elem = [&] {
                return GroupElement(
                    Scalar(detail::random_rational(rng, 8, 5), detail::random_rational(rng, 2, 3)),
                    Vec2(Scalar(detail::random_rational(rng, 8, 5)),
                         Scalar(detail::random_rational(rng, 8, 5))),
                    t_pick(rng));
            };
            GroupElement g = rand_elem(), h = rand_elem();
            detail::require(apply(phi, multiply(g, h, form, B), form, B) ==
                                multiply(apply(phi, g, form, B), apply(phi, h, form, B), form, B),
                            "map of the characterized shape is not a homomorphism");
        }
        return std::to_string(opt.homomorphism_trials) + " triples verified";
    });
}

// Conjugating isomorphisms from random SL(2, Z) words must carry the standard
// lattice generators into the standard lattice, in both directions.
inline CheckResult check_conjugating_isos(const VerifyOptions& opt)
{
    return detail::run_check("unimodular conjugating isomorphisms", [&] {
        std::mt19937_64 rng(opt.seed + 5);
        std::vector<StructureMatrix> bases;
        bases.emplace_back(Angle{AngleBase::pi_half, 0}, Scalar(0), Scalar(1));
        if (discriminant() == 3)
            bases.emplace_back(Angle{AngleBase::pi_third, 0}, Scalar(Rational(1, 2)),
                               Scalar::sqrt_d(Rational(1, 2)));
        bases.emplace_back(Angle{AngleBase::pi, 0}, Scalar(Rational(1, 4)),
                           Scalar(Rational(3, 2)));
        std::uniform_int_distribution<int>         r_pick(1, 4);
        std::uniform_int_distribution<std::size_t> b_pick(0, bases.size() - 1);
        for (int trial = 0; trial < opt.conjugator_trials; ++trial) {
            Integer                r = r_pick(rng);
            const StructureMatrix& B = bases[b_pick(rng)];
            Mat2                   W = detail::random_sl2z_word(rng, 8);
            LatticeIso             fwd = conjugating_iso(W, r, B);
            LatticeIso             bwd = conjugating_iso(W.inverse(), r, fwd.dst_B);

            const GroupElement gens[3] = {GroupElement(Scalar(1), Vec2(), 0),
                                          GroupElement(Scalar(0), Vec2(1, 0), 0),
                                          GroupElement(Scalar(0), Vec2(0, 1), 0)};
            for (const GroupElement& g : gens) {
                detail::require(gamma_member(iso_apply(fwd, g), r),
                                "forward image left the standard lattice");
                detail::require(gamma_member(iso_apply(bwd, g), r),
                                "backward image left the standard lattice");
            }
        }
        return std::to_string(opt.conjugator_trials) + " words checked";
    });
}

// Integer exponentials must carry the exact trace of their angle, and
// inadmissible angle data must be rejected with named errors.
inline CheckResult check_trace_constraint(const VerifyOptions&)
{
    return detail::run_check("trace constraint and rejection", [&] {
        struct Row {
            Rational over_pi;
            int      twocos;
        };
        const Row rows[8] = {{Rational(1, 3), 1},  {Rational(1, 2), 0}, {Rational(2, 3), -1},
                             {Rational(1), -2},    {Rational(4, 3), -1}, {Rational(3, 2), 0},
                             {Rational(5, 3), 1},  {Rational(2), 2}};
        for (const Row& row : rows) {
            Angle lambda = *angle_from_over_pi(row.over_pi);
            FundamentalPoint pt = (row.twocos == 2 || row.twocos == -2)
                                      ? FundamentalPoint(Scalar(0), Scalar(1))
                                      : (row.twocos == 0
                                             ? FundamentalPoint(Scalar(0), Scalar(1))
                                             : detail::corner_point());
            StructureMatrix B(lambda, pt.x, pt.y);
            Mat2            E = B.exp_tB(1);
            detail::require(E.is_integral() && E.trace() == Scalar(row.twocos),
                            "exponential trace disagrees with 2 cos");
            extract_lambda(E, lambda);
        }
        for (const Rational& bad : {Rational(1, 4), Rational(1, 6), Rational(7, 5)})
            detail::require(!angle_from_over_pi(bad).has_value(),
                            "inadmissible angle accepted");
        try {
            extract_lambda(Mat2::identity(), Angle{AngleBase::pi_half, 0});
            detail::require(false, "trace mismatch accepted");
        } catch (const NonLatticeError& e) {
            detail::require(std::string(e.what()).find("trace") != std::string::npos,
                            "trace mismatch rejection lacks the trace in its message");
        }
        try {
            validate_spec(LatticeSpec{1,
                                      StructureMatrix(Angle{AngleBase::pi_half, 0},
                                                      Scalar(Rational(1, 4)),
                                                      Scalar(Rational(3, 2))),
                                      0, 0, Scalar(0)});
            detail::require(false, "non-integral exponential accepted");
        } catch (const NonLatticeError& e) {
            detail::require(std::string(e.what()).find("integer matrix") != std::string::npos,
                            "non-integral rejection is unnamed");
        }
        return "8 admissible traces, 5 rejections";
    });
}

// The Heisenberg invariant r must survive generator scrambling.
inline CheckResult check_invariant_robustness(const VerifyOptions& opt)
{
    return detail::run_check("Heisenberg invariant robustness", [&] {
        std::mt19937_64 rng(opt.seed + 7);
        StructureMatrix dummy(Angle{AngleBase::pi_half, 0}, Scalar(0), Scalar(1));
        for (Integer r = 1; r <= 6; ++r) {
            SymplecticForm form = SymplecticForm::standard(r);
            for (int round = 0; round < opt.scramble_rounds; ++round) {
                std::vector<GroupElement> gens = {GroupElement(Scalar(1), Vec2(), 0),
                                                  GroupElement(Scalar(0), Vec2(1, 0), 0),
                                                  GroupElement(Scalar(0), Vec2(0, 1), 0)};
                std::uniform_int_distribution<int> op_pick(0, 4), steps(4, 10);
                int ops = steps(rng);
                for (int s = 0; s < ops; ++s) {
                    std::uniform_int_distribution<std::size_t> idx(0, gens.size() - 1);
                    std::size_t i = idx(rng), j = idx(rng);
                    switch (op_pick(rng)) {
                    case 0:
                        std::swap(gens[i], gens[j]);
                        break;
                    case 1:
                        if (i != j)
                            gens[i] = multiply(gens[i], gens[j], form, dummy);
                        break;
                    case 2:
                        gens[i] = invert(gens[i], dummy);
                        break;
                    case 3: {
                        Mat2 u = detail::random_sl2z_word(rng, 6);
                        for (GroupElement& g : gens)
                            g.xi = u * g.xi;
                        break;
                    }
                    default:
                        gens.push_back(multiply(gens[i], invert(gens[j], dummy), form, dummy));
                        break;
                    }
                }
                std::vector<RawGenerator> raw;
                for (const GroupElement& g : gens)
                    raw.push_back(
                        RawGenerator{g.z, g.xi.c1.as_rational(), g.xi.c2.as_rational(), 0});
                detail::require(heisenberg_invariant(raw, Rational(r)) == r,
                                "scrambling changed the invariant");
            }
        }
        return std::to_string(6 * opt.scramble_rounds) + " scrambles preserved r";
    });
}

// Fundamental domain reduction must exactly invert random SL(2, Z) moves of
// rational points, with a verified conjugator.
inline CheckResult check_fundamental_reduction(const VerifyOptions& opt)
{
    return detail::run_check("fundamental domain reduction", [&] {
        std::mt19937_64                    rng(opt.seed + 8);
        std::uniform_int_distribution<int> num(0, 6), den(1, 12), mode(0, 4);
        const std::pair<Rational, Rational> circle[4] = {{Rational(0), Rational(1)},
                                                         {Rational(5, 13), Rational(12, 13)},
                                                         {Rational(7, 25), Rational(24, 25)},
                                                         {Rational(8, 17), Rational(15, 17)}};
        for (int trial = 0; trial < opt.reduction_trials; ++trial) {
            Scalar x, y;
            if (mode(rng) == 0) {
                auto& p = circle[std::uniform_int_distribution<int>(0, 3)(rng)];
                x       = Scalar(p.first);
                y       = Scalar(p.second);
            } else {
                int b = den(rng);
                x     = Scalar(Rational(std::uniform_int_distribution<int>(0, b / 2)(rng), b));
                y     = Scalar(Rational(den(rng), den(rng)) + 1); // >= 1 keeps the point reduced
            }
            FundamentalPoint pt(x, y);
            Mat2             w       = detail::random_sl2z_word(rng, 10);
            auto [mx, my]            = detail::moebius_point(w, x, y);
            Reduction red            = reduce_fundamental(mx, my);
            detail::require(red.flip == 1, "det 1 move produced a flip");
            detail::require(red.point == pt, "reduction missed the original point");
            detail::require(red.S * bxy_matrix(mx, my) * red.S.inverse() == bxy_matrix(x, y),
                            "conjugator fails to witness the reduction");
        }
        return std::to_string(opt.reduction_trials) + " round trips exact";
    });
}

// The presentation reports of the two reference lattices.
inline CheckResult check_relation_sets(const VerifyOptions&)
{
    return detail::run_check("presentation relation sets", [&] {
        LatticeSpec a{2, StructureMatrix(Angle{AngleBase::pi_half, 0}, Scalar(0), Scalar(1)),
                      Rational(0), Rational(0), Scalar(0)};
        OLatticeReport ra = olattice_relations(a);
        detail::require(ra.commutator_exponent == 2, "square cell: commutator exponent");
        detail::require(ra.alpha_word.p == 0 && ra.alpha_word.q == 1 && ra.alpha_word.w == 0,
                        "square cell: alpha conjugate");
        detail::require(ra.beta_word.p == -1 && ra.beta_word.q == 0 && ra.beta_word.w == 0,
                        "square cell: beta conjugate");
        detail::require(ra.central_power.has_value() && *ra.central_power == 4,
                        "square cell: central power");
        detail::require(!ra.angle_multiple_of_pi, "square cell: angle family flag");

        detail::require(discriminant() == 3, "corner cell needs discriminant 3");
        LatticeSpec b{6,
                      StructureMatrix(Angle{AngleBase::two_pi_third, 0}, Scalar(Rational(1, 2)),
                                      Scalar::sqrt_d(Rational(1, 2))),
                      Rational(1, 6), Rational(0), Scalar(0)};
        OLatticeReport rb = olattice_relations(b);
        detail::require(rb.commutator_exponent == 6, "corner cell: commutator exponent");
        detail::require(rb.alpha_word.p == 0 && rb.alpha_word.q == 1 && rb.alpha_word.w == 1,
                        "corner cell: alpha conjugate");
        detail::require(rb.beta_word.p == -1 && rb.beta_word.q == -1 && rb.beta_word.w == -4,
                        "corner cell: beta conjugate");
        detail::require(rb.central_power.has_value() && *rb.central_power == 3,
                        "corner cell: central power");

        LatticeSpec c{5,
                      StructureMatrix(Angle{AngleBase::pi, 0}, Scalar(Rational(1, 4)),
                                      Scalar(Rational(3, 2))),
                      Rational(0), Rational(0), Scalar(0)};
        OLatticeReport rc = olattice_relations(c);
        detail::require(rc.commutator_exponent == 5 && rc.central_power.has_value() &&
                            *rc.central_power == 2 && rc.angle_multiple_of_pi,
                        "scalar cell: report");
        return "3 reference presentations reproduced";
    });
}

inline std::vector<CheckResult> run_all_checks(const VerifyOptions& opt)
{
    return {check_table_regeneration(opt),
            check_partition_agreement(opt),
            check_automorphism_invariance(opt),
            check_homomorphism_property(opt),
            check_conjugating_isos(opt),
            check_trace_constraint(opt),
            check_invariant_robustness(opt),
            check_fundamental_reduction(opt),
            check_relation_sets(opt)};
}

} // namespace osclat
