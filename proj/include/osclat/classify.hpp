#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osclat/automorphism.hpp"
#include "osclat/errors.hpp"
#include "osclat/group.hpp"
#include "osclat/normalize.hpp"

namespace osclat {

/**
 * Lattice in standard position: the subgroup generated by the standard
 * lattice of scale r together with the distinguished element (z0, xi, 1)
 * inside Osc(omega_r, lambda B_{x,y}).
 */
struct LatticeSpec {
    Integer         r;
    StructureMatrix B;
    Rational        xi1, xi2;
    Scalar          z0;
};

// Point of the folded fundamental domain: 0 <= x <= 1/2, y > 0, x^2 + y^2 >= 1.
struct FundamentalPoint {
    Scalar x, y;

    FundamentalPoint(Scalar px, Scalar py) : x(std::move(px)), y(std::move(py))
    {
        if (y.sign() <= 0 || x.sign() < 0 || Scalar(2) * x > Scalar(1) ||
            (x * x + y * y) < Scalar(1))
            throw std::invalid_argument("FundamentalPoint: (" + x.str() + ", " + y.str() +
                                        ") is outside the folded fundamental domain");
    }

    bool operator==(const FundamentalPoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const FundamentalPoint& o) const { return !(*this == o); }

    bool on_circle() const { return x * x + y * y == Scalar(1); }
    bool is_corner() const { return on_circle() && Scalar(2) * x == Scalar(1); }
};

// Complete equivalence data of a lattice: two specs generate isomorphic-in-
// position lattices exactly when these tuples agree.
struct LatticeData {
    Integer          r;
    Angle            lambda;
    FundamentalPoint point;
    Rational         xi1, xi2;

    bool operator==(const LatticeData& o) const
    {
        return r == o.r && lambda == o.lambda && point == o.point && xi1 == o.xi1 && xi2 == o.xi2;
    }
    bool operator!=(const LatticeData& o) const { return !(*this == o); }
};

// The two discreteness conditions: the structure exponential E must be an
// integer matrix, and conjugating the two xi-generators of the standard
// lattice by the distinguished element must stay in the standard lattice.
inline void validate_spec(const LatticeSpec& spec)
{
    if (spec.r < 1)
        throw std::invalid_argument("validate_spec: r must be a positive integer");
    Mat2 E = spec.B.exp_tB(1);
    if (!E.is_integral())
        throw NonLatticeError("validate_spec: structure exponential is not an integer matrix");
    SymplecticForm form = SymplecticForm::standard(spec.r);
    Vec2           xi(Scalar(spec.xi1), Scalar(spec.xi2));
    const char*    names[2] = {"e1", "e2"};
    for (int i = 0; i < 2; ++i) {
        Vec2         col = i == 0 ? Vec2(E.m11, E.m21) : Vec2(E.m12, E.m22);
        GroupElement conj(omega(form, xi, col), col, 0);
        if (!gamma_member(conj, spec.r))
            throw NonLatticeError(std::string("validate_spec: lattice closure fails for basis "
                                              "direction ") + names[i]);
    }
}

// Consistency of an integer exponential with a declared angle: determinant 1,
// trace equal to 2 cos(lambda), rotation direction matching sign(sin(lambda)).
inline Angle extract_lambda(const Mat2& E, const Angle& hint)
{
    if (!E.is_integral())
        throw NonLatticeError("extract_lambda: matrix is not integral");
    if (E.det() != Scalar(1))
        throw NonLatticeError("extract_lambda: determinant must be 1");
    Trig tr = angle_trig(hint);
    if (E.trace() != Scalar(2) * tr.c)
        throw NonLatticeError("extract_lambda: trace " + format_scalar(E.trace()) +
                              " does not equal 2 cos of the declared angle");
    if (tr.s.is_zero()) {
        if (E != tr.c * Mat2::identity())
            throw NonLatticeError("extract_lambda: angle with sin 0 needs a scalar matrix");
    } else if (E.m21.sign() != tr.s.sign() && E.m21.sign() != 0) {
        throw NonLatticeError("extract_lambda: rotation direction contradicts the declared angle");
    } else if (E.m21.sign() == 0 && E.m12.sign() == -tr.s.sign()) {
        // E21 = 0 with sin != 0 forces E = [[a, E12], [0, d]] with a d = 1 and
        // a + d = 2 cos; the rotation sign then sits in -E12.
        throw NonLatticeError("extract_lambda: rotation direction contradicts the declared angle");
    }
    return hint;
}

inline Mat2 bxy_matrix(const Scalar& x, const Scalar& y)
{
    Scalar inv_y = y.inverse();
    return Mat2(x * inv_y, -(x * x) * inv_y - y, inv_y, -x * inv_y);
}

/**
 * Conjugation data from (x, y) to its folded-fundamental-domain
 * representative: S B_{x,y} S^{-1} = flip * B_{point} with S unimodular
 * integral and flip in {+1, -1}.  Lower half plane inputs (y < 0) stand for
 * the matrix -B_{x,|y|} and contribute a flip up front.
 */
struct Reduction {
    FundamentalPoint point;
    Mat2             S;
    int              flip;
};

inline Reduction reduce_fundamental(const Scalar& x0, const Scalar& y0)
{
    if (y0.sign() == 0)
        throw std::invalid_argument("reduce_fundamental: y must be nonzero");
    Scalar x = x0, y = y0;
    int    flip = 1;
    if (y.sign() < 0) {
        y    = -y;
        flip = -flip;
    }

    const Mat2 T     = Mat2(1, 1, 0, 1);
    const Mat2 T_inv = Mat2(1, -1, 0, 1);
    const Mat2 inv_S = Mat2(0, -1, 1, 0);
    const Mat2 J     = Mat2(1, 0, 0, -1);
    Mat2       S     = Mat2::identity();

    for (;;) {
        // Center x into [-1/2, 1/2).
        Integer n = (x + Scalar(Rational(1, 2))).floor();
        if (n != 0) {
            x = x - Scalar(Rational(n));
            Mat2 shift = Mat2(1, Scalar(-Rational(n)), 0, 1);
            S          = shift * S;
        }
        Scalar norm = x * x + y * y;
        if (norm < Scalar(1)) {
            // tau -> -1/tau.
            Scalar nx = -(x / norm);
            Scalar ny = y / norm;
            x         = nx;
            y         = ny;
            S         = inv_S * S;
            continue;
        }
        break;
    }
    // Boundary and fold normalization into 0 <= x <= 1/2.
    if (x.sign() < 0) {
        if (x * x + y * y == Scalar(1)) {
            x = -x; // -1/tau mirrors the unit circle
            S = inv_S * S;
        } else if (Scalar(2) * x == Scalar(-1)) {
            x = x + Scalar(1);
            S = T * S;
        } else {
            x    = -x; // J conjugation flips the derivation sign
            S    = J * S;
            flip = -flip;
        }
    }

    Reduction out{FundamentalPoint(x, y), S, flip};
    internal_check(out.S * bxy_matrix(x0, y0.abs()) * out.S.inverse() ==
                       Scalar(flip * (y0.sign() < 0 ? -1 : 1)) * bxy_matrix(x, y),
                   "reduce_fundamental: conjugation postcondition fails");
    return out;
}

// Offset of the admissible grid (offset + Z^2)/r cut out by the two closure
// conditions; both components are 0 or 1/2.
inline std::pair<Rational, Rational> admissible_offset(const Integer& r, const StructureMatrix& B)
{
    Mat2 E = B.exp_tB(1);
    internal_check(E.is_integral(), "admissible_offset: structure exponential is not integral");
    Mat2 M(E.m21, -E.m11, E.m22, -E.m12);
    Vec2 v(Scalar(Rational(r, 2)) * E.m11 * E.m21, Scalar(Rational(r, 2)) * E.m12 * E.m22);
    Vec2 off = M.inverse() * v;
    Rational o1 = frac_mod1(off.c1.as_rational());
    Rational o2 = frac_mod1(off.c2.as_rational());
    internal_check(is_integer(2 * o1) && is_integer(2 * o2),
                   "admissible_offset: grid offset is not half-integral");
    return {o1, o2};
}

// All xi in [0,1)^2 admissible for the pair (r, B).  Always exactly r^2
// points, sorted lexicographically.
inline std::vector<std::pair<Rational, Rational>> admissible_xi(const Integer& r,
                                                               const StructureMatrix& B)
{
    auto [o1, o2] = admissible_offset(r, B);
    std::vector<std::pair<Rational, Rational>> out;
    out.reserve((r * r).convert_to<std::size_t>());
    for (Integer j1 = 0; j1 < r; ++j1)
        for (Integer j2 = 0; j2 < r; ++j2)
            out.emplace_back((o1 + j1) / r, (o2 + j2) / r);
    return out;
}

namespace detail {

inline long to_small_long(const Integer& v, const char* what)
{
    if (v < 0 || v > 1024)
        throw std::invalid_argument(std::string(what) + ": orbit enumeration supports r up to 1024");
    return v.convert_to<long>();
}

// Orbit machinery on the admissible grid, in integer coordinates p = 2 r xi
// mod 2r.  maps holds affine generators (M, c): p -> M p + c mod 2r; the
// listed generators generate the full induced action because the lattice
// preserving automorphisms form a group.
struct OrbitContext {
    long                             two_r;
    int                              off1, off2; // grid: p == off (mod 2)
    std::vector<std::array<long, 6>> maps;
};

inline OrbitContext orbit_context(const Integer& r_big, const StructureMatrix& B)
{
    long         r = to_small_long(r_big, "orbit_context");
    OrbitContext ctx;
    ctx.two_r = 2 * r;

    Mat2 E = B.exp_tB(1);
    internal_check(E.is_integral(), "orbit_context: structure exponential is not integral");
    auto ei = [&](const Scalar& s) {
        Integer v = to_integer(s.as_rational()) % ctx.two_r;
        return v.convert_to<long>();
    };
    long e11 = ei(E.m11), e12 = ei(E.m12);
    long e21 = ei(E.m21), e22 = ei(E.m22);

    // Grid parity from the admissible offsets.
    auto [o1, o2] = admissible_offset(r_big, B);
    ctx.off1      = o1 == 0 ? 0 : 1;
    ctx.off2      = o2 == 0 ? 0 : 1;

    auto push_map = [&](long m11, long m12, long m21, long m22, long c1, long c2) {
        auto mod = [&](long v) { return ((v % ctx.two_r) + ctx.two_r) % ctx.two_r; };
        ctx.maps.push_back({mod(m11), mod(m12), mod(m21), mod(m22), mod(c1), mod(c2)});
    };

    for (const auto& [S, mu] : integer_S_set(B)) {
        long s11 = to_integer(S.m11.as_rational()).convert_to<long>();
        long s12 = to_integer(S.m12.as_rational()).convert_to<long>();
        long s21 = to_integer(S.m21.as_rational()).convert_to<long>();
        long s22 = to_integer(S.m22.as_rational()).convert_to<long>();
        long m11 = s11, m12 = s12, m21 = s21, m22 = s22;
        if (mu == -1) {
            // Time flipped generators act by -E S on the xi residue.
            m11 = -(e11 * s11 + e12 * s21);
            m12 = -(e11 * s12 + e12 * s22);
            m21 = -(e21 * s11 + e22 * s21);
            m22 = -(e21 * s12 + e22 * s22);
        }
        auto beta = gamma_offset_beta(S, r % 2 != 0);
        // c = 2r (E - I) b with b = beta / (2r).
        long b1 = beta.first, b2 = beta.second;
        push_map(m11, m12, m21, m22, (e11 - 1) * b1 + e12 * b2, e21 * b1 + (e22 - 1) * b2);
    }
    // Pure translations by (E - I) e_j / r, legal with S = I.
    push_map(1, 0, 0, 1, 2 * (e11 - 1), 2 * e21);
    push_map(1, 0, 0, 1, 2 * e12, 2 * (e22 - 1));

    std::sort(ctx.maps.begin(), ctx.maps.end());
    ctx.maps.erase(std::unique(ctx.maps.begin(), ctx.maps.end()), ctx.maps.end());
    return ctx;
}

inline const OrbitContext& cached_orbit_context(const Integer& r, const StructureMatrix& B)
{
    static std::map<std::string, OrbitContext> cache;
    std::string key = r.str() + "|" + format_rational(angle_over_pi(B.lambda)) + "|" +
                      format_scalar(B.x) + "|" + format_scalar(B.y);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, orbit_context(r, B)).first;
    return it->second;
}

// Breadth-first closure of one grid point under the affine generator maps.
// Returns the orbit as encoded values p * 2r + q, sorted.
inline std::vector<long> orbit_of(const OrbitContext& ctx, long p, long q)
{
    const long        n = ctx.two_r;
    std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
    std::vector<long> stack{p * n + q}, out;
    seen[static_cast<std::size_t>(p * n + q)] = 1;
    while (!stack.empty()) {
        long cur = stack.back();
        stack.pop_back();
        out.push_back(cur);
        long cp = cur / n, cq = cur % n;
        for (const auto& m : ctx.maps) {
            long np = (m[0] * cp + m[1] * cq + m[4]) % n;
            long nq = (m[2] * cp + m[3] * cq + m[5]) % n;
            long enc = np * n + nq;
            if (!seen[static_cast<std::size_t>(enc)]) {
                seen[static_cast<std::size_t>(enc)] = 1;
                stack.push_back(enc);
            }
        }
    }
    std::sort(out.begin(), out.end());
    internal_check(out.front() / n % 2 == ctx.off1 && out.front() % n % 2 == ctx.off2,
                   "orbit_of: orbit left the admissible grid");
    return out;
}

inline std::pair<long, long> grid_coords(const OrbitContext& ctx, const Rational& x1,
                                         const Rational& x2)
{
    Rational p = Rational(ctx.two_r) * x1, q = Rational(ctx.two_r) * x2;
    internal_check(is_integer(p) && is_integer(q), "grid_coords: xi is not on the half grid");
    long pp = ((to_integer(p) % ctx.two_r + ctx.two_r) % ctx.two_r).convert_to<long>();
    long qq = ((to_integer(q) % ctx.two_r + ctx.two_r) % ctx.two_r).convert_to<long>();
    internal_check(pp % 2 == ctx.off1 && qq % 2 == ctx.off2,
                   "grid_coords: xi is not on the admissible grid");
    return {pp, qq};
}

} // namespace detail

// Independent canonical label of the orbit of xi under all lattice preserving
// automorphisms: the lexicographically least orbit member.
inline std::pair<Rational, Rational> canonical_xi_oracle(const std::pair<Rational, Rational>& xi,
                                                         const Integer& r,
                                                         const StructureMatrix& B)
{
    const auto& ctx   = detail::cached_orbit_context(r, B);
    auto [p, q]       = detail::grid_coords(ctx, xi.first, xi.second);
    std::vector<long> orbit = detail::orbit_of(ctx, p, q);
    long              best  = orbit.front();
    return {Rational(best / ctx.two_r, ctx.two_r), Rational(best % ctx.two_r, ctx.two_r)};
}

// Full orbit partition of the admissible grid, each orbit sorted, orbits
// ordered by their least member.
inline std::vector<std::vector<std::pair<Rational, Rational>>>
orbit_partition(const Integer& r, const StructureMatrix& B)
{
    const auto&       ctx = detail::cached_orbit_context(r, B);
    const long        n   = ctx.two_r;
    std::vector<char> done(static_cast<std::size_t>(n) * n, 0);
    std::vector<std::vector<std::pair<Rational, Rational>>> out;
    for (long p = ctx.off1; p < n; p += 2) {
        for (long q = ctx.off2; q < n; q += 2) {
            if (done[static_cast<std::size_t>(p * n + q)])
                continue;
            std::vector<long> orbit = detail::orbit_of(ctx, p, q);
            std::vector<std::pair<Rational, Rational>> pts;
            pts.reserve(orbit.size());
            for (long enc : orbit) {
                done[static_cast<std::size_t>(enc)] = 1;
                pts.emplace_back(Rational(enc / n, n), Rational(enc % n, n));
            }
            out.push_back(std::move(pts));
        }
    }
    return out;
}

// Closed-form transversal of the orbit partition, one representative per
// class, straight from the case analysis of the reduced points.  Index pairs
// (k, l) refer to xi = ((o1 + k)/r, (o2 + l)/r) on the admissible grid.
inline std::vector<std::pair<Rational, Rational>>
canonical_xi_rows(const Angle& lambda, const FundamentalPoint& pt, const Integer& r)
{
    Rational f = angle_over_pi(lambda) - 2 * Rational(rat_floor(angle_over_pi(lambda) / 2));
    bool     even = r % 2 == 0;
    std::vector<std::pair<Rational, Rational>> rows;
    auto xi = [&](const Rational& a, const Rational& b) { rows.emplace_back(a, b); };

    if (f == Rational(1, 3)) {
        even ? xi(0, 0) : xi(Rational(1, 2 * r), 0);
    } else if (f == Rational(5, 3)) {
        even ? xi(0, 0) : xi(0, Rational(1, 2 * r));
    } else if (f == Rational(1, 2) || f == Rational(3, 2)) {
        xi(0, 0);
        if (even)
            xi(0, Rational(1, r));
    } else if (f == Rational(2, 3) || f == Rational(4, 3)) {
        bool     div3 = r % 3 == 0;
        Rational h(1, 2 * r), s(1, r);
        if (even) {
            xi(0, 0);
            if (div3)
                xi(s, 0);
        } else if (f == Rational(2, 3)) {
            xi(0, h);
            if (div3)
                xi(s, h);
        } else {
            xi(h, 0);
            if (div3)
                xi(h + s, 0);
        }
    } else if (f == 1) {
        if (!even) {
            xi(0, 0);
        } else {
            Rational s(1, r);
            if (pt.is_corner()) {
                xi(0, 0);
                xi(s, s);
            } else if (pt.on_circle() || Scalar(2) * pt.x == Scalar(1)) {
                xi(0, 0);
                xi(s, 0);
                xi(s, s);
            } else {
                xi(0, 0);
                xi(s, 0);
                xi(0, s);
                xi(s, s);
            }
        }
    } else {
        internal_check(f == 0, "canonical_xi_rows: angle residue " + format_rational(f) +
                                   " is not admissible");
        // Rotation is the identity: representatives indexed over (k, l)/r.
        auto emit = [&](const Integer& k, const Integer& l) {
            rows.emplace_back(Rational(k, r), Rational(l, r));
        };
        bool half_x = Scalar(2) * pt.x == Scalar(1);
        bool zero_x = pt.x.is_zero();
        for (Integer k = 0; k < r; ++k) {
            for (Integer l = 0; l < r; ++l) {
                bool in_box   = 2 * k <= r && 2 * l <= r;
                bool in_strip = k > 0 && 2 * k < r && 2 * l > r && l < r;
                bool take     = false;
                if (pt.is_corner()) {
                    take = 2 * k <= l && 2 * l <= k + r;
                } else if (pt.on_circle() && zero_x) {
                    take = in_box && k <= l;
                } else if (pt.on_circle()) {
                    take = (in_box && k <= l) || (in_strip && k + l <= r);
                } else if (half_x) {
                    take = (in_box && 2 * k <= l) || (in_box && l == 0) || (in_strip && 2 * k <= l);
                } else if (zero_x) {
                    take = in_box;
                } else {
                    take = in_box || in_strip;
                }
                if (take)
                    emit(k, l);
            }
        }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
}

// Constructive canonical representative of the orbit of an admissible xi,
// from the invariants of the case analysis: parity differences, mod 3 sums,
// parity vectors, or (for trivial rotation) the finite point symmetry group.
inline std::pair<Rational, Rational>
canonical_xi_constructive(const std::pair<Rational, Rational>& xi, const Integer& r,
                          const Angle& lambda, const FundamentalPoint& pt)
{
    Rational f = angle_over_pi(lambda) - 2 * Rational(rat_floor(angle_over_pi(lambda) / 2));
    bool     even = r % 2 == 0;
    StructureMatrix B(lambda, pt.x, pt.y);

    // Grid indices: xi = ((o1 + k)/r, (o2 + l)/r).
    Rational o1 = 0, o2 = 0;
    if (!even) {
        if (f == Rational(1, 3) || f == Rational(4, 3))
            o1 = Rational(1, 2);
        if (f == Rational(5, 3) || f == Rational(2, 3))
            o2 = Rational(1, 2);
    }
    Rational k_rat = Rational(r) * xi.first - o1;
    Rational l_rat = Rational(r) * xi.second - o2;
    internal_check(is_integer(k_rat) && is_integer(l_rat),
                   "canonical_xi_constructive: xi is not on the admissible grid");
    Integer k = to_integer(k_rat), l = to_integer(l_rat);

    if (f == Rational(1, 3) || f == Rational(5, 3))
        return canonical_xi_rows(lambda, pt, r).front();

    if (f == Rational(1, 2) || f == Rational(3, 2)) {
        if (!even || (k - l) % 2 == 0)
            return {0, 0};
        return {0, Rational(1, r)};
    }

    if (f == Rational(2, 3) || f == Rational(4, 3)) {
        if (r % 3 != 0)
            return canonical_xi_rows(lambda, pt, r).front();
        int inv3 = static_cast<int>(((k + l) % 3 + 3) % 3);
        Rational h(1, 2 * r), s(1, r);
        if (even)
            return inv3 == 0 ? std::pair<Rational, Rational>{0, 0}
                             : std::pair<Rational, Rational>{s, 0};
        if (f == Rational(2, 3))
            return inv3 == 1 ? std::pair<Rational, Rational>{s, h}
                             : std::pair<Rational, Rational>{0, h};
        return inv3 == 1 ? std::pair<Rational, Rational>{h + s, 0}
                         : std::pair<Rational, Rational>{h, 0};
    }

    if (f == 1) {
        if (!even)
            return {0, 0};
        int p1 = static_cast<int>(((k % 2) + 2) % 2), p2 = static_cast<int>(((l % 2) + 2) % 2);
        Rational s(1, r);
        if (pt.is_corner())
            return p1 == 0 && p2 == 0 ? std::pair<Rational, Rational>{0, 0}
                                      : std::pair<Rational, Rational>{s, s};
        if (Scalar(2) * pt.x == Scalar(1) && !pt.on_circle()) {
            if (p1 == 0 && p2 == 0)
                return {0, 0};
            if (p1 == 1 && p2 == 0)
                return {s, 0};
            return {s, s};
        }
        if (pt.on_circle()) {
            if (p1 == 0 && p2 == 0)
                return {0, 0};
            if (p1 == 1 && p2 == 1)
                return {s, s};
            return {s, 0};
        }
        return {Rational(p1, r), Rational(p2, r)};
    }

    internal_check(f == 0, "canonical_xi_constructive: angle residue is not admissible");
    // Trivial rotation: the action reduces to the finite matrix group {+-S}.
    // The orbit is tiny; its unique member inside the closed-form row set is
    // the representative.
    std::vector<std::pair<Rational, Rational>> images;
    for (const auto& [S, mu] : integer_S_set(B)) {
        Vec2 im = S * Vec2(Scalar(xi.first), Scalar(xi.second));
        for (int sgn : {1, -1}) {
            Rational a = frac_mod1(Rational(sgn) * im.c1.as_rational());
            Rational b = frac_mod1(Rational(sgn) * im.c2.as_rational());
            images.emplace_back(a, b);
        }
    }
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    auto rows = canonical_xi_rows(lambda, pt, r);
    std::optional<std::pair<Rational, Rational>> found;
    for (const auto& im : images) {
        if (std::binary_search(rows.begin(), rows.end(), im)) {
            internal_check(!found.has_value(),
                           "canonical_xi_constructive: row set hits one orbit twice");
            found = im;
        }
    }
    internal_check(found.has_value(), "canonical_xi_constructive: row set misses an orbit");
    return *found;
}

/**
 * Full classification: validate, reduce the point to the folded fundamental
 * domain, transport the distinguished element along the conjugating
 * isomorphism (plus a time flip when the derivation sign turns), and
 * canonicalize the xi residue.  For r <= oracle_cutoff the constructive
 * representative is cross checked against the brute force orbit label.
 */
inline LatticeData classify_lattice(const LatticeSpec& spec, int oracle_cutoff = 12)
{
    validate_spec(spec);
    Mat2  E      = spec.B.exp_tB(1);
    Angle lambda = extract_lambda(E, spec.B.lambda);

    Reduction red = reduce_fundamental(spec.B.x, spec.B.y);
    LatticeIso iso = conjugating_iso(red.S, spec.r, spec.B);
    internal_check(iso.dst_sign == red.flip,
                   "classify_lattice: conjugator sign disagrees with the reduction flip");
    internal_check(Vec2(iso.dst_B.x, iso.dst_B.y) == Vec2(red.point.x, red.point.y),
                   "classify_lattice: conjugator target disagrees with the reduction point");

    GroupElement d0(spec.z0, Vec2(Scalar(spec.xi1), Scalar(spec.xi2)), 1);
    GroupElement d1 = iso_apply(iso, d0);

    StructureMatrix Bf(lambda, red.point.x, red.point.y);
    if (red.flip == -1)
        d1 = invert(time_flip(d1), Bf);
    internal_check(d1.t == 1 && d1.xi.is_rational(),
                   "classify_lattice: transported element is not in standard shape");

    std::pair<Rational, Rational> xi{frac_mod1(d1.xi.c1.rat()), frac_mod1(d1.xi.c2.rat())};
    LatticeSpec transported{spec.r, Bf, xi.first, xi.second, Scalar(0)};
    validate_spec(transported);

    auto canon = canonical_xi_constructive(xi, spec.r, lambda, red.point);
    if (spec.r <= oracle_cutoff) {
        internal_check(canonical_xi_oracle(xi, spec.r, Bf) ==
                           canonical_xi_oracle(canon, spec.r, Bf),
                       "classify_lattice: constructive representative left the orbit");
    }
    return LatticeData{spec.r, lambda, red.point, canon.first, canon.second};
}

inline LatticeSpec spec_from_normalization(const NormalizationResult& n)
{
    return LatticeSpec{n.r, StructureMatrix(n.lambda, n.x, n.y), n.xi0.first, n.xi0.second,
                       Scalar(0)};
}

inline LatticeData classify_lattice(const RawLatticeInput& input, int oracle_cutoff = 12)
{
    return classify_lattice(spec_from_normalization(normalize(input)), oracle_cutoff);
}

inline bool equivalent(const LatticeSpec& a, const LatticeSpec& b, int oracle_cutoff = 12)
{
    return classify_lattice(a, oracle_cutoff) == classify_lattice(b, oracle_cutoff);
}

struct TableEntry {
    Rational xi1, xi2;
    long     class_size;
};

// Regenerated classification table cell: canonical representatives with class
// sizes for the given angle, point and scale.  The closed-form row set must
// be an exact transversal of the computed orbit partition.
inline std::vector<TableEntry> classification_table(const Angle& lambda, const FundamentalPoint& pt,
                                              const Integer& r)
{
    Rational f = angle_over_pi(lambda) - 2 * Rational(rat_floor(angle_over_pi(lambda) / 2));
    if ((f == Rational(1, 3) || f == Rational(5, 3) || f == Rational(2, 3) ||
         f == Rational(4, 3)) &&
        !pt.is_corner())
        throw NonLatticeError("classification_table: angle base " + angle_base_name(lambda.base) +
                              " requires the corner point (1/2, sqrt(3)/2)");
    if ((f == Rational(1, 2) || f == Rational(3, 2)) &&
        !(pt.x.is_zero() && pt.y == Scalar(1)))
        throw NonLatticeError("classification_table: angle base pi/2 requires the point (0, 1)");

    StructureMatrix B(lambda, pt.x, pt.y);
    auto            partition = orbit_partition(r, B);
    auto            rows      = canonical_xi_rows(lambda, pt, r);

    std::vector<TableEntry> out;
    std::size_t             used = 0;
    for (const auto& orbit : partition) {
        std::optional<std::pair<Rational, Rational>> rep;
        for (const auto& p : orbit) {
            if (std::binary_search(rows.begin(), rows.end(), p)) {
                internal_check(!rep.has_value(), "classification_table: row set hits one orbit twice");
                rep = p;
                ++used;
            }
        }
        internal_check(rep.has_value(), "classification_table: row set misses an orbit");
        out.push_back(TableEntry{rep->first, rep->second, static_cast<long>(orbit.size())});
    }
    internal_check(used == rows.size(), "classification_table: row set has unused entries");
    std::sort(out.begin(), out.end(), [](const TableEntry& a, const TableEntry& b) {
        return std::pair(a.xi1, a.xi2) < std::pair(b.xi1, b.xi2);
    });
    return out;
}

// alpha^p beta^q gamma^w written multiplicatively.
struct ConjugationWord {
    Integer p, q, w;
};

/**
 * Presentation data of the lattice on the generators alpha = (0, e1, 0),
 * beta = (0, e2, 0), gamma = (1, 0, 0), delta = (z0, xi0, 1): the commutator
 * relation [alpha, beta] = gamma^r, the conjugation words delta alpha
 * delta^{-1} and delta beta delta^{-1}, and the least central power of delta
 * when one exists.  Every relation is verified by direct multiplication.
 */
struct OLatticeReport {
    Integer                r;
    Integer                commutator_exponent;
    ConjugationWord        alpha_word, beta_word;
    std::optional<Integer> central_power;
    bool                   angle_multiple_of_pi; // central power statement leaves the generic
                                                 // angle family here
};

inline OLatticeReport olattice_relations(const LatticeSpec& spec)
{
    validate_spec(spec);
    SymplecticForm  form = SymplecticForm::standard(spec.r);
    const StructureMatrix& B = spec.B;
    Mat2            E = B.exp_tB(1);

    GroupElement alpha(Scalar(0), Vec2(1, 0), 0);
    GroupElement beta(Scalar(0), Vec2(0, 1), 0);
    GroupElement gamma(Scalar(1), Vec2(), 0);
    GroupElement delta(spec.z0, Vec2(Scalar(spec.xi1), Scalar(spec.xi2)), 1);

    auto word_value = [&](const ConjugationWord& wd) {
        GroupElement acc = power(alpha, wd.p, form, B);
        acc              = multiply(acc, power(beta, wd.q, form, B), form, B);
        return multiply(acc, power(gamma, wd.w, form, B), form, B);
    };
    auto conj = [&](const GroupElement& g, const GroupElement& h) {
        return multiply(multiply(g, h, form, B), invert(g, B), form, B);
    };

    OLatticeReport out;
    out.r = spec.r;

    GroupElement comm = multiply(conj(alpha, beta), invert(beta, B), form, B);
    internal_check(comm == power(gamma, spec.r, form, B),
                   "olattice_relations: commutator relation fails");
    out.commutator_exponent = spec.r;

    Vec2 xi0(Scalar(spec.xi1), Scalar(spec.xi2));
    for (int i = 0; i < 2; ++i) {
        Vec2            col = i == 0 ? Vec2(E.m11, E.m21) : Vec2(E.m12, E.m22);
        ConjugationWord wd;
        wd.p = to_integer(col.c1.as_rational());
        wd.q = to_integer(col.c2.as_rational());
        wd.w = to_integer((omega(form, xi0, col) -
                           Scalar(Rational(spec.r, 2)) * col.c1 * col.c2).as_rational());
        GroupElement image = conj(delta, i == 0 ? alpha : beta);
        internal_check(word_value(wd) == image,
                       "olattice_relations: conjugation word fails to reproduce the image");
        (i == 0 ? out.alpha_word : out.beta_word) = wd;
    }
    internal_check(conj(delta, gamma) == gamma, "olattice_relations: gamma is not central");

    Trig tr               = angle_trig(B.lambda);
    out.angle_multiple_of_pi = tr.s.is_zero();
    if (E == Mat2::identity()) {
        if (spec.xi1 == 0 && spec.xi2 == 0)
            out.central_power = 1;
        else
            out.central_power = std::nullopt; // delta^k has xi part k xi0 != 0 for all k >= 1
    } else {
        Integer      m  = angle_rotation_order(B.lambda);
        GroupElement dm = power(delta, m, form, B);
        internal_check(dm.xi.is_zero() && dm.t == m,
                       "olattice_relations: rotation-order power is not central in xi");
        internal_check(multiply(dm, alpha, form, B) == multiply(alpha, dm, form, B) &&
                           multiply(dm, beta, form, B) == multiply(beta, dm, form, B),
                       "olattice_relations: rotation-order power fails to commute");
        out.central_power = m;
    }
    return out;
}

} // namespace osclat
