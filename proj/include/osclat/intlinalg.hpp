#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "osclat/errors.hpp"
#include "osclat/rational.hpp"

namespace osclat {

/**
 * Column reduction M * U = [h1 h2 0 ... 0] of an integer 2 x N matrix by a
 * unimodular N x N matrix U.  The nonzero columns h1, h2 span the column
 * lattice (h2 has first entry 0); U columns at index >= rank span the kernel
 * of M over Z.
 */
struct ColumnReduction {
    int                               rank = 0;
    std::array<Integer, 2>            h1{}, h2{};
    std::vector<std::vector<Integer>> u; // u[i][j]: row i, column j
};

inline ColumnReduction column_reduce_2xN(std::vector<std::array<Integer, 2>> cols)
{
    const std::size_t n = cols.size();
    ColumnReduction   out;
    out.u.assign(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        out.u[i][i] = 1;

    auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
        cols[dst][0] -= q * cols[src][0];
        cols[dst][1] -= q * cols[src][1];
        for (std::size_t i = 0; i < n; ++i)
            out.u[i][dst] -= q * out.u[i][src];
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        std::swap(cols[a], cols[b]);
        for (std::size_t i = 0; i < n; ++i)
            std::swap(out.u[i][a], out.u[i][b]);
    };
    auto col_negate = [&](std::size_t j) {
        cols[j][0] = -cols[j][0];
        cols[j][1] = -cols[j][1];
        for (std::size_t i = 0; i < n; ++i)
            out.u[i][j] = -out.u[i][j];
    };

    // One gcd sweep per matrix row: shrink entries of that row in columns
    // from `start` until a single nonzero pivot remains, then park it at
    // column `start`.
    std::size_t start = 0;
    for (int row = 0; row < 2 && start < n; ++row) {
        for (;;) {
            std::size_t pivot    = n;
            int         nonzeros = 0;
            for (std::size_t j = start; j < n; ++j) {
                if (cols[j][row] == 0)
                    continue;
                ++nonzeros;
                if (pivot == n || boost::multiprecision::abs(cols[j][row]) <
                                      boost::multiprecision::abs(cols[pivot][row]))
                    pivot = j;
            }
            if (nonzeros == 0)
                break;
            if (nonzeros == 1) {
                col_swap(start, pivot);
                if (cols[start][row] < 0)
                    col_negate(start);
                (out.rank == 0 ? out.h1 : out.h2) = cols[start];
                ++out.rank;
                ++start;
                break;
            }
            for (std::size_t j = start; j < n; ++j) {
                if (j == pivot || cols[j][row] == 0)
                    continue;
                col_axpy(j, pivot, floor_div(cols[j][row], cols[pivot][row]));
            }
        }
    }
    return out;
}

// Bezout data g = gcd(values) together with integer coefficients realizing it.
// The gcd of the empty list (or of all zeros) is 0 with zero coefficients.
struct ExtendedGcd {
    Integer              g;
    std::vector<Integer> coeff;
};

inline ExtendedGcd extended_gcd(const std::vector<Integer>& values)
{
    ExtendedGcd out;
    out.g = 0;
    out.coeff.assign(values.size(), 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        // Fold in values[i]: g' = s*g + t*values[i] via the euclidean pair.
        Integer a = out.g, b = values[i];
        if (b == 0)
            continue;
        if (a == 0) {
            out.g = boost::multiprecision::abs(b);
            for (auto& c : out.coeff)
                c = 0;
            out.coeff[i] = b < 0 ? -1 : 1;
            continue;
        }
        Integer s0 = 1, t0 = 0, s1 = 0, t1 = 1;
        while (b != 0) {
            Integer q = floor_div(a, b);
            Integer r = a - q * b;
            a = b;
            b = r;
            Integer s2 = s0 - q * s1, t2 = t0 - q * t1;
            s0 = s1;
            t0 = t1;
            s1 = s2;
            t1 = t2;
        }
        if (a < 0) {
            a = -a;
            s0 = -s0;
            t0 = -t0;
        }
        for (auto& c : out.coeff)
            c *= s0;
        out.coeff[i] = t0;
        out.g = a;
    }
    return out;
}

} // namespace osclat
