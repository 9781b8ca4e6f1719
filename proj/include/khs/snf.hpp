#pragma once

// Smith normal form over the integers, for reading integral homology off the
// residual scalar differentials.  Matrices here are small (the complex has
// already been reduced), so a straightforward pivoting implementation with
// overflow-checked arithmetic is enough.

#include <cstdlib>
#include <vector>

#include "rings.hpp"

namespace khs {

// Returns the nonzero diagonal invariants d1 | d2 | ... of the matrix.
inline std::vector<long long> smith_invariants(std::vector<std::vector<long long>> a) {
    const int rows = (int)a.size();
    const int cols = rows ? (int)a[0].size() : 0;
    std::vector<long long> inv;
    int t = 0;
    auto nonzero_at_or_after = [&](int& pr, int& pc) {
        long long best = 0;
        pr = pc = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                long long v = a[i][j] < 0 ? -a[i][j] : a[i][j];
                if (v != 0 && (best == 0 || v < best)) { best = v; pr = i; pc = j; }
            }
        return pr >= 0;
    };
    while (t < rows && t < cols) {
        int pr, pc;
        if (!nonzero_at_or_after(pr, pc)) break;
        std::swap(a[t], a[pr]);
        for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                long long q = a[i][t] / a[t][t];
                for (int j = t; j < cols; ++j)
                    a[i][j] = detail::checked_add(a[i][j], -detail::checked_mul(q, a[t][j]));
                if (a[i][t] != 0) {  // remainder smaller than pivot: swap up
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                long long q = a[t][j] / a[t][t];
                for (int i = t; i < rows; ++i)
                    a[i][j] = detail::checked_add(a[i][j], -detail::checked_mul(q, a[i][t]));
                if (a[t][j] != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                    clean = false;
                }
            }
        }
        inv.push_back(std::llabs(a[t][t]));
        ++t;
    }
    // enforce the divisibility chain d1 | d2 | ...
    for (size_t i = 0; i + 1 < inv.size(); ++i)
        for (size_t j = i + 1; j < inv.size(); ++j) {
            long long x = inv[i], y = inv[j];
            long long g = std::gcd(x, y);
            long long l = detail::checked_mul(x / g, y);
            inv[i] = g;
            inv[j] = l;
        }
    return inv;
}

} // namespace khs
