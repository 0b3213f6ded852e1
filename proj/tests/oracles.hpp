#pragma once

// Test-only oracles, kept independent of the enumeration implementation:
// the box scan walks a rectangular box computed from the exact inverse Gram
// (adjugate over determinant) and filters by direct form evaluation.

#include <algorithm>
#include <vector>

#include "sosk49/lattice.hpp"
#include "sosk49/numeric.hpp"

namespace sosk49::testing {

/// All v with v^T G v <= bound for a 3x3 positive definite rational Gram,
/// by brute-force box scan: |v_i| <= sqrt(bound * (G^-1)_ii).
inline std::vector<std::array<Int, 3>> box_scan_points(const std::vector<std::vector<Rat>>& gram,
                                                       const Rat& bound) {
    std::vector<std::array<Int, 3>> out;
    if (bound < 0) return out;
    Rat det = gram[0][0] * (gram[1][1] * gram[2][2] - gram[1][2] * gram[2][1]) -
              gram[0][1] * (gram[1][0] * gram[2][2] - gram[1][2] * gram[2][0]) +
              gram[0][2] * (gram[1][0] * gram[2][1] - gram[1][1] * gram[2][0]);
    Rat adj[3];  // diagonal of the adjugate
    adj[0] = gram[1][1] * gram[2][2] - gram[1][2] * gram[2][1];
    adj[1] = gram[0][0] * gram[2][2] - gram[0][2] * gram[2][0];
    adj[2] = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
    long box[3];
    for (int i = 0; i < 3; ++i) {
        Rat k = bound * adj[i] / det;  // (G^-1)_ii = adj_ii / det
        Int m = isqrt_floor(fdiv(k.get_num(), k.get_den()));
        box[i] = m.get_si();
    }
    for (long a = -box[0]; a <= box[0]; ++a)
        for (long b = -box[1]; b <= box[1]; ++b)
            for (long c = -box[2]; c <= box[2]; ++c) {
                Rat val = 0;
                long v[3] = {a, b, c};
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        if (v[i] != 0 && v[j] != 0) val += gram[size_t(i)][size_t(j)] * v[i] * v[j];
                if (val <= bound) out.push_back({Int(a), Int(b), Int(c)});
            }
    return out;
}

inline std::vector<std::array<Int, 3>> sorted(std::vector<std::array<Int, 3>> pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return lex_less(x, y); });
    return pts;
}

}  // namespace sosk49::testing
