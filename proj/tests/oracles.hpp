#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sphyp/perfectness.hpp"

namespace sphyp::test {

// Every annulus {r1 < |z - c| < r2} with c in E and radii drawn from the distances to c
// (plus diam), kept only if no point of E lies strictly inside. O(n^4).
inline double brute_force_k(const CompactSetSample& e) {
    const std::vector<Complex> pts = merged_points(e.points);
    double diam = 0.0;
    for (const Complex& a : pts) {
        for (const Complex& b : pts) diam = std::max(diam, std::abs(a - b));
    }
    double best = 1.0;
    for (const Complex& c : pts) {
        std::vector<double> radii;
        for (const Complex& z : pts) {
            if (z != c) radii.push_back(std::abs(z - c));
        }
        if (!e.contains_infinity) radii.push_back(diam);
        for (const double r1 : radii) {
            for (const double r2 : radii) {
                if (!(r1 > 0.0 && r1 < r2)) continue;
                const bool empty = std::none_of(pts.begin(), pts.end(), [&](const Complex& z) {
                    const double t = std::abs(z - c);
                    return r1 < t && t < r2;
                });
                if (empty) best = std::min(best, r1 / r2);
            }
        }
    }
    return best;
}

}  // namespace sphyp::test
