#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sphyp/sphere.hpp"

namespace sphyp {

/// Finite sample of a compact set E, optionally with infinity.
struct CompactSetSample {
    std::vector<Complex> points;
    bool contains_infinity = false;
    std::string label;
};

/// k_hat = witness_inner / witness_outer, the ratio of the widest empty annulus
/// centered at a finite sample point with outer radius at most diam.
struct PerfectnessReport {
    double k_hat = 1.0;
    Complex witness_center{};
    double witness_inner = 0.0;
    double witness_outer = 0.0;
    double diam = 0.0;  // +inf when infinity is in E
    std::size_t n_points = 0;
};

/// Points closer than this are merged.
inline constexpr double kMergeDistance = 1e-14;

/// Distinct points after merging, in input order.
std::vector<Complex> merged_points(const std::vector<Complex>& points);

/// Euclidean diameter; +inf when infinity is in E.
double euclid_diameter(const CompactSetSample& e);

PerfectnessReport up_constant_estimate(const CompactSetSample& e);

/// Endpoints of the level-th middle-thirds construction on [0, 1], 1 <= level <= 20.
CompactSetSample cantor_iterate(int level);

enum class ExponentRule { Linear, Quadratic };

/// {0} together with base^(-e(j)), j = 0..n, e(j) = j or j^2. base > 1, n >= 3.
CompactSetSample geometric_gap_set(double base, ExponentRule rule, int n);

/// CSV rows "re,im", plus at most one row "inf". Blank lines and a header "re,im" are skipped.
CompactSetSample parse_points_csv(std::string_view text, std::string label);

}  // namespace sphyp
