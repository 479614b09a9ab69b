#pragma once

#include <cmath>

#include "doctest.h"
#include "sphyp/rng.hpp"
#include "sphyp/sphere.hpp"

namespace sphyp::test {

inline SpherePoint pt(double re, double im = 0.0) { return SpherePoint::finite(re, im); }

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline bool close_points(const SpherePoint& a, const SpherePoint& b, double tol) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
    return std::abs(a.value() - b.value()) <= tol * std::max(1.0, std::abs(b.value()));
}

inline SphericalIsometry random_isometry(Rng& rng, double max_center = 2.0) {
    return SphericalIsometry(rng.uniform(0.0, kTwoPi), SpherePoint::finite(rng.disk_point(max_center)));
}

}  // namespace sphyp::test
