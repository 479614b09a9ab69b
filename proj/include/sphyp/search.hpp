#pragma once

#include <cmath>
#include <limits>

namespace sphyp {

struct LineMinimum {
    double t = 0.0;
    double value = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    double width = 0.0;  // final bracket width
};

// Golden-section search for a minimum of f on the open interval (lo, hi).
// Only interior points are evaluated, so f may be undefined at the ends.
// Stops once the bracket is narrower than rel_tol * (hi - lo) or after max_iter steps.
template <class F>
LineMinimum golden_section(F&& f, double lo, double hi, double rel_tol, int max_iter) {
    constexpr double kInvPhi = 0.6180339887498949;
    const double stop_width = rel_tol * std::abs(hi - lo);
    double a = lo;
    double b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    LineMinimum best;
    best.evaluations = 2;
    auto keep = [&best](double t, double v) {
        if (v < best.value) {
            best.value = v;
            best.t = t;
        }
    };
    keep(x1, f1);
    keep(x2, f2);
    for (int it = 0; it < max_iter && std::abs(b - a) > stop_width; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
            keep(x1, f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
            keep(x2, f2);
        }
        ++best.evaluations;
    }
    best.width = std::abs(b - a);
    return best;
}

}  // namespace sphyp
