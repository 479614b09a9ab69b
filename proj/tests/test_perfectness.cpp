#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "sphyp/fault.hpp"
#include "sphyp/perfectness.hpp"

using namespace sphyp;
using sphyp::test::brute_force_k;

namespace {

CompactSetSample random_set(Rng& rng, std::size_t n) {
    CompactSetSample s;
    for (std::size_t k = 0; k < n; ++k) s.points.push_back(rng.disk_point(1.0 + 3.0 * rng.uniform()));
    return s;
}

CompactSetSample circle_with_center(std::size_t n) {
    CompactSetSample s;
    s.points.emplace_back(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) s.points.push_back(std::polar(1.0, kTwoPi * k / n));
    return s;
}

}  // namespace

TEST_SUITE("perfectness") {
    TEST_CASE("estimator agrees with the brute-force oracle") {
        Rng rng(1234);
        for (int trial = 0; trial < 40; ++trial) {
            const CompactSetSample s = random_set(rng, 2 + rng.below(59));
            CHECK(up_constant_estimate(s).k_hat == brute_force_k(s));
        }
        for (const CompactSetSample& s : {cantor_iterate(1), cantor_iterate(2), cantor_iterate(3),
                                          geometric_gap_set(2, ExponentRule::Linear, 5),
                                          geometric_gap_set(2, ExponentRule::Quadratic, 6), circle_with_center(32)}) {
            CAPTURE(s.label);
            CHECK(up_constant_estimate(s).k_hat == brute_force_k(s));
        }
    }

    TEST_CASE("known values") {
        CHECK(up_constant_estimate(cantor_iterate(1)).k_hat == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(up_constant_estimate(cantor_iterate(2)).k_hat == doctest::Approx(0.4).epsilon(1e-15));
        for (int level = 3; level <= 8; ++level) {
            CAPTURE(level);
            CHECK(up_constant_estimate(cantor_iterate(level)).k_hat >= 0.2);
        }
        // {0} with base^-j: the widest gap is seen from base^-j looking outward, ratio 1/(base+1).
        CHECK(up_constant_estimate(geometric_gap_set(2, ExponentRule::Linear, 5)).k_hat ==
              doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(up_constant_estimate(geometric_gap_set(3, ExponentRule::Linear, 8)).k_hat ==
              doctest::Approx(0.25).epsilon(1e-14));
        CHECK(up_constant_estimate(geometric_gap_set(2, ExponentRule::Quadratic, 6)).k_hat ==
              doctest::Approx(std::ldexp(1.0, -11)).epsilon(1e-14));
        // Seen from 0 the circle is one empty annulus from 1 to diam = 2.
        CHECK(up_constant_estimate(circle_with_center(64)).k_hat == doctest::Approx(0.5).epsilon(1e-14));
    }

    TEST_CASE("linear family does not depend on n, quadratic family decreases") {
        for (const double b : {1.5, 2.0, 3.0, 4.0}) {
            const double k3 = up_constant_estimate(geometric_gap_set(b, ExponentRule::Linear, 3)).k_hat;
            // For b >= 2 the cluster below base^-j sits inside the first outward gap.
            if (b >= 2.0) CHECK(k3 == doctest::Approx(1.0 / (b + 1.0)).epsilon(1e-12));
            for (int n = 4; n <= 12; ++n) {
                CAPTURE(b);
                CAPTURE(n);
                const CompactSetSample s = geometric_gap_set(b, ExponentRule::Linear, n);
                CHECK(up_constant_estimate(s).k_hat == doctest::Approx(k3).epsilon(1e-12));
                CHECK(up_constant_estimate(s).k_hat == brute_force_k(s));
            }
        }
        // 2^-(n^2) stays above the merge distance up to n = 6.
        double prev = 1.0;
        for (int n = 3; n <= 6; ++n) {
            const double k = up_constant_estimate(geometric_gap_set(2, ExponentRule::Quadratic, n)).k_hat;
            CHECK(k == doctest::Approx(std::ldexp(1.0, 1 - 2 * n)).epsilon(1e-14));
            CHECK(k < prev);
            prev = k;
        }
    }

    TEST_CASE("property: similarity invariance and empty witness annulus") {
        Rng rng(77);
        for (int trial = 0; trial < 30; ++trial) {
            const CompactSetSample s = random_set(rng, 3 + rng.below(100));
            const Complex a = std::polar(0.1 + 5.0 * rng.uniform(), rng.uniform(0.0, kTwoPi));
            const Complex b = rng.disk_point(10.0);
            CompactSetSample t;
            for (const Complex& z : s.points) t.points.push_back(a * z + b);
            const PerfectnessReport r = up_constant_estimate(s);
            CHECK(std::abs(up_constant_estimate(t).k_hat - r.k_hat) <= 1e-12);
            CHECK(r.witness_inner <= r.witness_outer);
            CHECK(r.witness_outer <= r.diam * (1.0 + 1e-15));
            for (const Complex& z : s.points) {
                const double d = std::abs(z - r.witness_center);
                CHECK_FALSE((r.witness_inner < d && d < r.witness_outer));
            }
        }
    }

    TEST_CASE("infinity in the set") {
        CompactSetSample s = cantor_iterate(2);
        s.contains_infinity = true;
        const PerfectnessReport r = up_constant_estimate(s);
        CHECK(std::isinf(r.diam));
        CHECK(r.n_points == 9);
        CHECK(r.k_hat == brute_force_k(s));
    }

    TEST_CASE("merging and cantor construction") {
        CHECK(merged_points({{0, 0}, {1e-16, 0}, {1, 0}, {1, 0}}).size() == 2);
        const CompactSetSample c = cantor_iterate(3);
        CHECK(c.points.size() == 16);
        CHECK(c.label == "cantor:3");
        CHECK(std::is_sorted(c.points.begin(), c.points.end(),
                             [](const Complex& x, const Complex& y) { return x.real() < y.real(); }));
        CHECK(euclid_diameter(c) == doctest::Approx(1.0));
    }

    TEST_CASE("faults") {
        auto kind_of = [](auto&& f) {
            try {
                f();
            } catch (const Fault& e) {
                return e.kind();
            }
            return FaultKind::BadParameters;
        };
        CHECK(kind_of([] { up_constant_estimate({{{0, 0}, {0, 0}}, false, "x"}); }) == FaultKind::DegenerateSet);
        CHECK(kind_of([] { up_constant_estimate({{}, true, "x"}); }) == FaultKind::DegenerateSet);
        CHECK(kind_of([] { cantor_iterate(0); }) == FaultKind::LevelOutOfRange);
        CHECK(kind_of([] { cantor_iterate(21); }) == FaultKind::LevelOutOfRange);
        CHECK_THROWS_AS(geometric_gap_set(1.0, ExponentRule::Linear, 5), Fault);
        CHECK_THROWS_AS(geometric_gap_set(2.0, ExponentRule::Linear, 2), Fault);
    }

    TEST_CASE("csv parsing") {
        const CompactSetSample s = parse_points_csv("re,im\n0,0\n\n1.5,-2\ninf\n", "file");
        REQUIRE(s.points.size() == 2);
        CHECK(s.points[1] == Complex(1.5, -2));
        CHECK(s.contains_infinity);
        CHECK(s.label == "file");
        auto kind_of = [](std::string_view text) {
            try {
                parse_points_csv(text, "x");
            } catch (const Fault& e) {
                return e.kind();
            }
            return FaultKind::BadParameters;
        };
        CHECK(kind_of("0,0\ninf\ninf\n") == FaultKind::ParseError);
        CHECK(kind_of("0,0\n1;2\n") == FaultKind::ParseError);
        CHECK(kind_of("0,0\n1\n") == FaultKind::ParseError);
    }
}
