#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "sphyp/domains.hpp"
#include "sphyp/fault.hpp"

using namespace sphyp;
using sphyp::test::pt;

namespace {

std::vector<Domain> sample_domains() {
    std::vector<Domain> out;
    for (const char* s : {"disk:0,0,0.5", "disk:0,0,2", "disk:1,-0.5,0.7", "half:1,0,0", "half:0.6,0.8,-0.5",
                          "ext:1", "ext:2", "punct:1", "punct:0.4", "ann:0.2", "ann:0.5",
                          "isom:1,0.5,-0.3|disk:0,0,2", "isom:0.2,inf|punct:1", "isom:4,-1.2,0.4|ann:0.3",
                          "isom:2.5,0.9,0.9|ext:0.5"}) {
        out.push_back(parse_domain(s));
    }
    return out;
}

std::vector<SpherePoint> interior_points(const Domain& d, Rng& rng, std::size_t n) {
    std::vector<SpherePoint> out;
    while (out.size() < n) {
        const SpherePoint z = rng.sphere_point();
        if (contains(d, z)) out.push_back(z);
    }
    return out;
}

FaultKind fault_of(auto&& f) {
    try {
        f();
    } catch (const Fault& e) {
        return e.kind();
    }
    FAIL("expected a fault");
    return FaultKind::BadParameters;
}

}  // namespace

TEST_SUITE("domains") {
    TEST_CASE("construction validates parameters") {
        CHECK(fault_of([] { Domain::disk({0, 0}, 0.0); }) == FaultKind::InvalidDomain);
        CHECK(fault_of([] { Domain::annulus(1.0); }) == FaultKind::InvalidDomain);
        CHECK(fault_of([] { Domain::annulus(0.0); }) == FaultKind::InvalidDomain);
        CHECK(fault_of([] { Domain::punctured_disk(-1.0); }) == FaultKind::InvalidDomain);
        CHECK(fault_of([] { Domain::exterior_disk(std::nan("")); }) == FaultKind::InvalidDomain);
        CHECK(fault_of([] { Domain::half_plane({0, 0}, 1.0); }) == FaultKind::InvalidDomain);
    }

    TEST_CASE("images are flattened") {
        const Domain d = parse_domain("disk:0,0,2");
        const SphericalIsometry t(0.3, pt(0.5, 0.1));
        const SphericalIsometry u(1.9, pt(-1, 2));
        Domain img = Domain::image(t, d);
        for (int k = 0; k < 20; ++k) img = Domain::image(k % 2 ? t : u, img);
        CHECK(img.depth() == 1);
        CHECK(img.get_if<IsometryImage>()->base->depth() == 0);
    }

    TEST_CASE("membership") {
        CHECK(contains(Domain::exterior_disk(1), SpherePoint::infinity()));
        CHECK_FALSE(contains(Domain::punctured_disk(1), pt(0)));
        CHECK(contains(Domain::disk({0, 0}, 2), pt(1, 1)));
        CHECK_FALSE(contains(Domain::disk({0, 0}, 2), pt(2)));
        CHECK_FALSE(contains(Domain::annulus(0.5), pt(0.5)));
        CHECK(contains(Domain::annulus(0.5), pt(0, -0.75)));
        CHECK_FALSE(contains(Domain::half_plane({1, 0}, 0), SpherePoint::infinity()));
        const SphericalIsometry t(0.0, SpherePoint::infinity());
        CHECK(contains(Domain::image(t, Domain::punctured_disk(1)), SpherePoint::finite(-1.0 / Complex(0.3, 0.2))));
        CHECK_FALSE(contains(Domain::image(t, Domain::punctured_disk(1)), SpherePoint::infinity()));
    }

    TEST_CASE("Euclidean distance") {
        CHECK(euclid_dist(Domain::exterior_disk(1), pt(3)) == doctest::Approx(2.0));
        CHECK(euclid_dist(Domain::punctured_disk(1), pt(0.1)) == doctest::Approx(0.1));
        CHECK(euclid_dist(Domain::disk({0, 0}, 2), pt(1, 1)) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
        CHECK(euclid_dist(Domain::half_plane({0, 1}, 1), pt(5, 3)) == doctest::Approx(2.0));
        CHECK(fault_of([] { euclid_dist(Domain::exterior_disk(1), SpherePoint::infinity()); }) ==
              FaultKind::InfinityHasNoEuclideanDistance);
        CHECK(fault_of([] { euclid_dist(Domain::disk({0, 0}, 1), pt(2)); }) == FaultKind::PointNotInDomain);
    }

    TEST_CASE("tau distance") {
        CHECK(eps_dist(Domain::disk({0, 0}, 2), pt(1)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(eps_dist(Domain::disk({0, 0}, 0.7), pt(0)) == doctest::Approx(0.7));
        CHECK(eps_dist(Domain::exterior_disk(1), SpherePoint::infinity()) == doctest::Approx(1.0));
        CHECK(eps_dist(Domain::punctured_disk(1), pt(0.1)) == doctest::Approx(0.1));
        // Every real x >= 1 in the right half-plane is nearest to infinity.
        CHECK(eps_dist(Domain::half_plane({1, 0}, 0), pt(4)) == doctest::Approx(0.25));
    }

    TEST_CASE("chordal distance") {
        CHECK(delta_dist(Domain::disk({0, 0}, 2), pt(1)) == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-15));
        CHECK(delta_dist(Domain::disk({0, 0}, 1), pt(0)) == doctest::Approx(0.7071067811865476).epsilon(1e-15));
    }

    TEST_CASE("complement diameter") {
        CHECK(spherical_diameter_complement(Domain::disk({0, 0}, 0.5)) == 1.0);
        CHECK(spherical_diameter_complement(Domain::disk({0, 0}, 2)) == doctest::Approx(0.8).epsilon(1e-15));
        CHECK(spherical_diameter_complement(Domain::exterior_disk(1)) == 1.0);
        CHECK(spherical_diameter_complement(Domain::punctured_disk(1)) == 1.0);
        CHECK(spherical_diameter_complement(Domain::annulus(0.5)) == 1.0);
    }

    TEST_CASE("complement diameter agrees with the sampled search") {
        for (const Domain& d : sample_domains()) {
            CAPTURE(format_domain(d));
            CHECK(spherical_diameter_complement_sampled(d) ==
                  doctest::Approx(spherical_diameter_complement(d)).epsilon(1e-9));
        }
    }

    TEST_CASE("boundary samples") {
        const BoundarySample a = boundary_sample(Domain::annulus(0.5), 64);
        REQUIRE(a.component_sizes == std::vector<std::size_t>{32, 32});
        for (std::size_t k = 0; k < 32; ++k) CHECK(a.points[k].modulus() == doctest::Approx(0.5).epsilon(1e-14));
        for (std::size_t k = 32; k < 64; ++k) CHECK(a.points[k].modulus() == doctest::Approx(1.0).epsilon(1e-14));

        const BoundarySample disk = boundary_sample(Domain::disk({0, 0}, 1), 16);
        REQUIRE(disk.points.size() == 16);
        for (std::size_t k = 0; k < 16; ++k) {
            CHECK(disk.points[k].modulus() == doctest::Approx(1.0).epsilon(1e-14));
            const double gap = std::abs(disk.points[(k + 1) % 16].value() - disk.points[k].value());
            CHECK(gap == doctest::Approx(2.0 * std::sin(kPi / 16)).epsilon(1e-12));
        }

        const BoundarySample p = boundary_sample(Domain::punctured_disk(1), 17);
        REQUIRE(p.points.size() == 17);
        CHECK(p.points.front() == pt(0));
        CHECK(fault_of([] { boundary_sample(Domain::disk({0, 0}, 1), 15); }) == FaultKind::SampleTooSmall);
    }

    TEST_CASE("property: samples lie on the boundary") {
        for (const Domain& d : sample_domains()) {
            CAPTURE(format_domain(d));
            const BoundarySample s = boundary_sample(d, 64);
            CHECK(s.points.size() == 64);
            const auto parts = boundary_components(d);
            for (const SpherePoint& b : s.points) {
                double residual = std::numeric_limits<double>::infinity();
                for (const BoundaryComponent& c : parts) residual = std::min(residual, c.tau_distance(b));
                CHECK(residual <= 1e-12);
                if (b.is_infinity()) continue;
                // Points just off the sample in some direction lie in the domain.
                bool touches = false;
                for (int k = 0; k < 16 && !touches; ++k) {
                    const Complex off = b.value() + std::polar(1e-7 * std::max(1.0, b.modulus()), kTwoPi * k / 16);
                    touches = contains(d, SpherePoint::finite(off));
                }
                CHECK(touches);
            }
        }
    }

    TEST_CASE("property: distance identities on random interior points") {
        Rng rng(99);
        for (const Domain& d : sample_domains()) {
            CAPTURE(format_domain(d));
            for (const SpherePoint& z : interior_points(d, rng, 200)) {
                const double e = eps_dist(d, z);
                const double s = delta_dist(d, z);
                CHECK(std::abs(s - sigma_from_tau(e)) <= 1e-12);
                CHECK(s < 1.0);
                CHECK(test::rel_err(eps_dist_components(d, z), e) <= 1e-10);
                if (z.is_finite()) CHECK(test::rel_err(euclid_dist_components(d, z), euclid_dist(d, z)) <= 1e-10);
            }
        }
    }

    TEST_CASE("property: tau distance is isometry invariant") {
        Rng rng(1234);
        for (const Domain& d : sample_domains()) {
            CAPTURE(format_domain(d));
            const SphericalIsometry t = test::random_isometry(rng);
            const Domain img = Domain::image(t, d);
            for (const SpherePoint& z : interior_points(d, rng, 200)) {
                const SpherePoint w = t.apply(z);
                REQUIRE(contains(img, w));
                CHECK(std::abs(eps_dist(img, w) - eps_dist(d, z)) <= 1e-10 * std::max(1.0, eps_dist(d, z)));
            }
        }
    }

    TEST_CASE("sampled minimization agrees with exact distances on images") {
        Rng rng(77);
        for (const Domain& d : sample_domains()) {
            CAPTURE(format_domain(d));
            for (const SpherePoint& z : interior_points(d, rng, 10)) {
                CHECK(std::abs(eps_dist_sampled(d, z) - eps_dist(d, z)) <= 1e-8 * std::max(1.0, eps_dist(d, z)));
                if (z.is_finite()) {
                    CHECK(std::abs(euclid_dist_sampled(d, z) - euclid_dist(d, z)) <=
                          1e-8 * std::max(1.0, euclid_dist(d, z)));
                }
            }
        }
    }

    TEST_CASE("classification") {
        CHECK(is_radially_symmetric(parse_domain("disk:0,0,3")));
        CHECK_FALSE(is_radially_symmetric(parse_domain("disk:0.1,0,3")));
        CHECK(is_planar(parse_domain("ann:0.5")));
        CHECK_FALSE(is_planar(parse_domain("ext:3")));
        CHECK(is_spherically_convex(parse_domain("disk:0,0,1")));
        CHECK(is_spherically_convex(parse_domain("ext:2")));
        CHECK(is_spherically_convex(parse_domain("half:1,0,0")));
        CHECK_FALSE(is_spherically_convex(parse_domain("disk:0,0,2")));
        CHECK_FALSE(is_spherically_convex(parse_domain("punct:0.5")));
        CHECK(is_hemisphere(parse_domain("disk:0,0,1")));
        CHECK(is_hemisphere(parse_domain("isom:1,0.3,0.4|disk:0,0,1")));
        CHECK_FALSE(is_hemisphere(parse_domain("disk:0,0,0.9")));
        const auto c = spherical_center(parse_domain("ext:3"));
        REQUIRE(c);
        CHECK(c->is_infinity());
        CHECK_FALSE(spherical_center(parse_domain("ann:0.3")));
    }

    TEST_CASE("domain text round trip and errors") {
        for (const Domain& d : sample_domains()) {
            const std::string s = format_domain(d);
            CHECK(format_domain(parse_domain(s)) == s);
        }
        CHECK(format_domain(parse_domain("half:2,0,1")) == "half:1,0,1");
        for (const char* bad : {"", "disk", "disk:1,2", "disk:0,0,-1", "ann:2", "blob:1", "ext:1,2",
                                "isom:1,0,0", "isom:1,0,0|", "disk:0,0,1 "}) {
            CAPTURE(bad);
            CHECK(fault_of([&] { parse_domain(bad); }) == FaultKind::ParseError);
        }
        CHECK(domain_grammar().find("isom:") != std::string_view::npos);
    }
}
