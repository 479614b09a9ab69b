#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sphyp/boundary.hpp"
#include "sphyp/sphere.hpp"

namespace sphyp {

class Domain;

/// {z : |z - center| < radius}
struct EuclideanDisk {
    Complex center;
    double radius;
};

/// {z : Re(conj(normal) z) > offset}, |normal| = 1.
struct HalfPlane {
    Complex normal;
    double offset;
};

/// {z : |z| > radius} together with infinity.
struct ExteriorDisk {
    double radius;
};

/// {z : 0 < |z| < radius}
struct PuncturedDisk {
    double radius;
};

/// {z : inner < |z| < 1}
struct Annulus {
    double inner;
};

/// map(base). Nested images are flattened on construction.
struct IsometryImage {
    SphericalIsometry map;
    SphericalIsometry inverse;
    std::shared_ptr<const Domain> base;
};

/// A hyperbolic domain of the Riemann sphere from the canonical family, closed under
/// spherical isometries. Immutable.
class Domain {
public:
    using Variant =
        std::variant<EuclideanDisk, HalfPlane, ExteriorDisk, PuncturedDisk, Annulus, IsometryImage>;

    static Domain disk(Complex center, double radius);
    static Domain half_plane(Complex normal, double offset);
    static Domain exterior_disk(double radius);
    static Domain punctured_disk(double radius);
    static Domain annulus(double inner);
    static Domain image(const SphericalIsometry& t, const Domain& base);

    const Variant& variant() const { return v_; }

    template <class T>
    const T* get_if() const {
        return std::get_if<T>(&v_);
    }

    /// Number of isometry layers (0 or 1 after flattening).
    int depth() const { return std::holds_alternative<IsometryImage>(v_) ? 1 : 0; }

private:
    explicit Domain(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

struct BoundarySample {
    std::vector<SpherePoint> points;
    std::string variant;
    std::size_t requested = 0;
    /// Points per boundary component, in component order.
    std::vector<std::size_t> component_sizes;
};

bool contains(const Domain& domain, const SpherePoint& z);

/// d: Euclidean distance to the boundary.
double euclid_dist(const Domain& domain, const SpherePoint& z);
/// epsilon: tau-distance to the boundary.
double eps_dist(const Domain& domain, const SpherePoint& z);
/// delta: chordal distance to the boundary.
double delta_dist(const Domain& domain, const SpherePoint& z);

/// Chordal diameter of the complement of the domain.
double spherical_diameter_complement(const Domain& domain);

BoundarySample boundary_sample(const Domain& domain, std::size_t n);

std::vector<BoundaryComponent> boundary_components(const Domain& domain);

// Alternative evaluation routes. The component routes are exact and work for every
// variant; the sampled routes minimize over a boundary sample with golden-section
// refinement and serve as independent numerical checks.
double euclid_dist_components(const Domain& domain, const SpherePoint& z);
double eps_dist_components(const Domain& domain, const SpherePoint& z);

struct BoundaryExtremum {
    double value;
    SpherePoint point;
};

BoundaryExtremum minimize_over_boundary(const Domain& domain,
                                        const std::function<double(const SpherePoint&)>& f,
                                        std::size_t per_component);

double eps_dist_sampled(const Domain& domain, const SpherePoint& z, std::size_t per_component = 512);
double euclid_dist_sampled(const Domain& domain, const SpherePoint& z,
                           std::size_t per_component = 512);
double spherical_diameter_complement_sampled(const Domain& domain,
                                             std::size_t per_component = 4096);

/// Disk, exterior disk, punctured disk or annulus centered at 0.
bool is_radially_symmetric(const Domain& domain);
/// The domain lies in the finite plane (infinity is not a member).
bool is_planar(const Domain& domain);
/// Structural rule: spherical caps of at most a hemisphere, and their isometry images.
bool is_spherically_convex(const Domain& domain);
bool is_hemisphere(const Domain& domain);
/// Spherical center when the domain is a spherical disk.
std::optional<SpherePoint> spherical_center(const Domain& domain);

/// Mini-grammar:
///   disk:<cx>,<cy>,<R> | half:<nx>,<ny>,<c> | ext:<R> | punct:<R> | ann:<r>
///   | isom:<theta>,<ax>,<ay>|<domain>      (<ax>,<ay> may be the single token inf)
Domain parse_domain(std::string_view text);
std::string format_domain(const Domain& domain);

/// The grammar above as help text.
std::string_view domain_grammar();

}  // namespace sphyp
