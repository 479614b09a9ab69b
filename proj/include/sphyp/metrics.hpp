#pragma once

#include <optional>

#include "sphyp/domains.hpp"

namespace sphyp {

// Densities are normalized to curvature -4: the unit disk carries 1/(1-|z|^2)|dz|.
// Sources using curvature -1 work with twice these values.

/// lambda: Euclidean density of the hyperbolic metric at a finite point of the domain.
double hyperbolic_density(const Domain& domain, const SpherePoint& z);

/// mu = (1+|z|^2) lambda: ratio to the spherical metric; defined at infinity too.
double spherical_density(const Domain& domain, const SpherePoint& z);

struct DensitySample {
    SpherePoint point;
    std::optional<double> lambda;  // empty at infinity
    double mu = 0.0;
    std::optional<double> d;  // empty at infinity
    double delta = 0.0;
    double eps = 0.0;
};

DensitySample density_sample(const Domain& domain, const SpherePoint& z);

/// Built-in universal coverings p of the unit disk onto the canonical domains.
enum class CoveringKind {
    DiskAutomorphism,  // c + R (w + b)/(1 + conj(b) w)           onto disk:c,R
    ExpCayley,         // R exp((w+1)/(w-1))                       onto punct:R
    StripExp,          // exp(-W/2 - i (W/pi) log((1+w)/(1-w)))    onto ann:r, W = log(1/r)
    HalfPlaneMobius,   // n (c + (1+w)/(1-w))                      onto half:n,c
    ExteriorMobius,    // R / w                                    onto ext:R
};

struct CoveringDescriptor {
    CoveringKind kind;
    Complex shift{};  // b for DiskAutomorphism, |b| < 1
};

/// The covering kind matching the domain variant; isometry images have none.
CoveringDescriptor default_covering(const Domain& domain);

struct CoveringValue {
    SpherePoint image;
    /// |p'(w)| when the image is finite, else the spherical derivative |p'|/(1+|p|^2).
    double derivative = 0.0;
};

CoveringValue evaluate_covering(const Domain& domain, const CoveringDescriptor& cover, Complex w);

/// |lambda_D(w) - lambda(p(w)) |p'(w)|| / lambda_D(w).
double covering_residual(const Domain& domain, const CoveringDescriptor& cover, Complex w);

/// Curvature -Laplacian(log lambda)/lambda^2 estimated with the 5-point stencil of step h.
/// Needs d(z) > 4h.
double curvature_residual(const Domain& domain, const SpherePoint& z, double h);

}  // namespace sphyp
