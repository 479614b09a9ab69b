#include "sphyp/metrics.hpp"

#include <cmath>
#include <string>

#include "sphyp/fault.hpp"

namespace sphyp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_member(const Domain& domain, const SpherePoint& z) {
    if (!contains(domain, z)) {
        throw Fault(FaultKind::PointNotInDomain, format_point(z) + " is not in " + format_domain(domain));
    }
}

// (1 + m^2) * lambda without overflow for large m.
double sphere_factor(double m) { return m <= 1.0 ? 1.0 + m * m : m * m * (1.0 + 1.0 / (m * m)); }

double unit_disk_density(Complex w) {
    const double m = std::abs(w);
    return 1.0 / ((1.0 - m) * (1.0 + m));
}

double density_unchecked(const Domain& domain, Complex z);

double mu_at_infinity(const Domain& domain) {
    return std::visit(
        Overloaded{
            [](const ExteriorDisk& e) {
                // z -> -1/z takes ext:R onto the disk of radius 1/R, centered at the image of infinity.
                return spherical_density(Domain::disk({0.0, 0.0}, 1.0 / e.radius),
                                         SpherePoint::finite(0.0, 0.0));
            },
            [](const IsometryImage& im) {
                return spherical_density(*im.base, im.inverse.apply(SpherePoint::infinity()));
            },
            [](const auto&) { return 0.0; },  // unreachable after the membership check
        },
        domain.variant());
}

double density_unchecked(const Domain& domain, Complex z) {
    const double m = std::abs(z);
    return std::visit(
        Overloaded{
            [&](const EuclideanDisk& d) {
                const double rho = std::abs(z - d.center);
                return d.radius / ((d.radius - rho) * (d.radius + rho));
            },
            [&](const HalfPlane& h) {
                return 0.5 / ((std::conj(h.normal) * z).real() - h.offset);
            },
            [&](const ExteriorDisk& e) { return e.radius / ((m - e.radius) * (m + e.radius)); },
            [&](const PuncturedDisk& p) { return 0.5 / (m * std::log(p.radius / m)); },
            [&](const Annulus& a) {
                const double width = std::log(1.0 / a.inner);
                return (kPi / (2.0 * width)) / (m * std::sin(kPi * std::log(1.0 / m) / width));
            },
            [&](const IsometryImage& im) {
                const SpherePoint pre = im.inverse.apply(SpherePoint::finite(z));
                if (pre.is_infinity()) return mu_at_infinity(*im.base) / sphere_factor(m);
                return density_unchecked(*im.base, pre.value()) * im.inverse.derivative_modulus(z);
            },
        },
        domain.variant());
}

}  // namespace

double hyperbolic_density(const Domain& domain, const SpherePoint& z) {
    if (z.is_infinity()) {
        throw Fault(FaultKind::DensityUndefinedAtInfinity, "lambda is undefined at infinity; use mu");
    }
    require_member(domain, z);
    return density_unchecked(domain, z.value());
}

double spherical_density(const Domain& domain, const SpherePoint& z) {
    require_member(domain, z);
    if (z.is_infinity()) return mu_at_infinity(domain);
    const double m = z.modulus();
    if (const auto* e = domain.get_if<ExteriorDisk>(); e && m > 1.0) {
        // R (1 + m^2)/(m^2 - R^2), arranged for large m
        const double q = e->radius / m;
        return e->radius * (1.0 + 1.0 / (m * m)) / ((1.0 - q) * (1.0 + q));
    }
    return sphere_factor(m) * density_unchecked(domain, z.value());
}

DensitySample density_sample(const Domain& domain, const SpherePoint& z) {
    DensitySample s;
    s.point = z;
    s.mu = spherical_density(domain, z);
    s.eps = eps_dist(domain, z);
    s.delta = sigma_from_tau(s.eps);
    if (z.is_finite()) {
        s.lambda = hyperbolic_density(domain, z);
        s.d = euclid_dist(domain, z);
    }
    return s;
}

CoveringDescriptor default_covering(const Domain& domain) {
    return std::visit(
        Overloaded{
            [](const EuclideanDisk&) { return CoveringDescriptor{CoveringKind::DiskAutomorphism}; },
            [](const HalfPlane&) { return CoveringDescriptor{CoveringKind::HalfPlaneMobius}; },
            [](const ExteriorDisk&) { return CoveringDescriptor{CoveringKind::ExteriorMobius}; },
            [](const PuncturedDisk&) { return CoveringDescriptor{CoveringKind::ExpCayley}; },
            [](const Annulus&) { return CoveringDescriptor{CoveringKind::StripExp}; },
            [&](const IsometryImage&) -> CoveringDescriptor {
                throw Fault(FaultKind::UnknownCoveringDescriptor,
                            "no built-in covering for " + format_domain(domain));
            },
        },
        domain.variant());
}

namespace {

[[noreturn]] void mismatch(const Domain& domain) {
    throw Fault(FaultKind::UnknownCoveringDescriptor,
                "covering descriptor does not match " + format_domain(domain));
}

}  // namespace

CoveringValue evaluate_covering(const Domain& domain, const CoveringDescriptor& cover, Complex w) {
    if (!(std::abs(w) < 1.0)) throw Fault(FaultKind::BadParameters, "covering argument must lie in the unit disk");
    const Complex one(1.0, 0.0);
    switch (cover.kind) {
        case CoveringKind::DiskAutomorphism: {
            const auto* d = domain.get_if<EuclideanDisk>();
            if (!d || !(std::abs(cover.shift) < 1.0)) mismatch(domain);
            const Complex b = cover.shift;
            const Complex den = one + std::conj(b) * w;
            const Complex p = d->center + d->radius * (w + b) / den;
            const double dp = d->radius * (1.0 - std::norm(b)) / std::norm(den);
            return {SpherePoint::finite(p), dp};
        }
        case CoveringKind::ExpCayley: {
            const auto* pd = domain.get_if<PuncturedDisk>();
            if (!pd) mismatch(domain);
            const Complex zeta = (w + one) / (w - one);
            const Complex p = pd->radius * std::exp(zeta);
            const double dp = std::abs(p) * 2.0 / std::norm(w - one);
            return {SpherePoint::finite(p), dp};
        }
        case CoveringKind::StripExp: {
            const auto* an = domain.get_if<Annulus>();
            if (!an) mismatch(domain);
            const double width = std::log(1.0 / an->inner);
            const Complex s = std::log((one + w) / (one - w));
            const Complex zeta = -0.5 * width - Complex(0.0, width / kPi) * s;
            const Complex p = std::exp(zeta);
            const double dp = std::abs(p) * (width / kPi) * 2.0 / std::abs(one - w * w);
            return {SpherePoint::finite(p), dp};
        }
        case CoveringKind::HalfPlaneMobius: {
            const auto* h = domain.get_if<HalfPlane>();
            if (!h) mismatch(domain);
            const Complex p = h->normal * (h->offset + (one + w) / (one - w));
            const double dp = 2.0 / std::norm(one - w);
            return {SpherePoint::finite(p), dp};
        }
        case CoveringKind::ExteriorMobius: {
            const auto* e = domain.get_if<ExteriorDisk>();
            if (!e) mismatch(domain);
            const double r = e->radius;
            if (w == Complex(0.0, 0.0)) return {SpherePoint::infinity(), 1.0 / r};
            const double m2 = std::norm(w);
            return {SpherePoint::finite(r / w), r / m2};
        }
    }
    mismatch(domain);
}

double covering_residual(const Domain& domain, const CoveringDescriptor& cover, Complex w) {
    const CoveringValue v = evaluate_covering(domain, cover, w);
    const double lhs = unit_disk_density(w);
    const double rhs = v.image.is_infinity() ? spherical_density(domain, v.image) * v.derivative
                                             : hyperbolic_density(domain, v.image) * v.derivative;
    return std::abs(lhs - rhs) / lhs;
}

double curvature_residual(const Domain& domain, const SpherePoint& z, double h) {
    if (!(h > 0.0)) throw Fault(FaultKind::BadParameters, "finite-difference step must be positive");
    const double d = euclid_dist(domain, z);
    if (!(d > 4.0 * h)) {
        throw Fault(FaultKind::StepTooLargeForPoint,
                    "step " + format_real(h) + " too large for distance " + format_real(d));
    }
    const Complex c = z.value();
    auto log_density = [&](Complex p) { return std::log(density_unchecked(domain, p)); };
    const double center = log_density(c);
    const double lap = (log_density(c + h) + log_density(c - h) + log_density(c + Complex(0.0, h)) +
                        log_density(c - Complex(0.0, h)) - 4.0 * center) /
                       (h * h);
    const double lam = std::exp(center);
    return -lap / (lam * lam);
}

}  // namespace sphyp
