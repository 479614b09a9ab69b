#include "sphyp/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sphyp/fault.hpp"
#include "sphyp/search.hpp"

namespace sphyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double x, const char* what) {
    if (!std::isfinite(x) || !(x > 0.0)) {
        throw Fault(FaultKind::InvalidDomain, std::string(what) + " must be a positive finite number");
    }
}

void require_member(const Domain& domain, const SpherePoint& z) {
    if (!contains(domain, z)) {
        throw Fault(FaultKind::PointNotInDomain, format_point(z) + " is not in " + format_domain(domain));
    }
}

bool centered(const EuclideanDisk& d) { return d.center == Complex(0.0, 0.0); }

// tau-distance from |z| = x to the circle |a| = rho, for x != rho.
double tau_to_centered_circle(double x, double rho) {
    return std::abs(x - rho) / (1.0 + rho * x);
}

// Omega = {G > 0} for the single-circle variants.
std::optional<GenCircle> omega_cap(const Domain& domain) {
    return std::visit(
        Overloaded{
            [](const EuclideanDisk& d) -> std::optional<GenCircle> {
                return GenCircle::circle(d.center, d.radius).negated();
            },
            [](const HalfPlane& h) -> std::optional<GenCircle> {
                return GenCircle::line(h.normal, h.offset);
            },
            [](const ExteriorDisk& e) -> std::optional<GenCircle> {
                return GenCircle::circle({0.0, 0.0}, e.radius);
            },
            [](const PuncturedDisk&) -> std::optional<GenCircle> { return std::nullopt; },
            [](const Annulus&) -> std::optional<GenCircle> { return std::nullopt; },
            [](const IsometryImage& im) -> std::optional<GenCircle> {
                auto base = omega_cap(*im.base);
                if (!base) return std::nullopt;
                return base->mapped(im.map);
            },
        },
        domain.variant());
}

}  // namespace

Domain Domain::disk(Complex center, double radius) {
    if (!std::isfinite(center.real()) || !std::isfinite(center.imag())) {
        throw Fault(FaultKind::InvalidDomain, "disk center must be finite");
    }
    require_positive(radius, "disk radius");
    return Domain(EuclideanDisk{center, radius});
}

Domain Domain::half_plane(Complex normal, double offset) {
    const double len = std::abs(normal);
    if (!std::isfinite(len) || !(len > 0.0)) {
        throw Fault(FaultKind::InvalidDomain, "half-plane normal must be a nonzero finite vector");
    }
    if (!std::isfinite(offset)) throw Fault(FaultKind::InvalidDomain, "half-plane offset must be finite");
    return Domain(HalfPlane{normal / len, offset});
}

Domain Domain::exterior_disk(double radius) {
    require_positive(radius, "exterior disk radius");
    return Domain(ExteriorDisk{radius});
}

Domain Domain::punctured_disk(double radius) {
    require_positive(radius, "punctured disk radius");
    return Domain(PuncturedDisk{radius});
}

Domain Domain::annulus(double inner) {
    if (!std::isfinite(inner) || !(inner > 0.0) || !(inner < 1.0)) {
        throw Fault(FaultKind::InvalidDomain, "annulus inner radius must lie in (0, 1)");
    }
    return Domain(Annulus{inner});
}

Domain Domain::image(const SphericalIsometry& t, const Domain& base) {
    if (const auto* nested = base.get_if<IsometryImage>()) {
        const SphericalIsometry combined = t.after(nested->map);
        return Domain(IsometryImage{combined, combined.inverse(), nested->base});
    }
    return Domain(IsometryImage{t, t.inverse(), std::make_shared<const Domain>(base)});
}

bool contains(const Domain& domain, const SpherePoint& z) {
    return std::visit(
        Overloaded{
            [&](const EuclideanDisk& d) {
                return z.is_finite() && std::abs(z.value() - d.center) < d.radius;
            },
            [&](const HalfPlane& h) {
                return z.is_finite() && (std::conj(h.normal) * z.value()).real() > h.offset;
            },
            [&](const ExteriorDisk& e) { return z.is_infinity() || z.modulus() > e.radius; },
            [&](const PuncturedDisk& p) {
                return z.is_finite() && z.modulus() > 0.0 && z.modulus() < p.radius;
            },
            [&](const Annulus& a) {
                return z.is_finite() && z.modulus() > a.inner && z.modulus() < 1.0;
            },
            [&](const IsometryImage& im) { return contains(*im.base, im.inverse.apply(z)); },
        },
        domain.variant());
}

double euclid_dist(const Domain& domain, const SpherePoint& z) {
    if (z.is_infinity()) {
        throw Fault(FaultKind::InfinityHasNoEuclideanDistance, "d is undefined at infinity");
    }
    require_member(domain, z);
    const double m = z.modulus();
    return std::visit(
        Overloaded{
            [&](const EuclideanDisk& d) { return d.radius - std::abs(z.value() - d.center); },
            [&](const HalfPlane& h) { return (std::conj(h.normal) * z.value()).real() - h.offset; },
            [&](const ExteriorDisk& e) { return m - e.radius; },
            [&](const PuncturedDisk& p) { return std::min(m, p.radius - m); },
            [&](const Annulus& a) { return std::min(m - a.inner, 1.0 - m); },
            [&](const IsometryImage&) { return euclid_dist_components(domain, z); },
        },
        domain.variant());
}

double eps_dist(const Domain& domain, const SpherePoint& z) {
    require_member(domain, z);
    const double m = z.modulus();
    return std::visit(
        Overloaded{
            [&](const EuclideanDisk& d) {
                if (centered(d)) return tau_to_centered_circle(m, d.radius);
                return eps_dist_components(domain, z);
            },
            [&](const HalfPlane&) { return eps_dist_components(domain, z); },
            [&](const ExteriorDisk& e) {
                if (z.is_infinity()) return 1.0 / e.radius;
                return tau_to_centered_circle(m, e.radius);
            },
            [&](const PuncturedDisk& p) { return std::min(m, tau_to_centered_circle(m, p.radius)); },
            [&](const Annulus& a) {
                return std::min(tau_to_centered_circle(m, a.inner), tau_to_centered_circle(m, 1.0));
            },
            [&](const IsometryImage& im) { return eps_dist(*im.base, im.inverse.apply(z)); },
        },
        domain.variant());
}

double delta_dist(const Domain& domain, const SpherePoint& z) {
    return sigma_from_tau(eps_dist(domain, z));
}

double spherical_diameter_complement(const Domain& domain) {
    return std::visit(
        Overloaded{
            [&](const PuncturedDisk&) { return 1.0; },  // holds 0 and infinity
            [&](const Annulus&) { return 1.0; },
            [&](const IsometryImage& im) { return spherical_diameter_complement(*im.base); },
            [&](const auto&) {
                // complement = {G <= 0}, a closed cap
                return omega_cap(domain)->negated().closed_cap_chordal_diameter();
            },
        },
        domain.variant());
}

std::vector<BoundaryComponent> boundary_components(const Domain& domain) {
    return std::visit(
        Overloaded{
            [](const EuclideanDisk& d) {
                return std::vector<BoundaryComponent>{BoundaryComponent::circle(d.center, d.radius)};
            },
            [](const HalfPlane& h) {
                return std::vector<BoundaryComponent>{BoundaryComponent::line(h.normal, h.offset)};
            },
            [](const ExteriorDisk& e) {
                return std::vector<BoundaryComponent>{BoundaryComponent::circle({0.0, 0.0}, e.radius)};
            },
            [](const PuncturedDisk& p) {
                return std::vector<BoundaryComponent>{
                    BoundaryComponent::point(SpherePoint::finite(0.0, 0.0)),
                    BoundaryComponent::circle({0.0, 0.0}, p.radius)};
            },
            [](const Annulus& a) {
                return std::vector<BoundaryComponent>{BoundaryComponent::circle({0.0, 0.0}, a.inner),
                                                      BoundaryComponent::circle({0.0, 0.0}, 1.0)};
            },
            [](const IsometryImage& im) {
                auto parts = boundary_components(*im.base);
                for (auto& part : parts) part = part.mapped(im.map);
                return parts;
            },
        },
        domain.variant());
}

double euclid_dist_components(const Domain& domain, const SpherePoint& z) {
    if (z.is_infinity()) {
        throw Fault(FaultKind::InfinityHasNoEuclideanDistance, "d is undefined at infinity");
    }
    require_member(domain, z);
    double best = kInf;
    for (const auto& part : boundary_components(domain)) {
        best = std::min(best, part.euclid_distance(z.value()));
    }
    return best;
}

double eps_dist_components(const Domain& domain, const SpherePoint& z) {
    require_member(domain, z);
    double best = kInf;
    for (const auto& part : boundary_components(domain)) best = std::min(best, part.tau_distance(z));
    return best;
}

namespace {

std::size_t curve_count(const std::vector<BoundaryComponent>& parts) {
    return static_cast<std::size_t>(
        std::count_if(parts.begin(), parts.end(), [](const auto& p) { return !p.is_point(); }));
}

const char* variant_name(const Domain& domain) {
    return std::visit(Overloaded{
                          [](const EuclideanDisk&) { return "disk"; },
                          [](const HalfPlane&) { return "half"; },
                          [](const ExteriorDisk&) { return "ext"; },
                          [](const PuncturedDisk&) { return "punct"; },
                          [](const Annulus&) { return "ann"; },
                          [](const IsometryImage&) { return "isom"; },
                      },
                      domain.variant());
}

double sample_angle(std::size_t k, std::size_t count) {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(count);
}

}  // namespace

BoundarySample boundary_sample(const Domain& domain, std::size_t n) {
    if (n < 16) throw Fault(FaultKind::SampleTooSmall, "boundary sample needs at least 16 points");
    const auto parts = boundary_components(domain);
    const std::size_t curves = curve_count(parts);
    const std::size_t on_curves = n - (parts.size() - curves);
    BoundarySample out;
    out.variant = variant_name(domain);
    out.requested = n;
    std::size_t curve_index = 0;
    for (const auto& part : parts) {
        if (part.is_point()) {
            out.points.push_back(part.point());
            out.component_sizes.push_back(1);
            continue;
        }
        std::size_t count = on_curves / curves + (curve_index < on_curves % curves ? 1 : 0);
        ++curve_index;
        for (std::size_t k = 0; k < count; ++k) out.points.push_back(part.at(sample_angle(k, count)));
        out.component_sizes.push_back(count);
    }
    return out;
}

BoundaryExtremum minimize_over_boundary(const Domain& domain,
                                        const std::function<double(const SpherePoint&)>& f,
                                        std::size_t per_component) {
    BoundaryExtremum best{kInf, SpherePoint::infinity()};
    for (const auto& part : boundary_components(domain)) {
        if (part.is_point()) {
            const double v = f(part.point());
            if (v < best.value) best = {v, part.point()};
            continue;
        }
        std::size_t arg = 0;
        double scan_best = kInf;
        for (std::size_t k = 0; k < per_component; ++k) {
            const double v = f(part.at(sample_angle(k, per_component)));
            if (v < scan_best) {
                scan_best = v;
                arg = k;
            }
        }
        const double step = kTwoPi / static_cast<double>(per_component);
        const double center = sample_angle(arg, per_component);
        if (scan_best < best.value) best = {scan_best, part.at(center)};
        const auto line = golden_section([&](double phi) { return f(part.at(phi)); }, center - step,
                                         center + step, 1e-12, 200);
        if (line.value < best.value) best = {line.value, part.at(line.t)};
    }
    return best;
}

double eps_dist_sampled(const Domain& domain, const SpherePoint& z, std::size_t per_component) {
    require_member(domain, z);
    return minimize_over_boundary(domain, [&](const SpherePoint& a) { return tau(z, a); }, per_component)
        .value;
}

double euclid_dist_sampled(const Domain& domain, const SpherePoint& z, std::size_t per_component) {
    if (z.is_infinity()) {
        throw Fault(FaultKind::InfinityHasNoEuclideanDistance, "d is undefined at infinity");
    }
    require_member(domain, z);
    return minimize_over_boundary(
               domain,
               [&](const SpherePoint& a) {
                   return a.is_infinity() ? kInf : std::abs(z.value() - a.value());
               },
               per_component)
        .value;
}

double spherical_diameter_complement_sampled(const Domain& domain, std::size_t per_component) {
    struct Site {
        std::size_t part;
        double phi;
        SpherePoint p;
    };
    const auto parts = boundary_components(domain);
    std::vector<Site> sites;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        if (parts[j].is_point()) {
            sites.push_back({j, 0.0, parts[j].point()});
            continue;
        }
        for (std::size_t k = 0; k < per_component; ++k) {
            const double phi = sample_angle(k, per_component);
            sites.push_back({j, phi, parts[j].at(phi)});
        }
    }
    // A closed set containing an antipodal pair also contains a boundary point whose
    // antipode lies in the set; otherwise the farthest pair sits on the boundary.
    for (const auto& s : sites) {
        if (!contains(domain, antipode(s.p))) return 1.0;
    }
    std::size_t bi = 0;
    std::size_t bj = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
            const double v = chordal(sites[i].p, sites[j].p);
            if (v > best) {
                best = v;
                bi = i;
                bj = j;
            }
        }
    }
    Site u = sites[bi];
    Site w = sites[bj];
    const double step = kTwoPi / static_cast<double>(per_component);
    for (int round = 0; round < 4; ++round) {
        for (Site* moving : {&u, &w}) {
            const Site& fixed = moving == &u ? w : u;
            const auto& part = parts[moving->part];
            if (part.is_point()) continue;
            const auto line = golden_section([&](double phi) { return -chordal(part.at(phi), fixed.p); },
                                             moving->phi - step, moving->phi + step, 1e-12, 200);
            if (-line.value > best) {
                best = -line.value;
                moving->phi = line.t;
                moving->p = part.at(line.t);
            }
        }
    }
    return best;
}

bool is_radially_symmetric(const Domain& domain) {
    return std::visit(Overloaded{
                          [](const EuclideanDisk& d) { return centered(d); },
                          [](const HalfPlane&) { return false; },
                          [](const ExteriorDisk&) { return true; },
                          [](const PuncturedDisk&) { return true; },
                          [](const Annulus&) { return true; },
                          [](const IsometryImage&) { return false; },
                      },
                      domain.variant());
}

bool is_planar(const Domain& domain) { return !contains(domain, SpherePoint::infinity()); }

bool is_spherically_convex(const Domain& domain) {
    const auto cap = omega_cap(domain);
    return cap && cap->cap_height() >= -1e-15;
}

bool is_hemisphere(const Domain& domain) {
    const auto cap = omega_cap(domain);
    return cap && std::abs(cap->cap_height()) <= 1e-15;
}

std::optional<SpherePoint> spherical_center(const Domain& domain) {
    const auto cap = omega_cap(domain);
    if (!cap) return std::nullopt;
    return cap->cap_center();
}

}  // namespace sphyp
