#include "sphyp/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sphyp/fault.hpp"
#include "sphyp/metrics.hpp"
#include "sphyp/search.hpp"

namespace sphyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMinGrid = 64;
constexpr std::size_t kRadialMinima = 4;
constexpr std::size_t kPlanarCandidates = 8;
// Planar searches stay this far (in tau) from the boundary, where distances and
// densities lose all relative accuracy to cancellation.
constexpr double kBoundaryFloor = 1e-8;

// Product at z, or +inf when z is not admissible. Used inside searches.
double product_or_inf(ProductKind kind, const Domain& domain, const SpherePoint& z, double floor = 0.0) {
    if (kind == ProductKind::DLambda && z.is_infinity()) return kInf;
    if (!contains(domain, z)) return kInf;
    if (floor > 0.0 && eps_dist(domain, z) < floor) return kInf;
    const double v = pointwise_product(kind, domain, z);
    return std::isfinite(v) ? v : kInf;
}

struct Best {
    double value = kInf;
    SpherePoint point;
};

void offer(Best& best, double value, const SpherePoint& z) {
    if (value < best.value) {
        best.value = value;
        best.point = z;
    }
}

// Radial interval in phi = 2 atan|z| for centered symmetric variants.
struct RadialRange {
    double lo;
    double hi;
    bool lo_closed;
    bool hi_closed;
};

std::optional<RadialRange> radial_range(ProductKind kind, const Domain& domain) {
    if (const auto* d = domain.get_if<EuclideanDisk>(); d && d->center == Complex(0.0, 0.0)) {
        return RadialRange{0.0, 2.0 * std::atan(d->radius), true, false};
    }
    if (const auto* e = domain.get_if<ExteriorDisk>()) {
        return RadialRange{2.0 * std::atan(e->radius), kPi, false, kind != ProductKind::DLambda};
    }
    if (const auto* p = domain.get_if<PuncturedDisk>()) {
        return RadialRange{0.0, 2.0 * std::atan(p->radius), false, false};
    }
    if (const auto* a = domain.get_if<Annulus>()) {
        return RadialRange{2.0 * std::atan(a->inner), 0.5 * kPi, false, false};
    }
    return std::nullopt;
}

SpherePoint radial_point(double phi) {
    if (phi >= kPi) return SpherePoint::infinity();
    return SpherePoint::finite(std::tan(0.5 * phi), 0.0);
}

InfimumReport radial_search(ProductKind kind, const Domain& domain, const RadialRange& range,
                            const SearchBudget& budget, std::span<const SpherePoint> seeds) {
    const std::size_t n = 4 * budget.grid;
    const double step = (range.hi - range.lo) / static_cast<double>(n);
    std::vector<double> phi(n + 1);
    std::vector<double> val(n + 1, kInf);
    InfimumReport report;
    report.kind = kind;
    Best best;
    for (std::size_t k = 0; k <= n; ++k) {
        phi[k] = k == n ? range.hi : range.lo + step * static_cast<double>(k);
        if ((k == 0 && !range.lo_closed) || (k == n && !range.hi_closed)) continue;
        const SpherePoint z = radial_point(phi[k]);
        val[k] = product_or_inf(kind, domain, z);
        ++report.samples_evaluated;
        offer(best, val[k], z);
    }

    std::vector<std::size_t> minima;
    for (std::size_t k = 0; k <= n; ++k) {
        const double left = k > 0 ? val[k - 1] : kInf;
        const double right = k < n ? val[k + 1] : kInf;
        const bool interior_gap = !std::isfinite(val[k]) && ((k == 0 && !range.lo_closed) ||
                                                             (k == n && !range.hi_closed));
        if (interior_gap || (std::isfinite(val[k]) && val[k] <= left && val[k] <= right)) minima.push_back(k);
    }
    // Open ends are kept as candidates: the infimum may only be approached there.
    std::sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) {
        const double va = std::isfinite(val[a]) ? val[a] : (a == 0 ? val[1] : val[n - 1]);
        const double vb = std::isfinite(val[b]) ? val[b] : (b == 0 ? val[1] : val[n - 1]);
        return va < vb;
    });
    if (minima.size() > kRadialMinima) minima.resize(kRadialMinima);

    double radius = step;
    for (const std::size_t k : minima) {
        const double lo = k == 0 ? phi[0] : phi[k - 1];
        const double hi = k == n ? phi[n] : phi[k + 1];
        auto f = [&](double t) { return product_or_inf(kind, domain, radial_point(t)); };
        const LineMinimum m = golden_section(f, lo, hi, budget.target_tol, budget.refine_iters);
        report.samples_evaluated += static_cast<std::size_t>(m.evaluations);
        if (m.value < best.value) {
            offer(best, m.value, radial_point(m.t));
            radius = 0.5 * m.width;
        }
    }
    for (const SpherePoint& s : seeds) {
        offer(best, product_or_inf(kind, domain, s), s);
        ++report.samples_evaluated;
    }
    report.value = best.value;
    report.witness = best.point;
    report.refinement_radius = radius;
    return report;
}

// Coordinate-wise golden refinement in the chart of an isometry centered at the current point.
struct Refined {
    Best best;
    double radius;
    std::size_t evaluations;
};

Refined refine_in_charts(ProductKind kind, const Domain& domain, Best start, const SearchBudget& budget) {
    Refined r{start, 4.0 / static_cast<double>(budget.grid), 0};
    const Complex axes[2] = {Complex(1.0, 0.0), Complex(0.0, 1.0)};
    for (int it = 0; it < budget.refine_iters && r.radius > budget.target_tol; ++it) {
        bool improved = false;
        for (const Complex axis : axes) {
            const SphericalIsometry chart = isometry_sending_to_zero(r.best.point, 0.0).inverse();
            auto along = [&](double t) { return chart.apply(SpherePoint::finite(t * axis)); };
            auto f = [&](double t) { return product_or_inf(kind, domain, along(t), kBoundaryFloor); };
            const LineMinimum m = golden_section(f, -r.radius, r.radius, 1e-9, 100);
            r.evaluations += static_cast<std::size_t>(m.evaluations);
            if (m.value < r.best.value) {
                r.best.value = m.value;
                r.best.point = along(m.t);
                improved = true;
            }
        }
        if (!improved) r.radius *= 0.5;
    }
    return r;
}

InfimumReport planar_search(ProductKind kind, const Domain& domain, const SearchBudget& budget,
                            std::span<const SpherePoint> seeds) {
    const std::size_t g = budget.grid;
    InfimumReport report;
    report.kind = kind;
    std::vector<double> val(g * g, kInf);
    std::vector<SpherePoint> pts(g * g);
    // Equal-area cells: cos(polar angle) uniform, |z| = tan(angle/2).
    for (std::size_t i = 0; i < g; ++i) {
        const double c = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(g);
        const double r = std::tan(0.5 * std::acos(c));
        for (std::size_t j = 0; j < g; ++j) {
            const double a = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(g);
            const SpherePoint z = SpherePoint::finite(std::polar(r, a));
            pts[i * g + j] = z;
            val[i * g + j] = product_or_inf(kind, domain, z, kBoundaryFloor);
        }
    }
    report.samples_evaluated = g * g;

    std::vector<Best> candidates;
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            const double v = val[i * g + j];
            if (!std::isfinite(v)) continue;
            bool local = true;
            for (int di = -1; di <= 1 && local; ++di) {
                const long ii = static_cast<long>(i) + di;
                if (ii < 0 || ii >= static_cast<long>(g)) continue;
                for (int dj = -1; dj <= 1; ++dj) {
                    const std::size_t jj = (j + g - 1 + static_cast<std::size_t>(dj + 1)) % g;
                    if (val[static_cast<std::size_t>(ii) * g + jj] < v) {
                        local = false;
                        break;
                    }
                }
            }
            if (local) candidates.push_back({v, pts[i * g + j]});
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Best& a, const Best& b) { return a.value < b.value; });
    if (candidates.size() > kPlanarCandidates) candidates.resize(kPlanarCandidates);

    std::vector<SpherePoint> extra(seeds.begin(), seeds.end());
    if (kind != ProductKind::DLambda) extra.push_back(SpherePoint::infinity());
    for (const SpherePoint& s : extra) {
        // Seeds are taken as given; the floor only steers the search itself.
        const double v = product_or_inf(kind, domain, s);
        ++report.samples_evaluated;
        if (std::isfinite(v)) candidates.push_back({v, s});
    }
    if (candidates.empty()) {
        throw Fault(FaultKind::BudgetTooSmall, "grid found no admissible point of " + format_domain(domain));
    }

    Best best;
    double radius = 0.0;
    for (const Best& c : candidates) {
        const Refined r = refine_in_charts(kind, domain, c, budget);
        report.samples_evaluated += r.evaluations;
        if (r.best.value < best.value) {
            best = r.best;
            radius = r.radius;
        }
    }
    report.value = best.value;
    report.witness = best.point;
    report.refinement_radius = radius;
    return report;
}

std::optional<double> centered_disk_closed_form(ProductKind kind, const Domain& domain) {
    const auto* d = domain.get_if<EuclideanDisk>();
    if (!d || d->center != Complex(0.0, 0.0)) return std::nullopt;
    const DiskConstants k = centered_disk_constants(d->radius);
    switch (kind) {
        case ProductKind::DLambda: return k.c;
        case ProductKind::DeltaMu: return k.ctilde;
        case ProductKind::EpsMu: return k.chat;
    }
    return std::nullopt;
}

}  // namespace

std::string_view product_name(ProductKind kind) {
    switch (kind) {
        case ProductKind::DLambda: return "d_lambda";
        case ProductKind::DeltaMu: return "delta_mu";
        case ProductKind::EpsMu: return "eps_mu";
    }
    return "?";
}

std::optional<ProductKind> parse_product(std::string_view name) {
    for (const ProductKind k : {ProductKind::DLambda, ProductKind::DeltaMu, ProductKind::EpsMu}) {
        if (product_name(k) == name) return k;
    }
    return std::nullopt;
}

double pointwise_product(ProductKind kind, const Domain& domain, const SpherePoint& z) {
    if (!contains(domain, z)) {
        throw Fault(FaultKind::PointNotInDomain, format_point(z) + " is not in " + format_domain(domain));
    }
    switch (kind) {
        case ProductKind::DLambda:
            if (z.is_infinity()) {
                throw Fault(FaultKind::EuclideanKindAtInfinity, "d_lambda needs a finite point");
            }
            return euclid_dist(domain, z) * hyperbolic_density(domain, z);
        case ProductKind::DeltaMu: return delta_dist(domain, z) * spherical_density(domain, z);
        case ProductKind::EpsMu: return eps_dist(domain, z) * spherical_density(domain, z);
    }
    return kInf;
}

InfimumReport infimum(ProductKind kind, const Domain& domain, const SearchBudget& budget,
                      std::span<const SpherePoint> seeds) {
    if (budget.grid < kMinGrid) {
        throw Fault(FaultKind::BudgetTooSmall,
                    "grid " + std::to_string(budget.grid) + " is below " + std::to_string(kMinGrid));
    }
    if (budget.refine_iters < 1 || !(budget.target_tol > 0.0)) {
        throw Fault(FaultKind::BudgetTooSmall, "refinement budget must be positive");
    }
    const auto range = radial_range(kind, domain);
    InfimumReport report = range ? radial_search(kind, domain, *range, budget, seeds)
                                 : planar_search(kind, domain, budget, seeds);
    report.closed_form_value = centered_disk_closed_form(kind, domain);
    report.closed_form_used = report.closed_form_value.has_value();
    return report;
}

DomainConstants compute_constants(const Domain& domain, const SearchBudget& budget,
                                  std::span<const SpherePoint> seeds) {
    DomainConstants out;
    out.c = infimum(ProductKind::DLambda, domain, budget, seeds);
    out.ctilde = infimum(ProductKind::DeltaMu, domain, budget, seeds);
    out.chat = infimum(ProductKind::EpsMu, domain, budget, seeds);
    const SpherePoint witnesses[3] = {out.c.witness, out.ctilde.witness, out.chat.witness};
    for (InfimumReport* r : {&out.c, &out.ctilde, &out.chat}) {
        for (const SpherePoint& w : witnesses) {
            const double v = product_or_inf(r->kind, domain, w);
            ++r->samples_evaluated;
            if (v < r->value) {
                r->value = v;
                r->witness = w;
            }
        }
    }
    out.sigma_diam_complement = spherical_diameter_complement(domain);
    out.ctilde_prime = out.ctilde.value / out.sigma_diam_complement;
    out.chat_prime = out.chat.value / out.sigma_diam_complement;
    return out;
}

NormalizedConstants normalized_constants(const Domain& domain, const SearchBudget& budget) {
    const DomainConstants k = compute_constants(domain, budget);
    return {k.ctilde_prime, k.chat_prime};
}

DiskConstants centered_disk_constants(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw Fault(FaultKind::InvalidDomain, "disk radius must be positive and finite");
    }
    const double r = radius;
    DiskConstants k{};
    k.c = 0.5;
    if (r <= 1.0) {
        k.ctilde = 0.5;
        k.chat = 0.5;
        k.sigma_diam_complement = 1.0;
    } else {
        k.ctilde = r / (1.0 + r * r);
        k.chat = 2.0 * r / ((1.0 + r) * (1.0 + r));
        k.sigma_diam_complement = 2.0 * r / (1.0 + r * r);
    }
    k.ctilde_prime = k.ctilde / k.sigma_diam_complement;
    k.chat_prime = k.chat / k.sigma_diam_complement;
    return k;
}

double centered_disk_eps_mu(double radius, double x) {
    return radius * (1.0 + x * x) / ((1.0 + radius * x) * (radius + x));
}

}  // namespace sphyp
