#include "sphyp/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <future>
#include <limits>

#include "json.hpp"
#include "sphyp/fault.hpp"
#include "sphyp/metrics.hpp"
#include "sphyp/rng.hpp"

namespace sphyp {

namespace {

constexpr std::size_t kPointsPerDomain = 200;
constexpr std::size_t kMaxStoredFailures = 50;
constexpr std::size_t kMapsPerDomain = 4;
constexpr double kCurvatureStep = 1e-3;
// Probes keep the 5-point stencil error (about 4h^2/d^2) well below 1e-4.
constexpr double kCurvatureMinDist = 0.2;
constexpr double kCurvatureMaxModulus = 10.0;
constexpr double kCoveringProbeRadius = 0.8;

struct SuiteSpec {
    std::string name;
    double tolerance;
};

// Pointwise suites carry only rounding slack; constant-level suites also absorb search error.
const std::vector<SuiteSpec>& suite_table() {
    static const std::vector<SuiteSpec> table = {
        {"lemma1", 1e-9},     {"minda_upper", 1e-9}, {"minda_convex", 1e-9}, {"main_i", 1e-7},
        {"main_ii", 1e-9},    {"main_iii", 1e-7},    {"main_iv", 1e-7},      {"corollary2", 1e-9},
        {"invariance", 1e-6}, {"curvature", 1e-4},   {"covering", 1e-10},
    };
    return table;
}

class Collector {
public:
    explicit Collector(SuiteReport& report) : r_(report) {
        r_.worst_margin = std::numeric_limits<double>::infinity();
    }

    /// lhs <= rhs
    void le(const std::string& domain, const std::string& point, double lhs, double rhs) {
        record(domain, point, lhs, rhs, (rhs - lhs) / std::max(1.0, std::abs(rhs)));
    }

    /// lhs == rhs
    void eq(const std::string& domain, const std::string& point, double lhs, double rhs) {
        record(domain, point, lhs, rhs, -std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }

    void finish() {
        if (r_.checks == 0) r_.worst_margin = 0.0;
    }

private:
    void record(const std::string& domain, const std::string& point, double lhs, double rhs, double margin) {
        ++r_.checks;
        if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
        if (margin < r_.worst_margin) {
            r_.worst_margin = margin;
            r_.worst_domain = domain;
            r_.worst_lhs = lhs;
            r_.worst_rhs = rhs;
        }
        if (margin < -r_.tolerance) {
            if (r_.failures.size() < kMaxStoredFailures) r_.failures.push_back({domain, point, lhs, rhs, margin});
        }
    }

    SuiteReport& r_;
};

std::vector<SpherePoint> sample_points(const Domain& domain, Rng& rng, std::size_t n,
                                       const std::function<bool(const SpherePoint&)>& accept) {
    std::vector<SpherePoint> out;
    const std::size_t max_tries = 4'000'000;
    for (std::size_t t = 0; t < max_tries && out.size() < n; ++t) {
        const SpherePoint z = rng.sphere_point();
        if (contains(domain, z) && accept(z)) out.push_back(z);
    }
    return out;
}

std::vector<SpherePoint> sample_points(const Domain& domain, Rng& rng, std::size_t n) {
    return sample_points(domain, rng, n, [](const SpherePoint&) { return true; });
}

SphericalIsometry random_isometry(Rng& rng) {
    const double theta = rng.uniform(0.0, kTwoPi);
    return SphericalIsometry(theta, SpherePoint::finite(rng.disk_point(2.0)));
}

Rng member_rng(std::uint64_t seed, std::string_view suite, std::size_t index) {
    return Rng(derive_seed(derive_seed(seed, suite), std::to_string(index)));
}

void suite_lemma1(SuiteReport& r, const std::vector<CorpusMember>& corpus, std::uint64_t seed) {
    Collector c(r);
    bool any = false;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusMember& m = corpus[i];
        if (!is_planar(m.domain)) {
            r.inapplicable.push_back(m.label);
            continue;
        }
        any = true;
        Rng rng = member_rng(seed, r.suite, i);
        for (const SpherePoint& z : sample_points(m.domain, rng, kPointsPerDomain)) {
            const double e = eps_dist(m.domain, z);
            const double x = z.modulus();
            const double d = euclid_dist(m.domain, z);
            const double s = 1.0 + x * x;
            const std::string pt = format_point(z);
            c.le(m.label, pt, e * x, 1.0);
            c.le(m.label, pt, e * s / (1.0 + e * x), d);
            if (e * x < 1.0) c.le(m.label, pt, d, e * s / (1.0 - e * x));
            if (std::abs(e * x - 1.0) <= r.tolerance) ++r.equality_cases;
        }
        if (const auto* h = m.domain.get_if<HalfPlane>()) {
            // Points far along the inner normal see infinity as the nearest boundary point.
            for (const double t : {1.0, 2.0, 10.0, 1e3}) {
                const SpherePoint z = SpherePoint::finite(h->normal * (std::max(h->offset, 0.0) + t));
                const double e = eps_dist(m.domain, z);
                const double x = z.modulus();
                const std::string pt = format_point(z);
                c.le(m.label, pt, e * x, 1.0);
                c.le(m.label, pt, e * (1.0 + x * x) / (1.0 + e * x), euclid_dist(m.domain, z));
                if (std::abs(e * x - 1.0) <= r.tolerance) ++r.equality_cases;
            }
        }
    }
    if (!any) throw Fault(FaultKind::SuiteInapplicable, "lemma1 needs a domain in the finite plane");
    c.finish();
}

std::vector<SpherePoint> with_infinity(const Domain& domain, std::vector<SpherePoint> pts) {
    if (contains(domain, SpherePoint::infinity())) pts.push_back(SpherePoint::infinity());
    return pts;
}

void suite_minda_upper(SuiteReport& r, const std::vector<CorpusMember>& corpus, std::uint64_t seed) {
    Collector c(r);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusMember& m = corpus[i];
        Rng rng = member_rng(seed, r.suite, i);
        for (const SpherePoint& z : with_infinity(m.domain, sample_points(m.domain, rng, kPointsPerDomain))) {
            c.le(m.label, format_point(z), eps_dist(m.domain, z) * spherical_density(m.domain, z), 1.0);
        }
        if (const auto center = spherical_center(m.domain)) {
            c.eq(m.label, format_point(*center),
                 eps_dist(m.domain, *center) * spherical_density(m.domain, *center), 1.0);
            ++r.equality_cases;
        }
    }
    c.finish();
}

void suite_minda_convex(SuiteReport& r, const std::vector<CorpusMember>& corpus, std::uint64_t seed) {
    Collector c(r);
    bool any = false;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusMember& m = corpus[i];
        if (!m.spherically_convex) {
            r.inapplicable.push_back(m.label);
            continue;
        }
        any = true;
        const bool hemisphere = is_hemisphere(m.domain);
        Rng rng = member_rng(seed, r.suite, i);
        for (const SpherePoint& z : with_infinity(m.domain, sample_points(m.domain, rng, kPointsPerDomain))) {
            const double e = eps_dist(m.domain, z);
            const double mu = spherical_density(m.domain, z);
            const double bound = (1.0 + e * e) / (2.0 * e);
            // Compared as eps*mu against (1+eps^2)/2 to stay bounded near the boundary.
            if (hemisphere) {
                c.eq(m.label, format_point(z), e * mu, e * bound);
                ++r.equality_cases;
            } else {
                c.le(m.label, format_point(z), e * bound, e * mu);
            }
        }
    }
    if (!any) throw Fault(FaultKind::SuiteInapplicable, "minda_convex needs a spherically convex domain");
    c.finish();
}

void suite_main(SuiteReport& r, const std::vector<CorpusMember>& corpus, const ConstantsTable& k) {
    Collector c(r);
    bool any = false;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusMember& m = corpus[i];
        const DomainConstants& v = k[i];
        if (r.suite == "main_i") {
            c.le(m.label, "Chat", v.chat.value, 0.5);
            any = true;
        } else if (r.suite == "main_ii") {
            c.le(m.label, "Ctilde", v.ctilde.value, v.chat.value);
            c.le(m.label, "Ctilde_prime", v.ctilde_prime, v.chat_prime);
            any = true;
        } else if (!is_planar(m.domain)) {
            r.inapplicable.push_back(m.label);
        } else if (r.suite == "main_iii") {
            c.le(m.label, "Chat", v.chat.value, 2.0 * v.c.value);
            any = true;
        } else {
            c.le(m.label, "C", v.c.value, 4.0 * v.ctilde_prime);
            any = true;
        }
    }
    if (!any) throw Fault(FaultKind::SuiteInapplicable, r.suite + " needs a domain in the finite plane");
    c.finish();
}

void suite_corollary2(SuiteReport& r, const std::vector<CorpusMember>& corpus, std::uint64_t seed) {
    Collector c(r);
    bool any = false;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusMember& m = corpus[i];
        if (!is_planar(m.domain)) {
            r.inapplicable.push_back(m.label);
            continue;
        }
        Rng rng = member_rng(seed, r.suite, i);
        for (std::size_t k = 0; k < kMapsPerDomain; ++k) {
            // The pole of T must avoid the domain so that T(domain) stays in the plane.
            std::optional<SphericalIsometry> map;
            for (int tries = 0; tries < 10000 && !map; ++tries) {
                const SphericalIsometry t = random_isometry(rng);
                if (!contains(m.domain, antipode(t.center()))) map = t;
            }
            if (!map) continue;
            any = true;
            const Domain image = Domain::image(*map, m.domain);
            for (const SpherePoint& z : sample_points(m.domain, rng, kPointsPerDomain / kMapsPerDomain)) {
                const SpherePoint w = map->apply(z);
                const double lhs = euclid_dist(m.domain, z) * hyperbolic_density(m.domain, z);
                const double rhs = euclid_dist(image, w) * hyperbolic_density(image, w);
                c.le(m.label, format_point(z), lhs, 2.0 * rhs);
            }
        }
    }
    if (!any) throw Fault(FaultKind::SuiteInapplicable, "corollary2 needs a domain in the finite plane");
    c.finish();
}

void suite_invariance(SuiteReport& r, const std::vector<CorpusMember>& corpus, std::uint64_t seed,
                      const ConstantsTable& k) {
    Collector c(r);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusMember& m = corpus[i];
        Rng rng = member_rng(seed, r.suite, i);
        const SphericalIsometry t = random_isometry(rng);
        const Domain image = Domain::image(t, m.domain);
        for (const SpherePoint& z : with_infinity(m.domain, sample_points(m.domain, rng, kPointsPerDomain))) {
            const SpherePoint w = t.apply(z);
            const std::string pt = format_point(z);
            c.eq(m.label, pt, eps_dist(image, w), eps_dist(m.domain, z));
            c.eq(m.label, pt, delta_dist(image, w), delta_dist(m.domain, z));
            c.eq(m.label, pt, spherical_density(image, w), spherical_density(m.domain, z));
        }
        // Both searches share candidates: the image search starts from the mapped base witnesses
        // and the base bounds are lowered at the pulled-back image witnesses.
        const DomainConstants& base = k[i];
        const SpherePoint pushed[3] = {t.apply(base.c.witness), t.apply(base.ctilde.witness),
                                       t.apply(base.chat.witness)};
        const DomainConstants moved = compute_constants(image, SearchBudget{}, pushed);
        const SphericalIsometry back = t.inverse();
        auto lowered = [&](const InfimumReport& own, const InfimumReport& other) {
            const double v = pointwise_product(own.kind, m.domain, back.apply(other.witness));
            return std::min(own.value, v);
        };
        const double ctilde = lowered(base.ctilde, moved.ctilde);
        const double chat = lowered(base.chat, moved.chat);
        c.eq(m.label, "Ctilde", moved.ctilde.value, ctilde);
        c.eq(m.label, "Chat", moved.chat.value, chat);
        c.eq(m.label, "Ctilde_prime", moved.ctilde_prime, ctilde / base.sigma_diam_complement);
        c.eq(m.label, "Chat_prime", moved.chat_prime, chat / base.sigma_diam_complement);
        c.eq(m.label, "sigma_diam_complement", moved.sigma_diam_complement, base.sigma_diam_complement);
    }
    c.finish();
}

void suite_curvature(SuiteReport& r, const std::vector<CorpusMember>& corpus, std::uint64_t seed) {
    Collector c(r);
    bool any = false;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusMember& m = corpus[i];
        Rng rng = member_rng(seed, r.suite, i);
        const auto probes = sample_points(m.domain, rng, kPointsPerDomain, [&](const SpherePoint& z) {
            return z.modulus() <= kCurvatureMaxModulus && euclid_dist(m.domain, z) >= kCurvatureMinDist;
        });
        if (probes.empty()) {
            r.inapplicable.push_back(m.label);
            continue;
        }
        any = true;
        for (const SpherePoint& z : probes) {
            c.eq(m.label, format_point(z), curvature_residual(m.domain, z, kCurvatureStep), -4.0);
        }
    }
    if (!any) throw Fault(FaultKind::SuiteInapplicable, "no member has curvature probes");
    c.finish();
}

void suite_covering(SuiteReport& r, const std::vector<CorpusMember>& corpus, std::uint64_t seed) {
    Collector c(r);
    bool any = false;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusMember& m = corpus[i];
        if (m.domain.depth() > 0) {
            r.inapplicable.push_back(m.label);
            continue;
        }
        any = true;
        Rng rng = member_rng(seed, r.suite, i);
        std::vector<CoveringDescriptor> covers{default_covering(m.domain)};
        if (covers.front().kind == CoveringKind::DiskAutomorphism) {
            covers.push_back({CoveringKind::DiskAutomorphism, rng.disk_point(0.5)});
        }
        for (const CoveringDescriptor& cover : covers) {
            std::vector<Complex> probes{Complex(0.0, 0.0)};
            while (probes.size() < kPointsPerDomain) probes.push_back(rng.disk_point(kCoveringProbeRadius));
            for (const Complex w : probes) {
                c.le(m.label, format_point(SpherePoint::finite(w)), covering_residual(m.domain, cover, w), 0.0);
            }
        }
    }
    if (!any) throw Fault(FaultKind::SuiteInapplicable, "covering needs a member with a built-in covering");
    c.finish();
}

bool is_main(std::string_view name) { return name.substr(0, 5) == "main_"; }

}  // namespace

CorpusMember make_member(const Domain& domain) {
    return {format_domain(domain), domain, is_spherically_convex(domain)};
}

std::vector<CorpusMember> default_corpus(std::uint64_t seed) {
    std::vector<Domain> base;
    for (const double r : {0.3, 0.5, 1.0, 2.0, 5.0}) base.push_back(Domain::disk({0.0, 0.0}, r));
    base.push_back(Domain::exterior_disk(1.0));
    base.push_back(Domain::exterior_disk(2.0));
    base.push_back(Domain::punctured_disk(1.0));
    base.push_back(Domain::annulus(0.2));
    base.push_back(Domain::annulus(0.5));
    std::vector<CorpusMember> out;
    for (const Domain& d : base) out.push_back(make_member(d));
    Rng rng(derive_seed(seed, "corpus"));
    const std::size_t n_base = base.size();
    for (int k = 0; k < 5; ++k) {
        const Domain& b = base[rng.below(n_base)];
        out.push_back(make_member(Domain::image(random_isometry(rng), b)));
    }
    return out;
}

std::vector<CorpusMember> parse_corpus(std::string_view text) {
    std::vector<CorpusMember> out;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
        if (line.empty()) continue;
        try {
            out.push_back(make_member(parse_domain(line)));
        } catch (const Fault& f) {
            throw Fault(f.kind(), "corpus line " + std::to_string(line_no) + ": " + f.what());
        }
    }
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const SuiteSpec& s : suite_table()) v.push_back(s.name);
        return v;
    }();
    return names;
}

double suite_tolerance(std::string_view suite) {
    for (const SuiteSpec& s : suite_table()) {
        if (s.name == suite) return s.tolerance;
    }
    throw Fault(FaultKind::BadParameters, "unknown suite '" + std::string(suite) + "'");
}

ConstantsTable corpus_constants(const std::vector<CorpusMember>& corpus, const SearchBudget& budget) {
    std::vector<std::future<DomainConstants>> jobs;
    for (const CorpusMember& m : corpus) {
        jobs.push_back(std::async(std::launch::async, [&m, budget] { return compute_constants(m.domain, budget); }));
    }
    ConstantsTable out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

SuiteReport run_suite(std::string_view name, const std::vector<CorpusMember>& corpus, std::uint64_t seed,
                      const ConstantsTable* constants) {
    SuiteReport r;
    r.suite = std::string(name);
    r.tolerance = suite_tolerance(name);
    if (corpus.empty()) throw Fault(FaultKind::EmptyCorpus, "corpus is empty");
    ConstantsTable local;
    if ((is_main(name) || name == "invariance") && !constants) {
        local = corpus_constants(corpus);
        constants = &local;
    }
    if (name == "lemma1") suite_lemma1(r, corpus, seed);
    else if (name == "minda_upper") suite_minda_upper(r, corpus, seed);
    else if (name == "minda_convex") suite_minda_convex(r, corpus, seed);
    else if (is_main(name)) suite_main(r, corpus, *constants);
    else if (name == "corollary2") suite_corollary2(r, corpus, seed);
    else if (name == "invariance") suite_invariance(r, corpus, seed, *constants);
    else if (name == "curvature") suite_curvature(r, corpus, seed);
    else suite_covering(r, corpus, seed);
    return r;
}

std::vector<SuiteReport> run_all(const std::vector<CorpusMember>& corpus, std::uint64_t seed) {
    if (corpus.empty()) throw Fault(FaultKind::EmptyCorpus, "corpus is empty");
    const ConstantsTable constants = corpus_constants(corpus);
    std::vector<std::future<SuiteReport>> jobs;
    for (const std::string& name : suite_names()) {
        jobs.push_back(std::async(std::launch::async, [&, name] {
            try {
                return run_suite(name, corpus, seed, &constants);
            } catch (const Fault& f) {
                if (f.kind() != FaultKind::SuiteInapplicable) throw;
                SuiteReport skipped;
                skipped.suite = name;
                skipped.tolerance = suite_tolerance(name);
                for (const CorpusMember& m : corpus) skipped.inapplicable.push_back(m.label);
                return skipped;
            }
        }));
    }
    std::vector<SuiteReport> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

std::string reports_to_json(const std::vector<SuiteReport>& reports, std::uint64_t seed,
                            const std::vector<CorpusMember>& corpus) {
    using nlohmann::json;
    json doc;
    doc["seed"] = seed;
    json members = json::array();
    for (const CorpusMember& m : corpus) {
        members.push_back({{"label", m.label}, {"spherically_convex", m.spherically_convex}});
    }
    doc["corpus"] = members;
    json suites = json::array();
    bool all_passed = true;
    for (const SuiteReport& r : reports) {
        json failures = json::array();
        for (const CheckFailure& f : r.failures) {
            failures.push_back({{"domain", f.domain}, {"point", f.point}, {"lhs", f.lhs}, {"rhs", f.rhs},
                                {"margin", f.margin}});
        }
        suites.push_back({{"suite", r.suite},
                          {"checks", r.checks},
                          {"failures", failures},
                          {"passed", r.passed()},
                          {"worst_margin", r.worst_margin},
                          {"worst_domain", r.worst_domain},
                          {"worst_lhs", r.worst_lhs},
                          {"worst_rhs", r.worst_rhs},
                          {"tolerance", r.tolerance},
                          {"inapplicable", r.inapplicable},
                          {"equality_cases", r.equality_cases}});
        all_passed = all_passed && r.passed();
    }
    doc["suites"] = suites;
    doc["passed"] = all_passed;
    return doc.dump(2) + "\n";
}

}  // namespace sphyp
