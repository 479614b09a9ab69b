#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sphyp/constants.hpp"
#include "sphyp/fault.hpp"
#include "sphyp/metrics.hpp"
#include "sphyp/perfectness.hpp"
#include "sphyp/verify.hpp"

using namespace sphyp;
using nlohmann::json;

namespace {

constexpr int kExitFault = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Domain domain_arg(const std::string& text) {
    if (text.empty()) throw UsageError("--domain is required");
    try {
        return parse_domain(text);
    } catch (const Fault& f) {
        if (f.kind() == FaultKind::ParseError) throw UsageError(f.what());
        throw;
    }
}

SpherePoint point_arg(const std::string& text) {
    try {
        return parse_point(text);
    } catch (const Fault& f) {
        if (f.kind() == FaultKind::ParseError) throw UsageError(f.what());
        throw;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string g17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json real_or_inf(double x) { return std::isfinite(x) ? json(x) : json("inf"); }

// ---- density ----

struct DensityArgs {
    std::string domain;
    std::vector<std::string> at;
    std::size_t grid = 32;
    std::string format = "csv";
};

std::vector<SpherePoint> density_points(const Domain& d, const DensityArgs& a) {
    std::vector<SpherePoint> pts;
    for (const std::string& s : a.at) pts.push_back(point_arg(s));
    if (!pts.empty()) return pts;
    // Equal-area sphere grid restricted to the domain, as in the planar constant search.
    for (std::size_t i = 0; i < a.grid; ++i) {
        const double c = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(a.grid);
        const double r = std::tan(0.5 * std::acos(c));
        for (std::size_t j = 0; j < a.grid; ++j) {
            const double phi = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(a.grid);
            const SpherePoint z = SpherePoint::finite(std::polar(r, phi));
            if (contains(d, z)) pts.push_back(z);
        }
    }
    if (contains(d, SpherePoint::infinity())) pts.push_back(SpherePoint::infinity());
    return pts;
}

int run_density(const DensityArgs& a) {
    const Domain d = domain_arg(a.domain);
    const std::vector<SpherePoint> pts = density_points(d, a);
    if (a.format == "json") {
        json rows = json::array();
        for (const SpherePoint& z : pts) {
            const DensitySample s = density_sample(d, z);
            json row = {{"point", format_point(z)}, {"delta", s.delta}, {"eps", s.eps}, {"mu", s.mu},
                        {"eps_mu", s.eps * s.mu}, {"delta_mu", s.delta * s.mu}};
            row["d"] = s.d ? json(*s.d) : json(nullptr);
            row["lambda"] = s.lambda ? json(*s.lambda) : json(nullptr);
            row["d_lambda"] = s.d && s.lambda ? json(*s.d * *s.lambda) : json(nullptr);
            rows.push_back(row);
        }
        std::cout << json{{"domain", format_domain(d)}, {"samples", rows}}.dump(2) << "\n";
        return 0;
    }
    std::ostringstream csv;
    csv << "re,im,d,delta,eps,lambda,mu,eps_mu,delta_mu,d_lambda\n";
    for (const SpherePoint& z : pts) {
        const DensitySample s = density_sample(d, z);
        const std::string re = z.is_infinity() ? "inf" : g17(z.value().real());
        const std::string im = z.is_infinity() ? "" : g17(z.value().imag());
        const std::string dd = s.d ? g17(*s.d) : "";
        const std::string lam = s.lambda ? g17(*s.lambda) : "";
        const std::string dl = s.d && s.lambda ? g17(*s.d * *s.lambda) : "";
        csv << re << ',' << im << ',' << dd << ',' << g17(s.delta) << ',' << g17(s.eps) << ',' << lam << ','
            << g17(s.mu) << ',' << g17(s.eps * s.mu) << ',' << g17(s.delta * s.mu) << ',' << dl << '\n';
    }
    std::cout << csv.str();
    return 0;
}

// ---- constants ----

struct BudgetArgs {
    std::size_t grid = 256;
    int refine = 200;
    double tol = 1e-10;

    SearchBudget budget() const { return {grid, refine, tol}; }
};

bool has_isolated_boundary_point(const Domain& d) {
    for (const BoundaryComponent& c : boundary_components(d)) {
        if (c.is_point()) return true;
    }
    return false;
}

json report_json(const InfimumReport& r) {
    json j = {{"value", r.value},
              {"witness", format_point(r.witness)},
              {"samples_evaluated", r.samples_evaluated},
              {"refinement_radius", r.refinement_radius},
              {"closed_form_used", r.closed_form_used}};
    if (r.closed_form_value) j["closed_form_value"] = *r.closed_form_value;
    return j;
}

int run_constants(const std::string& spec, const BudgetArgs& b) {
    const Domain d = domain_arg(spec);
    const SearchBudget budget = b.budget();
    const DomainConstants k = compute_constants(d, budget);
    json out = {{"domain", format_domain(d)},
                {"C", k.c.value},
                {"Ctilde", k.ctilde.value},
                {"Chat", k.chat.value},
                {"Ctilde_prime", k.ctilde_prime},
                {"Chat_prime", k.chat_prime},
                {"sigma_diam_complement", k.sigma_diam_complement},
                {"witnesses", {{"C", format_point(k.c.witness)},
                               {"Ctilde", format_point(k.ctilde.witness)},
                               {"Chat", format_point(k.chat.witness)}}},
                {"reports", {{"C", report_json(k.c)}, {"Ctilde", report_json(k.ctilde)},
                             {"Chat", report_json(k.chat)}}},
                {"budget", {{"grid", budget.grid}, {"refine_iters", budget.refine_iters},
                            {"target_tol", budget.target_tol}}},
                {"closed_form_used", k.c.closed_form_used}};
    if (has_isolated_boundary_point(d)) {
        // The infima are 0 here and every search only approaches them; report how the bound moves.
        json trend = json::array();
        for (std::size_t g = 64; g <= 1024; g *= 2) {
            SearchBudget tb = budget;
            tb.grid = g;
            const DomainConstants t = compute_constants(d, tb);
            trend.push_back({{"grid", g}, {"C", t.c.value}, {"Ctilde", t.ctilde.value}, {"Chat", t.chat.value}});
        }
        out["trend"] = trend;
        out["converged"] = false;
    } else {
        out["converged"] = true;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---- perfectness ----

CompactSetSample generate_set(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("--generate expects cantor:<level> or geom:<base>,<rule>,<n>");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    try {
        if (kind == "cantor") return cantor_iterate(std::stoi(rest));
        if (kind == "geom") {
            const std::size_t c1 = rest.find(',');
            const std::size_t c2 = rest.find(',', c1 == std::string::npos ? c1 : c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos) throw UsageError("geom:<base>,<rule>,<n>");
            const double base = std::stod(rest.substr(0, c1));
            const std::string rule = rest.substr(c1 + 1, c2 - c1 - 1);
            const int n = std::stoi(rest.substr(c2 + 1));
            if (rule != "linear" && rule != "quadratic") throw UsageError("rule must be linear or quadratic");
            return geometric_gap_set(base, rule == "linear" ? ExponentRule::Linear : ExponentRule::Quadratic, n);
        }
    } catch (const std::invalid_argument&) {
        throw UsageError("bad number in --generate " + spec);
    } catch (const std::out_of_range&) {
        throw UsageError("number out of range in --generate " + spec);
    }
    throw UsageError("unknown generator '" + kind + "'");
}

int run_perfectness(const std::string& points, const std::string& generate) {
    if (points.empty() == generate.empty()) throw UsageError("give exactly one of --points and --generate");
    const CompactSetSample e = points.empty() ? generate_set(generate) : parse_points_csv(read_file(points), points);
    const PerfectnessReport r = up_constant_estimate(e);
    const json out = {{"label", e.label},
                      {"n_points", r.n_points},
                      {"k_hat", r.k_hat},
                      {"witness", {{"center", format_point(SpherePoint::finite(r.witness_center))},
                                   {"inner", r.witness_inner},
                                   {"outer", r.witness_outer}}},
                      {"diam", real_or_inf(r.diam)}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---- example1 ----

int run_example1(double radius, const BudgetArgs& b) {
    const DiskConstants closed = centered_disk_constants(radius);
    const Domain d = Domain::disk({0.0, 0.0}, radius);
    const DomainConstants k = compute_constants(d, b.budget());
    constexpr double kTolerance = 1e-7;
    const std::pair<const char*, std::pair<double, double>> rows[] = {
        {"C", {closed.c, k.c.value}},
        {"Ctilde", {closed.ctilde, k.ctilde.value}},
        {"Chat", {closed.chat, k.chat.value}},
        {"sigma_diam_complement", {closed.sigma_diam_complement, k.sigma_diam_complement}},
        {"Ctilde_prime", {closed.ctilde_prime, k.ctilde_prime}},
        {"Chat_prime", {closed.chat_prime, k.chat_prime}},
    };
    json table = json::array();
    bool ok = true;
    for (const auto& [name, v] : rows) {
        const double diff = std::abs(v.first - v.second);
        ok = ok && diff <= kTolerance;
        table.push_back({{"name", name}, {"closed_form", v.first}, {"numeric", v.second}, {"abs_diff", diff}});
    }
    std::cout << json{{"R", radius}, {"rows", table}, {"tolerance", kTolerance}, {"all_within", ok}}.dump(2)
              << "\n";
    return 0;
}

// ---- verify ----

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& corpus_arg,
               const std::string& json_path) {
    const std::vector<CorpusMember> corpus =
        corpus_arg == "default" ? default_corpus(seed) : parse_corpus(read_file(corpus_arg));
    std::vector<SuiteReport> reports;
    if (suite == "all") {
        reports = run_all(corpus, seed);
    } else {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), suite) == names.end()) {
            throw UsageError("unknown suite '" + suite + "'");
        }
        reports.push_back(run_suite(suite, corpus, seed));
    }
    const std::string doc = reports_to_json(reports, seed, corpus);
    bool ok = true;
    for (const SuiteReport& r : reports) ok = ok && r.passed();
    if (json_path.empty()) {
        std::cout << doc;
    } else {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw UsageError("cannot write '" + json_path + "'");
        out << doc;
        for (const SuiteReport& r : reports) {
            std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << " checks=" << r.checks
                      << " failures=" << r.failures.size() << " worst_margin=" << g17(r.worst_margin) << "\n";
        }
    }
    return ok ? 0 : kExitFault;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic and spherical density constants of plane domains"};
    app.require_subcommand(1);
    app.footer(std::string(domain_grammar()));

    DensityArgs dens;
    auto* density = app.add_subcommand("density", "Densities and distances at points (CSV by default)");
    density->add_option("--domain", dens.domain, "Domain spec")->required();
    density->add_option("--at", dens.at, "Point re+imi or inf; repeatable. Without it, scan a sphere grid");
    density->add_option("--grid", dens.grid, "Sphere grid size for scans")->check(CLI::Range(1, 4096));
    density->add_option("--format", dens.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    std::string cdomain;
    BudgetArgs cbudget;
    std::string cformat = "json";
    auto* constants = app.add_subcommand("constants", "C, Ctilde, Chat and the normalized constants (JSON)");
    constants->add_option("--domain", cdomain, "Domain spec")->required();
    auto add_budget = [](CLI::App* sub, BudgetArgs& b) {
        sub->add_option("--grid", b.grid, "Search grid (>= 64)");
        sub->add_option("--refine", b.refine, "Refinement iterations");
        sub->add_option("--tol", b.tol, "Relative refinement tolerance");
    };
    add_budget(constants, cbudget);
    constants->add_option("--format", cformat, "json")->check(CLI::IsMember({"json"}));

    std::string points_file;
    std::string generate;
    std::string pformat = "json";
    auto* perfect = app.add_subcommand("perfectness", "Uniform perfectness estimate of a finite set (JSON)");
    perfect->add_option("--points", points_file, "CSV file of re,im rows, optionally one inf row");
    perfect->add_option("--generate", generate, "cantor:<level> or geom:<base>,<linear|quadratic>,<n>");
    perfect->add_option("--format", pformat, "json")->check(CLI::IsMember({"json"}));

    double radius = 0.0;
    BudgetArgs ebudget;
    auto* example = app.add_subcommand("example1", "Closed forms against numeric search for |z| < R (JSON)");
    example->add_option("--R", radius, "Disk radius")->required();
    add_budget(example, ebudget);

    std::string suite = "all";
    std::uint64_t seed = 42;
    std::string corpus = "default";
    std::string json_path;
    auto* verify = app.add_subcommand("verify", "Run inequality suites over a domain corpus");
    verify->add_option("--suite", suite, "Suite name or all");
    verify->add_option("--seed", seed, "Seed for corpus and sampling");
    verify->add_option("--corpus", corpus, "Corpus file (one domain per line) or default");
    verify->add_option("--json", json_path, "Write the JSON report here and print a summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << domain_grammar();
        return kExitUsage;
    }

    try {
        if (density->parsed()) return run_density(dens);
        if (constants->parsed()) return run_constants(cdomain, cbudget);
        if (perfect->parsed()) return run_perfectness(points_file, generate);
        if (example->parsed()) return run_example1(radius, ebudget);
        return run_verify(suite, seed, corpus, json_path);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << domain_grammar();
        return kExitUsage;
    } catch (const Fault& f) {
        std::cerr << f.what() << "\n";
        return kExitFault;
    }
}
