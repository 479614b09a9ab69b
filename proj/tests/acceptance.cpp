// One PASS/FAIL line per acceptance criterion. Exit status 1 if any selected criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "sphyp/constants.hpp"
#include "sphyp/fault.hpp"
#include "sphyp/metrics.hpp"
#include "sphyp/perfectness.hpp"
#include "sphyp/rng.hpp"
#include "sphyp/verify.hpp"

using namespace sphyp;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr std::uint64_t kSeed = 42;
constexpr std::array<double, 4> kRadii = {0.5, 1.0, 2.0, 5.0};

Outcome ac1() {
    Outcome o{true, ""};
    for (const double r : kRadii) {
        const auto t0 = std::chrono::steady_clock::now();
        const DomainConstants k = compute_constants(Domain::disk({0, 0}, r));
        const double secs = seconds_since(t0);
        const DiskConstants e = centered_disk_constants(r);
        const double err = std::max({std::abs(k.c.value - e.c), std::abs(k.ctilde.value - e.ctilde),
                                     std::abs(k.chat.value - e.chat),
                                     std::abs(k.sigma_diam_complement - e.sigma_diam_complement),
                                     std::abs(k.ctilde_prime - 0.5)});
        o.pass = o.pass && err <= 1e-7 && secs < 5.0;
        o.detail += fmt("R=%g err=%.2e t=%.2fs; ", r, err, secs);
    }
    return o;
}

Outcome ac2() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<CorpusMember> corpus = default_corpus(kSeed);
    const ConstantsTable table = corpus_constants(corpus);
    Outcome o{true, ""};
    for (const char* s : {"main_i", "main_ii", "main_iii", "main_iv"}) {
        const SuiteReport r = run_suite(s, corpus, kSeed, &table);
        o.pass = o.pass && r.passed();
        o.detail += fmt("%s worst=%.2e fails=%zu; ", s, r.worst_margin, r.failures.size());
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < 60.0;
    o.detail += fmt("t=%.2fs", secs);
    return o;
}

Outcome ac3() {
    std::vector<CorpusMember> corpus = default_corpus(kSeed);
    corpus.push_back(make_member(parse_domain("half:1,0,0")));
    const SuiteReport r = run_suite("lemma1", corpus, kSeed);
    return {r.passed() && r.equality_cases > 0 && r.tolerance <= 1e-9,
            fmt("checks=%zu equality_cases=%zu worst=%.2e", r.checks, r.equality_cases, r.worst_margin)};
}

Outcome ac4() {
    const std::vector<CorpusMember> corpus = default_corpus(kSeed);
    const SuiteReport up = run_suite("minda_upper", corpus, kSeed);
    const SuiteReport cv = run_suite("minda_convex", corpus, kSeed);
    // Every R <= 1 disk of the corpus must be covered by the convex suite.
    bool all_small_disks = true;
    for (const CorpusMember& m : corpus) {
        const auto* d = m.domain.get_if<EuclideanDisk>();
        if (d && d->radius <= 1.0 && d->center == Complex{}) {
            all_small_disks = all_small_disks && std::find(cv.inapplicable.begin(), cv.inapplicable.end(),
                                                           m.label) == cv.inapplicable.end();
        }
    }
    return {up.passed() && cv.passed() && up.equality_cases > 0 && cv.equality_cases > 0 && all_small_disks,
            fmt("upper worst=%.2e eq=%zu; convex worst=%.2e eq=%zu", up.worst_margin, up.equality_cases,
                cv.worst_margin, cv.equality_cases)};
}

Outcome ac5() {
    const Domain ext = Domain::exterior_disk(1.0);
    double prev = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    bool monotone = true;
    for (int k = 1; k <= 6; ++k) {
        const double x = std::pow(10.0, k);
        const double v = pointwise_product(ProductKind::DLambda, ext, SpherePoint::finite(x, 0.0));
        worst = std::max(worst, std::abs(v - 1.0 / (x + 1.0)));
        monotone = monotone && v < prev;
        prev = v;
    }
    return {worst <= 1e-10 && monotone, fmt("max_err=%.2e monotone=%d last=%.3e", worst, monotone, prev)};
}

Outcome ac6() {
    Outcome o{true, ""};
    const SearchBudget base{};
    const Domain punct = Domain::punctured_disk(1.0);
    double prev = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    for (std::size_t g = 64; g <= base.grid; g *= 2) {
        const double v = infimum(ProductKind::DLambda, punct, {.grid = g}).value;
        decreasing = decreasing && v <= prev;
        prev = v;
    }
    const bool punct_ok = decreasing && prev < 0.05;
    o.detail += fmt("C(punct:1)=%.4f decreasing=%d; ", prev, decreasing);

    const BoundarySample bs = boundary_sample(punct, 65);
    CompactSetSample e{{}, false, "boundary(punct:1)"};
    for (const SpherePoint& z : bs.points) e.points.push_back(z.value());
    const double k_hat = up_constant_estimate(e).k_hat;
    const bool up_ok = k_hat <= 1.0 / 32.0;
    o.detail += fmt("k_hat(boundary, %zu pts)=%.4f vs 1/32; ", e.points.size(), k_hat);

    std::vector<Domain> stable = {Domain::annulus(0.5)};
    for (const double r : kRadii) stable.push_back(Domain::disk({0, 0}, r));
    double lowest = std::numeric_limits<double>::infinity();
    double drift = 0.0;
    for (const Domain& d : stable) {
        double last = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t g = 64; g <= 512; g *= 2) {
            const double v = infimum(ProductKind::DLambda, d, {.grid = g}).value;
            lowest = std::min(lowest, v);
            if (!std::isnan(last)) drift = std::max(drift, std::abs(v - last));
            last = v;
        }
    }
    const bool stable_ok = lowest > 0.1 && drift <= 1e-6;
    o.detail += fmt("stable min C=%.4f drift=%.1e", lowest, drift);
    o.pass = punct_ok && up_ok && stable_ok;
    return o;
}

Outcome ac7() {
    std::vector<CorpusMember> corpus = default_corpus(kSeed);
    corpus.push_back(make_member(parse_domain("half:1,0,0")));
    const SuiteReport cov = run_suite("covering", corpus, kSeed);
    const SuiteReport cur = run_suite("curvature", corpus, kSeed);
    return {cov.passed() && cur.passed() && cov.tolerance <= 1e-10 && cur.tolerance <= 1e-4,
            fmt("covering checks=%zu worst=%.2e; curvature checks=%zu worst=%.2e inapplicable=%zu", cov.checks,
                cov.worst_margin, cur.checks, cur.worst_margin, cur.inapplicable.size())};
}

Outcome ac8() {
    std::vector<CompactSetSample> sets;
    for (int level = 1; level <= 4; ++level) sets.push_back(cantor_iterate(level));
    for (const double b : {1.5, 2.0, 3.0, 4.0}) {
        for (int n = 3; n <= 12; ++n) sets.push_back(geometric_gap_set(b, ExponentRule::Linear, n));
    }
    for (int n = 3; n <= 6; ++n) sets.push_back(geometric_gap_set(2.0, ExponentRule::Quadratic, n));
    for (const char* s : {"punct:1", "ann:0.5", "disk:0,0,2", "half:1,0,0"}) {
        for (const std::size_t n : {16, 33, 60}) {
            const BoundarySample bs = boundary_sample(parse_domain(s), n);
            CompactSetSample e{{}, false, s};
            for (const SpherePoint& z : bs.points) {
                if (z.is_infinity()) {
                    e.contains_infinity = true;
                } else {
                    e.points.push_back(z.value());
                }
            }
            sets.push_back(e);
        }
    }
    Rng rng(derive_seed(kSeed, "ac8"));
    for (int k = 0; k < 200; ++k) {
        CompactSetSample e;
        const std::size_t n = 2 + rng.below(59);
        for (std::size_t i = 0; i < n; ++i) e.points.push_back(rng.disk_point(1.0 + 3.0 * rng.uniform()));
        sets.push_back(e);
    }
    std::size_t mismatches = 0;
    for (const CompactSetSample& e : sets) {
        if (up_constant_estimate(e).k_hat != test::brute_force_k(e)) ++mismatches;
    }
    return {mismatches == 0, fmt("sets=%zu mismatches=%zu", sets.size(), mismatches)};
}

std::string capture(const std::string& command) {
    std::string out;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
    if (!pipe) return out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
    return out;
}

Outcome ac9(const std::string& cli) {
    std::string a, b;
    if (cli.empty()) {
        const std::vector<CorpusMember> corpus = default_corpus(kSeed);
        a = reports_to_json(run_all(corpus, kSeed), kSeed, corpus);
        b = reports_to_json(run_all(corpus, kSeed), kSeed, corpus);
    } else {
        const std::string cmd = "'" + cli + "' verify --suite all --seed 42";
        a = capture(cmd);
        b = capture(cmd);
    }
    return {!a.empty() && a == b, fmt("%s bytes=%zu identical=%d", cli.empty() ? "in-process" : "cli", a.size(),
                                      a == b)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::vector<std::string> only;
    std::string cli;
    app.add_option("--only", only, "Run only these criteria (AC1..AC9)");
    app.add_option("--cli", cli, "Command-line binary used for the determinism check");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
        {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", [&] { return ac9(cli); }},
    };
    bool all = true;
    for (const auto& [name, run] : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::printf("%s %s  %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
