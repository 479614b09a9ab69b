#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sphyp/constants.hpp"
#include "sphyp/domains.hpp"

namespace sphyp {

struct CorpusMember {
    std::string label;
    Domain domain;
    /// Trusted flag: the domain is a spherical cap of at most a hemisphere.
    bool spherically_convex = false;
};

CorpusMember make_member(const Domain& domain);

/// D_R for R in {0.3, 0.5, 1, 2, 5}, ext:1, ext:2, punct:1, ann:0.2, ann:0.5, and five
/// isometry images of these with seed-derived bases, angles and centers |a| <= 2.
std::vector<CorpusMember> default_corpus(std::uint64_t seed);

/// One domain per line; blank lines and '#' comments are skipped.
std::vector<CorpusMember> parse_corpus(std::string_view text);

struct CheckFailure {
    std::string domain;
    std::string point;  // point or constant name
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

struct SuiteReport {
    std::string suite;
    std::size_t checks = 0;
    std::vector<CheckFailure> failures;
    /// Smallest normalized margin (rhs - lhs)/max(1, |rhs|) over all checks; equalities count -|lhs - rhs|.
    double worst_margin = 0.0;
    double tolerance = 0.0;
    std::string worst_domain;
    double worst_lhs = 0.0;
    double worst_rhs = 0.0;
    /// Members the suite's precondition excludes.
    std::vector<std::string> inapplicable;
    /// Equality cases checked (spherical centers, hemispheres, the eps|z| = 1 case).
    std::size_t equality_cases = 0;

    bool passed() const { return failures.empty(); }
};

/// Suite names in run order.
const std::vector<std::string>& suite_names();

/// Tolerance used by a suite.
double suite_tolerance(std::string_view suite);

/// Constants for every member, computed once and shared by the main_* suites.
using ConstantsTable = std::vector<DomainConstants>;
ConstantsTable corpus_constants(const std::vector<CorpusMember>& corpus, const SearchBudget& budget = {});

SuiteReport run_suite(std::string_view name, const std::vector<CorpusMember>& corpus, std::uint64_t seed,
                      const ConstantsTable* constants = nullptr);

/// All suites, in parallel. Suites with no applicable member are reported, not thrown.
std::vector<SuiteReport> run_all(const std::vector<CorpusMember>& corpus, std::uint64_t seed);

/// Deterministic JSON document with sorted keys.
std::string reports_to_json(const std::vector<SuiteReport>& reports, std::uint64_t seed,
                            const std::vector<CorpusMember>& corpus);

}  // namespace sphyp
