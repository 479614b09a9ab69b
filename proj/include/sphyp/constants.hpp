#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "sphyp/domains.hpp"

namespace sphyp {

enum class ProductKind {
    DLambda,  // d * lambda, finite points only
    DeltaMu,  // delta * mu
    EpsMu,    // eps * mu
};

std::string_view product_name(ProductKind kind);
std::optional<ProductKind> parse_product(std::string_view name);

double pointwise_product(ProductKind kind, const Domain& domain, const SpherePoint& z);

struct SearchBudget {
    std::size_t grid = 256;
    int refine_iters = 200;
    double target_tol = 1e-10;
};

/// An upper bound for the infimum of a product over the domain.
/// value == pointwise_product(kind, domain, witness).
struct InfimumReport {
    ProductKind kind = ProductKind::DLambda;
    double value = 0.0;
    SpherePoint witness;
    std::size_t samples_evaluated = 0;
    /// Bracket half-width (radial search) or chart step (planar search) at termination.
    double refinement_radius = 0.0;
    /// Set for centered Euclidean disks, whose infima are known in closed form.
    bool closed_form_used = false;
    std::optional<double> closed_form_value;
};

/// Radial 1-D search for centered radially symmetric domains, else a sphere-uniform grid
/// followed by coordinate-wise golden refinement in isometry charts. Seeds join the
/// candidate set of the search.
InfimumReport infimum(ProductKind kind, const Domain& domain, const SearchBudget& budget = {},
                      std::span<const SpherePoint> seeds = {});

struct DomainConstants {
    InfimumReport c;       // inf d lambda
    InfimumReport ctilde;  // inf delta mu
    InfimumReport chat;    // inf eps mu
    double sigma_diam_complement = 0.0;
    double ctilde_prime = 0.0;
    double chat_prime = 0.0;
};

/// All five constants. Each search is re-evaluated at the other searches' witnesses.
DomainConstants compute_constants(const Domain& domain, const SearchBudget& budget = {},
                                  std::span<const SpherePoint> seeds = {});

struct NormalizedConstants {
    double ctilde_prime = 0.0;
    double chat_prime = 0.0;
};

NormalizedConstants normalized_constants(const Domain& domain, const SearchBudget& budget = {});

/// Closed forms for the disk |z| < R.
struct DiskConstants {
    double c;
    double ctilde;
    double chat;
    double sigma_diam_complement;
    double ctilde_prime;
    double chat_prime;
};

DiskConstants centered_disk_constants(double radius);

/// eps * mu for |z| < R at real 0 <= x < R.
double centered_disk_eps_mu(double radius, double x);

}  // namespace sphyp
