#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pvlcoe/scenario.hpp"

namespace pvlcoe {

/// Central log-difference elasticity of the scenario cost with respect to
/// one parameter:
///
///     (cost(p*(1+h)) - cost(p*(1-h))) / (2h * cost(p))
///
/// Second-order accurate in h; rel_step defaults to 1e-4 and must lie in
/// (0, 0.1]. lifetime_n is integer-valued and cannot be perturbed this way.
double elasticity(const Scenario& scenario, Parameter parameter, double rel_step = 1e-4);

struct SweepRow {
    double value = 0.0;
    double cost = 0.0;
    double relative_cost = 0.0;
    bool ok = false;
    std::string error;  // set when ok == false; rows are flagged, never dropped
};

struct SweepResult {
    Parameter parameter;
    double normalization_cost = 0.0;
    std::vector<SweepRow> rows;
};

/// Evaluate the scenario across the sweep grid. The relative_cost column
/// divides by the cost at the normalization point (the baseline scenario
/// itself when the sweep names no point).
SweepResult sweep(const SweepSpec& spec, const Scenario& baseline);

struct NminResult {
    int n_min = 0;
    double cost = 0.0;
};

/// Exhaustive scan of the cost factor over lifetimes 1..n_max, reading the
/// risk-free rate off the curve at each horizon and borrowing at that rate
/// plus the spread. Ties resolve to the lowest lifetime.
NminResult find_nmin(const YieldCurve& curve, double spread, double sdr, int n_max);

/// The two discounting conventions compared by the Monte Carlo analysis:
/// legacy discounts everything (output included) at the borrowing rate,
/// corrected discounts cash at the risk-free rate and keeps output physical.
enum class McVariant { legacy, corrected };

enum class SensitivityMode { elasticity, rank_correlation };

struct SensitivityEntry {
    Parameter parameter;
    double value = 0.0;      // elasticity or Spearman rho per mode
    bool degenerate = false; // constant input samples; value reported as 0
};

struct SensitivityReport {
    SensitivityMode mode = SensitivityMode::rank_correlation;
    std::vector<SensitivityEntry> entries;
    int sample_count = 0;
    std::uint64_t seed = 0;
    std::string baseline;  // scenario name / variant echo
};

/// Elasticities of one scenario for a list of parameters, packaged as a
/// report.
SensitivityReport elasticity_report(const Scenario& scenario,
                                    const std::vector<Parameter>& parameters,
                                    double rel_step = 1e-4);

/// Seeded Monte Carlo: draws sample_count joint parameter vectors from the
/// given distributions, evaluates the scenario under the chosen discounting
/// variant, and reports the Spearman rank correlation of every sampled
/// parameter against the cost. Sampling and reduction are sequential and
/// deterministic: a fixed seed reproduces the report bit for bit.
SensitivityReport monte_carlo_rank_sensitivity(const std::vector<DistributionSpec>& distributions,
                                               const Scenario& scenario, McVariant variant,
                                               int sample_count, std::uint64_t seed);

/// Spearman rank correlation: Pearson correlation of average ranks.
/// Errors on length mismatch, fewer than two observations, or an
/// all-constant side.
double spearman_rho(std::span<const double> xs, std::span<const double> ys);

/// Documented default sampling set for the rank-correlation comparison:
/// normal distributions around the 30-year baseline (risk-free rate 3%,
/// spread 5%, degradation 0.6%/yr, efficiency 16%, insolation 1700),
/// truncated to each parameter's domain.
std::vector<DistributionSpec> default_mc_distributions();

}  // namespace pvlcoe
