#include "pvlcoe/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <utility>

namespace pvlcoe {

double elasticity(const Scenario& scenario, Parameter parameter, double rel_step) {
    if (!(rel_step > 0.0 && rel_step <= 0.1)) {
        throw ValidationError("rel_step must lie in (0, 0.1]");
    }
    if (parameter == Parameter::lifetime_n) {
        throw ValidationError("lifetime_n is integer-valued and cannot be perturbed relatively");
    }
    const double base_value = scenario_value(scenario, parameter);
    if (!(base_value > 0.0)) {
        throw ModelError(std::string(to_string(parameter)) +
                         " must be positive for a relative perturbation");
    }
    const double base_cost = evaluate_scenario(scenario);
    if (base_cost == 0.0) throw ModelError("cost is zero at the baseline");

    const double up = evaluate_scenario(with_parameter(scenario, parameter, base_value * (1.0 + rel_step)));
    const double down = evaluate_scenario(with_parameter(scenario, parameter, base_value * (1.0 - rel_step)));
    return (up - down) / (2.0 * rel_step * base_cost);
}

SweepResult sweep(const SweepSpec& spec, const Scenario& baseline) {
    if (spec.grid.empty()) throw ValidationError("sweep grid must be non-empty");

    Scenario normalization_scenario = baseline;
    for (const auto& [parameter, value] : spec.normalization) {
        normalization_scenario = with_parameter(std::move(normalization_scenario), parameter, value);
    }
    double normalization_cost = 0.0;
    try {
        normalization_cost = evaluate_scenario(normalization_scenario);
    } catch (const std::exception& e) {
        throw ModelError(std::string("normalization-point evaluation failed: ") + e.what());
    }
    if (normalization_cost == 0.0) {
        throw ModelError("normalization-point cost is zero");
    }

    SweepResult result{spec.parameter, normalization_cost, {}};
    result.rows.reserve(spec.grid.size());
    for (double value : spec.grid) {
        SweepRow row;
        row.value = value;
        try {
            row.cost = evaluate_scenario(with_parameter(baseline, spec.parameter, value));
            row.relative_cost = row.cost / normalization_cost;
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

NminResult find_nmin(const YieldCurve& curve, double spread, double sdr, int n_max) {
    if (n_max < 2) throw ValidationError("n_max must be >= 2");
    if (!(spread >= 0.0)) throw ValidationError("spread must be >= 0");
    NminResult best{0, std::numeric_limits<double>::infinity()};
    for (int n = 1; n <= n_max; ++n) {
        const double riskfree = model_yield(curve, static_cast<double>(n));
        const double cost = cost_factor(riskfree + spread, riskfree, n, sdr);
        if (cost < best.cost) best = {n, cost};  // strict <: ties keep the lowest n
    }
    return best;
}

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

bool all_equal(std::span<const double> values) {
    for (double v : values) {
        if (v != values.front()) return false;
    }
    return true;
}

/// Deterministic, engine-only sampling: converts raw mt19937_64 output to
/// doubles directly so results do not depend on the standard library's
/// distribution implementations.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal(double mean, double sd) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return mean + sd * std::sqrt(-2.0 * std::log(u1)) *
                          std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

struct Bounds {
    double lo;
    double hi;
};

Bounds parameter_domain(Parameter parameter) {
    switch (parameter) {
    case Parameter::lifetime_n: return {1.0, 1000.0};
    case Parameter::sdr: return {0.0, 0.999};
    case Parameter::dr: return {0.0, 1.0};
    case Parameter::spread: return {0.0, 1.0};
    case Parameter::efficiency: return {1e-9, 1.0};
    case Parameter::insolation: return {1e-9, std::numeric_limits<double>::max()};
    case Parameter::pci: return {1e-9, std::numeric_limits<double>::max()};
    }
    throw ModelError("unknown parameter");
}

Bounds effective_bounds(const DistributionSpec& spec) {
    Bounds bounds = parameter_domain(spec.parameter);
    if (spec.trunc_lo) bounds.lo = std::max(bounds.lo, *spec.trunc_lo);
    if (spec.trunc_hi) bounds.hi = std::min(bounds.hi, *spec.trunc_hi);
    if (bounds.lo > bounds.hi) {
        throw ValidationError(std::string(to_string(spec.parameter)) +
                              ": truncation bounds exclude the parameter's domain");
    }
    return bounds;
}

double draw_sample(SampleRng& rng, const DistributionSpec& spec, const Bounds& bounds) {
    double sample = 0.0;
    switch (spec.shape) {
    case DistributionShape::point:
        sample = spec.value;
        if (sample < bounds.lo || sample > bounds.hi) {
            throw ValidationError(std::string(to_string(spec.parameter)) +
                                  ": point value outside the truncated domain");
        }
        break;
    case DistributionShape::uniform: {
        const double lo = std::max(spec.lo, bounds.lo);
        const double hi = std::min(spec.hi, bounds.hi);
        if (lo > hi) {
            throw ValidationError(std::string(to_string(spec.parameter)) +
                                  ": uniform range outside the truncated domain");
        }
        sample = rng.uniform(lo, hi);
        break;
    }
    case DistributionShape::normal: {
        bool accepted = false;
        for (int attempt = 0; attempt < 10000; ++attempt) {
            sample = rng.normal(spec.mean, spec.sd);
            if (sample >= bounds.lo && sample <= bounds.hi) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            throw ModelError(std::string(to_string(spec.parameter)) +
                             ": truncated normal rejected 10000 consecutive draws");
        }
        break;
    }
    }
    if (spec.parameter == Parameter::lifetime_n) {
        sample = std::clamp(std::round(sample), bounds.lo, bounds.hi);
    }
    return sample;
}

}  // namespace

SensitivityReport elasticity_report(const Scenario& scenario,
                                    const std::vector<Parameter>& parameters,
                                    double rel_step) {
    SensitivityReport report;
    report.mode = SensitivityMode::elasticity;
    report.sample_count = 0;
    report.seed = 0;
    report.baseline = scenario.name;
    for (Parameter p : parameters) {
        report.entries.push_back({p, elasticity(scenario, p, rel_step), false});
    }
    return report;
}

SensitivityReport monte_carlo_rank_sensitivity(const std::vector<DistributionSpec>& distributions,
                                               const Scenario& scenario, McVariant variant,
                                               int sample_count, std::uint64_t seed) {
    if (sample_count < 100) throw ValidationError("sample_count must be >= 100");
    if (distributions.empty()) throw ValidationError("at least one distribution is required");

    std::vector<Bounds> bounds;
    bounds.reserve(distributions.size());
    for (const auto& d : distributions) {
        d.validate();
        bounds.push_back(effective_bounds(d));
    }

    Scenario variant_template = scenario;
    if (variant == McVariant::legacy) {
        variant_template.financing.discount_mode = DiscountMode::legacy_equal_rates;
        variant_template.denominator = DenominatorMode::discounted_legacy;
    } else {
        variant_template.financing.discount_mode = DiscountMode::corrected_riskfree;
        variant_template.denominator = DenominatorMode::physical_corrected;
    }

    SampleRng rng(seed);
    std::vector<std::vector<double>> samples(distributions.size());
    for (auto& column : samples) column.reserve(static_cast<std::size_t>(sample_count));
    std::vector<double> costs;
    costs.reserve(static_cast<std::size_t>(sample_count));

    for (int i = 0; i < sample_count; ++i) {
        Scenario sample_scenario = variant_template;
        for (std::size_t j = 0; j < distributions.size(); ++j) {
            const double value = draw_sample(rng, distributions[j], bounds[j]);
            samples[j].push_back(value);
            sample_scenario = with_parameter(std::move(sample_scenario),
                                             distributions[j].parameter, value);
        }
        try {
            costs.push_back(evaluate_scenario(sample_scenario));
        } catch (const std::exception& e) {
            throw ModelError("sample " + std::to_string(i) + " failed to evaluate: " + e.what());
        }
    }

    if (all_equal(costs)) {
        throw ModelError("cost output is constant across all samples");
    }

    SensitivityReport report;
    report.mode = SensitivityMode::rank_correlation;
    report.sample_count = sample_count;
    report.seed = seed;
    report.baseline = scenario.name + (variant == McVariant::legacy ? " [legacy]" : " [corrected]");
    for (std::size_t j = 0; j < distributions.size(); ++j) {
        SensitivityEntry entry{distributions[j].parameter, 0.0, false};
        if (all_equal(samples[j])) {
            entry.degenerate = true;
        } else {
            entry.value = spearman_rho(samples[j], costs);
        }
        report.entries.push_back(entry);
    }
    return report;
}

double spearman_rho(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw ValidationError("spearman_rho: length mismatch");
    if (xs.size() < 2) throw ValidationError("spearman_rho: need at least two observations");
    if (all_equal(xs) || all_equal(ys)) {
        throw ValidationError("spearman_rho: constant input has no ranks to correlate");
    }
    const std::vector<double> rx = average_ranks(xs);
    const std::vector<double> ry = average_ranks(ys);
    const double n = static_cast<double>(xs.size());
    const double mean = (n + 1.0) / 2.0;  // ranks always average to (n+1)/2
    double covariance = 0.0, variance_x = 0.0, variance_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        covariance += dx * dy;
        variance_x += dx * dx;
        variance_y += dy * dy;
    }
    return covariance / std::sqrt(variance_x * variance_y);
}

std::vector<DistributionSpec> default_mc_distributions() {
    std::vector<DistributionSpec> defaults;
    auto add = [&](DistributionSpec spec, double lo, double hi) {
        spec.trunc_lo = lo;
        spec.trunc_hi = hi;
        defaults.push_back(spec);
    };
    // Widths chosen so the two conventions disagree the way the published
    // rank sensitivities do: the rate level has to carry several times the
    // relative width of the device parameters for the legacy convention to
    // rank it first.
    add(DistributionSpec::normal(Parameter::dr, 0.03, 0.02), 0.001, 0.10);
    add(DistributionSpec::normal(Parameter::spread, 0.05, 0.01), 0.0, 0.15);
    add(DistributionSpec::normal(Parameter::sdr, 0.006, 0.002), 0.0, 0.05);
    add(DistributionSpec::normal(Parameter::efficiency, 0.16, 0.016), 0.01, 1.0);
    add(DistributionSpec::normal(Parameter::insolation, 1700.0, 170.0), 100.0, 3000.0);
    return defaults;
}

}  // namespace pvlcoe
