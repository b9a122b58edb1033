#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pvlcoe/cost_models.hpp"

namespace pvlcoe {

/// Which cost model a scenario evaluates.
///   eq1  - full life-cycle cost per kWh (loan, taxes, outlays, residual)
///   eq3  - zero-coupon-financed cost per kWh
///   lcic - module-replacement life-cycle investment cost (a currency amount)
enum class ModelKind { eq1, eq3, lcic };

/// Parameters that sweeps, elasticities and Monte Carlo sampling can vary.
/// `dr` is the risk-free curve level: setting it replaces the scenario's
/// curve with a flat one at the given rate (the model's discount rate then
/// follows from the financing mode). Setting `efficiency` or `insolation`
/// rescales initial_kwh proportionally.
enum class Parameter { lifetime_n, sdr, dr, spread, efficiency, insolation, pci };

std::string_view to_string(Parameter parameter);
std::optional<Parameter> parse_parameter(std::string_view name);

/// One-dimensional sweep request: evaluate the scenario at each grid value
/// of one parameter and report cost alongside cost relative to a
/// normalization point (the unmodified baseline when no point is given).
struct SweepSpec {
    Parameter parameter = Parameter::spread;
    std::vector<double> grid;
    std::vector<std::pair<Parameter, double>> normalization;

    static std::vector<double> make_grid(double start, double stop, double step);
};

enum class DistributionShape { normal, uniform, point };

/// Sampling distribution for one parameter. Samples are truncated to the
/// intersection of [trunc_lo, trunc_hi] with the parameter's own domain.
struct DistributionSpec {
    Parameter parameter = Parameter::dr;
    DistributionShape shape = DistributionShape::point;
    double mean = 0.0;   // normal
    double sd = 0.0;     // normal, >= 0
    double lo = 0.0;     // uniform
    double hi = 0.0;     // uniform
    double value = 0.0;  // point
    std::optional<double> trunc_lo;
    std::optional<double> trunc_hi;

    static DistributionSpec normal(Parameter p, double mean, double sd);
    static DistributionSpec uniform(Parameter p, double lo, double hi);
    static DistributionSpec point(Parameter p, double value);

    void validate() const;
};

/// A fully specified modeling case: plant, curve, financing and model
/// choice, with optional sweep and sampling blocks.
struct Scenario {
    std::string name;
    std::string description;
    ModelKind model = ModelKind::eq3;
    PlantSpec plant;
    YieldCurve curve = YieldCurve::parametric();
    FinancingTerms financing;
    double financed_fraction = 1.0;
    LoanShape loan_shape = LoanShape::level_payment;
    /// eq1 only; when unset it follows the discount mode (legacy discounting
    /// pairs with the discounted denominator, corrected with physical kWh).
    std::optional<DenominatorMode> denominator;
    std::optional<ModuleReplacementSpec> module_replacement;
    std::optional<SweepSpec> sweep;
    std::vector<DistributionSpec> distributions;

    DenominatorMode effective_denominator() const;
    void validate() const;
};

/// Cost value of the scenario: currency/kWh for eq1 and eq3, currency for
/// lcic.
double evaluate_scenario(const Scenario& scenario);

/// eq1/eq3 evaluation with the full numerator/denominator breakdown.
/// lcic scenarios have no per-kWh breakdown and are rejected here.
LcoeResult evaluate_scenario_result(const Scenario& scenario);

/// Current value of a sweepable parameter (for `dr`, the risk-free rate at
/// the scenario horizon).
double scenario_value(const Scenario& scenario, Parameter parameter);

/// Copy of the scenario with one parameter replaced; throws when the value
/// violates the parameter's domain.
Scenario with_parameter(Scenario scenario, Parameter parameter, double value);

}  // namespace pvlcoe
