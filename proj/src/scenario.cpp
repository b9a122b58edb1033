#include "pvlcoe/scenario.hpp"

#include <cmath>
#include <utility>

namespace pvlcoe {

std::string_view to_string(Parameter parameter) {
    switch (parameter) {
    case Parameter::lifetime_n: return "lifetime_n";
    case Parameter::sdr: return "sdr";
    case Parameter::dr: return "dr";
    case Parameter::spread: return "spread";
    case Parameter::efficiency: return "efficiency";
    case Parameter::insolation: return "insolation";
    case Parameter::pci: return "pci";
    }
    return "?";
}

std::optional<Parameter> parse_parameter(std::string_view name) {
    for (Parameter p : {Parameter::lifetime_n, Parameter::sdr, Parameter::dr,
                        Parameter::spread, Parameter::efficiency, Parameter::insolation,
                        Parameter::pci}) {
        if (name == to_string(p)) return p;
    }
    return std::nullopt;
}

std::vector<double> SweepSpec::make_grid(double start, double stop, double step) {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
        throw ValidationError("sweep range must be finite");
    }
    if (!(step > 0.0)) throw ValidationError("sweep step must be > 0");
    if (stop < start) throw ValidationError("sweep stop must be >= start");
    if ((stop - start) / step > 1.0e6) {
        throw ValidationError("sweep grid would exceed 1,000,000 points");
    }
    std::vector<double> grid;
    // half-step slack so stop itself survives accumulated rounding
    for (double v = start; v <= stop + step * 0.5; v += step) grid.push_back(v);
    return grid;
}

DistributionSpec DistributionSpec::normal(Parameter p, double mean, double sd) {
    DistributionSpec spec;
    spec.parameter = p;
    spec.shape = DistributionShape::normal;
    spec.mean = mean;
    spec.sd = sd;
    return spec;
}

DistributionSpec DistributionSpec::uniform(Parameter p, double lo, double hi) {
    DistributionSpec spec;
    spec.parameter = p;
    spec.shape = DistributionShape::uniform;
    spec.lo = lo;
    spec.hi = hi;
    return spec;
}

DistributionSpec DistributionSpec::point(Parameter p, double value) {
    DistributionSpec spec;
    spec.parameter = p;
    spec.shape = DistributionShape::point;
    spec.value = value;
    return spec;
}

void DistributionSpec::validate() const {
    switch (shape) {
    case DistributionShape::normal:
        if (!std::isfinite(mean)) throw ValidationError("distribution mean must be finite");
        if (!(sd >= 0.0) || !std::isfinite(sd)) throw ValidationError("distribution sd must be >= 0");
        break;
    case DistributionShape::uniform:
        if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
            throw ValidationError("uniform distribution needs finite lo <= hi");
        }
        break;
    case DistributionShape::point:
        if (!std::isfinite(value)) throw ValidationError("point distribution value must be finite");
        break;
    }
    if (trunc_lo && trunc_hi && *trunc_lo > *trunc_hi) {
        throw ValidationError("truncation bounds must satisfy lo <= hi");
    }
}

DenominatorMode Scenario::effective_denominator() const {
    if (denominator) return *denominator;
    return financing.discount_mode == DiscountMode::legacy_equal_rates
               ? DenominatorMode::discounted_legacy
               : DenominatorMode::physical_corrected;
}

void Scenario::validate() const {
    financing.validate();
    if (!(financed_fraction >= 0.0 && financed_fraction <= 1.0)) {
        throw ValidationError("financed_fraction must lie in [0, 1]");
    }
    if (model == ModelKind::lcic) {
        if (!module_replacement) {
            throw ValidationError("lcic model requires a module_replacement block");
        }
        module_replacement->validate();
    } else {
        plant.validate();
    }
    for (const auto& d : distributions) d.validate();
}

namespace {

YearRates horizon_rates(const Scenario& scenario, int horizon) {
    return spot_rate_for_year(scenario.curve, scenario.financing, horizon, horizon);
}

}  // namespace

double evaluate_scenario(const Scenario& scenario) {
    scenario.validate();
    switch (scenario.model) {
    case ModelKind::eq1:
        return lcoe_eq1(scenario.plant, scenario.curve, scenario.financing,
                        scenario.effective_denominator(), scenario.financed_fraction,
                        scenario.loan_shape)
            .lcoe;
    case ModelKind::eq3: {
        const YearRates rates = horizon_rates(scenario, scenario.plant.lifetime_n);
        return lcoe_zero_coupon(scenario.plant.pci, rates.r, rates.dr,
                                scenario.plant.lifetime_n, scenario.plant.sdr,
                                scenario.plant.initial_kwh);
    }
    case ModelKind::lcic: {
        const YearRates rates = horizon_rates(scenario, scenario.module_replacement->horizon);
        return lcic(*scenario.module_replacement, rates.dr);
    }
    }
    throw ModelError("unknown model kind");
}

LcoeResult evaluate_scenario_result(const Scenario& scenario) {
    scenario.validate();
    switch (scenario.model) {
    case ModelKind::eq1:
        return lcoe_eq1(scenario.plant, scenario.curve, scenario.financing,
                        scenario.effective_denominator(), scenario.financed_fraction,
                        scenario.loan_shape);
    case ModelKind::eq3: {
        const int horizon = scenario.plant.lifetime_n;
        const YearRates rates = horizon_rates(scenario, horizon);
        const double power_ratio = std::pow(1.0 + rates.r, horizon) / std::pow(1.0 + rates.dr, horizon);
        const double repayment = scenario.plant.pci * power_ratio;
        const double output = scenario.plant.initial_kwh *
                              degraded_output_sum(scenario.plant.sdr, horizon, DegradationExponent::n);
        LcoeResult result;
        result.components = {0.0, 0.0, repayment, 0.0, 0.0};
        result.numerator = repayment;
        result.denominator_kwh = output;
        result.lcoe = result.numerator / result.denominator_kwh;
        result.denominator_mode = DenominatorMode::physical_corrected;
        result.discount_mode = scenario.financing.discount_mode;
        result.rate_mode = scenario.financing.rate_mode;
        result.loan_shape = LoanShape::balloon;
        result.financed_fraction = 1.0;
        return result;
    }
    case ModelKind::lcic:
        throw ModelError("lcic scenarios have no per-kWh breakdown");
    }
    throw ModelError("unknown model kind");
}

double scenario_value(const Scenario& scenario, Parameter parameter) {
    switch (parameter) {
    case Parameter::lifetime_n: return static_cast<double>(scenario.plant.lifetime_n);
    case Parameter::sdr: return scenario.plant.sdr;
    case Parameter::dr: {
        const int horizon = scenario.model == ModelKind::lcic && scenario.module_replacement
                                ? scenario.module_replacement->horizon
                                : scenario.plant.lifetime_n;
        return model_yield(scenario.curve, static_cast<double>(horizon));
    }
    case Parameter::spread: return scenario.financing.spread;
    case Parameter::efficiency: return scenario.plant.efficiency;
    case Parameter::insolation: return scenario.plant.insolation;
    case Parameter::pci: return scenario.plant.pci;
    }
    throw ModelError("unknown parameter");
}

Scenario with_parameter(Scenario scenario, Parameter parameter, double value) {
    if (!std::isfinite(value)) {
        throw ValidationError(std::string(to_string(parameter)) + " must be finite");
    }
    switch (parameter) {
    case Parameter::lifetime_n: {
        const double rounded = std::round(value);
        if (std::abs(value - rounded) > 1e-9 || rounded < 1.0) {
            throw ValidationError("lifetime_n must be an integer >= 1");
        }
        scenario.plant.lifetime_n = static_cast<int>(rounded);
        break;
    }
    case Parameter::sdr:
        if (!(value >= 0.0 && value < 1.0)) throw ValidationError("sdr must lie in [0, 1)");
        scenario.plant.sdr = value;
        break;
    case Parameter::dr:
        // replaces the curve: the parameter is the risk-free level itself
        scenario.curve = YieldCurve::flat(value);
        break;
    case Parameter::spread:
        if (!(value >= 0.0)) throw ValidationError("spread must be >= 0");
        scenario.financing.spread = value;
        break;
    case Parameter::efficiency: {
        if (!(value > 0.0 && value <= 1.0)) throw ValidationError("efficiency must lie in (0, 1]");
        const double scale = value / scenario.plant.efficiency;
        scenario.plant.efficiency = value;
        scenario.plant.initial_kwh *= scale;
        break;
    }
    case Parameter::insolation: {
        if (!(value > 0.0)) throw ValidationError("insolation must be > 0");
        const double scale = value / scenario.plant.insolation;
        scenario.plant.insolation = value;
        scenario.plant.initial_kwh *= scale;
        break;
    }
    case Parameter::pci:
        if (!(value > 0.0)) throw ValidationError("pci must be > 0");
        scenario.plant.pci = value;
        break;
    }
    return scenario;
}

}  // namespace pvlcoe
