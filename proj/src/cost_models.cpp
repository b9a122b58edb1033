#include "pvlcoe/cost_models.hpp"

#include <cmath>
#include <string>

namespace pvlcoe {

void PlantSpec::validate() const {
    if (!std::isfinite(pci) || !(pci > 0.0)) throw ValidationError("pci must be > 0");
    if (!std::isfinite(initial_kwh) || !(initial_kwh > 0.0)) {
        throw ValidationError("initial_kwh must be > 0");
    }
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        throw ValidationError("efficiency must lie in (0, 1]");
    }
    if (!std::isfinite(insolation) || !(insolation > 0.0)) {
        throw ValidationError("insolation must be > 0");
    }
    if (!(sdr >= 0.0 && sdr < 1.0)) throw ValidationError("sdr must lie in [0, 1)");
    if (lifetime_n < 1 || lifetime_n > 10000) {
        throw ValidationError("lifetime_n must lie in [1, 10000] years");
    }
    if (!std::isfinite(ao) || !(ao >= 0.0)) throw ValidationError("ao must be >= 0");
    if (!(tr >= 0.0 && tr < 1.0)) throw ValidationError("tr must lie in [0, 1)");
    if (!std::isfinite(rv) || !(rv >= 0.0)) throw ValidationError("rv must be >= 0");
}

void ModuleReplacementSpec::validate() const {
    if (!std::isfinite(c_bom) || !(c_bom > 0.0)) throw ValidationError("c_bom must be > 0");
    if (module_life < 1 || module_life > 10000) {
        throw ValidationError("module_life must lie in [1, 10000] years");
    }
    if (!(energy_fraction_remaining >= 0.0 && energy_fraction_remaining <= 1.0)) {
        throw ValidationError("energy_fraction_remaining must lie in [0, 1]");
    }
    if (horizon < 1 || horizon > 10000) {
        throw ValidationError("horizon must lie in [1, 10000] years");
    }
}

AmortizationSchedule amortization_schedule(double principal, double rate, int n_years) {
    if (!(principal > 0.0)) throw ValidationError("principal must be > 0");
    if (!(rate >= 0.0)) throw ValidationError("loan rate must be >= 0");
    if (n_years < 1) throw ValidationError("loan term must be >= 1 year");

    const double payment =
        rate == 0.0 ? principal / n_years
                    : principal * rate / (1.0 - std::pow(1.0 + rate, -n_years));

    AmortizationSchedule schedule{principal, rate, {}};
    schedule.years.reserve(static_cast<std::size_t>(n_years));
    double balance = principal;
    for (int year = 1; year <= n_years; ++year) {
        const double interest = rate * balance;
        const double repaid = payment - interest;
        balance -= repaid;
        schedule.years.push_back({year, payment, interest, repaid, balance});
    }
    return schedule;
}

AmortizationSchedule balloon_schedule(double principal, double rate, int n_years) {
    if (!(principal > 0.0)) throw ValidationError("principal must be > 0");
    if (!(rate >= 0.0)) throw ValidationError("loan rate must be >= 0");
    if (n_years < 1) throw ValidationError("loan term must be >= 1 year");

    AmortizationSchedule schedule{principal, rate, {}};
    schedule.years.reserve(static_cast<std::size_t>(n_years));
    double balance = principal;
    for (int year = 1; year <= n_years; ++year) {
        const double interest = rate * balance;
        if (year < n_years) {
            // interest capitalizes; nothing is paid until the balloon
            balance += interest;
            schedule.years.push_back({year, 0.0, interest, -interest, balance});
        } else {
            const double payment = balance + interest;
            schedule.years.push_back({year, payment, interest, balance, 0.0});
            balance = 0.0;
        }
    }
    return schedule;
}

DepreciationSchedule depreciation_schedule(double pci, double rv, int n_years) {
    if (!(pci >= 0.0) || !(rv >= 0.0)) throw ValidationError("pci and rv must be >= 0");
    if (rv > pci) throw ValidationError("rv must not exceed pci");
    if (n_years < 1) throw ValidationError("depreciation term must be >= 1 year");
    DepreciationSchedule schedule;
    schedule.dep.assign(static_cast<std::size_t>(n_years), (pci - rv) / n_years);
    return schedule;
}

double degraded_output_sum(double sdr, int n_years, DegradationExponent exponent) {
    if (!(sdr >= 0.0 && sdr < 1.0)) throw ModelError("sdr must lie in [0, 1)");
    if (n_years < 1) throw ModelError("n must be >= 1 year");
    const double survival = 1.0 - sdr;
    double factor = exponent == DegradationExponent::n ? survival : 1.0;
    double sum = 0.0;
    for (int k = 1; k <= n_years; ++k) {
        sum += factor;
        factor *= survival;
    }
    return sum;
}

LcoeResult lcoe_eq1(const PlantSpec& plant, const YieldCurve& curve,
                    const FinancingTerms& terms, DenominatorMode denominator,
                    double financed_fraction, LoanShape loan_shape) {
    plant.validate();
    terms.validate();
    if (!(financed_fraction >= 0.0 && financed_fraction <= 1.0)) {
        throw ValidationError("financed_fraction must lie in [0, 1]");
    }
    if (plant.rv > plant.pci) throw ValidationError("rv must not exceed pci");

    const int horizon = plant.lifetime_n;
    const double principal = plant.pci * financed_fraction;

    AmortizationSchedule loan;
    if (principal > 0.0) {
        const double loan_rate = spot_rate_for_year(curve, terms, horizon, horizon).r;
        loan = loan_shape == LoanShape::level_payment
                   ? amortization_schedule(principal, loan_rate, horizon)
                   : balloon_schedule(principal, loan_rate, horizon);
    }
    const DepreciationSchedule dep = depreciation_schedule(plant.pci, plant.rv, horizon);

    const double survival = 1.0 - plant.sdr;
    double degradation =
        plant.degradation_exponent == DegradationExponent::n ? survival : 1.0;

    double tax_shield = 0.0;
    double loan_payments = 0.0;
    double outlays = 0.0;
    double output_kwh = 0.0;
    for (int year = 1; year <= horizon; ++year) {
        const double dr = spot_rate_for_year(curve, terms, year, horizon).dr;
        const double df = discount_factor(dr, year);
        const double interest = principal > 0.0 ? loan.years[year - 1].interest : 0.0;
        const double payment = principal > 0.0 ? loan.years[year - 1].payment : 0.0;

        tax_shield -= (dep.dep[year - 1] + interest) * plant.tr * df;
        loan_payments += payment * df;
        outlays += plant.ao * (1.0 - plant.tr) * df;

        const double output_df = denominator == DenominatorMode::discounted_legacy ? df : 1.0;
        output_kwh += plant.initial_kwh * degradation * output_df;
        degradation *= survival;
    }

    const double dr_horizon = spot_rate_for_year(curve, terms, horizon, horizon).dr;
    const double residual_credit = -plant.rv * discount_factor(dr_horizon, horizon);
    const double capital = plant.pci * (1.0 - financed_fraction);

    if (!(output_kwh > 0.0)) throw ModelError("lifetime output underflowed to zero");

    LcoeResult result;
    result.components = {capital, tax_shield, loan_payments, outlays, residual_credit};
    result.numerator = capital + tax_shield + loan_payments + outlays + residual_credit;
    result.denominator_kwh = output_kwh;
    result.lcoe = result.numerator / result.denominator_kwh;
    result.denominator_mode = denominator;
    result.discount_mode = terms.discount_mode;
    result.rate_mode = terms.rate_mode;
    result.loan_shape = loan_shape;
    result.financed_fraction = financed_fraction;
    return result;
}

double cost_factor(double r, double dr, int n_years, double sdr) {
    if (!(r > -1.0) || !(dr > -1.0)) throw ModelError("rates must exceed -100%");
    if (n_years < 1) throw ModelError("n must be >= 1 year");
    // Taking the power ratio first keeps r == dr collapsing to exactly 1.
    const double power_ratio = std::pow(1.0 + r, n_years) / std::pow(1.0 + dr, n_years);
    return power_ratio / degraded_output_sum(sdr, n_years, DegradationExponent::n);
}

double lcoe_zero_coupon(double pci, double r, double dr, int n_years, double sdr,
                        double initial_kwh) {
    if (!(pci > 0.0)) throw ValidationError("pci must be > 0");
    if (!(initial_kwh > 0.0)) throw ValidationError("initial_kwh must be > 0");
    if (!(r > -1.0) || !(dr > -1.0)) throw ModelError("rates must exceed -100%");
    if (n_years < 1) throw ModelError("n must be >= 1 year");
    const double power_ratio = std::pow(1.0 + r, n_years) / std::pow(1.0 + dr, n_years);
    const double output = initial_kwh * degraded_output_sum(sdr, n_years, DegradationExponent::n);
    return pci * power_ratio / output;
}

double lcic(const ModuleReplacementSpec& spec, double dr) {
    spec.validate();
    if (!(dr > -1.0)) throw ModelError("discount rate must exceed -100%");
    const int purchases = spec.horizon / spec.module_life;  // int() of N/L
    double total = 0.0;
    for (int k = 0; k <= purchases; ++k) {
        total += spec.c_bom * discount_factor(dr, static_cast<double>(k) * spec.module_life);
    }
    total -= spec.c_bom * spec.energy_fraction_remaining * discount_factor(dr, spec.horizon);
    return total;
}

}  // namespace pvlcoe
