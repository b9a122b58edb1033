// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Each criterion pins its thresholds here, in code; the brute-force oracles
// live in oracles.hpp and stay independent of the library paths they check.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pvlcoe/scenario_io.hpp"
#include "pvlcoe/sensitivity.hpp"

#ifndef PVLCOE_SCENARIO_DIR
#define PVLCOE_SCENARIO_DIR "scenarios"
#endif

using namespace pvlcoe;

namespace {

int failures = 0;

void criterion(int number, const std::string& title,
               const std::function<std::pair<bool, std::string>()>& body) {
    bool passed = false;
    std::string detail;
    try {
        const auto [ok, text] = body();
        passed = ok;
        detail = text;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %2d: %s   (%s)\n", passed ? "PASS" : "FAIL", number, title.c_str(),
                detail.c_str());
    if (!passed) ++failures;
}

std::string fmt(double value) {
    std::ostringstream out;
    out.precision(6);
    out << value;
    return out.str();
}

Scenario eq3_baseline() {
    Scenario scenario;
    scenario.name = "acceptance-eq3";
    scenario.model = ModelKind::eq3;
    scenario.plant.pci = 1.0;
    scenario.plant.initial_kwh = 1.0;
    scenario.plant.sdr = 0.006;
    scenario.plant.lifetime_n = 30;
    scenario.plant.degradation_exponent = DegradationExponent::n;
    scenario.curve = YieldCurve::flat(0.03);
    scenario.financing.spread = 0.05;
    return scenario;
}

double rho_of(const SensitivityReport& report, Parameter parameter) {
    for (const auto& entry : report.entries) {
        if (entry.parameter == parameter) return entry.value;
    }
    return 0.0;
}

}  // namespace

int main() {
    criterion(1, "SDR 0.6% -> 5.6% doubles the 30y cost factor", [] {
        const double ratio =
            cost_factor(0.08, 0.03, 30, 0.056) / cost_factor(0.08, 0.03, 30, 0.006);
        return std::pair{ratio >= 1.9 && ratio <= 2.1, "ratio = " + fmt(ratio)};
    });

    criterion(2, "output after 30y at SDR 5.6% is about 18% of year one", [] {
        // kernel read off the degradation sum: S(30) - S(29) = (1-sdr)^30
        const double residual = degraded_output_sum(0.056, 30, DegradationExponent::n) -
                                degraded_output_sum(0.056, 29, DegradationExponent::n);
        return std::pair{residual >= 0.17 && residual <= 0.19, "(1-sdr)^30 = " + fmt(residual)};
    });

    criterion(3, "near risk-free borrowing cuts the cost about four-fold", [] {
        const double ratio = cost_factor(0.08, 0.03, 30, 0.006) / cost_factor(0.03, 0.03, 30, 0.006);
        return std::pair{ratio >= 3.9 && ratio <= 4.4, "spread5/spread0 = " + fmt(ratio)};
    });

    criterion(4, "raising the spread from 5% to 7.5% doubles the cost", [] {
        const double ratio =
            cost_factor(0.105, 0.03, 30, 0.006) / cost_factor(0.08, 0.03, 30, 0.006);
        return std::pair{ratio >= 1.9 && ratio <= 2.1, "ratio = " + fmt(ratio)};
    });

    criterion(5, "model treasury curve yields about 3% at 30 years", [] {
        const double yield = model_yield(YieldCurve::parametric(), 30.0);
        return std::pair{yield >= 0.029 && yield <= 0.032, "yield(30) = " + fmt(yield)};
    });

    criterion(6, "cost factor bottoms at an interior lifetime that shrinks with the spread", [] {
        const auto curve = YieldCurve::parametric();
        const auto at5 = find_nmin(curve, 0.05, 0.006, 60);
        const auto at8 = find_nmin(curve, 0.08, 0.006, 60);
        bool ok = at5.n_min > 1 && at5.n_min < 60 && at8.n_min > 1 && at8.n_min < 60;
        ok = ok && at8.n_min < at5.n_min;
        ok = ok && at5.n_min >= 18 && at5.n_min <= 22;
        ok = ok && at8.n_min >= 11 && at8.n_min <= 15;
        // exact agreement with the brute-force oracle
        for (const auto& [spread, result] : {std::pair{0.05, at5}, std::pair{0.08, at8}}) {
            int best_n = 0;
            double best_cost = 1e300;
            for (int n = 1; n <= 60; ++n) {
                const double dr = model_yield(curve, n);
                const double cost = oracle::cost_factor(dr + spread, dr, n, 0.006);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_n = n;
                }
            }
            ok = ok && best_n == result.n_min;
        }
        return std::pair{ok, "n_min(5%) = " + std::to_string(at5.n_min) +
                                 ", n_min(8%) = " + std::to_string(at8.n_min)};
    });

    criterion(7, "unit elasticities: efficiency and insolation -1, PCI +1", [] {
        const Scenario scenario = eq3_baseline();
        const double e_eff = elasticity(scenario, Parameter::efficiency);
        const double e_ins = elasticity(scenario, Parameter::insolation);
        const double e_pci = elasticity(scenario, Parameter::pci);
        const bool ok = std::abs(e_eff + 1.0) <= 1e-6 && std::abs(e_ins + 1.0) <= 1e-6 &&
                        std::abs(e_pci - 1.0) <= 1e-6;
        return std::pair{ok, "eff = " + fmt(e_eff) + ", insol = " + fmt(e_ins) +
                                 ", pci = " + fmt(e_pci)};
    });

    criterion(8, "at a fixed spread the cost falls as the discount rate rises", [] {
        const double at1 = cost_factor(0.06, 0.01, 30, 0.006);
        const double at3 = cost_factor(0.08, 0.03, 30, 0.006);
        const double at5 = cost_factor(0.10, 0.05, 30, 0.006);
        return std::pair{at1 > at3 && at3 > at5,
                         fmt(at1) + " > " + fmt(at3) + " > " + fmt(at5)};
    });

    criterion(9, "equal-rates discounting makes the cost rate-blind", [] {
        Scenario scenario = eq3_baseline();
        scenario.financing.discount_mode = DiscountMode::legacy_equal_rates;
        // exact invariance under the common rate
        std::mt19937 rng(13);
        std::uniform_real_distribution<double> rate(0.0, 0.15);
        const double reference = evaluate_scenario(with_parameter(scenario, Parameter::dr, 0.03));
        bool exact = true;
        for (int i = 0; i < 10; ++i) {
            exact = exact &&
                    evaluate_scenario(with_parameter(scenario, Parameter::dr, rate(rng))) ==
                        reference;
        }
        // and the rank correlation cannot see the rate either
        std::vector<DistributionSpec> distributions{
            DistributionSpec::uniform(Parameter::spread, 0.0, 0.10),
            DistributionSpec::normal(Parameter::efficiency, 0.16, 0.016),
        };
        const auto report = monte_carlo_rank_sensitivity(distributions, scenario,
                                                         McVariant::legacy, 10000, 424242);
        const double rho = rho_of(report, Parameter::spread);
        return std::pair{exact && std::abs(rho) < 0.05,
                         std::string("exact = ") + (exact ? "yes" : "no") +
                             ", |rho(rate)| = " + fmt(std::abs(rho))};
    });

    criterion(10, "discounting the output kWh overstates the cost", [] {
        std::mt19937 rng(1001);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        bool ok = true;
        for (int trial = 0; trial < 50 && ok; ++trial) {
            PlantSpec plant;
            plant.pci = 1000.0 + 2e6 * unit(rng);
            plant.initial_kwh = 100.0 + 1e6 * unit(rng);
            plant.sdr = 0.1 * unit(rng);
            plant.lifetime_n = 1 + static_cast<int>(40 * unit(rng));
            plant.ao = 1e4 * unit(rng);
            plant.tr = 0.4 * unit(rng);
            plant.rv = 0.3 * plant.pci * unit(rng);
            FinancingTerms terms;
            terms.spread = 0.1 * unit(rng);
            terms.discount_mode = unit(rng) < 0.5 ? DiscountMode::legacy_equal_rates
                                                  : DiscountMode::corrected_riskfree;
            const double riskfree = trial == 0 ? 0.0 : 0.08 * unit(rng);
            const auto curve = YieldCurve::flat(riskfree);
            const double financed = unit(rng);
            const double discounted =
                lcoe_eq1(plant, curve, terms, DenominatorMode::discounted_legacy, financed).lcoe;
            const double physical =
                lcoe_eq1(plant, curve, terms, DenominatorMode::physical_corrected, financed).lcoe;
            const double dr = spot_rate_for_year(curve, terms, 1, plant.lifetime_n).dr;
            ok = dr > 0.0 ? discounted > physical : discounted >= physical;
        }
        return std::pair{ok, ok ? "50 scenarios, discounted >= physical, strict when DR > 0"
                                : "violated"};
    });

    criterion(11, "rank ordering flips between the discounting conventions", [] {
        const Scenario scenario =
            load_scenario_file(std::string(PVLCOE_SCENARIO_DIR) + "/darling_mc.json");
        bool ok = true;
        std::string detail;
        for (std::uint64_t seed : {1ULL, 2ULL}) {
            const auto legacy = monte_carlo_rank_sensitivity(scenario.distributions, scenario,
                                                             McVariant::legacy, 10000, seed);
            const auto corrected = monte_carlo_rank_sensitivity(scenario.distributions, scenario,
                                                                McVariant::corrected, 10000, seed);
            const double l_dr = std::abs(rho_of(legacy, Parameter::dr));
            const double l_eff = std::abs(rho_of(legacy, Parameter::efficiency));
            const double c_dr = std::abs(rho_of(corrected, Parameter::dr));
            const double c_eff = std::abs(rho_of(corrected, Parameter::efficiency));
            ok = ok && l_dr > l_eff && c_eff >= c_dr;
            if (seed == 1) {
                detail = "legacy |rho|: dr " + fmt(l_dr) + " vs eff " + fmt(l_eff) +
                         "; corrected: eff " + fmt(c_eff) + " vs dr " + fmt(c_dr);
            }
        }
        return std::pair{ok, detail + " (both seeds)"};
    });

    criterion(12, "kernels match brute-force oracles to 1e-12 relative", [] {
        std::mt19937 rng(90210);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double worst = 0.0;
        auto relative = [](double a, double b) {
            const double scale = std::max(std::abs(a), std::abs(b));
            return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
        };
        for (int trial = 0; trial < 100; ++trial) {
            const double sdr = 0.95 * unit(rng);
            const int n = 1 + static_cast<int>(59 * unit(rng));
            worst = std::max(worst, relative(degraded_output_sum(sdr, n, DegradationExponent::n),
                                             oracle::degraded_sum(sdr, n, true)));

            const double dr = 0.25 * unit(rng);
            const double r = dr + 0.25 * unit(rng);
            worst = std::max(worst, relative(cost_factor(r, dr, n, sdr),
                                             oracle::cost_factor(r, dr, n, sdr)));

            ModuleReplacementSpec spec;
            spec.c_bom = 1.0 + 500.0 * unit(rng);
            spec.module_life = 1 + static_cast<int>(39 * unit(rng));
            spec.energy_fraction_remaining = unit(rng);
            spec.horizon = 1 + static_cast<int>(59 * unit(rng));
            worst = std::max(worst, relative(lcic(spec, dr),
                                             oracle::lcic(spec.c_bom, spec.horizon,
                                                          spec.module_life, dr,
                                                          spec.energy_fraction_remaining)));
        }
        return std::pair{worst <= 1e-12, "worst relative deviation = " + fmt(worst)};
    });

    criterion(13, "balloon-financed full model equals the zero-coupon form to 1e-9", [] {
        std::mt19937 rng(31415);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            PlantSpec plant;
            plant.pci = 0.5 + 5e6 * unit(rng);
            plant.initial_kwh = 1.0 + 1e6 * unit(rng);
            plant.sdr = 0.1 * unit(rng);
            plant.lifetime_n = 1 + static_cast<int>(40 * unit(rng));
            plant.degradation_exponent = DegradationExponent::n;
            FinancingTerms terms;
            terms.spread = 0.08 * unit(rng);
            const double riskfree = 0.08 * unit(rng);
            const double via_eq1 =
                lcoe_eq1(plant, YieldCurve::flat(riskfree), terms,
                         DenominatorMode::physical_corrected, 1.0, LoanShape::balloon)
                    .lcoe;
            const double direct = lcoe_zero_coupon(plant.pci, riskfree + terms.spread, riskfree,
                                                   plant.lifetime_n, plant.sdr, plant.initial_kwh);
            worst = std::max(worst, std::abs(via_eq1 - direct) / direct);
        }
        return std::pair{worst <= 1e-9, "worst relative deviation = " + fmt(worst)};
    });

    if (failures == 0) {
        std::printf("all 13 acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", failures);
    }
    return failures;
}
