#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pvlcoe/cost_models.hpp"

using namespace pvlcoe;

namespace {

PlantSpec bare_plant(double pci, double kwh, double sdr, int n) {
    PlantSpec plant;
    plant.pci = pci;
    plant.initial_kwh = kwh;
    plant.sdr = sdr;
    plant.lifetime_n = n;
    return plant;
}

}  // namespace

TEST_CASE("zero-rate annuity splits the principal evenly") {
    const auto schedule = amortization_schedule(1000.0, 0.0, 4);
    REQUIRE(schedule.years.size() == 4);
    for (const auto& year : schedule.years) {
        CHECK(year.payment == 250.0);
        CHECK(year.interest == 0.0);
    }
    CHECK(schedule.years.back().balance == 0.0);
}

TEST_CASE("one-period loan") {
    const auto schedule = amortization_schedule(1.0, 0.05, 1);
    CHECK(schedule.years[0].payment == doctest::Approx(1.05).epsilon(1e-15));
    CHECK(schedule.years[0].interest == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(std::abs(schedule.years[0].balance) < 1e-12);
}

TEST_CASE("30-year 8% level payment") {
    const auto schedule = amortization_schedule(1000.0, 0.08, 30);
    const double payment = schedule.years[0].payment;
    CHECK(payment == doctest::Approx(88.82743338727227).epsilon(1e-12));
    // the level payment is exactly the one that retires the balance
    CHECK(std::abs(oracle::remaining_balance(1000.0, 0.08, payment, 30)) < 1e-9);
}

TEST_CASE("amortization schedules satisfy their accounting invariants") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> principal_dist(1.0, 2e6);
    std::uniform_real_distribution<double> rate_dist(0.0, 0.2);
    std::uniform_int_distribution<int> term_dist(1, 60);
    for (int trial = 0; trial < 50; ++trial) {
        const double principal = principal_dist(rng);
        const double rate = rate_dist(rng);
        const int term = term_dist(rng);
        for (const bool balloon : {false, true}) {
            const auto schedule = balloon ? balloon_schedule(principal, rate, term)
                                          : amortization_schedule(principal, rate, term);
            double balance = principal;
            double repaid_total = 0.0;
            for (const auto& year : schedule.years) {
                CHECK(year.interest == doctest::Approx(rate * balance).epsilon(1e-12));
                CHECK(year.payment ==
                      doctest::Approx(year.interest + year.principal_repaid).epsilon(1e-9));
                balance -= year.principal_repaid;
                repaid_total += year.principal_repaid;
            }
            CHECK(std::abs(schedule.years.back().balance) < 1e-6 * std::max(1.0, principal));
            CHECK(repaid_total == doctest::Approx(principal).epsilon(1e-9));
        }
    }
}

TEST_CASE("balloon schedule pays nothing until the final repayment") {
    const auto schedule = balloon_schedule(100.0, 0.07, 10);
    for (int year = 0; year < 9; ++year) {
        CHECK(schedule.years[year].payment == 0.0);
    }
    CHECK(schedule.years[9].payment ==
          doctest::Approx(100.0 * std::pow(1.07, 10)).epsilon(1e-12));
}

TEST_CASE("loan constructors validate inputs") {
    CHECK_THROWS_AS(amortization_schedule(0.0, 0.05, 10), ValidationError);
    CHECK_THROWS_AS(amortization_schedule(-5.0, 0.05, 10), ValidationError);
    CHECK_THROWS_AS(amortization_schedule(100.0, 0.05, 0), ValidationError);
    CHECK_THROWS_AS(balloon_schedule(100.0, -0.05, 10), ValidationError);
}

TEST_CASE("straight-line depreciation") {
    CHECK(depreciation_schedule(100.0, 0.0, 10).dep[0] == 10.0);
    CHECK(depreciation_schedule(100.0, 100.0, 5).dep[2] == 0.0);
    CHECK(depreciation_schedule(120.0, 20.0, 25).dep[7] == 4.0);
    const auto schedule = depreciation_schedule(137.5, 12.25, 17);
    double total = 0.0;
    for (double d : schedule.dep) total += d;
    CHECK(total == doctest::Approx(137.5 - 12.25).epsilon(1e-12));
    CHECK_THROWS_AS(depreciation_schedule(100.0, 120.0, 10), ValidationError);
}

TEST_CASE("degraded_output_sum examples") {
    CHECK(degraded_output_sum(0.0, 30, DegradationExponent::n) == 30.0);
    CHECK(degraded_output_sum(0.0, 30, DegradationExponent::n_minus_one) == 30.0);
    CHECK(degraded_output_sum(0.006, 30, DegradationExponent::n) ==
          doctest::Approx(27.36523815984548).epsilon(1e-12));
    CHECK(degraded_output_sum(0.056, 30, DegradationExponent::n) ==
          doctest::Approx(13.865265436276308).epsilon(1e-12));
    const double ratio = degraded_output_sum(0.006, 30, DegradationExponent::n) /
                         degraded_output_sum(0.056, 30, DegradationExponent::n);
    CHECK(ratio == doctest::Approx(1.97365).epsilon(1e-4));
    CHECK_THROWS_AS(degraded_output_sum(1.0, 30, DegradationExponent::n), ModelError);
    CHECK_THROWS_AS(degraded_output_sum(-0.1, 30, DegradationExponent::n), ModelError);
    CHECK_THROWS_AS(degraded_output_sum(0.01, 0, DegradationExponent::n), ModelError);
}

TEST_CASE("degraded_output_sum matches the literal loop oracle") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> sdr_dist(0.0, 0.95);
    std::uniform_int_distribution<int> n_dist(1, 60);
    for (int trial = 0; trial < 100; ++trial) {
        const double sdr = sdr_dist(rng);
        const int n = n_dist(rng);
        CHECK(degraded_output_sum(sdr, n, DegradationExponent::n) ==
              doctest::Approx(oracle::degraded_sum(sdr, n, true)).epsilon(1e-12));
        CHECK(degraded_output_sum(sdr, n, DegradationExponent::n_minus_one) ==
              doctest::Approx(oracle::degraded_sum(sdr, n, false)).epsilon(1e-12));
    }
}

TEST_CASE("cost_factor collapses to 1 for a riskless one-year plant") {
    CHECK(cost_factor(0.03, 0.03, 1, 0.0) == 1.0);
}

TEST_CASE("cost_factor baseline and spread doubling") {
    const double base = cost_factor(0.08, 0.03, 30, 0.006);
    CHECK(base == doctest::Approx(0.15149443902640572).epsilon(1e-12));
    CHECK(base == doctest::Approx(oracle::cost_factor(0.08, 0.03, 30, 0.006)).epsilon(1e-12));
    const double wide = cost_factor(0.105, 0.03, 30, 0.006);
    CHECK(wide == doctest::Approx(0.30099020815915983).epsilon(1e-12));
    CHECK(wide / base == doctest::Approx(1.9868069751834043).epsilon(1e-12));
}

TEST_CASE("cost_factor matches the loop oracle on random inputs") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> rate_dist(0.0, 0.25);
    std::uniform_real_distribution<double> sdr_dist(0.0, 0.5);
    std::uniform_int_distribution<int> n_dist(1, 60);
    for (int trial = 0; trial < 100; ++trial) {
        const double dr = rate_dist(rng);
        const double r = dr + rate_dist(rng);
        const double sdr = sdr_dist(rng);
        const int n = n_dist(rng);
        CHECK(cost_factor(r, dr, n, sdr) ==
              doctest::Approx(oracle::cost_factor(r, dr, n, sdr)).epsilon(1e-12));
    }
}

TEST_CASE("with equal rates the cost factor is exactly rate-independent") {
    // the power ratio collapses to exactly 1, so the value is identical for
    // every common rate
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> rate_dist(0.0, 0.3);
    const double reference = cost_factor(0.0, 0.0, 30, 0.006);
    for (int trial = 0; trial < 10; ++trial) {
        const double rate = rate_dist(rng);
        CHECK(cost_factor(rate, rate, 30, 0.006) == reference);
    }
}

TEST_CASE("cost_factor is monotone: up in spread and sdr, down in dr at fixed spread") {
    for (double dr : {0.01, 0.03, 0.05}) {
        double previous = cost_factor(dr, dr, 30, 0.006);
        for (double spread : {0.01, 0.03, 0.05, 0.08, 0.12}) {
            const double current = cost_factor(dr + spread, dr, 30, 0.006);
            CHECK(current > previous);
            previous = current;
        }
    }
    double previous = cost_factor(0.08, 0.03, 30, 0.0);
    for (double sdr : {0.006, 0.02, 0.056, 0.1}) {
        const double current = cost_factor(0.08, 0.03, 30, sdr);
        CHECK(current > previous);
        previous = current;
    }
    const double spread = 0.05;
    previous = cost_factor(0.01 + spread, 0.01, 30, 0.006);
    for (double dr : {0.03, 0.05, 0.07}) {
        const double current = cost_factor(dr + spread, dr, 30, 0.006);
        CHECK(current < previous);
        previous = current;
    }
}

TEST_CASE("lcoe_zero_coupon examples") {
    CHECK(lcoe_zero_coupon(1.0, 0.05, 0.05, 1, 0.0, 1.0) == 1.0);
    CHECK(lcoe_zero_coupon(1.0, 0.08, 0.03, 30, 0.006, 1.0) ==
          doctest::Approx(0.15149443902640572).epsilon(1e-12));
    // doubling the year-one output halves the cost exactly
    const double base = lcoe_zero_coupon(1.0, 0.08, 0.03, 30, 0.006, 1.0);
    const double doubled = lcoe_zero_coupon(1.0, 0.08, 0.03, 30, 0.006, 2.0);
    CHECK(doubled == base / 2.0);
    CHECK_THROWS_AS(lcoe_zero_coupon(0.0, 0.08, 0.03, 30, 0.006, 1.0), ValidationError);
    CHECK_THROWS_AS(lcoe_zero_coupon(1.0, -1.2, 0.03, 30, 0.006, 1.0), ModelError);
}

TEST_CASE("lcoe_zero_coupon is homogeneous of degree 0 in currency") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> scale_dist(0.01, 100.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double alpha = scale_dist(rng);
        const double beta = scale_dist(rng);
        const double base = lcoe_zero_coupon(2.0, 0.08, 0.03, 25, 0.01, 3.0);
        const double scaled = lcoe_zero_coupon(2.0 * alpha, 0.08, 0.03, 25, 0.01, 3.0 * beta);
        CHECK(scaled == doctest::Approx(base * alpha / beta).epsilon(1e-12));
    }
}

TEST_CASE("lcic trivial and derived cases") {
    ModuleReplacementSpec single{100.0, 25, 0.0, 20};
    CHECK(lcic(single, 0.07) == 100.0);

    ModuleReplacementSpec undiscounted{100.0, 10, 0.0, 20};
    CHECK(lcic(undiscounted, 0.0) == 300.0);

    ModuleReplacementSpec discounted{100.0, 10, 0.5, 20};
    CHECK(lcic(discounted, 0.05) == doctest::Approx(180.23579949772594).epsilon(1e-12));
}

TEST_CASE("lcic matches the term-by-term oracle on random inputs") {
    std::mt19937 rng(314);
    std::uniform_real_distribution<double> cost_dist(1.0, 500.0);
    std::uniform_real_distribution<double> rate_dist(0.0, 0.2);
    std::uniform_real_distribution<double> fraction_dist(0.0, 1.0);
    std::uniform_int_distribution<int> life_dist(1, 40);
    std::uniform_int_distribution<int> horizon_dist(1, 60);
    for (int trial = 0; trial < 100; ++trial) {
        ModuleReplacementSpec spec;
        spec.c_bom = cost_dist(rng);
        spec.module_life = life_dist(rng);
        spec.energy_fraction_remaining = fraction_dist(rng);
        spec.horizon = horizon_dist(rng);
        const double dr = rate_dist(rng);
        CHECK(lcic(spec, dr) ==
              doctest::Approx(oracle::lcic(spec.c_bom, spec.horizon, spec.module_life, dr,
                                           spec.energy_fraction_remaining))
                  .epsilon(1e-12));
    }
}

TEST_CASE("lcic validates its spec") {
    CHECK_THROWS_AS(lcic({0.0, 10, 0.0, 20}, 0.05), ValidationError);
    CHECK_THROWS_AS(lcic({100.0, 0, 0.0, 20}, 0.05), ValidationError);
    CHECK_THROWS_AS(lcic({100.0, 10, 1.5, 20}, 0.05), ValidationError);
    CHECK_THROWS_AS(lcic({100.0, 10, 0.0, 0}, 0.05), ValidationError);
}

TEST_CASE("undiscounted all-equity plant reduces to PCI over lifetime output") {
    const PlantSpec plant = bare_plant(1000.0, 500.0, 0.0, 10);
    FinancingTerms terms;  // corrected, zero spread
    const auto result = lcoe_eq1(plant, YieldCurve::flat(0.0), terms,
                                 DenominatorMode::physical_corrected, 0.0);
    CHECK(result.lcoe == doctest::Approx(1000.0 / (10.0 * 500.0)).epsilon(1e-15));
    CHECK(result.components.capital == 1000.0);
    CHECK(result.components.tax_shield == 0.0);
    CHECK(result.components.loan_payments == 0.0);
    CHECK(result.components.outlays == 0.0);
    CHECK(result.components.residual_credit == 0.0);
}

TEST_CASE("discounting the denominator always raises the quoted cost") {
    const PlantSpec plant = bare_plant(1000.0, 500.0, 0.0, 10);
    FinancingTerms terms;
    const auto curve = YieldCurve::flat(0.08);
    const double legacy =
        lcoe_eq1(plant, curve, terms, DenominatorMode::discounted_legacy, 0.0).lcoe;
    const double corrected =
        lcoe_eq1(plant, curve, terms, DenominatorMode::physical_corrected, 0.0).lcoe;
    CHECK(legacy > corrected);
}

TEST_CASE("components always sum to the numerator") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        PlantSpec plant;
        plant.pci = 1000.0 + 1e6 * unit(rng);
        plant.initial_kwh = 100.0 + 1e6 * unit(rng);
        plant.sdr = 0.2 * unit(rng);
        plant.lifetime_n = 1 + static_cast<int>(40 * unit(rng));
        plant.ao = 1e4 * unit(rng);
        plant.tr = 0.5 * unit(rng);
        plant.rv = 0.3 * plant.pci * unit(rng);
        FinancingTerms terms;
        terms.spread = 0.1 * unit(rng);
        terms.discount_mode =
            unit(rng) < 0.5 ? DiscountMode::legacy_equal_rates : DiscountMode::corrected_riskfree;
        terms.rate_mode =
            unit(rng) < 0.5 ? RateMode::flat_at_horizon : RateMode::per_year_term_structure;
        const auto result =
            lcoe_eq1(plant, YieldCurve::flat(0.02 + 0.05 * unit(rng)), terms,
                     unit(rng) < 0.5 ? DenominatorMode::discounted_legacy
                                     : DenominatorMode::physical_corrected,
                     unit(rng), unit(rng) < 0.5 ? LoanShape::level_payment : LoanShape::balloon);
        const auto& c = result.components;
        CHECK(result.numerator ==
              c.capital + c.tax_shield + c.loan_payments + c.outlays + c.residual_credit);
        CHECK(result.lcoe == result.numerator / result.denominator_kwh);
        CHECK(result.denominator_kwh > 0.0);
    }
}

TEST_CASE("balloon-financed bare plant reproduces the zero-coupon cost") {
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        PlantSpec plant;
        plant.pci = 0.5 + 5e6 * unit(rng);
        plant.initial_kwh = 1.0 + 1e6 * unit(rng);
        plant.sdr = 0.1 * unit(rng);
        plant.lifetime_n = 1 + static_cast<int>(40 * unit(rng));
        plant.degradation_exponent = DegradationExponent::n;
        const double riskfree = 0.08 * unit(rng);
        FinancingTerms terms;
        terms.spread = 0.08 * unit(rng);
        terms.discount_mode = DiscountMode::corrected_riskfree;
        const auto via_eq1 = lcoe_eq1(plant, YieldCurve::flat(riskfree), terms,
                                      DenominatorMode::physical_corrected, 1.0, LoanShape::balloon);
        const double direct = lcoe_zero_coupon(plant.pci, riskfree + terms.spread, riskfree,
                                               plant.lifetime_n, plant.sdr, plant.initial_kwh);
        CHECK(via_eq1.lcoe == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("lcoe_eq1 validates inputs") {
    const PlantSpec plant = bare_plant(1000.0, 500.0, 0.0, 10);
    FinancingTerms terms;
    CHECK_THROWS_AS(lcoe_eq1(plant, YieldCurve::flat(0.03), terms,
                             DenominatorMode::physical_corrected, 1.5),
                    ValidationError);
    PlantSpec bad = plant;
    bad.rv = 2000.0;
    CHECK_THROWS_AS(lcoe_eq1(bad, YieldCurve::flat(0.03), terms,
                             DenominatorMode::physical_corrected, 1.0),
                    ValidationError);
    PlantSpec negative = plant;
    negative.pci = -1.0;
    CHECK_THROWS_AS(lcoe_eq1(negative, YieldCurve::flat(0.03), terms,
                             DenominatorMode::physical_corrected, 1.0),
                    ValidationError);
}
