#pragma once

#include <vector>

#include "pvlcoe/term_structure.hpp"

namespace pvlcoe {

/// Exponent convention for the degradation kernel (1 - SDR)^k of year k.
/// The life-cycle cost equation is written with k = n - 1 (year one produces
/// the rated output); the zero-coupon cost equations use k = n. Both are
/// kept behind this flag; nothing silently converts one into the other.
enum class DegradationExponent { n_minus_one, n };

/// Whether the lifetime-output denominator is discounted like a cash flow
/// (the convention this library exists to critique) or left as physical
/// kWh.
enum class DenominatorMode { discounted_legacy, physical_corrected };

/// Shape of the loan that funds the project: a level-payment annuity over
/// the full lifetime, or a single zero-coupon style balloon repayment at
/// the horizon.
enum class LoanShape { level_payment, balloon };

struct PlantSpec {
    double pci = 0.0;          // project cost, currency
    double initial_kwh = 0.0;  // output in year 1, kWh/yr
    double efficiency = 0.16;  // power conversion efficiency, fraction
    double insolation = 1700.0;  // kWh / (m^2 yr)
    double sdr = 0.006;        // system degradation rate, fraction/yr
    int lifetime_n = 30;       // years of service
    double ao = 0.0;           // annual outlays, currency/yr
    double tr = 0.0;           // tax rate, fraction
    double rv = 0.0;           // residual value, currency
    DegradationExponent degradation_exponent = DegradationExponent::n_minus_one;

    void validate() const;
};

struct AmortizationYear {
    int year;
    double payment;           // LP
    double interest;          // I = rate * previous balance
    double principal_repaid;  // payment - interest (negative while interest capitalizes)
    double balance;           // outstanding principal after the payment
};

/// Year-by-year loan schedule. Invariants: interest accrues on the previous
/// balance, payment = interest + principal_repaid, principal_repaid sums to
/// the financed principal, and the final balance is zero (to rounding).
struct AmortizationSchedule {
    double principal = 0.0;
    double rate = 0.0;
    std::vector<AmortizationYear> years;
};

/// Level-payment annuity: LP = principal*rate / (1 - (1+rate)^-n), or
/// principal/n at rate zero.
AmortizationSchedule amortization_schedule(double principal, double rate, int n_years);

/// Zero-coupon loan: interest capitalizes and the whole balance,
/// principal*(1+rate)^n, is repaid in year n.
AmortizationSchedule balloon_schedule(double principal, double rate, int n_years);

struct DepreciationSchedule {
    std::vector<double> dep;  // currency/yr, straight line
};

/// Straight line over n years to base pci - rv.
DepreciationSchedule depreciation_schedule(double pci, double rv, int n_years);

/// Sum of the degradation kernel over years 1..n: multiply by the year-one
/// output for physical lifetime output.
double degraded_output_sum(double sdr, int n_years, DegradationExponent exponent);

struct LcoeComponents {
    double capital;          // equity portion of PCI, paid at year 0
    double tax_shield;       // -sum (DEP + I) * TR * df   (<= 0)
    double loan_payments;    // sum LP * df
    double outlays;          // sum AO * (1 - TR) * df
    double residual_credit;  // -RV * df(N)                (<= 0)
};

struct LcoeResult {
    double lcoe;             // currency/kWh, = numerator / denominator_kwh
    double numerator;        // life-cycle cost in present currency
    double denominator_kwh;  // lifetime output, discounted or physical per mode
    LcoeComponents components;

    DenominatorMode denominator_mode;
    DiscountMode discount_mode;
    RateMode rate_mode;
    LoanShape loan_shape;
    double financed_fraction;
};

/// Full life-cycle cost per kWh.
///
/// numerator = equity PCI - sum (DEP+I)*TR*df(n) + sum LP*df(n)
///             + sum AO*(1-TR)*df(n) - RV*df(N)
///
/// where df(n) discounts at the rate spot_rate_for_year() assigns to year n.
/// The loan covers financed_fraction of PCI, runs for the full lifetime and
/// is struck at the borrowing rate for the horizon; the equity remainder
/// enters the numerator undiscounted at year 0. The denominator is the
/// degraded output sum, discounted with the same df(n) in discounted_legacy
/// mode and taken as physical kWh in physical_corrected mode.
LcoeResult lcoe_eq1(const PlantSpec& plant, const YieldCurve& curve,
                    const FinancingTerms& terms, DenominatorMode denominator,
                    double financed_fraction, LoanShape loan_shape = LoanShape::level_payment);

/// Cost per kWh of a plant financed by a single zero-coupon bond at rate r,
/// due in n years, with no outlays, taxes or residual value:
///
///     pci*(1+r)^n / (1+dr)^n / (initial_kwh * sum_{k=1..n} (1-sdr)^k)
double lcoe_zero_coupon(double pci, double r, double dr, int n_years, double sdr,
                        double initial_kwh);

/// lcoe_zero_coupon at unit PCI and unit year-one output:
/// (1+r)^n / ((1+dr)^n * sum_{k=1..n} (1-sdr)^k). Dimensionless.
double cost_factor(double r, double dr, int n_years, double sdr);

/// Module-replacement cost inputs: the module is repurchased every
/// module_life years over an horizon of n years, and the remaining energy
/// fraction of the last module is credited back.
struct ModuleReplacementSpec {
    double c_bom = 0.0;                     // present module cost, currency
    int module_life = 1;                    // years per module
    double energy_fraction_remaining = 0.0; // fraction of last module's energy unused
    int horizon = 1;                        // project horizon N, years

    void validate() const;
};

/// Life-cycle investment cost:
///     sum_{k=0..int(N/L)} c_bom/(1+dr)^(k*L)  -  c_bom*efr/(1+dr)^N
/// The upper limit keeps the integer-part convention, so a purchase lands
/// on year N itself whenever L divides N.
double lcic(const ModuleReplacementSpec& spec, double dr);

}  // namespace pvlcoe
