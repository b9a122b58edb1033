#pragma once

#include <utility>
#include <vector>

#include "pvlcoe/errors.hpp"

namespace pvlcoe {

enum class CurveKind { parametric, flat, tabulated };

/// Risk-free spot-rate term structure.
///
/// All rates everywhere in this library are annual fractions (0.03 means
/// 3%/yr); percent values are converted at the API boundary, never inside.
///
/// The parametric kind models the yield *in percent* as
///
///     yield% = a * (b*ln(t) + c)^d,   t in years,
///
/// and model_yield() divides by 100. The default coefficients fit the US
/// Treasury curve as of 2011-10-03. The fit is only trusted for maturities
/// in [0.25, 60] years: ln(t) diverges towards 0 and there is no market
/// data beyond the long bond, so evaluation outside that window is an
/// error rather than an extrapolation.
class YieldCurve {
public:
    struct Coefficients {
        double a, b, c, d;
    };

    static constexpr double parametric_min_years = 0.25;
    static constexpr double parametric_max_years = 60.0;

    static constexpr Coefficients default_treasury_fit() {
        return {0.0034, 1.2892, 2.7061, 3.473272};
    }

    static YieldCurve parametric(Coefficients coefficients = default_treasury_fit());
    static YieldCurve flat(double rate);
    /// Points are (maturity years, rate fraction/yr); maturities must be
    /// strictly increasing. Rates are interpolated linearly and clamped at
    /// the end points.
    static YieldCurve tabulated(std::vector<std::pair<double, double>> points);

    CurveKind kind() const { return kind_; }
    const Coefficients& coefficients() const { return coefficients_; }
    double flat_rate() const { return flat_rate_; }
    const std::vector<std::pair<double, double>>& points() const { return points_; }

private:
    YieldCurve() = default;

    CurveKind kind_ = CurveKind::flat;
    Coefficients coefficients_ = default_treasury_fit();
    double flat_rate_ = 0.0;
    std::vector<std::pair<double, double>> points_;
};

/// How the discount rate relates to the borrowing rate.
///
/// legacy_equal_rates reproduces the convention of setting DR equal to the
/// borrowing rate r for all discounting. corrected_riskfree keeps DR at the
/// risk-free rate; the borrower's credit risk then lives entirely in the
/// spread r - DR.
enum class DiscountMode { legacy_equal_rates, corrected_riskfree };

/// Whether rates are read off the curve once at the project horizon or
/// separately for every cash-flow year.
enum class RateMode { flat_at_horizon, per_year_term_structure };

struct FinancingTerms {
    double spread = 0.0;  // r - r0, fraction/yr, >= 0
    DiscountMode discount_mode = DiscountMode::corrected_riskfree;
    RateMode rate_mode = RateMode::flat_at_horizon;

    void validate() const;
};

/// Discount rate and borrowing rate applying to one cash-flow year.
struct YearRates {
    double dr;  // discount rate, fraction/yr
    double r;   // borrowing rate, fraction/yr
};

/// Spot rate for maturity t in years, as an annual fraction.
double model_yield(const YieldCurve& curve, double t_years);

/// (1 + rate)^(-n). Requires rate > -1 and n >= 0.
double discount_factor(double rate, double n_years);

/// Rates for cash-flow year `year` of a project ending at year `horizon`.
///
/// In per_year_term_structure mode the risk-free rate is read off the curve
/// at `year`; in flat_at_horizon mode it is read once at `horizon` and
/// reused for every year. corrected_riskfree sets dr to the risk-free rate
/// and r = dr + spread; legacy_equal_rates sets r the same way and then
/// dr = r.
YearRates spot_rate_for_year(const YieldCurve& curve, const FinancingTerms& terms,
                             int year, int horizon);

}  // namespace pvlcoe
