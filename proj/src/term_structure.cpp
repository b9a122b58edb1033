#include "pvlcoe/term_structure.hpp"

#include <cmath>
#include <limits>

namespace pvlcoe {

YieldCurve YieldCurve::parametric(Coefficients coefficients) {
    if (!std::isfinite(coefficients.a) || !std::isfinite(coefficients.b) ||
        !std::isfinite(coefficients.c) || !std::isfinite(coefficients.d)) {
        throw ValidationError("curve coefficients must be finite");
    }
    YieldCurve curve;
    curve.kind_ = CurveKind::parametric;
    curve.coefficients_ = coefficients;
    return curve;
}

YieldCurve YieldCurve::flat(double rate) {
    if (!std::isfinite(rate) || rate < 0.0) {
        throw ValidationError("flat_rate must be a finite fraction >= 0");
    }
    YieldCurve curve;
    curve.kind_ = CurveKind::flat;
    curve.flat_rate_ = rate;
    return curve;
}

YieldCurve YieldCurve::tabulated(std::vector<std::pair<double, double>> points) {
    if (points.empty()) {
        throw ValidationError("tabulated curve needs at least one point");
    }
    double previous = 0.0;
    for (const auto& [maturity, rate] : points) {
        if (!(maturity > previous)) {
            throw ValidationError("tabulated maturities must be strictly increasing and > 0");
        }
        if (!std::isfinite(rate) || rate < 0.0) {
            throw ValidationError("tabulated rates must be finite fractions >= 0");
        }
        previous = maturity;
    }
    YieldCurve curve;
    curve.kind_ = CurveKind::tabulated;
    curve.points_ = std::move(points);
    return curve;
}

void FinancingTerms::validate() const {
    if (!std::isfinite(spread) || spread < 0.0) {
        throw ValidationError("spread must be a finite fraction >= 0");
    }
}

namespace {

double parametric_yield(const YieldCurve::Coefficients& k, double t) {
    const double inner = k.b * std::log(t) + k.c;
    if (!(inner > 0.0)) {
        throw ModelError("yield model undefined: b*ln(t) + c is not positive");
    }
    return k.a * std::pow(inner, k.d) / 100.0;  // formula yields percent
}

double interpolate_clamped(const std::vector<std::pair<double, double>>& pts, double t) {
    if (t <= pts.front().first) return pts.front().second;
    if (t >= pts.back().first) return pts.back().second;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (t <= pts[i].first) {
            const auto& [t0, r0] = pts[i - 1];
            const auto& [t1, r1] = pts[i];
            const double w = (t - t0) / (t1 - t0);
            return r0 + w * (r1 - r0);
        }
    }
    return pts.back().second;  // unreachable
}

}  // namespace

double model_yield(const YieldCurve& curve, double t_years) {
    if (!std::isfinite(t_years)) {
        throw ModelError("maturity must be finite");
    }
    double rate = 0.0;
    switch (curve.kind()) {
    case CurveKind::parametric:
        if (t_years < YieldCurve::parametric_min_years || t_years > YieldCurve::parametric_max_years) {
            throw ModelError("maturity outside the parametric curve domain [0.25, 60] years");
        }
        rate = parametric_yield(curve.coefficients(), t_years);
        break;
    case CurveKind::flat:
        if (!(t_years > 0.0)) {
            throw ModelError("maturity must be > 0 years");
        }
        rate = curve.flat_rate();
        break;
    case CurveKind::tabulated:
        if (!(t_years > 0.0)) {
            throw ModelError("maturity must be > 0 years");
        }
        rate = interpolate_clamped(curve.points(), t_years);
        break;
    }
    if (!std::isfinite(rate) || rate < 0.0) {
        throw ModelError("curve produced a negative or non-finite rate");
    }
    return rate;
}

double discount_factor(double rate, double n_years) {
    if (!(rate > -1.0)) {
        throw ModelError("discount rate must exceed -100%");
    }
    if (!(n_years >= 0.0)) {
        throw ModelError("horizon must be >= 0 years");
    }
    return std::pow(1.0 + rate, -n_years);
}

YearRates spot_rate_for_year(const YieldCurve& curve, const FinancingTerms& terms,
                             int year, int horizon) {
    if (year < 1) {
        throw ModelError("cash-flow year must be >= 1");
    }
    if (horizon < 1) {
        throw ModelError("horizon must be >= 1 year");
    }
    terms.validate();
    const double maturity =
        terms.rate_mode == RateMode::flat_at_horizon ? static_cast<double>(horizon)
                                                     : static_cast<double>(year);
    const double riskfree = model_yield(curve, maturity);
    const double r = riskfree + terms.spread;
    const double dr = terms.discount_mode == DiscountMode::legacy_equal_rates ? r : riskfree;
    return {dr, r};
}

}  // namespace pvlcoe
