#pragma once

// Brute-force reference implementations used only by the tests. They stay
// independent of the library's evaluation paths: per-term std::pow or plain
// repeated multiplication, literal sums, no shared helpers.

#include <cmath>
#include <span>
#include <vector>

namespace oracle {

inline double discount_factor_loop(double rate, int n_years) {
    double factor = 1.0;
    for (int i = 0; i < n_years; ++i) factor /= 1.0 + rate;
    return factor;
}

inline double degraded_sum(double sdr, int n_years, bool exponent_is_n) {
    double total = 0.0;
    for (int k = 1; k <= n_years; ++k) {
        total += std::pow(1.0 - sdr, exponent_is_n ? k : k - 1);
    }
    return total;
}

inline double cost_factor(double r, double dr, int n_years, double sdr) {
    double numerator = 1.0;
    double denominator = 1.0;
    for (int i = 0; i < n_years; ++i) {
        numerator *= 1.0 + r;
        denominator *= 1.0 + dr;
    }
    return numerator / (denominator * degraded_sum(sdr, n_years, true));
}

inline double lcic(double c_bom, int horizon, int module_life, double dr,
                   double energy_fraction_remaining) {
    double total = 0.0;
    for (int k = 0; k <= horizon / module_life; ++k) {
        total += c_bom / std::pow(1.0 + dr, static_cast<double>(k) * module_life);
    }
    total -= c_bom * energy_fraction_remaining / std::pow(1.0 + dr, horizon);
    return total;
}

/// Final loan balance after n_years of the given constant payment.
inline double remaining_balance(double principal, double rate, double payment, int n_years) {
    double balance = principal;
    for (int i = 0; i < n_years; ++i) {
        balance = balance * (1.0 + rate) - payment;
    }
    return balance;
}

/// Textbook rank formula 1 - 6*sum(d^2)/(n(n^2-1)); valid only without ties.
inline double spearman_no_ties(std::span<const double> xs, std::span<const double> ys) {
    const auto ranks = [](std::span<const double> values) {
        std::vector<double> r(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            double rank = 1.0;
            for (std::size_t j = 0; j < values.size(); ++j) {
                if (values[j] < values[i]) rank += 1.0;
            }
            r[i] = rank;
        }
        return r;
    };
    const std::vector<double> rx = ranks(xs);
    const std::vector<double> ry = ranks(ys);
    double sum_d2 = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sum_d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    }
    const double n = static_cast<double>(rx.size());
    return 1.0 - 6.0 * sum_d2 / (n * (n * n - 1.0));
}

}  // namespace oracle
