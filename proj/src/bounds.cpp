// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
#include "agenda/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace agenda {

double chernoff_rate(const StepDistribution& d) {
  if (!(d.p_plus >= 0.0 && d.p_plus <= 1.0 && d.p_minus >= 0.0 && d.p_minus <= 1.0) ||
      d.p_zero() < -1e-12)
    throw std::invalid_argument("chernoff_rate: step probabilities must lie in [0,1] and sum to <= 1");
  if (!(d.p_minus < d.p_plus))
    throw std::invalid_argument("chernoff_rate: requires p_minus < p_plus (positive drift)");
  const double diff = std::sqrt(d.p_plus) - std::sqrt(d.p_minus);
  return 1.0 - diff * diff;
}

PerRoundRates per_round_rates(int n, int l) {
  if (n < 6 || n % 2 != 0 || l < 2 || l > n / 2 - 1)
    throw std::invalid_argument("per_round_rates: need even n >= 6 and 2 <= l <= n/2-1");
  const double dn = n;
  const double first = std::sqrt(l + 1.0) - std::sqrt(2.0);
  const double final_ = std::sqrt(dn - l) - std::sqrt(static_cast<double>(l));
  return {1.0 - first * first / dn, 1.0 - final_ * final_ / dn};
}

double failure_upper_bound(int n, int m, int l) {
  if (m < 0) throw std::invalid_argument("failure_upper_bound: m must be >= 0");
  const PerRoundRates rates = per_round_rates(n, l);
  const double bound = (n - 2) * std::exp(m * std::log(rates.first_round)) +
                       std::exp(m * std::log(rates.final_round));
  return std::min(1.0, bound);
}

double failure_upper_bound_relaxed(int n, int m, int l) {
  if (m < 0) throw std::invalid_argument("failure_upper_bound_relaxed: m must be >= 0");
  const PerRoundRates rates = per_round_rates(n, l);
  const double r = std::max(rates.first_round, rates.final_round);
  return std::min(1.0, (n - 1) * std::exp(m * std::log(r)));
}

double fit_decay_slope(std::span<const std::pair<int, double>> rows) {
  if (rows.size() < 3) throw std::invalid_argument("fit_decay_slope: need at least 3 rows");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].first <= rows[i - 1].first)
      throw std::invalid_argument("fit_decay_slope: m values must be strictly increasing");
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [m, y] : rows) {
    mean_x += m;
    mean_y += y;
  }
  mean_x /= static_cast<double>(rows.size());
  mean_y /= static_cast<double>(rows.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [m, y] : rows) {
    sxy += (m - mean_x) * (y - mean_y);
    sxx += (m - mean_x) * (m - mean_x);
  }
  return sxy / sxx;
}

}  // namespace agenda
