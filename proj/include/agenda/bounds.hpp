// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>

namespace agenda {

/// Step law of a +1/0/-1 random walk increment.
struct StepDistribution {
  double p_plus = 0.0;
  double p_minus = 0.0;
  double p_zero() const { return 1.0 - p_plus - p_minus; }
};

/// Chernoff rate r = 1 - (sqrt(p_plus) - sqrt(p_minus))^2, so that
/// P(sum of m steps <= 0) <= r^m. Requires p_minus < p_plus.
double chernoff_rate(const StepDistribution& d);

/// Per-voter pairwise rates behind the failure bound: the first-round rate
/// 1 - (sqrt(l+1) - sqrt(2))^2 / n and the final-round rate
/// 1 - (sqrt(n-l) - sqrt(l))^2 / n.
struct PerRoundRates {
  double first_round;
  double final_round;
};
PerRoundRates per_round_rates(int n, int l);

/// Two-term upper bound on 1 - p_1(n,m,l):
/// min(1, (n-2) * r_first^m + r_final^m).
double failure_upper_bound(int n, int m, int l);

/// Relaxed single-max form (n-1) * max(r_first, r_final)^m, capped at 1.
double failure_upper_bound_relaxed(int n, int m, int l);

/// Least-squares slope of log10(q) against m over (m, log10_q) rows.
/// Requires at least 3 rows with strictly increasing m.
double fit_decay_slope(std::span<const std::pair<int, double>> rows);

}  // namespace agenda
