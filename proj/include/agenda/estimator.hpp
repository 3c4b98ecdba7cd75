// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace agenda {

/// Address of a reproducible stream family: (master_seed, trial_index) is
/// expanded by a counter-based generator, so estimates are independent of
/// worker count and evaluation order.
struct RngSpec {
  std::uint64_t master_seed = 0;
};

/// Wilson score bounds for `successes` out of `trials` at normal quantile z.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z);

struct BinomialEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double z = 1.96;

  double p_hat() const { return static_cast<double>(successes) / static_cast<double>(trials); }
  double wilson_lower() const { return wilson_interval(successes, trials, z).first; }
  double wilson_upper() const { return wilson_interval(successes, trials, z).second; }
};

/// Monte Carlo frequency of {candidate 1 wins the two rounds} at (n, m, l),
/// rotation 1. Trial t draws its electorate from stream (master_seed, t),
/// independent of l, so different widths share electorates (CRN).
BinomialEstimate estimate_p1_discrete(int n, int m, int l, std::uint64_t trials, RngSpec rng,
                                      int workers = 0, std::uint32_t family = 0, double z = 1.96);

/// Monte Carlo frequency of the universal victory event at (n, m, l).
BinomialEstimate estimate_p2_discrete(int n, int m, int l, std::uint64_t trials, RngSpec rng,
                                      int workers = 0, std::uint32_t family = 0, double z = 1.96);

namespace serial {
/// Reference kernels: plain loops, no OpenMP. Must produce counts identical
/// to the parallel versions.
BinomialEstimate estimate_p1_discrete(int n, int m, int l, std::uint64_t trials, RngSpec rng,
                                      std::uint32_t family = 0, double z = 1.96);
BinomialEstimate estimate_p2_discrete(int n, int m, int l, std::uint64_t trials, RngSpec rng,
                                      std::uint32_t family = 0, double z = 1.96);
}  // namespace serial

struct ScanPoint {
  int l;
  std::uint64_t successes;
};

struct PlateauResult {
  int l_opt = 0;
  int l_left = 0;
  int l_right = 0;
  BinomialEstimate p_validated;
  std::vector<ScanPoint> scan;  // every (l, successes) pair evaluated, ascending l
  std::uint64_t scan_trials = 0;
};

/// Wilson Centroid optimization of the cluster width.
///
/// Scans p-hat(l) over [l_min, l_max] under CRN, extracts the contiguous
/// plateau of widths statistically indistinguishable from the maximum (at or
/// above the Wilson lower bound of the best point), returns the rounded
/// plateau midpoint, and re-estimates it on a fresh stream family.
/// Every integer is scanned when the range is small; larger ranges use a
/// stride of ceil(range/512) with densification around the best point.
PlateauResult wilson_centroid_optimize(int n, int m, int l_min, int l_max,
                                       std::uint64_t scan_trials,
                                       std::uint64_t validation_trials, double z, RngSpec rng,
                                       bool universal = false, int workers = 0);

/// Effective worker count: `requested` if positive, else OpenMP's default.
int resolve_workers(int requested);

}  // namespace agenda
