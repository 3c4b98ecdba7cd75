// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
#include "agenda/estimator.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "agenda/election.hpp"
#include "agenda/rng.hpp"

namespace agenda {

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
  if (successes > trials) throw std::invalid_argument("wilson_interval: successes > trials");
  if (!(z > 0)) throw std::invalid_argument("wilson_interval: z must be positive");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  return std::max(1, omp_get_max_threads());
}

namespace {

void check_trials(std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("trial count must be >= 1");
}

// MakeEval builds one stateful evaluator per thread; the evaluator maps a
// trial index to success/failure using only stream (master, trial, family).
template <class MakeEval>
std::uint64_t count_parallel(std::uint64_t trials, int workers, const MakeEval& make) {
  std::uint64_t successes = 0;
  const int nw = resolve_workers(workers);
#pragma omp parallel num_threads(nw) reduction(+ : successes)
  {
    auto eval = make();
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
      if (eval(static_cast<std::uint64_t>(t))) ++successes;
    }
  }
  return successes;
}

template <class MakeEval>
std::uint64_t count_serial(std::uint64_t trials, const MakeEval& make) {
  std::uint64_t successes = 0;
  auto eval = make();
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (eval(t)) ++successes;
  }
  return successes;
}

struct DiscreteTrialEval {
  const Partition* partition;
  int m;
  std::uint64_t master;
  std::uint32_t family;
  bool universal;
  std::vector<std::int32_t> seeds;
  detail::TallyScratch scratch;

  bool operator()(std::uint64_t trial) {
    rng::Stream stream(master, trial, family);
    const auto n = static_cast<std::uint32_t>(partition->n());
    for (auto& s : seeds) s = static_cast<std::int32_t>(stream.uniform_int(n)) + 1;
    if (universal) return detail::universal_victory(seeds, *partition, scratch);
    return detail::run_two_round_shifted(seeds, *partition, 0, scratch).won_by(1);
  }
};

}  // namespace

namespace detail_mc {

// shared by the public entry points below
template <class Counter>
BinomialEstimate estimate_discrete(int n, int m, int l, std::uint64_t trials, RngSpec rng,
                                   std::uint32_t family, double z, bool universal,
                                   const Counter& counter) {
  check_trials(trials);
  if (m < 1) throw std::invalid_argument("voter count must be >= 1");
  const Partition partition(n, l, 1);
  const auto make = [&] {
    return DiscreteTrialEval{&partition,
                             m,
                             rng.master_seed,
                             family,
                             universal,
                             std::vector<std::int32_t>(static_cast<std::size_t>(m)),
                             {}};
  };
  return BinomialEstimate{counter(trials, make), trials, z};
}

}  // namespace detail_mc

BinomialEstimate estimate_p1_discrete(int n, int m, int l, std::uint64_t trials, RngSpec rng,
                                      int workers, std::uint32_t family, double z) {
  return detail_mc::estimate_discrete(n, m, l, trials, rng, family, z, false,
                                      [&](std::uint64_t t, const auto& make) {
                                        return count_parallel(t, workers, make);
                                      });
}

BinomialEstimate estimate_p2_discrete(int n, int m, int l, std::uint64_t trials, RngSpec rng,
                                      int workers, std::uint32_t family, double z) {
  return detail_mc::estimate_discrete(n, m, l, trials, rng, family, z, true,
                                      [&](std::uint64_t t, const auto& make) {
                                        return count_parallel(t, workers, make);
                                      });
}

namespace serial {

BinomialEstimate estimate_p1_discrete(int n, int m, int l, std::uint64_t trials, RngSpec rng,
                                      std::uint32_t family, double z) {
  return detail_mc::estimate_discrete(n, m, l, trials, rng, family, z, false,
                                      [](std::uint64_t t, const auto& make) {
                                        return count_serial(t, make);
                                      });
}

BinomialEstimate estimate_p2_discrete(int n, int m, int l, std::uint64_t trials, RngSpec rng,
                                      std::uint32_t family, double z) {
  return detail_mc::estimate_discrete(n, m, l, trials, rng, family, z, true,
                                      [](std::uint64_t t, const auto& make) {
                                        return count_serial(t, make);
                                      });
}

}  // namespace serial

PlateauResult wilson_centroid_optimize(int n, int m, int l_min, int l_max,
                                       std::uint64_t scan_trials,
                                       std::uint64_t validation_trials, double z, RngSpec rng,
                                       bool universal, int workers) {
  if (l_min > l_max) throw std::invalid_argument("wilson_centroid_optimize: empty width range");
  if (l_min < 2 || l_max > n / 2 - 1)
    throw std::invalid_argument("wilson_centroid_optimize: width range outside 2.." +
                                std::to_string(n / 2 - 1));
  check_trials(scan_trials);
  check_trials(validation_trials);

  const auto estimate = [&](int l, std::uint64_t trials, std::uint32_t family) {
    return universal
               ? estimate_p2_discrete(n, m, l, trials, rng, workers, family, z)
               : estimate_p1_discrete(n, m, l, trials, rng, workers, family, z);
  };

  const int stride = std::max(1, (l_max - l_min + 511) / 512);
  std::vector<ScanPoint> scan;
  for (int l = l_min; l <= l_max; l += stride)
    scan.push_back({l, estimate(l, scan_trials, 0).successes});
  if (scan.back().l != l_max) scan.push_back({l_max, estimate(l_max, scan_trials, 0).successes});

  const auto argmax = [&] {
    std::size_t best = 0;
    for (std::size_t i = 1; i < scan.size(); ++i)
      if (scan[i].successes > scan[best].successes) best = i;
    return best;
  };

  if (stride > 1) {
    // densify every integer around the coarse best point
    const int center = scan[argmax()].l;
    const int lo = std::max(l_min, center - stride + 1);
    const int hi = std::min(l_max, center + stride - 1);
    for (int l = lo; l <= hi; ++l) {
      const bool seen = std::any_of(scan.begin(), scan.end(),
                                    [l](const ScanPoint& p) { return p.l == l; });
      if (!seen) scan.push_back({l, estimate(l, scan_trials, 0).successes});
    }
    std::sort(scan.begin(), scan.end(),
              [](const ScanPoint& a, const ScanPoint& b) { return a.l < b.l; });
  }

  const std::size_t best = argmax();
  const double w_lower = wilson_interval(scan[best].successes, scan_trials, z).first;
  const double threshold = w_lower * static_cast<double>(scan_trials);

  std::size_t left = best;
  while (left > 0 && static_cast<double>(scan[left - 1].successes) >= threshold) --left;
  std::size_t right = best;
  while (right + 1 < scan.size() && static_cast<double>(scan[right + 1].successes) >= threshold)
    ++right;

  PlateauResult result;
  result.l_left = scan[left].l;
  result.l_right = scan[right].l;
  // round-half-to-even midpoint
  result.l_opt = static_cast<int>(std::nearbyint((result.l_left + result.l_right) / 2.0));
  result.p_validated = estimate(result.l_opt, validation_trials, 1);
  result.scan = std::move(scan);
  result.scan_trials = scan_trials;
  return result;
}

}  // namespace agenda
