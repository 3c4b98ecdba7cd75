// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "agenda/estimator.hpp"
#include "agenda/rng.hpp"

namespace agenda {

/// Continuous-limit election: m voters as i.i.d. uniforms on [0,1), cluster
/// width eta in (0, 1/2).
struct ContinuousParams {
  int m = 0;
  double eta = 0.0;
};

struct PrecisionConfig {
  enum class Mode { machine, extended };
  Mode mode = Mode::machine;
  int digits = 80;  // significant decimal digits in extended mode

  static PrecisionConfig machine() { return {}; }
  static PrecisionConfig extended(int digits = 80) { return {Mode::extended, digits}; }
};

struct WinProbability {
  double p = 0.0;
  double q = 0.0;  // summed over the complement region, never 1 - p
  double log10_q = 0.0;
};

/// Victory probability of the target candidate: the multinomial mass of
/// {challenger count s >= 2, target count t >= 2, s <= (m-1)/2} at cell
/// probabilities (eta, eta, 1-2*eta). q is accumulated independently over
/// the complement region so it keeps full relative accuracy in the deep
/// tail; machine mode works in log space with compensated summation,
/// extended mode in arbitrary precision.
WinProbability p_win_continuous(const ContinuousParams& params,
                                const PrecisionConfig& precision = {});

struct EtaOptimum {
  double eta_star = 0.0;
  double p = 0.0;
  double q = 0.0;
  double log10_q = 0.0;
};

/// Grid scan of the victory probability (via its complement) followed by
/// golden-section refinement of the single peak to 1e-6 width. Grid ties
/// break toward smaller eta.
EtaOptimum optimize_eta_win(int m, double grid_start, double grid_end, double step,
                            const PrecisionConfig& precision = {});
EtaOptimum optimize_eta_win(int m, const PrecisionConfig& precision = {});

struct DecayRow {
  int m;
  double eta_star;
  double q;
  double log10_q;
};

std::vector<DecayRow> decay_table(std::span<const int> m_values,
                                  const PrecisionConfig& precision = {});

struct UniformSample {
  std::vector<double> points;  // ascending
  int m() const { return static_cast<int>(points.size()); }
};

UniformSample sample_uniform_points(int m, rng::Stream& stream);

/// Universal victory in the continuous model, checked exactly at the voter
/// positions: every open circular window (U_j, U_j + eta) holds at least two
/// points, and no half-closed window [U_j, U_j + eta) holds m/2 or more.
/// One sort plus a two-pointer sweep, O(m log m); no rotation grid.
bool universal_event_continuous(const UniformSample& sample, double eta);

BinomialEstimate estimate_p2_continuous(int m, double eta, std::uint64_t trials, RngSpec rng,
                                        int workers = 0, std::uint32_t family = 0,
                                        double z = 1.96);

namespace serial {
BinomialEstimate estimate_p2_continuous(int m, double eta, std::uint64_t trials, RngSpec rng,
                                        std::uint32_t family = 0, double z = 1.96);
}  // namespace serial

struct EtaGrid {
  double start = 0.10;
  double end = 0.45;
  double step = 0.0025;
};

struct UniversalOptimum {
  double eta_star = 0.0;
  BinomialEstimate scan_best;  // at eta_star, from the CRN scan streams
  BinomialEstimate validated;  // at eta_star, from a fresh stream family
};

/// Grid scan of estimate_p2_continuous with common random numbers across eta
/// (every grid point reuses the same per-trial samples), then an independent
/// validation run at the maximizer.
UniversalOptimum optimize_eta_universal(int m, std::uint64_t trials, RngSpec rng,
                                        EtaGrid grid = {}, int workers = 0);

}  // namespace agenda
