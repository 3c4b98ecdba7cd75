// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
#include "agenda/continuum.hpp"

#include <omp.h>

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace agenda {
namespace {

using BigFloat = boost::multiprecision::mpfr_float;

constexpr int kMinExtendedDigits = 60;

void check_params(int m, double eta) {
  if (m < 1) throw std::invalid_argument("continuum: voter count must be >= 1");
  if (!(eta > 0.0 && eta < 0.5))
    throw std::invalid_argument("continuum: eta must lie strictly in (0, 1/2), got " +
                                std::to_string(eta));
}

void apply_precision(const PrecisionConfig& precision) {
  if (precision.mode == PrecisionConfig::Mode::extended) {
    if (precision.digits < kMinExtendedDigits)
      throw std::invalid_argument("extended precision needs >= " +
                                  std::to_string(kMinExtendedDigits) + " digits, got " +
                                  std::to_string(precision.digits));
    BigFloat::default_precision(static_cast<unsigned>(precision.digits));
  }
}

// Kahan-Babuska (Neumaier) accumulator.
struct StableSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double get() const { return sum + comp; }
};

std::vector<double> log_factorials(int m) {
  std::vector<double> lf(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) lf[static_cast<std::size_t>(k)] = std::lgamma(k + 1.0);
  return lf;
}

// challenger cap: the success region requires s <= (m-1)/2 (strictly below m/2)
int challenger_cap(int m) { return (m - 1) / 2; }

double p_machine(int m, double eta) {
  const int smax = challenger_cap(m);
  if (smax < 2) return 0.0;
  const auto lf = log_factorials(m);
  const double le = std::log(eta);
  const double lw = std::log1p(-2.0 * eta);
  StableSum acc;
  for (int s = 2; s <= smax; ++s) {
    for (int t = 2; t <= m - s; ++t) {
      const int r = m - s - t;
      acc.add(std::exp(lf[m] - lf[s] - lf[t] - lf[r] + (s + t) * le + r * lw));
    }
  }
  return std::min(1.0, acc.get());
}

double q_machine(int m, double eta) {
  const auto lf = log_factorials(m);
  const double le = std::log(eta);
  const double lw = std::log1p(-2.0 * eta);
  const double l1 = std::log1p(-eta);
  StableSum acc;
  // challenger count s in {0,1}: binomial marginal rows
  acc.add(std::exp(m * l1));
  acc.add(std::exp(std::log(static_cast<double>(m)) + le + (m - 1) * l1));
  // target count t in {0,1}, s >= 2
  for (int t = 0; t <= 1; ++t) {
    for (int s = 2; s <= m - t; ++s) {
      const int r = m - s - t;
      acc.add(std::exp(lf[m] - lf[s] - lf[t] - lf[r] + (s + t) * le + r * lw));
    }
  }
  // challenger at or above the majority threshold, t >= 2
  for (int s = std::max(challenger_cap(m) + 1, 2); s <= m - 2; ++s) {
    for (int t = 2; t <= m - s; ++t) {
      const int r = m - s - t;
      acc.add(std::exp(lf[m] - lf[s] - lf[t] - lf[r] + (s + t) * le + r * lw));
    }
  }
  return std::min(1.0, acc.get());
}

// Extended-precision evaluation. Rows of the (s,t) sum are anchored in log
// space (one exp) and filled by exact multiplicative recurrences:
//   f(s,t+1) = f(s,t) * (m-s-t)/(t+1) * eta/omega
//   f(s+1,t) = f(s,t) * (m-s-t)/(s+1) * eta/omega
struct BigContext {
  int m;
  std::vector<BigFloat> lf;

  explicit BigContext(int m_voters) : m(m_voters), lf(static_cast<std::size_t>(m_voters) + 1) {
    for (int k = 0; k <= m; ++k) lf[static_cast<std::size_t>(k)] = lgamma(BigFloat(k + 1));
  }

  BigFloat term(int s, int t, const BigFloat& log_eta, const BigFloat& log_omega) const {
    const int r = m - s - t;
    return exp(lf[static_cast<std::size_t>(m)] - lf[static_cast<std::size_t>(s)] -
               lf[static_cast<std::size_t>(t)] - lf[static_cast<std::size_t>(r)] +
               (s + t) * log_eta + r * log_omega);
  }
};

BigFloat p_extended(const BigContext& ctx, double eta_d) {
  const int m = ctx.m;
  const int smax = challenger_cap(m);
  if (smax < 2) return BigFloat(0);
  const BigFloat eta(eta_d);
  const BigFloat omega = 1 - 2 * eta;
  const BigFloat rho = eta / omega;
  const BigFloat log_eta = log(eta), log_omega = log(omega);

  BigFloat acc(0);
  BigFloat row_start = ctx.term(2, 2, log_eta, log_omega);
  for (int s = 2; s <= smax; ++s) {
    BigFloat f = row_start;
    acc += f;
    for (int t = 2; t < m - s; ++t) {
      f *= static_cast<unsigned>(m - s - t);
      f /= static_cast<unsigned>(t + 1);
      f *= rho;
      acc += f;
    }
    if (s < smax) {
      row_start *= static_cast<unsigned>(m - s - 2);
      row_start /= static_cast<unsigned>(s + 1);
      row_start *= rho;
    }
  }
  return acc;
}

BigFloat q_extended(const BigContext& ctx, double eta_d) {
  const int m = ctx.m;
  const BigFloat eta(eta_d);
  const BigFloat omega = 1 - 2 * eta;
  const BigFloat one_minus = 1 - eta;
  const BigFloat rho = eta / omega;
  const BigFloat log_eta = log(eta), log_omega = log(omega);

  // s in {0,1}: binomial marginal, closed form
  BigFloat acc = pow(one_minus, static_cast<unsigned>(m - 1)) * (one_minus + m * eta);

  // t in {0,1}, s from 2
  for (int t = 0; t <= 1; ++t) {
    if (m - t < 2) continue;
    BigFloat f = ctx.term(2, t, log_eta, log_omega);
    acc += f;
    for (int s = 2; s < m - t; ++s) {
      f *= static_cast<unsigned>(m - s - t);
      f /= static_cast<unsigned>(s + 1);
      f *= rho;
      acc += f;
    }
  }

  // challenger at or above the majority threshold, t >= 2
  const int s0 = std::max(challenger_cap(m) + 1, 2);
  if (s0 <= m - 2) {
    BigFloat row_start = ctx.term(s0, 2, log_eta, log_omega);
    for (int s = s0; s <= m - 2; ++s) {
      BigFloat f = row_start;
      acc += f;
      for (int t = 2; t < m - s; ++t) {
        f *= static_cast<unsigned>(m - s - t);
        f /= static_cast<unsigned>(t + 1);
        f *= rho;
        acc += f;
      }
      if (s < m - 2) {
        row_start *= static_cast<unsigned>(m - s - 2);
        row_start /= static_cast<unsigned>(s + 1);
        row_start *= rho;
      }
    }
  }
  return acc;
}

template <class Real, class Eval>
double golden_min(double a, double b, const Eval& eval) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  Real fc = eval(c);
  Real fd = eval(d);
  while (b - a > 1e-6) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
    }
  }
  return 0.5 * (a + b);
}

void check_grid(double grid_start, double grid_end, double step) {
  if (!(grid_start > 0.0 && grid_start < grid_end && grid_end < 0.5))
    throw std::invalid_argument("eta grid must satisfy 0 < start < end < 1/2");
  if (!(step > 0.0)) throw std::invalid_argument("eta grid step must be positive");
}

bool window_event(std::span<const double> u, double eta) {
  const int m = static_cast<int>(u.size());
  const auto d = [&](int k) { return k < m ? u[static_cast<std::size_t>(k)]
                                           : u[static_cast<std::size_t>(k - m)] + 1.0; };
  int lb = 0, ub = 0, hi = 0;
  for (int j = 0; j < m; ++j) {
    const double a = u[static_cast<std::size_t>(j)];
    const double b = a + eta;
    while (lb < 2 * m && d(lb) < a) ++lb;
    while (ub < 2 * m && d(ub) <= a) ++ub;
    while (hi < 2 * m && d(hi) < b) ++hi;
    if (hi - ub < 2) return false;       // open window too thin somewhere
    if (2 * (hi - lb) >= m) return false;  // half-closed window reaches m/2
  }
  return true;
}

struct ContinuousTrialEval {
  int m;
  double eta;
  std::uint64_t master;
  std::uint32_t family;
  std::vector<double> buf;

  bool operator()(std::uint64_t trial) {
    rng::Stream stream(master, trial, family);
    for (auto& x : buf) x = stream.next_unit();
    std::sort(buf.begin(), buf.end());
    return window_event(buf, eta);
  }
};

}  // namespace

WinProbability p_win_continuous(const ContinuousParams& params,
                                const PrecisionConfig& precision) {
  check_params(params.m, params.eta);
  apply_precision(precision);
  WinProbability out;
  if (precision.mode == PrecisionConfig::Mode::machine) {
    out.p = p_machine(params.m, params.eta);
    out.q = q_machine(params.m, params.eta);
    out.log10_q = std::log10(out.q);
  } else {
    const BigContext ctx(params.m);
    const BigFloat p = p_extended(ctx, params.eta);
    const BigFloat q = q_extended(ctx, params.eta);
    out.p = p.convert_to<double>();
    out.q = q.convert_to<double>();
    out.log10_q = log10(q).convert_to<double>();
  }
  return out;
}

EtaOptimum optimize_eta_win(int m, double grid_start, double grid_end, double step,
                            const PrecisionConfig& precision) {
  if (m < 1) throw std::invalid_argument("continuum: voter count must be >= 1");
  check_grid(grid_start, grid_end, step);
  apply_precision(precision);
  if (challenger_cap(m) < 2)
    throw std::domain_error("no feasible victory: the success region is empty for m = " +
                            std::to_string(m));

  const auto optimum = [&](auto qeval) {
    using Real = decltype(qeval(grid_start));
    double best_eta = grid_start;
    Real best_q = qeval(grid_start);
    for (int k = 1;; ++k) {
      const double eta = grid_start + k * step;
      if (eta > grid_end + step * 0.5) break;
      Real q = qeval(std::min(eta, grid_end));
      if (q < best_q) {
        best_q = q;
        best_eta = std::min(eta, grid_end);
      }
    }
    const double lo = std::max(grid_start, best_eta - step);
    const double hi = std::min(grid_end, best_eta + step);
    return golden_min<Real>(lo, hi, qeval);
  };

  EtaOptimum out;
  if (precision.mode == PrecisionConfig::Mode::machine) {
    out.eta_star = optimum([&](double eta) { return q_machine(m, eta); });
  } else {
    const BigContext ctx(m);
    out.eta_star = optimum([&](double eta) { return q_extended(ctx, eta); });
  }
  const WinProbability at_star = p_win_continuous({m, out.eta_star}, precision);
  out.p = at_star.p;
  out.q = at_star.q;
  out.log10_q = at_star.log10_q;
  return out;
}

EtaOptimum optimize_eta_win(int m, const PrecisionConfig& precision) {
  return optimize_eta_win(m, 0.1, 0.45, 0.0007, precision);
}

std::vector<DecayRow> decay_table(std::span<const int> m_values,
                                  const PrecisionConfig& precision) {
  std::vector<DecayRow> rows;
  rows.reserve(m_values.size());
  for (const int m : m_values) {
    if (m < 5) throw std::invalid_argument("decay_table: every m must be >= 5");
    const EtaOptimum opt = optimize_eta_win(m, precision);
    rows.push_back({m, opt.eta_star, opt.q, opt.log10_q});
  }
  return rows;
}

UniformSample sample_uniform_points(int m, rng::Stream& stream) {
  if (m < 1) throw std::invalid_argument("sample_uniform_points: m must be >= 1");
  UniformSample sample;
  sample.points.resize(static_cast<std::size_t>(m));
  for (auto& x : sample.points) x = stream.next_unit();
  std::sort(sample.points.begin(), sample.points.end());
  return sample;
}

bool universal_event_continuous(const UniformSample& sample, double eta) {
  check_params(sample.m(), eta);
  if (!std::is_sorted(sample.points.begin(), sample.points.end()))
    throw std::invalid_argument("universal_event_continuous: sample points must be sorted");
  return window_event(sample.points, eta);
}

BinomialEstimate estimate_p2_continuous(int m, double eta, std::uint64_t trials, RngSpec rng,
                                        int workers, std::uint32_t family, double z) {
  check_params(m, eta);
  if (trials == 0) throw std::invalid_argument("trial count must be >= 1");
  std::uint64_t successes = 0;
  const int nw = resolve_workers(workers);
#pragma omp parallel num_threads(nw) reduction(+ : successes)
  {
    ContinuousTrialEval eval{m, eta, rng.master_seed, family,
                             std::vector<double>(static_cast<std::size_t>(m))};
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
      if (eval(static_cast<std::uint64_t>(t))) ++successes;
    }
  }
  return BinomialEstimate{successes, trials, z};
}

namespace serial {

BinomialEstimate estimate_p2_continuous(int m, double eta, std::uint64_t trials, RngSpec rng,
                                        std::uint32_t family, double z) {
  check_params(m, eta);
  if (trials == 0) throw std::invalid_argument("trial count must be >= 1");
  ContinuousTrialEval eval{m, eta, rng.master_seed, family,
                           std::vector<double>(static_cast<std::size_t>(m))};
  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (eval(t)) ++successes;
  }
  return BinomialEstimate{successes, trials, z};
}

}  // namespace serial

UniversalOptimum optimize_eta_universal(int m, std::uint64_t trials, RngSpec rng, EtaGrid grid,
                                        int workers) {
  check_grid(grid.start, grid.end, grid.step);
  UniversalOptimum out;
  bool first = true;
  for (int k = 0;; ++k) {
    const double eta = grid.start + k * grid.step;
    if (eta > grid.end + grid.step * 0.5) break;
    const double eta_clamped = std::min(eta, grid.end);
    // family 0 for every eta: identical electorates across the grid (CRN)
    const BinomialEstimate est = estimate_p2_continuous(m, eta_clamped, trials, rng, workers, 0);
    if (first || est.successes > out.scan_best.successes) {
      out.eta_star = eta_clamped;
      out.scan_best = est;
      first = false;
    }
  }
  out.validated = estimate_p2_continuous(m, out.eta_star, trials, rng, workers, 1);
  return out;
}

}  // namespace agenda
