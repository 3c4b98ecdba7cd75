// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
//
// Full reproduction suite. Each criterion prints one PASS/FAIL line with the
// measured value and the pinned expectation; the process exits nonzero if
// any line fails.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "agenda/bounds.hpp"
#include "agenda/continuum.hpp"
#include "agenda/election.hpp"
#include "agenda/estimator.hpp"

using namespace agenda;

namespace {

int g_failures = 0;

void line(const char* id, bool ok, const std::string& detail) {
  std::printf("%s [%s] %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criterion bodies -------------------------------------------------------

void criterion_1_analytic_points() {
  const double p11 = p_win_continuous({11, 0.3458}).p;
  line("1a", std::abs(p11 - 0.7606) <= 5e-4,
       fmt("p(m=11, eta=0.3458) = %.6f (expect 0.7606 +- 5e-4)", p11));
  const double p31 = p_win_continuous({31, 0.2586}).p;
  line("1b", std::abs(p31 - 0.9959) <= 5e-4,
       fmt("p(m=31, eta=0.2586) = %.6f (expect 0.9959 +- 5e-4)", p31));
  const double p51 = p_win_continuous({51, 0.2385}).p;
  line("1c", p51 >= 0.9999, fmt("p(m=51, eta=0.2385) = %.6f (expect >= 0.9999)", p51));
}

void criterion_2_eta_optima() {
  const EtaOptimum o11 = optimize_eta_win(11);
  line("2a", std::abs(o11.eta_star - 0.3458) <= 1e-3,
       fmt("eta*(m=11) = %.6f (expect 0.3458 +- 1e-3)", o11.eta_star));

  const EtaOptimum o51 = optimize_eta_win(51);
  const bool ok51 =
      std::abs(o51.eta_star - 0.238478) <= 5e-4 && std::abs(o51.q / 5.61e-5 - 1.0) <= 0.02;
  line("2b", ok51,
       fmt("eta*(m=51) = %.6f, q = %.4e (expect 0.238478 +- 5e-4, q = 5.61e-5 +- 2%%)",
           o51.eta_star, o51.q));

  const PrecisionConfig extended = PrecisionConfig::extended(80);
  const EtaOptimum o251 = optimize_eta_win(251, extended);
  line("2c", std::abs(o251.q / 4.27e-24 - 1.0) <= 0.05,
       fmt("q(m=251, 80 digits) = %.4e (expect 4.27e-24 +- 5%%)", o251.q));

  const auto t0 = std::chrono::steady_clock::now();
  const EtaOptimum o501 = optimize_eta_win(501, extended);
  const double elapsed = seconds_since(t0);
  line("2d", std::abs(o501.q / 2.65e-48 - 1.0) <= 0.05,
       fmt("q(m=501, 80 digits) = %.5e at eta* = %.6f (expect 2.65e-48 +- 5%%)", o501.q,
           o501.eta_star));
  line("2e", elapsed < 30.0, fmt("m=501 optimization took %.1f s (budget 30 s)", elapsed));
}

void criterion_3_decay_slope() {
  const std::vector<int> ms{31, 35, 41, 45, 51, 55, 61, 69};
  const auto rows = decay_table(ms);
  std::vector<std::pair<int, double>> fit_rows;
  for (const auto& r : rows) fit_rows.emplace_back(r.m, r.log10_q);
  const double slope = fit_decay_slope(fit_rows);
  line("3", std::abs(slope - (-0.0969)) <= 0.005,
       fmt("decay slope over m in {31..69} = %.5f (expect -0.0969 +- 0.005 = log10(4/5))", slope));
}

void criterion_456_discrete_points() {
  const double p4a = estimate_p1_discrete(14, 21, 5, 100000, {101}).p_hat();
  line("4a", std::abs(p4a - 0.7852) <= 0.01,
       fmt("p1(n=14, m=21, l=5) = %.4f (expect 0.7852 +- 0.01)", p4a));
  const double p4b = estimate_p2_discrete(14, 31, 5, 100000, {102}).p_hat();
  line("4b", std::abs(p4b - 0.5281) <= 0.012,
       fmt("p2(n=14, m=31, l=5) = %.4f (expect 0.5281 +- 0.012)", p4b));
  const double p4c = estimate_p2_discrete(16, 41, 5, 100000, {103}).p_hat();
  line("4c", std::abs(p4c - 0.6995) <= 0.012,
       fmt("p2(n=16, m=41, l=5) = %.4f (expect 0.6995 +- 0.012)", p4c));

  const double p5a = estimate_p1_discrete(6, 31, 2, 100000, {104}).p_hat();
  line("5a", std::abs(p5a - 0.9334) <= 0.008,
       fmt("p1(n=6, m=31, l=2) = %.4f (expect 0.9334 +- 0.008)", p5a));
  const double p5b = estimate_p2_discrete(6, 51, 2, 100000, {105}).p_hat();
  line("5b", std::abs(p5b - 0.9553) <= 0.008,
       fmt("p2(n=6, m=51, l=2) = %.4f (expect 0.9553 +- 0.008)", p5b));

  const double p6 = estimate_p2_discrete(30, 51, 9, 100000, {106}).p_hat();
  line("6", std::abs(p6 - 0.9183) <= 0.01,
       fmt("p2(n=30, m=51, l=9) = %.4f (expect 0.9183 +- 0.01)", p6));
}

void criterion_7_continuous_universal() {
  const double p7a = estimate_p2_continuous(31, 0.2518, 100000, {107}).p_hat();
  line("7a", std::abs(p7a - 0.9181) <= 0.008,
       fmt("P2(m=31, eta=0.2518) = %.4f (expect 0.9181 +- 0.008)", p7a));
  const double p7b = estimate_p2_continuous(41, 0.2408, 100000, {108}).p_hat();
  line("7b", std::abs(p7b - 0.9857) <= 0.004,
       fmt("P2(m=41, eta=0.2408) = %.4f (expect 0.9857 +- 0.004)", p7b));
}

void criterion_8_coupling() {
  const double p_mc = estimate_p1_discrete(10000, 11, 3488, 10000, {109}).p_hat();
  const double p_analytic = p_win_continuous({11, 0.3488}).p;
  const bool ok = std::abs(p_mc - 0.7608) <= 0.02 && std::abs(p_mc - 0.7606) <= 0.02;
  line("8", ok,
       fmt("p1(n=10000, m=11, l=3488) = %.4f (expect 0.7608 +- 0.02; analytic %.4f)", p_mc,
           p_analytic));
}

void criterion_9_centroid_at_scale() {
  const auto t0 = std::chrono::steady_clock::now();
  const PlateauResult r =
      wilson_centroid_optimize(5000, 20, 2, 2499, 10000, 100000, 1.96, {110});
  const double elapsed = seconds_since(t0);
  const bool ok_opt = r.l_opt >= 1347 && r.l_opt <= 1439;
  const double pv = r.p_validated.p_hat();
  line("9a", ok_opt,
       fmt("centroid(n=5000, m=20): l_opt = %d, plateau [%d, %d] (expect l_opt in [1347, 1439])",
           r.l_opt, r.l_left, r.l_right));
  line("9b", std::abs(pv - 0.9438) <= 0.006,
       fmt("validated p(l_opt) = %.4f (expect 0.9438 +- 0.006)", pv));
  line("9c", elapsed < 600.0, fmt("centroid run took %.1f s (budget 600 s)", elapsed));
}

void criterion_10_oracle_equivalence() {
  struct Case {
    int n, m, l;
  };
  const std::vector<Case> cases{{6, 1, 2}, {6, 3, 2}, {6, 5, 2}, {8, 3, 2}, {8, 3, 3}};
  bool all_ok = true;
  std::string detail;
  const double z99 = 2.5758293;
  for (const auto& c : cases) {
    const ExactProbability exact1 = exact_p1_bruteforce(c.n, c.m, c.l);
    const BinomialEstimate mc1 =
        estimate_p1_discrete(c.n, c.m, c.l, 100000, {111}, 0, 0, z99);
    const bool ok1 = mc1.wilson_lower() <= exact1.value() && exact1.value() <= mc1.wilson_upper();
    const ExactProbability exact2 = exact_p2_bruteforce(c.n, c.m, c.l);
    const BinomialEstimate mc2 =
        estimate_p2_discrete(c.n, c.m, c.l, 100000, {112}, 0, 0, z99);
    const bool ok2 = mc2.wilson_lower() <= exact2.value() && exact2.value() <= mc2.wilson_upper();
    if (!(ok1 && ok2)) {
      all_ok = false;
      detail += fmt(" (%d,%d,%d) exact p1=%.5f mc=[%.5f,%.5f] p2=%.5f mc=[%.5f,%.5f];", c.n, c.m,
                    c.l, exact1.value(), mc1.wilson_lower(), mc1.wilson_upper(), exact2.value(),
                    mc2.wilson_lower(), mc2.wilson_upper());
    }
  }
  const ExactProbability sixth = exact_p1_bruteforce(6, 1, 2);
  const bool exact_sixth = sixth.favorable == 1 && sixth.total == 6;
  all_ok = all_ok && exact_sixth;
  line("10", all_ok,
       fmt("brute-force oracles inside 99%% MC intervals on 5 instances; p1(6,1,2) = %llu/%llu%s",
           static_cast<unsigned long long>(sixth.favorable),
           static_cast<unsigned long long>(sixth.total), detail.c_str()));
}

void criterion_11_bound_dominance() {
  const std::uint64_t trials = 100000;
  int tested = 0, vacuous = 0, violations = 0;
  double worst_margin = 1e9;
  std::string worst;
  for (const int n : {14, 16, 30, 100}) {
    const int l_hi = n / 2 - 1;
    std::vector<Partition> partitions;
    for (int l = 2; l <= l_hi; ++l) partitions.emplace_back(n, l, 1);
    for (int m = 11; m <= 101; m += 2) {
      std::vector<int> active;  // widths whose bound is informative
      for (int l = 2; l <= l_hi; ++l) {
        if (failure_upper_bound(n, m, l) < 1.0)
          active.push_back(l);
        else
          ++vacuous;  // bound capped at 1: dominance holds for any estimate
      }
      if (active.empty()) continue;
      std::vector<std::uint64_t> successes(active.size(), 0);
#pragma omp parallel
      {
        std::vector<std::uint64_t> local(active.size(), 0);
        std::vector<std::int32_t> seeds(static_cast<std::size_t>(m));
        detail::TallyScratch ws;
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
          rng::Stream stream(113, static_cast<std::uint64_t>(t));
          for (auto& s : seeds)
            s = static_cast<std::int32_t>(stream.uniform_int(static_cast<std::uint32_t>(n))) + 1;
          for (std::size_t i = 0; i < active.size(); ++i) {
            const Partition& part = partitions[static_cast<std::size_t>(active[i] - 2)];
            if (detail::run_two_round_shifted(seeds, part, 0, ws).won_by(1)) ++local[i];
          }
        }
#pragma omp critical
        for (std::size_t i = 0; i < local.size(); ++i) successes[i] += local[i];
      }
      for (std::size_t i = 0; i < active.size(); ++i) {
        const double p_hat = static_cast<double>(successes[i]) / static_cast<double>(trials);
        const double se = std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
        const double bound = failure_upper_bound(n, m, active[i]);
        const double margin = bound + 3.0 * se - (1.0 - p_hat);
        ++tested;
        if (margin < 0) {
          ++violations;
        }
        if (margin < worst_margin) {
          worst_margin = margin;
          worst = fmt("(n=%d, m=%d, l=%d): 1-p = %.5f vs bound %.5f + 3se", n, m, active[i],
                      1.0 - p_hat, bound);
        }
      }
    }
  }
  line("11", violations == 0,
       fmt("1 - p1_hat <= two-term bound + 3se on %d informative points (%d capped points "
           "vacuously satisfied); tightest %s, slack %.2e; %d violations",
           tested, vacuous, worst.c_str(), worst_margin, violations));
}

void criterion_12_rotation_equivariance() {
  const int instances = 10000;
  int violations = 0;
#pragma omp parallel reduction(+ : violations)
  {
#pragma omp for schedule(static)
    for (int iter = 0; iter < instances; ++iter) {
      rng::Stream stream(114, static_cast<std::uint64_t>(iter));
      const int n = 6 + 2 * static_cast<int>(stream.uniform_int(8));
      const int l = 2 + static_cast<int>(stream.uniform_int(static_cast<std::uint32_t>(n / 2 - 2)));
      const int m = 1 + static_cast<int>(stream.uniform_int(12));
      const int i = 1 + static_cast<int>(stream.uniform_int(static_cast<std::uint32_t>(n)));
      const SeedVector seeds = sample_seeds(n, m, stream);
      std::vector<std::int32_t> shifted(seeds.seeds.size());
      for (std::size_t j = 0; j < shifted.size(); ++j)
        shifted[j] = (seeds.seeds[j] - 1 - (i - 1) + 2 * n) % n + 1;
      const bool rotated = run_two_round(seeds, Partition(n, l, i)).won_by(i);
      const bool base = run_two_round(SeedVector(n, shifted), Partition(n, l, 1)).won_by(1);
      if (rotated != base) ++violations;
    }
  }
  line("12", violations == 0,
       fmt("rotation equivariance on %d random instances: %d violations", instances, violations));
}

void criterion_13_window_vs_grid() {
  const int samples = 10000;
  const int grid_points = 100000;
  int hard_disagreements = 0, strict_checks = 0;
#pragma omp parallel reduction(+ : hard_disagreements, strict_checks)
  {
#pragma omp for schedule(dynamic, 64)
    for (int iter = 0; iter < samples; ++iter) {
      rng::Stream stream(115, static_cast<std::uint64_t>(iter));
      const int m = 5 + static_cast<int>(stream.uniform_int(8));  // m <= 12
      const double eta = 0.05 + 0.40 * stream.next_unit();
      const UniformSample sample = sample_uniform_points(m, stream);
      const bool fast = universal_event_continuous(sample, eta);

      bool grid = true;
      for (int g = 0; g < grid_points && grid; ++g) {
        const double theta = (g + 0.5) / grid_points;
        int count = 0;
        for (const double x : sample.points) {
          double rel = x - theta;
          rel -= std::floor(rel);
          if (rel > 0.0 && rel < eta) ++count;
        }
        if (count < 2 || 2 * count >= m) grid = false;
      }

      if (fast && !grid) {
        ++hard_disagreements;  // exact true must imply grid true
        continue;
      }
      double margin = 1.0;
      for (std::size_t a = 0; a < sample.points.size(); ++a) {
        for (std::size_t b = 0; b < sample.points.size(); ++b) {
          if (a == b) continue;
          double d = sample.points[a] - sample.points[b];
          d -= std::floor(d);
          margin = std::min(margin, std::min(d, std::abs(d - eta)));
        }
      }
      if (margin > 2.0 / grid_points) {
        ++strict_checks;
        if (fast != grid) ++hard_disagreements;
      }
    }
  }
  line("13", hard_disagreements == 0,
       fmt("sliding window vs %d-point rotation grid on %d samples: %d disagreements outside "
           "grid-margin cases (%d strict checks)",
           grid_points, samples, hard_disagreements, strict_checks));
}

void criterion_14_cli_determinism() {
#ifndef AGENDA_CLI_PATH
  line("14", false, "CLI path not configured");
#else
  const std::string cli = AGENDA_CLI_PATH;
  const auto run = [&](const std::string& args, const std::string& out, int workers) {
    setenv("AGENDA_WORKERS", std::to_string(workers).c_str(), 1);
    const std::string cmd = cli + " " + args + " --out " + out + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    unsetenv("AGENDA_WORKERS");
    return WEXITSTATUS(status) == 0;
  };
  const auto load_stripped = [](const std::string& path) {
    std::ifstream in(path);
    nlohmann::json j;
    in >> j;
    j.erase("elapsed_ms");
    return j;
  };
  const std::vector<std::string> commands{
      "discrete-sim --n 14 --m 21 --l 5 --trials 20000 --seed 7",
      "discrete-sim --n 16 --m 31 --l 5 --universal --trials 5000 --seed 8",
      "continuous-universal --m 31 --eta 0.2518 --trials 20000 --seed 9",
      "discrete-optimize --n 14 --m 21 --scan-trials 2000 --validation-trials 5000 --seed 10",
  };
  bool all_ok = true;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const std::string f1 = fmt("acceptance_w1_%zu.json", i);
    const std::string f4 = fmt("acceptance_w4_%zu.json", i);
    if (!run(commands[i], f1, 1) || !run(commands[i], f4, 4)) {
      all_ok = false;
      break;
    }
    if (load_stripped(f1) != load_stripped(f4)) all_ok = false;
  }
  line("14", all_ok,
       fmt("%zu commands value-identical under AGENDA_WORKERS in {1,4}", commands.size()));
#endif
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1_analytic_points();
  criterion_2_eta_optima();
  criterion_3_decay_slope();
  criterion_456_discrete_points();
  criterion_7_continuous_universal();
  criterion_8_coupling();
  criterion_9_centroid_at_scale();
  criterion_10_oracle_equivalence();
  criterion_11_bound_dominance();
  criterion_12_rotation_equivariance();
  criterion_13_window_vs_grid();
  criterion_14_cli_determinism();
  std::printf("%s: %d failing criterion line(s), %.1f s total\n",
              g_failures == 0 ? "ALL PASS" : "FAILURES PRESENT", g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
