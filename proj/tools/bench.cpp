// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
//
// Throughput comparison of the serial reference kernels against the OpenMP
// ones. Counts must match exactly; timings are wall clock.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "agenda/continuum.hpp"
#include "agenda/estimator.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<std::uint64_t()>& fn, std::uint64_t& successes) {
  const auto t0 = Clock::now();
  successes = fn();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void report(const std::string& name, std::uint64_t trials, double serial_ms, double parallel_ms,
            std::uint64_t serial_succ, std::uint64_t parallel_succ) {
  std::printf("%-34s %9llu trials  serial %8.1f ms  parallel %8.1f ms  speedup %.2fx  %s\n",
              name.c_str(), static_cast<unsigned long long>(trials), serial_ms, parallel_ms,
              serial_ms / parallel_ms, serial_succ == parallel_succ ? "counts match" : "MISMATCH");
}

}  // namespace

int main() {
  const agenda::RngSpec rng{20260810};
  std::printf("workers: %d\n", omp_get_max_threads());

  {
    const std::uint64_t trials = 400000;
    std::uint64_t s1 = 0, s2 = 0;
    const double t_serial = time_ms(
        [&] { return agenda::serial::estimate_p1_discrete(14, 21, 5, trials, rng).successes; }, s1);
    const double t_par = time_ms(
        [&] { return agenda::estimate_p1_discrete(14, 21, 5, trials, rng).successes; }, s2);
    report("discrete p1 (n=14, m=21, l=5)", trials, t_serial, t_par, s1, s2);
  }
  {
    const std::uint64_t trials = 40000;
    std::uint64_t s1 = 0, s2 = 0;
    const double t_serial = time_ms(
        [&] { return agenda::serial::estimate_p2_discrete(30, 51, 9, trials, rng).successes; }, s1);
    const double t_par = time_ms(
        [&] { return agenda::estimate_p2_discrete(30, 51, 9, trials, rng).successes; }, s2);
    report("discrete universal (n=30, m=51)", trials, t_serial, t_par, s1, s2);
  }
  {
    const std::uint64_t trials = 200000;
    std::uint64_t s1 = 0, s2 = 0;
    const double t_serial = time_ms(
        [&] {
          return agenda::serial::estimate_p2_continuous(51, 0.2335, trials, rng).successes;
        },
        s1);
    const double t_par = time_ms(
        [&] { return agenda::estimate_p2_continuous(51, 0.2335, trials, rng).successes; }, s2);
    report("continuous universal (m=51)", trials, t_serial, t_par, s1, s2);
  }
  return 0;
}
