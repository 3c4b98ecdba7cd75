// Copyright (c) 2026 agenda developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface over the election, continuum, bounds and estimator
// modules. Every randomized command records its master seed and full
// parameter set, so any emitted JSON record can be re-executed verbatim with
// `rerun --config`.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "agenda/bounds.hpp"
#include "agenda/continuum.hpp"
#include "agenda/election.hpp"
#include "agenda/estimator.hpp"
#include "record_io.hpp"

namespace {

using agenda::io::Record;

class Timer {
 public:
  double ms() const {
    const auto dt = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(dt).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int workers_from_env() {
  const char* env = std::getenv("AGENDA_WORKERS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long w = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || w < 1)
    throw std::invalid_argument("AGENDA_WORKERS must be a positive integer");
  return static_cast<int>(w);
}

std::uint64_t auto_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void warn_even_m(int m) {
  if (m % 2 == 0)
    std::cerr << "warning: even voter count m=" << m
              << " inflates tie-void rates; odd m avoids the parity effect\n";
}

agenda::PrecisionConfig precision_from(const std::string& mode, int digits) {
  if (mode == "extended") return agenda::PrecisionConfig::extended(digits);
  return agenda::PrecisionConfig::machine();
}

void attach_estimate(Record& r, const agenda::BinomialEstimate& est) {
  r["successes"] = est.successes;
  r["p_hat"] = est.p_hat();
  r["wilson_lower"] = est.wilson_lower();
  r["wilson_upper"] = est.wilson_upper();
}

// ---- command cores; rerun re-enters through these -------------------------

Record run_discrete_sim(int n, int m, int l, std::uint64_t trials, std::uint64_t seed,
                        bool universal, int workers) {
  warn_even_m(m);
  Timer timer;
  const agenda::BinomialEstimate est =
      universal ? agenda::estimate_p2_discrete(n, m, l, trials, {seed}, workers)
                : agenda::estimate_p1_discrete(n, m, l, trials, {seed}, workers);
  Record r;
  r["command"] = "discrete-sim";
  r["n"] = n;
  r["m"] = m;
  r["l"] = l;
  r["universal"] = universal;
  r["trials"] = trials;
  r["seed"] = seed;
  attach_estimate(r, est);
  r["elapsed_ms"] = timer.ms();
  return r;
}

Record run_discrete_optimize(int n, int m, int l_min, int l_max, std::uint64_t scan_trials,
                             std::uint64_t validation_trials, std::uint64_t seed,
                             bool universal, int workers) {
  warn_even_m(m);
  Timer timer;
  const agenda::PlateauResult res = agenda::wilson_centroid_optimize(
      n, m, l_min, l_max, scan_trials, validation_trials, 1.96, {seed}, universal, workers);
  Record r;
  r["command"] = "discrete-optimize";
  r["n"] = n;
  r["m"] = m;
  r["l_min"] = l_min;
  r["l_max"] = l_max;
  r["universal"] = universal;
  r["scan_trials"] = scan_trials;
  r["validation_trials"] = validation_trials;
  r["seed"] = seed;
  r["l_opt"] = res.l_opt;
  r["l_left"] = res.l_left;
  r["l_right"] = res.l_right;
  attach_estimate(r, res.p_validated);
  r["elapsed_ms"] = timer.ms();
  return r;
}

Record run_continuous_eval(int m, double eta, const std::string& mode, int digits) {
  Timer timer;
  const agenda::WinProbability w = agenda::p_win_continuous({m, eta}, precision_from(mode, digits));
  Record r;
  r["command"] = "continuous-eval";
  r["m"] = m;
  r["eta"] = eta;
  r["mode"] = mode;
  r["digits"] = digits;
  r["p"] = w.p;
  r["q"] = w.q;
  r["log10_q"] = w.log10_q;
  r["elapsed_ms"] = timer.ms();
  return r;
}

Record run_continuous_optimize(int m, double grid_start, double grid_end, double grid_step,
                               const std::string& mode, int digits) {
  Timer timer;
  const agenda::EtaOptimum opt =
      agenda::optimize_eta_win(m, grid_start, grid_end, grid_step, precision_from(mode, digits));
  Record r;
  r["command"] = "continuous-optimize";
  r["m"] = m;
  r["grid_start"] = grid_start;
  r["grid_end"] = grid_end;
  r["grid_step"] = grid_step;
  r["mode"] = mode;
  r["digits"] = digits;
  r["eta_star"] = opt.eta_star;
  r["p"] = opt.p;
  r["q"] = opt.q;
  r["log10_q"] = opt.log10_q;
  r["elapsed_ms"] = timer.ms();
  return r;
}

Record run_decay_table(const std::vector<int>& m_values, const std::string& mode, int digits) {
  Timer timer;
  const auto rows = agenda::decay_table(m_values, precision_from(mode, digits));
  Record r;
  r["command"] = "decay-table";
  r["mode"] = mode;
  r["digits"] = digits;
  Record row_array = Record::array();
  std::vector<std::pair<int, double>> slope_rows;
  for (const auto& row : rows) {
    Record jr;
    jr["m"] = row.m;
    jr["eta_star"] = row.eta_star;
    jr["q"] = row.q;
    jr["log10_q"] = row.log10_q;
    row_array.push_back(jr);
    slope_rows.emplace_back(row.m, row.log10_q);
  }
  r["rows"] = row_array;
  if (slope_rows.size() >= 3)
    r["slope"] = agenda::fit_decay_slope(slope_rows);
  else
    r["slope"] = nullptr;
  r["elapsed_ms"] = timer.ms();
  return r;
}

Record run_continuous_universal(int m, std::optional<double> eta, std::uint64_t trials,
                                std::uint64_t seed, double grid_start, double grid_end,
                                double grid_step, int workers) {
  warn_even_m(m);
  Timer timer;
  Record r;
  r["command"] = "continuous-universal";
  r["m"] = m;
  r["trials"] = trials;
  r["seed"] = seed;
  if (eta.has_value()) {
    const agenda::BinomialEstimate est =
        agenda::estimate_p2_continuous(m, *eta, trials, {seed}, workers);
    r["eta"] = *eta;
    attach_estimate(r, est);
  } else {
    const agenda::UniversalOptimum opt = agenda::optimize_eta_universal(
        m, trials, {seed}, {grid_start, grid_end, grid_step}, workers);
    r["grid_start"] = grid_start;
    r["grid_end"] = grid_end;
    r["grid_step"] = grid_step;
    r["eta_star"] = opt.eta_star;
    r["scan_successes"] = opt.scan_best.successes;
    attach_estimate(r, opt.validated);
  }
  r["elapsed_ms"] = timer.ms();
  return r;
}

Record run_bounds(int n, int m, int l) {
  Timer timer;
  const agenda::PerRoundRates rates = agenda::per_round_rates(n, l);
  Record r;
  r["command"] = "bounds";
  r["n"] = n;
  r["m"] = m;
  r["l"] = l;
  r["two_term_bound"] = agenda::failure_upper_bound(n, m, l);
  r["relaxed_bound"] = agenda::failure_upper_bound_relaxed(n, m, l);
  r["rate_first_round"] = rates.first_round;
  r["rate_final_round"] = rates.final_round;
  r["elapsed_ms"] = timer.ms();
  return r;
}

Record rerun_record(const Record& cfg, int workers) {
  const std::string command = cfg.at("command").get<std::string>();
  if (command == "discrete-sim")
    return run_discrete_sim(cfg.at("n"), cfg.at("m"), cfg.at("l"), cfg.at("trials"),
                            cfg.at("seed"), cfg.at("universal"), workers);
  if (command == "discrete-optimize")
    return run_discrete_optimize(cfg.at("n"), cfg.at("m"), cfg.at("l_min"), cfg.at("l_max"),
                                 cfg.at("scan_trials"), cfg.at("validation_trials"),
                                 cfg.at("seed"), cfg.at("universal"), workers);
  if (command == "continuous-eval")
    return run_continuous_eval(cfg.at("m"), cfg.at("eta"), cfg.at("mode"), cfg.at("digits"));
  if (command == "continuous-optimize")
    return run_continuous_optimize(cfg.at("m"), cfg.at("grid_start"), cfg.at("grid_end"),
                                   cfg.at("grid_step"), cfg.at("mode"), cfg.at("digits"));
  if (command == "decay-table") {
    std::vector<int> m_values;
    for (const auto& row : cfg.at("rows")) m_values.push_back(row.at("m").get<int>());
    return run_decay_table(m_values, cfg.at("mode"), cfg.at("digits"));
  }
  if (command == "continuous-universal") {
    if (cfg.contains("eta"))
      return run_continuous_universal(cfg.at("m"), cfg.at("eta").get<double>(),
                                      cfg.at("trials"), cfg.at("seed"), 0, 0, 0, workers);
    return run_continuous_universal(cfg.at("m"), std::nullopt, cfg.at("trials"),
                                    cfg.at("seed"), cfg.at("grid_start"), cfg.at("grid_end"),
                                    cfg.at("grid_step"), workers);
  }
  if (command == "bounds") return run_bounds(cfg.at("n"), cfg.at("m"), cfg.at("l"));
  throw std::invalid_argument("rerun: unknown command in config: " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-round cyclic-election simulation and width-optimization toolkit"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string out_path;
  const auto add_output_options = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "also write the record to this file");
  };

  int n = 0, m = 0, l = 0;
  int l_min = 2, l_max = -1;
  std::uint64_t trials = 100000, scan_trials = 10000, validation_trials = 100000;
  std::optional<std::uint64_t> seed_opt;
  bool universal = false;
  double eta = -1.0;
  std::optional<double> eta_opt;
  int digits = 0;  // 0 = machine mode
  double grid_start = 0.1, grid_end = 0.45, grid_step = 0.0007;
  std::vector<int> m_list;

  CLI::App* sim = app.add_subcommand("discrete-sim", "Monte Carlo victory frequency at (n, m, l)");
  sim->add_option("--n", n, "even candidate count >= 6")->required();
  sim->add_option("--m", m, "voter count")->required();
  sim->add_option("--l", l, "cluster width")->required();
  sim->add_option("--trials", trials, "Monte Carlo trials");
  sim->add_option("--seed", seed_opt, "master seed (auto-generated and recorded if omitted)");
  sim->add_flag("--universal", universal, "estimate the all-rotations victory event");
  add_output_options(sim);

  CLI::App* opt = app.add_subcommand("discrete-optimize",
                                     "Wilson Centroid scan for the best cluster width");
  opt->add_option("--n", n)->required();
  opt->add_option("--m", m)->required();
  opt->add_option("--l-min", l_min, "scan start (default 2)");
  opt->add_option("--l-max", l_max, "scan end (default n/2-1)");
  opt->add_option("--scan-trials", scan_trials, "trials per scanned width");
  opt->add_option("--validation-trials", validation_trials, "trials for the validation pass");
  opt->add_option("--seed", seed_opt);
  opt->add_flag("--universal", universal);
  add_output_options(opt);

  CLI::App* ceval = app.add_subcommand("continuous-eval",
                                       "victory probability in the continuous limit");
  ceval->add_option("--m", m)->required();
  ceval->add_option("--eta", eta, "cluster width in (0, 1/2)")->required();
  ceval->add_option("--precision", digits, "extended-precision decimal digits (>= 60)");
  add_output_options(ceval);

  CLI::App* copt = app.add_subcommand("continuous-optimize",
                                      "optimal continuous width via grid + golden section");
  copt->add_option("--m", m)->required();
  copt->add_option("--grid-start", grid_start);
  copt->add_option("--grid-end", grid_end);
  copt->add_option("--grid-step", grid_step);
  copt->add_option("--precision", digits);
  add_output_options(copt);

  CLI::App* decay = app.add_subcommand("decay-table",
                                       "optimal width and failure tail per electorate size");
  decay->add_option("--m", m_list, "comma-separated voter counts")
      ->required()
      ->delimiter(',');
  decay->add_option("--precision", digits);
  add_output_options(decay);

  CLI::App* cuniv = app.add_subcommand("continuous-universal",
                                       "universal victory event in the continuous limit");
  cuniv->add_option("--m", m)->required();
  cuniv->add_option("--eta", eta_opt, "evaluate at this width (omit to optimize over a grid)");
  cuniv->add_option("--trials", trials);
  cuniv->add_option("--seed", seed_opt);
  double ugrid_start = 0.10, ugrid_end = 0.45, ugrid_step = 0.0025;
  cuniv->add_option("--grid-start", ugrid_start);
  cuniv->add_option("--grid-end", ugrid_end);
  cuniv->add_option("--grid-step", ugrid_step);
  add_output_options(cuniv);

  CLI::App* bnd = app.add_subcommand("bounds", "analytic failure bounds at (n, m, l)");
  bnd->add_option("--n", n)->required();
  bnd->add_option("--m", m)->required();
  bnd->add_option("--l", l)->required();
  add_output_options(bnd);

  std::string config_path;
  CLI::App* rerun = app.add_subcommand("rerun", "re-execute a previously emitted JSON record");
  rerun->add_option("--config", config_path, "path to a JSON record")->required();
  add_output_options(rerun);

  try {
    app.parse(argc, argv);

    const int workers = workers_from_env();
    const std::uint64_t seed = seed_opt.value_or(auto_seed());
    const std::string mode = digits > 0 ? "extended" : "machine";
    const int effective_digits = digits > 0 ? digits : 0;

    Record record;
    if (sim->parsed()) {
      record = run_discrete_sim(n, m, l, trials, seed, universal, workers);
    } else if (opt->parsed()) {
      const int hi = l_max > 0 ? l_max : n / 2 - 1;
      record = run_discrete_optimize(n, m, l_min, hi, scan_trials, validation_trials, seed,
                                     universal, workers);
    } else if (ceval->parsed()) {
      record = run_continuous_eval(m, eta, mode, effective_digits);
    } else if (copt->parsed()) {
      record = run_continuous_optimize(m, grid_start, grid_end, grid_step, mode, effective_digits);
    } else if (decay->parsed()) {
      record = run_decay_table(m_list, mode, effective_digits);
    } else if (cuniv->parsed()) {
      record = run_continuous_universal(m, eta_opt, trials, seed, ugrid_start, ugrid_end,
                                        ugrid_step, workers);
    } else if (bnd->parsed()) {
      record = run_bounds(n, m, l);
    } else if (rerun->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open config: " + config_path);
      Record cfg;
      in >> cfg;
      record = rerun_record(cfg, workers);
    }
    agenda::io::emit(record, format, out_path);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
