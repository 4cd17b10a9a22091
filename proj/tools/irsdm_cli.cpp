// SPDX-License-Identifier: Apache-2.0
//
// irsdm - secrecy-rate optimization for IRS-aided directional modulation links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Command-line front end: single runs, power and IRS-size sweeps,
// convergence traces, and the oracle selftest. Output is a flat CSV,
// byte-reproducible for a fixed (config, seed) unless --timing is given.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "irsdm/config_io.hpp"
#include "irsdm/orchestrator.hpp"
#include "irsdm/selfcheck.hpp"

namespace {

using namespace irsdm;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::vector<std::string> scheme_names;
  std::vector<double> values;
  std::string out_path = "-";
  int restarts = 1;
  bool timing = false;

  std::optional<std::uint64_t> seed;
  std::optional<double> n, m, p_dbm, sigma_b_dbm, sigma_e_dbm;
  std::optional<double> theta_ai, theta_ab, theta_ae, d_ai, d_ab, d_ae;
};

void add_common_options(CLI::App* cmd, CommonArgs& args, bool with_values) {
  cmd->add_option("--config", args.config_path,
                  "flat key=value config file (keys as in --set)");
  cmd->add_option("--set", args.overrides,
                  "override any config key, e.g. --set m=64")
      ->take_all();
  cmd->add_option("--scheme,-s", args.scheme_names,
                  "schemes: hp, lc, equal_pa, no_irs, random_irs")
      ->take_all();
  cmd->add_option("--out,-o", args.out_path, "output CSV path ('-' = stdout)");
  cmd->add_option("--restarts", args.restarts,
                  "multi-start restarts per run (default 1)");
  cmd->add_flag("--timing", args.timing,
                "emit measured wall time in the CSV (breaks byte-level "
                "reproducibility)");
  if (with_values)
    cmd->add_option("--values", args.values,
                    "axis values for the sweep (repeat or comma-separate)")
        ->delimiter(',')
        ->take_all();

  cmd->add_option("--seed", args.seed, "RNG seed");
  cmd->add_option("--n", args.n, "Alice antenna count");
  cmd->add_option("--m", args.m, "IRS element count");
  cmd->add_option("--p-dbm", args.p_dbm, "total transmit power [dBm]");
  cmd->add_option("--sigma-b-dbm", args.sigma_b_dbm, "Bob noise power [dBm]");
  cmd->add_option("--sigma-e-dbm", args.sigma_e_dbm, "Eve noise power [dBm]");
  cmd->add_option("--theta-ai", args.theta_ai, "Alice->IRS angle [rad]");
  cmd->add_option("--theta-ab", args.theta_ab, "Alice->Bob angle [rad]");
  cmd->add_option("--theta-ae", args.theta_ae, "Alice->Eve angle [rad]");
  cmd->add_option("--d-ai", args.d_ai, "Alice-IRS distance [m]");
  cmd->add_option("--d-ab", args.d_ab, "Alice-Bob distance [m]");
  cmd->add_option("--d-ae", args.d_ae, "Alice-Eve distance [m]");
}

SystemConfig resolve_config(const CommonArgs& args) {
  SystemConfig cfg;
  if (!args.config_path.empty()) cfg = load_config_file(args.config_path);

  const auto set_num = [&cfg](const char* key, const std::optional<double>& v) {
    if (v.has_value())
      apply_override(cfg, key, irsdm::detail::format_double(*v));
  };
  set_num("n", args.n);
  set_num("m", args.m);
  set_num("p_dbm", args.p_dbm);
  set_num("sigma_b_dbm", args.sigma_b_dbm);
  set_num("sigma_e_dbm", args.sigma_e_dbm);
  set_num("theta_ai", args.theta_ai);
  set_num("theta_ab", args.theta_ab);
  set_num("theta_ae", args.theta_ae);
  set_num("d_ai", args.d_ai);
  set_num("d_ab", args.d_ab);
  set_num("d_ae", args.d_ae);
  if (args.seed.has_value())
    apply_override(cfg, "seed", std::to_string(*args.seed));

  for (const std::string& pair : args.overrides)
    apply_override_pair(cfg, pair);
  validate(cfg);
  return cfg;
}

std::vector<Scheme> resolve_schemes(const CommonArgs& args,
                                    std::vector<Scheme> fallback) {
  if (args.scheme_names.empty()) return fallback;
  std::vector<Scheme> out;
  for (const std::string& name : args.scheme_names) {
    const auto s = parse_scheme(name);
    if (!s.has_value())
      throw std::invalid_argument("unknown scheme '" + name +
                                  "' (expected hp, lc, equal_pa, no_irs, "
                                  "random_irs)");
    out.push_back(*s);
  }
  return out;
}

void write_rows(const std::vector<CsvRow>& rows, const SystemConfig& cfg,
                const std::string& out_path) {
  if (out_path == "-") {
    emit_csv(rows, config_echo(cfg), std::cout);
  } else {
    write_csv_file(rows, config_echo(cfg), out_path);
  }
}

void report_run(const SchemeResult& r, const std::string& axis,
                double axis_value) {
  std::fprintf(stderr,
               "[irsdm] %-10s %s=%-8g iters=%-3d converged=%d R_s=%.6f "
               "bits/s/Hz (%.2fs)\n",
               scheme_name(r.scheme), axis.c_str(), axis_value, r.iterations,
               r.converged ? 1 : 0, r.final_secrecy_rate(), r.wall_time_s);
}

int cmd_run(const CommonArgs& args) {
  const SystemConfig cfg = resolve_config(args);
  const std::vector<Scheme> schemes =
      resolve_schemes(args, {Scheme::MaxSrHp});
  std::vector<CsvRow> rows;
  for (const Scheme s : schemes) {
    const SchemeResult r = args.restarts > 1
                               ? multi_start(cfg, s, args.restarts)
                               : run_scheme(cfg, s);
    report_run(r, "none", 0.0);
    const auto batch = rows_from_result(r, "none", 0.0, cfg.seed, args.timing);
    rows.insert(rows.end(), batch.begin(), batch.end());
  }
  write_rows(rows, cfg, args.out_path);
  return 0;
}

int cmd_sweep(const CommonArgs& args, SweepAxis axis,
              std::vector<double> default_values,
              std::vector<Scheme> default_schemes) {
  const SystemConfig cfg = resolve_config(args);
  const std::vector<Scheme> schemes = resolve_schemes(args, default_schemes);
  std::vector<double> values =
      args.values.empty() ? std::move(default_values) : args.values;
  std::sort(values.begin(), values.end());

  const std::vector<SweepCell> cells = sweep(cfg, schemes, axis, values);
  std::vector<CsvRow> rows;
  bool any_failed = false;
  for (const SweepCell& cell : cells) {
    if (cell.failed) {
      any_failed = true;
      std::fprintf(stderr, "[irsdm] FAILED cell %s %s=%g: %s\n",
                   scheme_name(cell.scheme), sweep_axis_name(axis),
                   cell.axis_value, cell.error.c_str());
      continue;
    }
    report_run(cell.result, sweep_axis_name(axis), cell.axis_value);
    const auto batch = rows_from_result(cell.result, sweep_axis_name(axis),
                                        cell.axis_value, cfg.seed, args.timing);
    rows.insert(rows.end(), batch.begin(), batch.end());
  }
  write_rows(rows, cfg, args.out_path);
  return any_failed ? 1 : 0;
}

int cmd_selftest(bool quick) {
  const auto results = selfcheck::run_selftest(quick);
  bool all_pass = true;
  std::printf("%-36s %-6s %s\n", "check", "status", "detail");
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("%-36s %-6s %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
  }
  std::printf("selftest: %s\n", all_pass ? "PASS" : "FAIL");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "irsdm - secrecy-rate maximization for an IRS-aided secure "
      "directional-modulation link"};
  app.require_subcommand(1);

  CommonArgs run_args, sweep_p_args, sweep_m_args, conv_args;
  bool quick = false;

  CLI::App* run = app.add_subcommand(
      "run", "optimize one scenario with the selected schemes");
  add_common_options(run, run_args, false);

  CLI::App* sweep_p = app.add_subcommand(
      "sweep-p", "final secrecy rate vs transmit power");
  add_common_options(sweep_p, sweep_p_args, true);

  CLI::App* sweep_m = app.add_subcommand(
      "sweep-m", "final secrecy rate vs IRS element count");
  add_common_options(sweep_m, sweep_m_args, true);

  CLI::App* conv = app.add_subcommand(
      "convergence", "per-iteration secrecy-rate traces");
  add_common_options(conv, conv_args, true);

  CLI::App* selftest = app.add_subcommand(
      "selftest", "run the oracle suites at reduced scale");
  selftest->add_flag("--quick", quick, "subset finishing in a few seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (sweep_p->parsed())
      return cmd_sweep(sweep_p_args, SweepAxis::PowerDbm,
                       {10, 15, 20, 25, 30, 35}, {Scheme::MaxSrHp});
    if (sweep_m->parsed())
      return cmd_sweep(sweep_m_args, SweepAxis::IrsElements, {8, 16, 32, 64},
                       {Scheme::MaxSrHp});
    if (conv->parsed()) {
      const SystemConfig base = resolve_config(conv_args);
      return cmd_sweep(conv_args, SweepAxis::IrsElements,
                       {static_cast<double>(base.m_irs)},
                       {Scheme::MaxSrHp, Scheme::MaxSrLc});
    }
    if (selftest->parsed()) return cmd_selftest(quick);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
