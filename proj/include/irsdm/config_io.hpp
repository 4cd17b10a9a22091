// SPDX-License-Identifier: Apache-2.0
//
// irsdm - secrecy-rate optimization for IRS-aided directional modulation links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef IRSDM_CONFIG_IO_HPP
#define IRSDM_CONFIG_IO_HPP

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "irsdm/orchestrator.hpp"
#include "irsdm/system_model.hpp"

namespace irsdm {

// ---------------------------------------------------------------------------
// Flat key=value configuration
// ---------------------------------------------------------------------------

namespace detail {

struct ConfigKey {
  const char* name;
  std::function<void(SystemConfig&, const std::string&)> set;
  std::function<std::string(const SystemConfig&)> get;
};

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline double parse_double(const std::string& s, const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: cannot parse value '" + s +
                                "' for key '" + key + "'");
  }
  if (pos != s.size())
    throw std::invalid_argument("config: trailing characters in value '" + s +
                                "' for key '" + key + "'");
  return v;
}

inline const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    const auto add_double = [&k](const char* name, double SystemConfig::*field) {
      k.push_back(ConfigKey{
          name,
          [name, field](SystemConfig& c, const std::string& s) {
            c.*field = parse_double(s, name);
          },
          [field](const SystemConfig& c) { return format_double(c.*field); }});
    };
    const auto add_int = [&k](const char* name, int SystemConfig::*field) {
      k.push_back(ConfigKey{
          name,
          [name, field](SystemConfig& c, const std::string& s) {
            const double v = parse_double(s, name);
            c.*field = static_cast<int>(v);
            if (static_cast<double>(c.*field) != v)
              throw std::invalid_argument(std::string("config: key '") + name +
                                          "' requires an integer");
          },
          [field](const SystemConfig& c) { return std::to_string(c.*field); }});
    };
    const auto add_size = [&k](const char* name,
                               std::size_t SystemConfig::*field) {
      k.push_back(ConfigKey{
          name,
          [name, field](SystemConfig& c, const std::string& s) {
            const double v = parse_double(s, name);
            if (v < 0.0 || static_cast<double>(static_cast<std::size_t>(v)) != v)
              throw std::invalid_argument(std::string("config: key '") + name +
                                          "' requires a nonnegative integer");
            c.*field = static_cast<std::size_t>(v);
          },
          [field](const SystemConfig& c) { return std::to_string(c.*field); }});
    };

    add_size("n", &SystemConfig::n_alice);
    add_size("m", &SystemConfig::m_irs);
    add_double("p_dbm", &SystemConfig::p_dbm);
    add_double("sigma_b_dbm", &SystemConfig::sigma_b_dbm);
    add_double("sigma_e_dbm", &SystemConfig::sigma_e_dbm);
    add_double("theta_ai", &SystemConfig::theta_ai);
    add_double("theta_ab", &SystemConfig::theta_ab);
    add_double("theta_ae", &SystemConfig::theta_ae);
    add_double("d_ai", &SystemConfig::d_ai);
    add_double("d_ab", &SystemConfig::d_ab);
    add_double("d_ae", &SystemConfig::d_ae);
    add_double("spacing_over_lambda", &SystemConfig::spacing_over_lambda);
    add_double("pathloss_const", &SystemConfig::pathloss_const);

    // "auto" keeps the IRS axis perpendicular to the Alice-IRS line
    k.push_back(ConfigKey{
        "irs_orientation",
        [](SystemConfig& c, const std::string& s) {
          if (s == "auto")
            c.irs_orientation = std::numeric_limits<double>::quiet_NaN();
          else
            c.irs_orientation = parse_double(s, "irs_orientation");
        },
        [](const SystemConfig& c) {
          return std::isnan(c.irs_orientation)
                     ? std::string("auto")
                     : format_double(c.irs_orientation);
        }});

    k.push_back(ConfigKey{
        "seed",
        [](SystemConfig& c, const std::string& s) {
          try {
            c.seed = std::stoull(s);
          } catch (const std::exception&) {
            throw std::invalid_argument("config: cannot parse seed '" + s + "'");
          }
        },
        [](const SystemConfig& c) { return std::to_string(c.seed); }});

    add_double("tol_outer", &SystemConfig::tol_outer);
    add_int("max_outer", &SystemConfig::max_outer);
    add_int("j_randomizations", &SystemConfig::j_randomizations);
    add_double("gpi_tol", &SystemConfig::gpi_tol);
    add_int("gpi_max_iter", &SystemConfig::gpi_max_iter);
    add_double("mm_outer_tol", &SystemConfig::mm_outer_tol);
    add_int("mm_max_outer", &SystemConfig::mm_max_outer);
    add_double("pga_grad_tol", &SystemConfig::pga_grad_tol);
    add_int("pga_max_iter", &SystemConfig::pga_max_iter);
    add_double("dykstra_tol", &SystemConfig::dykstra_tol);
    add_int("dykstra_max_iter", &SystemConfig::dykstra_max_iter);
    add_double("sca_outer_tol", &SystemConfig::sca_outer_tol);
    add_int("sca_max_outer", &SystemConfig::sca_max_outer);
    add_double("sca_pga_tol", &SystemConfig::sca_pga_tol);
    add_int("sca_pga_max_iter", &SystemConfig::sca_pga_max_iter);
    return k;
  }();
  return keys;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Applies one `key=value` override; unknown keys raise.
inline void apply_override(SystemConfig& cfg, const std::string& key,
                           const std::string& value) {
  for (const auto& k : detail::config_keys()) {
    if (key == k.name) {
      k.set(cfg, value);
      return;
    }
  }
  throw std::invalid_argument("config: unknown key '" + key + "'");
}

inline void apply_override_pair(SystemConfig& cfg, const std::string& pair) {
  const auto eq = pair.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("config: override '" + pair +
                                "' is not of the form key=value");
  apply_override(cfg, detail::trim(pair.substr(0, eq)),
                 detail::trim(pair.substr(eq + 1)));
}

/// Loads a flat key=value file ('#' starts a comment) on top of defaults.
inline SystemConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  SystemConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " of '" + path + "' is not key=value");
    apply_override(cfg, detail::trim(line.substr(0, eq)),
                   detail::trim(line.substr(eq + 1)));
  }
  return cfg;
}

/// Full resolved configuration as a single `key=value` line, fixed key order.
inline std::string config_echo(const SystemConfig& cfg) {
  std::string out;
  for (const auto& k : detail::config_keys()) {
    if (!out.empty()) out += ' ';
    out += k.name;
    out += '=';
    out += k.get(cfg);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

struct CsvRow {
  std::string scheme;
  std::string axis;
  double axis_value = 0.0;
  int iteration = 0;
  double secrecy_rate_bits = 0.0;
  double alpha = 0.0;
  bool converged = false;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
};

inline constexpr const char* kCsvHeader =
    "scheme,axis,axis_value,iteration,secrecy_rate_bits,alpha,converged,seed,"
    "wall_time_s";

/// One row per trace point of one finished run. `include_timing` keeps the
/// CSV byte-reproducible when off (the wall_time_s column reads 0).
inline std::vector<CsvRow> rows_from_result(const SchemeResult& r,
                                            const std::string& axis,
                                            double axis_value,
                                            std::uint64_t seed,
                                            bool include_timing) {
  std::vector<CsvRow> rows;
  rows.reserve(r.sr_trace.size());
  for (std::size_t i = 0; i < r.sr_trace.size(); ++i) {
    CsvRow row;
    row.scheme = scheme_name(r.scheme);
    row.axis = axis;
    row.axis_value = axis_value;
    row.iteration = static_cast<int>(i) + 1;
    row.secrecy_rate_bits = r.sr_trace[i];
    row.alpha = r.alpha_trace[i];
    row.converged = r.converged;
    row.seed = seed;
    row.wall_time_s = include_timing ? r.wall_time_s : 0.0;
    rows.push_back(row);
  }
  return rows;
}

inline void emit_csv(const std::vector<CsvRow>& rows,
                     const std::string& config_comment, std::ostream& out) {
  if (!config_comment.empty()) out << "# config: " << config_comment << "\n";
  out << kCsvHeader << "\n";
  for (const CsvRow& r : rows) {
    out << r.scheme << ',' << r.axis << ',' << detail::format_double(r.axis_value)
        << ',' << r.iteration << ',' << detail::format_double(r.secrecy_rate_bits)
        << ',' << detail::format_double(r.alpha) << ','
        << (r.converged ? 1 : 0) << ',' << r.seed << ','
        << detail::format_double(r.wall_time_s) << "\n";
  }
}

inline void write_csv_file(const std::vector<CsvRow>& rows,
                           const std::string& config_comment,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
  emit_csv(rows, config_comment, out);
  out.flush();
  if (!out) throw std::runtime_error("csv: write to '" + path + "' failed");
}

}  // namespace irsdm

#endif  // IRSDM_CONFIG_IO_HPP
