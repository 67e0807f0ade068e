#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <secnet/analytic.hpp>
#include <secnet/config.hpp>

namespace secnet::cli {

enum class Mode { Analytic, Mc, Both };

std::optional<Mode> parse_mode(const std::string& text);

// One swept variable and the values it takes, in output order.
// c_q holds c1 fixed and sets c2 = c1 - c_q.
struct SweepSpec {
  std::string variable;
  std::vector<double> values;
};

// Parses "var=v1,v2,..." (throws ConfigError on malformed input or an
// unknown variable).
SweepSpec parse_sweep_spec(const std::string& text);

// Applies one sweep value to a config (throws ConfigError if the resulting
// config is invalid).
void apply_sweep_value(NetworkConfig& cfg, const std::string& variable,
                       double value);

struct CsvRow {
  std::string variable;
  std::optional<double> value;
  std::optional<double> sop_analytic;
  std::optional<double> sop_mc;
  std::optional<double> mc_stderr;
  std::optional<double> nu_t;
  std::optional<double> theta_t;
  std::optional<double> nu_i;
  std::optional<double> theta_i;
  std::optional<double> q_e;
  std::optional<std::uint64_t> n_trials;
  std::optional<std::uint64_t> seed;
};

// Shortest round-trip decimal form, '.' decimal point, no locale.
std::string format_double(double v);

std::string csv_header();
std::string csv_line(const CsvRow& row);

// Runs the requested pipelines on one config.
SopReport run_point(const NetworkConfig& cfg, Mode mode, unsigned threads = 0);

CsvRow report_to_row(const SopReport& report, const NetworkConfig& cfg,
                     Mode mode, std::string variable,
                     std::optional<double> value);

struct SweepResult {
  std::vector<CsvRow> rows;
  bool all_ok = true;
};

// One row per sweep value, in input order; a failing point logs to `err`
// and leaves its result cells empty.
SweepResult run_sweep(const NetworkConfig& cfg, const SweepSpec& spec,
                      Mode mode, unsigned threads, std::ostream& err);

// Named oracle and invariant checks plus an epsilon_z sensitivity table.
// Writes one line per check; returns false if any named check fails.
bool run_validate(const NetworkConfig& cfg, std::ostream& out);

}  // namespace secnet::cli
