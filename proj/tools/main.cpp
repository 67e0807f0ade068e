#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <secnet/config.hpp>
#include <secnet/errors.hpp>

#include "cli_lib.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitValidation = 4;

struct Options {
  std::string config_path;
  std::string mode_text = "both";
  std::string out_path;
  std::string sweep_text;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

// Precedence for the seed: --seed flag, then SECNET_SEED, then the config
// file, then the built-in default.
void resolve_overrides(secnet::NetworkConfig& cfg, const Options& opt,
                       bool seed_flag_given) {
  if (const char* env = std::getenv("SECNET_SEED");
      env != nullptr && !seed_flag_given) {
    std::string text(env);
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      cfg.seed = v;
    } catch (const std::exception&) {
      throw secnet::ConfigError("SECNET_SEED is not a valid seed: '" + text +
                                "'");
    }
  }
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.trials) cfg.trials = *opt.trials;
}

secnet::NetworkConfig load_effective_config(const Options& opt,
                                            bool seed_flag_given) {
  secnet::NetworkConfig cfg;
  if (!opt.config_path.empty()) cfg = secnet::load_config(opt.config_path);
  resolve_overrides(cfg, opt, seed_flag_given);
  cfg.validate();
  return cfg;
}

int write_csv(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    return kExitConfig;
  }
  out << content;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "secnet: secrecy outage probability of a relay network with "
      "trust-classified cooperative jammers"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "JSON config file");
  app.add_option("--mode", opt.mode_text,
                 "which pipelines to run: analytic|mc|both")
      ->capture_default_str();
  auto* seed_opt =
      app.add_option("--seed", opt.seed, "RNG seed (overrides SECNET_SEED)");
  app.add_option("--trials", opt.trials, "Monte-Carlo trial count");
  app.add_option("--out", opt.out_path, "write CSV here instead of stdout");
  app.add_option("--threads", opt.threads,
                 "worker threads (0 = hardware count)");

  CLI::App* point = app.add_subcommand("point", "evaluate one configuration");
  point->fallthrough();
  CLI::App* sweep =
      app.add_subcommand("sweep", "evaluate a list of values of one variable");
  sweep->fallthrough();
  sweep->add_option("--sweep", opt.sweep_text,
                    "variable=v1,v2,... (variables: beta_e_db, eve_r, c1, "
                    "c_q, seed, trials)")
      ->required();
  CLI::App* validate =
      app.add_subcommand("validate", "run oracle and invariant cross-checks");
  validate->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const auto mode = secnet::cli::parse_mode(opt.mode_text);
    if (!mode) {
      throw secnet::ConfigError("unknown mode '" + opt.mode_text +
                                "' (expected analytic, mc or both)");
    }
    const secnet::NetworkConfig cfg =
        load_effective_config(opt, seed_opt->count() > 0);

    if (point->parsed()) {
      const secnet::SopReport report =
          secnet::cli::run_point(cfg, *mode, opt.threads);
      const secnet::cli::CsvRow row =
          secnet::cli::report_to_row(report, cfg, *mode, "", std::nullopt);
      return write_csv(opt.out_path, secnet::cli::csv_header() + "\n" +
                                         secnet::cli::csv_line(row) + "\n");
    }
    if (sweep->parsed()) {
      const secnet::cli::SweepSpec spec =
          secnet::cli::parse_sweep_spec(opt.sweep_text);
      const secnet::cli::SweepResult result =
          secnet::cli::run_sweep(cfg, spec, *mode, opt.threads, std::cerr);
      std::string csv = secnet::cli::csv_header() + "\n";
      bool any_ok = false;
      for (const auto& row : result.rows) {
        csv += secnet::cli::csv_line(row) + "\n";
        any_ok = any_ok || row.sop_analytic || row.sop_mc;
      }
      const int rc = write_csv(opt.out_path, csv);
      if (rc != kExitOk) return rc;
      return any_ok ? kExitOk : kExitNumeric;
    }
    if (validate->parsed()) {
      const bool ok = secnet::cli::run_validate(cfg, std::cout);
      return ok ? kExitOk : kExitValidation;
    }
  } catch (const secnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const secnet::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
