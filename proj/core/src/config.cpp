#include "secnet/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "secnet/errors.hpp"

namespace secnet {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

Point2D NetworkConfig::dest_xy() const {
  return {dest.r * std::cos(dest.phi), dest.r * std::sin(dest.phi)};
}

Point2D NetworkConfig::eve_xy() const {
  return {eve.r * std::cos(eve.phi), eve.r * std::sin(eve.phi)};
}

namespace {

void require(bool ok, const char* constraint) {
  if (!ok) throw ConfigError(std::string("config violates: ") + constraint);
}

}  // namespace

void NetworkConfig::validate() const {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda > 0");
  require(std::isfinite(c1) && std::isfinite(c2), "trust thresholds finite");
  require(c1 > 0.0 && c1 <= 1.0, "0 < c1 <= 1");
  require(c2 >= 0.0 && c2 <= c1, "0 <= c2 <= c1");
  require(std::isfinite(l1) && std::isfinite(l2) && l1 > 0.0 && l1 < l2,
          "0 < l1 < l2");
  require(std::isfinite(l_g) && l_g >= 0.0, "l_g >= 0");
  require(std::isfinite(epsilon_z) && epsilon_z >= 0.0, "epsilon_z >= 0");
  require(std::isfinite(alpha) && alpha > 2.0, "alpha > 2");
  require(std::isfinite(ps_dbm) && std::isfinite(pj_dbm), "powers finite");
  require(std::isfinite(beta_e_db), "beta_e_db finite");
  require(std::isfinite(dest.r) && dest.r >= 0.0 && std::isfinite(dest.phi),
          "destination position finite with r >= 0");
  require(std::isfinite(eve.r) && eve.r >= 0.0 && std::isfinite(eve.phi),
          "eavesdropper position finite with r >= 0");
  require(std::isfinite(quad_tol) && quad_tol > 0.0 && quad_tol < 1.0,
          "0 < quad_tol < 1");
  // The two jammer exclusions must not overlap: both the carved-region area
  // and the interference integrals treat them as disjoint holes.
  require(distance(dest_xy(), eve_xy()) >= l_g + epsilon_z,
          "destination guard disk and eavesdropper exclusion disk disjoint "
          "(dist(dest, eve) >= l_g + epsilon_z)");
}

namespace {

using nlohmann::json;

double number_at(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) {
    throw ConfigError(std::string("config key '") + key + "' must be a number");
  }
  return v.get<double>();
}

std::uint64_t count_at(const json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(std::string("config key '") + key +
                      "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

PolarPoint polar_at(const json& j, const char* key, PolarPoint fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_object()) {
    throw ConfigError(std::string("config key '") + key +
                      "' must be an object with fields r and phi");
  }
  for (const auto& item : v.items()) {
    if (item.key() != "r" && item.key() != "phi") {
      throw ConfigError(std::string("unknown field '") + item.key() +
                        "' in config key '" + key + "'");
    }
  }
  PolarPoint p = fallback;
  p.r = number_at(v, "r", p.r);
  p.phi = number_at(v, "phi", p.phi);
  return p;
}

NetworkConfig from_json(const json& j) {
  static const std::set<std::string> known = {
      "lambda", "c1",     "c2",        "l1",        "l2",
      "l_g",    "epsilon_z", "alpha",  "ps_dbm",    "pj_dbm",
      "beta_e_db", "dest", "eve",      "trials",    "seed",
      "quad_tol", "eve_exclusion_in_mc"};
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw ConfigError("unknown config key '" + item.key() + "'");
    }
  }
  NetworkConfig cfg;
  cfg.lambda = number_at(j, "lambda", cfg.lambda);
  cfg.c1 = number_at(j, "c1", cfg.c1);
  cfg.c2 = number_at(j, "c2", cfg.c2);
  cfg.l1 = number_at(j, "l1", cfg.l1);
  cfg.l2 = number_at(j, "l2", cfg.l2);
  cfg.l_g = number_at(j, "l_g", cfg.l_g);
  cfg.epsilon_z = number_at(j, "epsilon_z", cfg.epsilon_z);
  cfg.alpha = number_at(j, "alpha", cfg.alpha);
  cfg.ps_dbm = number_at(j, "ps_dbm", cfg.ps_dbm);
  cfg.pj_dbm = number_at(j, "pj_dbm", cfg.pj_dbm);
  cfg.beta_e_db = number_at(j, "beta_e_db", cfg.beta_e_db);
  cfg.dest = polar_at(j, "dest", cfg.dest);
  cfg.eve = polar_at(j, "eve", cfg.eve);
  cfg.trials = count_at(j, "trials", cfg.trials);
  cfg.seed = count_at(j, "seed", cfg.seed);
  cfg.quad_tol = number_at(j, "quad_tol", cfg.quad_tol);
  if (j.contains("eve_exclusion_in_mc")) {
    const json& v = j.at("eve_exclusion_in_mc");
    if (!v.is_boolean()) {
      throw ConfigError("config key 'eve_exclusion_in_mc' must be a boolean");
    }
    cfg.eve_exclusion_in_mc = v.get<bool>();
  }
  cfg.validate();
  return cfg;
}

}  // namespace

NetworkConfig parse_config(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  return from_json(j);
}

NetworkConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace secnet
