#pragma once

#include <cstdint>
#include <string>

#include "secnet/geometry.hpp"

namespace secnet {

double dbm_to_mw(double dbm);
double db_to_linear(double db);

struct PolarPoint {
  double r = 0.0;
  double phi = 0.0;  // radians
};

// Full description of one network deployment plus the knobs of the two
// evaluation pipelines. Distances are in meters, powers in dBm, thresholds
// in dB; the accessors below convert to the linear units the math wants.
//
// Defaults describe the reference scenario used throughout the test suite:
// a 100 m deployment disk, relays drawn from the 20% most trusted nodes
// inside 6 m, jammers from the next trust band on the rest of the disk.
struct NetworkConfig {
  double lambda = 0.2;      // node density per m^2 over the deployment disk
  double c1 = 0.8;          // trust threshold: trust in [c1, 1] => relay
  double c2 = 0.79;         // trust threshold: trust in [c2, c1) => jammer
  double l1 = 6.0;          // relay region radius (disk about the origin)
  double l2 = 100.0;        // deployment disk radius
  double l_g = 5.0;         // jammer-free guard radius around the destination
  double epsilon_z = 1.0;   // jammer exclusion radius around the eavesdropper
  double alpha = 4.0;       // path-loss exponent (> 2)
  double ps_dbm = 10.0;     // per-relay transmit power
  double pj_dbm = 1.0;      // per-jammer transmit power
  double beta_e_db = 0.0;   // eavesdropper SIR threshold
  PolarPoint dest{50.0, 0.0};
  PolarPoint eve{60.0, 1.5707963267948966};
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  double quad_tol = 1e-8;   // relative tolerance for the radial quadrature
  // When false, the simulation keeps jammers inside the eavesdropper
  // exclusion disk active (the exclusion then exists only in the analytic
  // model). Useful for measuring how much that carve-out matters.
  bool eve_exclusion_in_mc = true;

  double ps_mw() const { return dbm_to_mw(ps_dbm); }
  double pj_mw() const { return dbm_to_mw(pj_dbm); }
  double beta_e() const { return db_to_linear(beta_e_db); }
  Point2D dest_xy() const;
  Point2D eve_xy() const;

  // Throws ConfigError naming the violated constraint.
  void validate() const;
};

// Reads a JSON config file. Unknown keys are rejected (they are almost
// always typos); missing keys keep their defaults. The result is validated.
NetworkConfig load_config(const std::string& path);

// Same, but from an in-memory JSON document.
NetworkConfig parse_config(const std::string& json_text);

}  // namespace secnet
