#pragma once

#include <vector>

#include "secnet/config.hpp"
#include "secnet/geometry.hpp"

namespace secnet {

// Densities of the independently thinned subprocesses.
struct ThinnedDensities {
  double relays = 0.0;   // (1 - c1) * lambda, live on the disk of radius l1
  double jammers = 0.0;  // (c1 - c2) * lambda, live on the annulus (l1, l2)
};

ThinnedDensities thinned_densities(const NetworkConfig& cfg);

// Outcome of classifying one realization of the node process. relays,
// jammers and dummies partition the input; active_jammers is the subset of
// jammers that actually transmit.
struct Classification {
  std::vector<Point2D> relays;           // trust in [c1,1], inside disk(l1)
  std::vector<Point2D> jammers;          // trust in [c2,c1), on the annulus
  std::vector<Point2D> active_jammers;   // jammers outside both exclusions
  std::vector<Point2D> dummies;          // everything else
};

// Applies the trust thresholds and the geometric eligibility rules.
// active_jammers is the subset of jammers at distance > l_g from the
// destination and (when cfg.eve_exclusion_in_mc) > epsilon_z from the
// eavesdropper; only they transmit.
Classification classify_nodes(const std::vector<Point2D>& points,
                              const std::vector<double>& trust,
                              const NetworkConfig& cfg);

// The part of a classification the transmission model actually uses.
struct NodeRealization {
  std::vector<Point2D> relays;
  std::vector<Point2D> active_jammers;
};

}  // namespace secnet
