#include "secnet/network.hpp"

namespace secnet {

ThinnedDensities thinned_densities(const NetworkConfig& cfg) {
  return {(1.0 - cfg.c1) * cfg.lambda, (cfg.c1 - cfg.c2) * cfg.lambda};
}

Classification classify_nodes(const std::vector<Point2D>& points,
                              const std::vector<double>& trust,
                              const NetworkConfig& cfg) {
  Classification out;
  const double l1_sq = cfg.l1 * cfg.l1;
  const double guard_sq = cfg.l_g * cfg.l_g;
  const double excl_sq = cfg.epsilon_z * cfg.epsilon_z;
  const Point2D dest = cfg.dest_xy();
  const Point2D eve = cfg.eve_xy();
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2D& p = points[i];
    const double t = trust[i];
    const double r_sq = p.x * p.x + p.y * p.y;
    if (t >= cfg.c1) {
      // Most-trusted band: relays, but only inside the relay disk.
      if (r_sq <= l1_sq) {
        out.relays.push_back(p);
      } else {
        out.dummies.push_back(p);
      }
    } else if (t >= cfg.c2) {
      // Jammer band, restricted to the annulus l1 < |p| <= l2 (points were
      // drawn from the deployment disk, so only the inner bound matters).
      if (r_sq > l1_sq) {
        out.jammers.push_back(p);
        const double dx_d = p.x - dest.x;
        const double dy_d = p.y - dest.y;
        bool active = dx_d * dx_d + dy_d * dy_d > guard_sq;
        if (active && cfg.eve_exclusion_in_mc) {
          const double dx_e = p.x - eve.x;
          const double dy_e = p.y - eve.y;
          active = dx_e * dx_e + dy_e * dy_e > excl_sq;
        }
        if (active) out.active_jammers.push_back(p);
      } else {
        out.dummies.push_back(p);
      }
    } else {
      out.dummies.push_back(p);
    }
  }
  return out;
}

}  // namespace secnet
