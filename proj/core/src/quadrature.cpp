#include "secnet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "secnet/errors.hpp"
#include "secnet/integrate.hpp"

namespace secnet {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double arc_half_width(double r, double d, double R) {
  if (R <= 0.0) return 0.0;
  if (r <= 0.0) return d <= R ? kPi : 0.0;
  if (d <= 1e-14 * std::max(r, R)) return r <= R ? kPi : 0.0;
  if (d + r <= R) return kPi;         // circle entirely inside the disk
  if (d >= r + R) return 0.0;         // disk entirely outside the circle
  if (r >= d + R) return 0.0;         // disk entirely inside the circle
  const double cosv = (d * d + r * r - R * R) / (2.0 * d * r);
  return std::acos(std::clamp(cosv, -1.0, 1.0));
}

double arc_overlap(double half_width_a, double half_width_b,
                   double center_separation) {
  if (half_width_a <= 0.0 || half_width_b <= 0.0) return 0.0;
  const double s = half_width_a + half_width_b;
  const double direct = std::max(0.0, s - center_separation);
  const double wrapped = std::max(0.0, s - (kTwoPi - center_separation));
  return std::min({2.0 * half_width_a, 2.0 * half_width_b, direct + wrapped});
}

namespace {

// The bounding circles of a region, seen from the pole: one outer circle,
// an optional concentric inner circle, and the hole circles. Directions
// from the pole to the centers do not depend on the circle radius, so they
// are precomputed.
struct PoleView {
  double d_out = 0.0, r_out = 0.0, theta_out = 0.0;
  double r_in = 0.0;  // same center as outer; 0 when the base is a disk
  struct Hole {
    double d = 0.0, radius = 0.0, theta = 0.0;
  };
  std::vector<Hole> holes;
};

double direction_from(const Point2D& pole, const Point2D& center) {
  const double dx = center.x - pole.x;
  const double dy = center.y - pole.y;
  if (dx == 0.0 && dy == 0.0) return 0.0;  // any value works at d == 0
  return std::atan2(dy, dx);
}

// Angular separation of two directions, reduced to [0, pi].
double angular_separation(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return d > kPi ? kTwoPi - d : d;
}

PoleView make_pole_view(const Region& region, const Point2D& pole) {
  PoleView v;
  const auto set_base = [&](const std::variant<Disk, Annulus>& base) {
    if (const Disk* d = std::get_if<Disk>(&base)) {
      v.d_out = distance(pole, d->center);
      v.r_out = d->radius;
      v.theta_out = direction_from(pole, d->center);
    } else {
      const Annulus& a = std::get<Annulus>(base);
      v.d_out = distance(pole, a.center);
      v.r_out = a.outer_radius;
      v.r_in = a.inner_radius;
      v.theta_out = direction_from(pole, a.center);
    }
  };
  if (const Disk* d = std::get_if<Disk>(&region)) {
    set_base(std::variant<Disk, Annulus>{*d});
  } else if (const Annulus* a = std::get_if<Annulus>(&region)) {
    set_base(std::variant<Disk, Annulus>{*a});
  } else {
    const Difference& diff = std::get<Difference>(region);
    set_base(diff.base);
    for (const Disk& hole : diff.holes) {
      if (hole.radius <= 0.0) continue;
      v.holes.push_back({distance(pole, hole.center), hole.radius,
                         direction_from(pole, hole.center)});
    }
  }
  return v;
}

// Angular measure of the circle of radius r about the pole lying inside the
// region described by the view. Base arcs about a common center are nested
// (an arc's half-width grows with the bounding radius), so the annulus case
// is a difference of overlaps; hole arcs are pairwise disjoint because the
// holes are, so their subtractions never double-count.
double extent_from_view(const PoleView& v, double r) {
  const double w_out = arc_half_width(r, v.d_out, v.r_out);
  if (w_out <= 0.0) return 0.0;
  const double w_in =
      v.r_in > 0.0 ? arc_half_width(r, v.d_out, v.r_in) : 0.0;
  double total = 2.0 * (w_out - w_in);
  for (const PoleView::Hole& h : v.holes) {
    const double w_h = arc_half_width(r, h.d, h.radius);
    if (w_h <= 0.0) continue;
    const double sep = angular_separation(h.theta, v.theta_out);
    double cut = arc_overlap(w_h, w_out, sep);
    if (w_in > 0.0) cut -= arc_overlap(w_h, w_in, sep);
    total -= cut;
  }
  return std::max(0.0, total);
}

}  // namespace

double angular_extent(const Region& region, const Point2D& pole, double r) {
  return extent_from_view(make_pole_view(region, pole), r);
}

namespace {

// Radii at which the intersection pattern of the pole-centered circle with
// any bounding circle changes: the tangency radii of each circle.
std::vector<double> panel_breakpoints(const PoleView& v) {
  const double r_max = v.d_out + v.r_out;
  std::vector<double> bp;
  const auto add_circle = [&bp, r_max](double d, double R) {
    if (R <= 0.0) return;
    const double lo = std::abs(d - R);
    if (lo > 0.0 && lo < r_max) bp.push_back(lo);
    const double hi = d + R;
    if (hi > 0.0 && hi < r_max) bp.push_back(hi);
  };
  add_circle(v.d_out, v.r_in);
  for (const PoleView::Hole& h : v.holes) add_circle(h.d, h.radius);
  const double lo_out = std::abs(v.d_out - v.r_out);
  if (lo_out > 0.0 && lo_out < r_max) bp.push_back(lo_out);
  bp.push_back(r_max);
  std::sort(bp.begin(), bp.end());
  // Coalesce near-coincident radii.
  std::vector<double> out;
  for (double r : bp) {
    if (out.empty() || r - out.back() > 1e-12 * r_max) out.push_back(r);
  }
  return out;
}

// Integrates f over [a, b] after the cubic endpoint-clustering change of
// variable r = a + (b-a) s^2 (3 - 2s). Its Jacobian vanishes linearly at
// both edges, which absorbs the square-root cusps the tangency radii leave
// at panel boundaries (an acos(+-1 -+ eps) edge behaves like sqrt(eps)) as
// well as any jump right at an edge; without it, adaptive bisection needs
// depth ~ 2 log2(scale/tol) at such an edge and stalls at tight tolerances.
template <class F>
double clustered_panel(F&& f, double a, double b, double tol) {
  const double w = b - a;
  return adaptive_simpson(
      [&](double s) {
        const double r = a + w * s * s * (3.0 - 2.0 * s);
        return f(r) * 6.0 * w * s * (1.0 - s);
      },
      0.0, 1.0, tol);
}

}  // namespace

double integrate_power_law(const IntegralSpec& spec) {
  const double e = spec.exponent;
  if (!(e >= 0.0)) {
    throw std::domain_error("integrate_power_law: exponent must be >= 0");
  }
  if (!(spec.rel_tol > 0.0) || spec.rel_tol > 1e-3) {
    throw std::domain_error(
        "integrate_power_law: rel_tol must be in (0, 1e-3]");
  }
  if (e >= 2.0 && contains(spec.region, spec.pole)) {
    throw DivergentIntegral(
        "integrate_power_law: pole of order " + std::to_string(e) +
        " >= 2 lies inside the integration region; the integral diverges");
  }

  const PoleView view = make_pole_view(spec.region, spec.pole);
  if (view.r_out <= 0.0 || view.r_out <= view.r_in) return 0.0;

  const std::vector<double> bp = panel_breakpoints(view);
  const auto f = [&view, e](double r) {
    const double ext = extent_from_view(view, r);
    if (ext == 0.0) return 0.0;
    return std::pow(r, 1.0 - e) * ext;
  };

  // First panel (0, bp[0]). In almost every case the extent is constant
  // there (no tangency radius is crossed) and the radial factor integrates
  // in closed form. The exception is a circle tangent to the pole itself
  // (|d - R| == 0 produces no breakpoint); then the extent varies and the
  // panel is integrated like the others, with a power substitution when
  // 1 < e < 2 so the endpoint singularity at r = 0 disappears.
  const double r1 = bp.front();
  const double e0 = extent_from_view(view, 0.25 * r1);
  const double e1 = extent_from_view(view, 0.50 * r1);
  const double e2 = extent_from_view(view, 0.75 * r1);
  const bool const_start = std::abs(e0 - e1) <= 1e-12 * (e1 + 1e-300) &&
                           std::abs(e2 - e1) <= 1e-12 * (e1 + 1e-300);

  double first_panel = 0.0;
  bool first_panel_done = false;
  if (const_start) {
    if (e1 == 0.0) {
      first_panel = 0.0;
    } else if (e >= 2.0) {
      // Unreachable: positive extent at 0+ means the pole is in the region.
      throw DivergentIntegral(
          "integrate_power_law: non-integrable singularity at the pole");
    } else {
      first_panel = e1 * std::pow(r1, 2.0 - e) / (2.0 - e);
    }
    first_panel_done = true;
  }

  // Rough composite-Simpson pass over the remaining panels to apportion the
  // global tolerance by panel magnitude. The integrand is nonnegative, so
  // the rough total is an honest scale for a relative tolerance.
  const std::size_t n_panels = bp.size();
  std::vector<double> rough(n_panels, 0.0);
  for (std::size_t k = first_panel_done ? 1 : 0; k < n_panels; ++k) {
    const double a = k == 0 ? 0.0 : bp[k - 1];
    const double b = bp[k];
    if (!(b > a)) continue;
    const int m = 16;
    const double h = (b - a) / m;
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      // Midpoint composite: never evaluates panel edges, where the
      // integrand may jump (concentric circles) or blow up (r = 0 with
      // 1 < e < 2).
      s += f(a + (i + 0.5) * h);
    }
    rough[k] = s * h;
  }
  double total_scale = std::abs(first_panel);
  for (double v : rough) total_scale += std::abs(v);

  double result = first_panel;
  for (std::size_t k = first_panel_done ? 1 : 0; k < n_panels; ++k) {
    const double a = k == 0 ? 0.0 : bp[k - 1];
    const double b = bp[k];
    if (!(b > a)) continue;
    // The half factor keeps the whole-integral error within rel_tol even
    // when the rough pass misjudges a panel's share.
    const double tol = 0.5 * spec.rel_tol *
                       (std::abs(rough[k]) +
                        0.02 * total_scale / static_cast<double>(n_panels)) +
                       1e-300;
    if (k == 0 && e > 1.0) {
      // Substitute t = r^(2-e): integral becomes
      // (2-e)^(-1) * integral of extent(t^(1/(2-e))) dt, finite at t = 0.
      const double p = 2.0 - e;
      const double t_end = std::pow(b, p);
      const double inv_p = 1.0 / p;
      result += clustered_panel(
                    [&view, inv_p](double t) {
                      return t <= 0.0 ? 0.0
                                      : extent_from_view(view, std::pow(t, inv_p));
                    },
                    0.0, t_end, tol * p) /
                p;
    } else {
      result += clustered_panel(f, a, b, tol);
    }
  }
  return result;
}

double q_z(int n, const NetworkConfig& cfg, const Point2D& z) {
  if (n < 1) throw std::domain_error("q_z: moment order must be >= 1");
  IntegralSpec spec;
  spec.region = Disk{{0.0, 0.0}, cfg.l1};
  spec.pole = z;
  spec.exponent = n * cfg.alpha;
  spec.rel_tol = cfg.quad_tol;
  return integrate_power_law(spec);
}

Region jam_region(const NetworkConfig& cfg) {
  Difference d;
  d.base = Annulus{{0.0, 0.0}, cfg.l1, cfg.l2};
  if (cfg.l_g > 0.0) d.holes.push_back(Disk{cfg.dest_xy(), cfg.l_g});
  if (cfg.epsilon_z > 0.0) d.holes.push_back(Disk{cfg.eve_xy(), cfg.epsilon_z});
  return d;
}

double jam_integral(int n, const NetworkConfig& cfg) {
  if (n < 1) throw std::domain_error("jam_integral: moment order must be >= 1");
  IntegralSpec spec;
  spec.region = jam_region(cfg);
  spec.pole = cfg.eve_xy();
  spec.exponent = n * cfg.alpha;
  spec.rel_tol = cfg.quad_tol;
  return integrate_power_law(spec);
}

}  // namespace secnet
