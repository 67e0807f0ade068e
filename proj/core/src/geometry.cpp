#include "secnet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "secnet/errors.hpp"

namespace secnet {

namespace {
constexpr double kPi = std::numbers::pi;

double sq(double v) { return v * v; }
}  // namespace

double distance(const Point2D& a, const Point2D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double lens_area(double center_distance, double radius_a, double radius_b) {
  const double d = center_distance;
  if (radius_a <= 0.0 || radius_b <= 0.0) return 0.0;
  if (d >= radius_a + radius_b) return 0.0;
  const double rmin = std::min(radius_a, radius_b);
  if (d <= std::abs(radius_a - radius_b)) return kPi * rmin * rmin;
  double ca = (d * d + radius_a * radius_a - radius_b * radius_b) /
              (2.0 * d * radius_a);
  double cb = (d * d + radius_b * radius_b - radius_a * radius_a) /
              (2.0 * d * radius_b);
  ca = std::clamp(ca, -1.0, 1.0);
  cb = std::clamp(cb, -1.0, 1.0);
  // Heron-style stable form for twice the triangle area.
  const double t = (radius_a + radius_b + d) * (radius_a + radius_b - d) *
                   (radius_a - radius_b + d) * (-radius_a + radius_b + d);
  const double tri = 0.5 * std::sqrt(std::max(0.0, t));
  return radius_a * radius_a * std::acos(ca) + radius_b * radius_b * std::acos(cb) -
         tri;
}

namespace {

double base_area(const std::variant<Disk, Annulus>& base) {
  if (const Disk* d = std::get_if<Disk>(&base)) {
    return kPi * sq(std::max(0.0, d->radius));
  }
  const Annulus& a = std::get<Annulus>(base);
  if (a.outer_radius <= a.inner_radius) return 0.0;
  return kPi * (sq(a.outer_radius) - sq(a.inner_radius));
}

// Overlap of a hole with the base shape (holes may stick out of the base).
double hole_overlap(const std::variant<Disk, Annulus>& base, const Disk& hole) {
  if (const Disk* d = std::get_if<Disk>(&base)) {
    return lens_area(distance(d->center, hole.center), d->radius, hole.radius);
  }
  const Annulus& a = std::get<Annulus>(base);
  const double d = distance(a.center, hole.center);
  return lens_area(d, a.outer_radius, hole.radius) -
         lens_area(d, a.inner_radius, hole.radius);
}

bool base_contains(const std::variant<Disk, Annulus>& base, const Point2D& p) {
  if (const Disk* d = std::get_if<Disk>(&base)) {
    return sq(p.x - d->center.x) + sq(p.y - d->center.y) <= sq(d->radius);
  }
  const Annulus& a = std::get<Annulus>(base);
  const double r2 = sq(p.x - a.center.x) + sq(p.y - a.center.y);
  return r2 >= sq(a.inner_radius) && r2 <= sq(a.outer_radius);
}

Point2D sample_base(const std::variant<Disk, Annulus>& base, TrialRng& rng) {
  double cx, cy, r;
  if (const Disk* d = std::get_if<Disk>(&base)) {
    cx = d->center.x;
    cy = d->center.y;
    r = d->radius * std::sqrt(rng.uniform());
  } else {
    const Annulus& a = std::get<Annulus>(base);
    cx = a.center.x;
    cy = a.center.y;
    r = std::sqrt(sq(a.inner_radius) +
                  rng.uniform() * (sq(a.outer_radius) - sq(a.inner_radius)));
  }
  const double angle = 2.0 * kPi * rng.uniform();
  return {cx + r * std::cos(angle), cy + r * std::sin(angle)};
}

}  // namespace

double area(const Region& region) {
  return std::visit(
      [](const auto& shape) -> double {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return base_area(std::variant<Disk, Annulus>{shape});
        } else if constexpr (std::is_same_v<T, Annulus>) {
          return base_area(std::variant<Disk, Annulus>{shape});
        } else {
          double a = base_area(shape.base);
          for (const Disk& hole : shape.holes) a -= hole_overlap(shape.base, hole);
          return std::max(0.0, a);
        }
      },
      region);
}

bool contains(const Region& region, const Point2D& p) {
  return std::visit(
      [&p](const auto& shape) -> bool {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return base_contains(std::variant<Disk, Annulus>{shape}, p);
        } else if constexpr (std::is_same_v<T, Annulus>) {
          return base_contains(std::variant<Disk, Annulus>{shape}, p);
        } else {
          if (!base_contains(shape.base, p)) return false;
          for (const Disk& hole : shape.holes) {
            if (sq(p.x - hole.center.x) + sq(p.y - hole.center.y) <
                sq(hole.radius)) {
              return false;  // strict: hole rims still belong to the region
            }
          }
          return true;
        }
      },
      region);
}

Point2D sample_point(const Region& region, TrialRng& rng) {
  if (const Disk* d = std::get_if<Disk>(&region)) {
    return sample_base(std::variant<Disk, Annulus>{*d}, rng);
  }
  if (const Annulus* a = std::get_if<Annulus>(&region)) {
    return sample_base(std::variant<Disk, Annulus>{*a}, rng);
  }
  const Difference& diff = std::get<Difference>(region);
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    Point2D p = sample_base(diff.base, rng);
    bool in_hole = false;
    for (const Disk& hole : diff.holes) {
      if (sq(p.x - hole.center.x) + sq(p.y - hole.center.y) < sq(hole.radius)) {
        in_hole = true;
        break;
      }
    }
    if (!in_hole) return p;
  }
  throw NumericError(
      "sample_point: rejection sampling failed; holes cover the base region");
}

std::vector<Point2D> sample_ppp(const Region& region, double density,
                                TrialRng& rng) {
  std::vector<Point2D> points;
  if (density <= 0.0) return points;
  const double mean_count = density * area(region);
  const std::int64_t n = rng.poisson(mean_count);
  points.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) points.push_back(sample_point(region, rng));
  return points;
}

}  // namespace secnet
