#pragma once

#include <variant>
#include <vector>

#include "secnet/rng.hpp"

namespace secnet {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point2D& a, const Point2D& b);

struct Disk {
  Point2D center;
  double radius = 0.0;
};

struct Annulus {
  Point2D center;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
};

// A disk or annulus with zero or more disk-shaped holes punched out of it.
// Hole interiors are open: a point on a hole's rim still belongs to the
// region, matching the closed-region convention of contains() below.
struct Difference {
  std::variant<Disk, Annulus> base;
  std::vector<Disk> holes;
};

using Region = std::variant<Disk, Annulus, Difference>;

// Area of the overlap of two circles (classic lens formula).
double lens_area(double center_distance, double radius_a, double radius_b);

// Exact area. For a Difference the holes must be pairwise disjoint (the
// callers in this library guarantee that); holes may extend beyond the base.
double area(const Region& region);

// Closed-region membership: boundaries of the base count as inside, hole
// rims count as inside (hole interiors are excluded).
bool contains(const Region& region, const Point2D& p);

// Uniform sample. Disks and annuli are drawn exactly by the inverse CDF of
// the radial coordinate; a Difference is drawn by rejection from its base.
Point2D sample_point(const Region& region, TrialRng& rng);

// Homogeneous Poisson point process: count ~ Poisson(density * area), points
// i.i.d. uniform. density == 0 or an empty region yields an empty vector.
std::vector<Point2D> sample_ppp(const Region& region, double density,
                                TrialRng& rng);

}  // namespace secnet
