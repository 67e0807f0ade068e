#pragma once

#include "secnet/config.hpp"
#include "secnet/geometry.hpp"

namespace secnet {

// Integral of |x - pole|^(-exponent) over a planar region.
struct IntegralSpec {
  Region region;
  Point2D pole;
  double exponent = 0.0;  // >= 0
  double rel_tol = 1e-8;
};

// Half-width (radians) of the arc of the circle of radius r about `pole`
// that lies inside a circle of radius R whose center is at distance d from
// the pole. Returns pi when the whole circle is inside, 0 when disjoint.
double arc_half_width(double r, double d, double R);

// Angular measure (radians) shared by two arcs on the same circle, each
// given by its center angle and half-width. Handles wrap-around.
double arc_overlap(double half_width_a, double half_width_b,
                   double center_separation);

// Angular measure (radians) of the circle of radius r about `pole` that lies
// inside `region`.
double angular_extent(const Region& region, const Point2D& pole, double r);

// Evaluates the power-law integral by reducing it to a single radial
// integral: in polar coordinates about the pole the integrand is
// r^(1-exponent) * angular_extent(region, pole, r), which is integrated
// adaptively between the radii where the extent changes character (the
// tangency radii |dist(pole, center) +- radius| of each bounding circle).
//
// Throws DivergentIntegral when exponent >= 2 and the pole belongs to the
// region (the singularity is then non-integrable), ToleranceNotMet if
// refinement stalls.
double integrate_power_law(const IntegralSpec& spec);

// Signal-geometry moments: integral of |x - z|^(-n*alpha) over the relay
// disk of radius l1 about the origin. Requires the pole z outside that disk
// (otherwise DivergentIntegral propagates from integrate_power_law).
double q_z(int n, const NetworkConfig& cfg, const Point2D& z);

// The region jammers actually transmit from: the annulus (l1, l2) minus the
// destination guard disk and the eavesdropper exclusion disk.
Region jam_region(const NetworkConfig& cfg);

// Interference-geometry moments: integral of |x - eve|^(-n*alpha) over
// jam_region(cfg).
double jam_integral(int n, const NetworkConfig& cfg);

}  // namespace secnet
