#pragma once

#include "secnet/rng.hpp"

namespace secnet {

// log Gamma(x) for x > 0, Lanczos approximation, ~1e-14 relative accuracy.
// Self-contained (std::lgamma is avoided because of its global signgam).
double ln_gamma(double x);

// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a),
// a > 0, x >= 0. Series expansion for x < a+1, continued fraction otherwise.
double reg_lower_gamma(double a, double x);

// Regularized upper incomplete gamma Q(a, x), always via the Lentz continued
// fraction so that P + Q = 1 is a genuine cross-check of two algorithms.
double reg_upper_gamma(double a, double x);

// Gauss hypergeometric 2F1(a, b; c; x) for a, b >= 0, c > 0, x in [0, 1).
// Direct power series for x <= 1/2; for x > 1/2 the linear transformation
// (1-x)^(c-a-b) 2F1(c-a, c-b; c; x) is used so the series argument stays
// well-conditioned. Arguments closer to 1 than 1e-6 are rejected
// (SeriesNonConvergence) rather than summed inaccurately.
double hyp2f1(double a, double b, double c, double x);

// Shape/scale parameterization: mean = shape*scale, variance = shape*scale^2.
struct GammaParams {
  double shape = 0.0;
  double scale = 0.0;
};

// Density and CDF; evaluated in log space so small shapes and large
// arguments do not overflow. x < 0 is a domain error.
double gamma_pdf(const GammaParams& p, double x);
double gamma_cdf(const GammaParams& p, double x);

// Marsaglia-Tsang sampler (with the power-of-uniform boost for shape < 1).
double gamma_sample(const GammaParams& p, TrialRng& rng);

}  // namespace secnet
