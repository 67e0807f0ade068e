#pragma once

#include <cstdint>
#include <optional>

#include "secnet/config.hpp"
#include "secnet/specfun.hpp"

namespace secnet {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Mean and variance of the coherently combined signal power at the
// eavesdropper, over Poisson relay placement and Rayleigh fading:
//   mean     = ps * lambda_r * q1
//   variance = ps^2 * (lambda_r^2 * q1^2 + 2 * lambda_r * q2)
// where q1, q2 are the first two path-loss moments over the relay disk.
// Throws DegenerateSignal when lambda_r <= 0.
Moments moments_signal(double lambda_r, double ps_mw, double q1, double q2);

// Mean and variance of the aggregate interference power at the
// eavesdropper, from the first two factorial cumulants of the jammer
// process:
//   mean     = pj * lambda_j * j1
//   variance = 2 * pj^2 * lambda_j * j2
// Throws DegenerateJamming when lambda_j <= 0.
Moments moments_jamming(double lambda_j, double pj_mw, double j1, double j2);

// Fits a gamma distribution by matching the first two moments:
// shape = mean^2/variance, scale = variance/mean.
GammaParams moment_match(const Moments& m);

struct DgrInputs {
  GammaParams signal;        // fitted to the combined signal power
  GammaParams interference;  // fitted to the aggregate interference power
  double beta_e = 1.0;       // SIR threshold, linear
};

struct DgrBreakdown {
  double sop = 0.0;        // P{ signal/interference > beta_e }
  double q_e = 0.0;        // beta_e * interference.scale / signal.scale
  double hypergeom = 0.0;  // value of the 2F1 factor
};

// Closed-form outage probability of the ratio of two independent gamma
// variates, evaluated in log space:
//   P = q^s Gamma(s+i) / ( i (q+1)^(s+i) Gamma(s) Gamma(i) )
//       * 2F1(1, s+i; i+1; 1/(q+1))
// with s, i the two shapes and q = beta_e * scale_i / scale_s. Below
// q = 1e-3 the mirrored (complement) form of the same incomplete-beta
// identity is used so the series argument tends to 0 rather than 1;
// `hypergeom` then holds the 2F1(1, s+i; s+1; q/(q+1)) factor instead.
DgrBreakdown dgr_sop_detail(const DgrInputs& in);
double dgr_sop(const DgrInputs& in);

// Independent check of dgr_sop: evaluates
//   1 - integral pdf_I(x) P(s, beta_e x / scale_s) dx
// by adaptive quadrature (with a power substitution when the interference
// shape is below 1, where the density has an integrable singularity at 0).
// Agreement with dgr_sop is limited only by quadrature error.
double sop_oracle_numeric(const DgrInputs& in);

struct AnalyticSop {
  double sop = 0.0;
  double q_e = 0.0;
  double hypergeom = 0.0;
  GammaParams signal;
  GammaParams interference;
  double q1 = 0.0;  // path-loss moments over the relay disk
  double q2 = 0.0;
  double j1 = 0.0;  // path-loss moments over the jam region
  double j2 = 0.0;
};

struct McSop {
  double sop = 0.0;
  double std_error = 0.0;
};

// One evaluated operating point. Either section may be absent depending on
// which pipelines were run; trials/seed describe the Monte-Carlo section.
struct SopReport {
  std::optional<AnalyticSop> analytic;
  std::optional<McSop> mc;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Full analytic pipeline: thinning -> geometry integrals -> moments ->
// gamma fits -> closed form. Numeric errors are rethrown with the pipeline
// stage prepended so a failure names the integral or series that caused it.
SopReport analytic_sop(const NetworkConfig& cfg);

}  // namespace secnet
