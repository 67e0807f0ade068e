#include "secnet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "secnet/errors.hpp"
#include "secnet/integrate.hpp"
#include "secnet/network.hpp"
#include "secnet/quadrature.hpp"

namespace secnet {

Moments moments_signal(double lambda_r, double ps_mw, double q1, double q2) {
  if (!(lambda_r > 0.0)) {
    throw DegenerateSignal(
        "relay density is zero (c1 == 1): the beamformed power is "
        "identically zero and has no gamma fit");
  }
  if (!(ps_mw > 0.0) || !(q1 > 0.0) || !(q2 > 0.0)) {
    throw std::domain_error(
        "moments_signal: power and path-loss moments must be positive");
  }
  Moments m;
  m.mean = ps_mw * lambda_r * q1;
  m.variance =
      ps_mw * ps_mw * (lambda_r * lambda_r * q1 * q1 + 2.0 * lambda_r * q2);
  return m;
}

Moments moments_jamming(double lambda_j, double pj_mw, double j1, double j2) {
  if (!(lambda_j > 0.0)) {
    throw DegenerateJamming(
        "jammer density is zero (c1 == c2): the interference power is "
        "identically zero and the interference-limited ratio is undefined");
  }
  if (!(pj_mw > 0.0) || !(j1 > 0.0) || !(j2 > 0.0)) {
    throw std::domain_error(
        "moments_jamming: power and path-loss moments must be positive");
  }
  Moments m;
  m.mean = pj_mw * lambda_j * j1;
  m.variance = 2.0 * pj_mw * pj_mw * lambda_j * j2;
  return m;
}

GammaParams moment_match(const Moments& m) {
  if (!(m.mean > 0.0) || !(m.variance > 0.0)) {
    throw std::domain_error(
        "moment_match: mean and variance must be positive");
  }
  return {m.mean * m.mean / m.variance, m.variance / m.mean};
}

namespace {

void check_dgr_inputs(const char* who, const DgrInputs& in) {
  if (!(in.signal.shape > 0.0) || !(in.signal.scale > 0.0) ||
      !(in.interference.shape > 0.0) || !(in.interference.scale > 0.0)) {
    throw std::domain_error(std::string(who) +
                            ": gamma parameters must be positive");
  }
  if (!(in.beta_e > 0.0)) {
    throw std::domain_error(std::string(who) +
                            ": threshold must be positive (at 0 the outage "
                            "probability is identically 1)");
  }
}

}  // namespace

DgrBreakdown dgr_sop_detail(const DgrInputs& in) {
  check_dgr_inputs("dgr_sop", in);
  const double s = in.signal.shape;
  const double i = in.interference.shape;
  const double q = in.beta_e * in.interference.scale / in.signal.scale;

  DgrBreakdown out;
  out.q_e = q;
  // The probability is the regularized incomplete beta I_z(i, s) at
  // z = 1/(q+1). Evaluating it through the hypergeometric series in z is
  // accurate while z keeps clear of 1; as q -> 0 that series approaches
  // its singular point, so the mirrored form 1 - I_w(s, i) at w = q/(q+1)
  // takes over — its series argument then tends to 0 instead. The switch
  // sits far below any threshold of practical interest and three orders
  // of magnitude above the series' refuse-to-sum guard near z = 1.
  double p;
  if (q >= 1e-3) {
    out.hypergeom = hyp2f1(1.0, s + i, i + 1.0, 1.0 / (q + 1.0));
    const double log_prefactor = s * std::log(q) + ln_gamma(s + i) -
                                 std::log(i) - (s + i) * std::log1p(q) -
                                 ln_gamma(s) - ln_gamma(i);
    p = std::exp(log_prefactor + std::log(out.hypergeom));
  } else {
    out.hypergeom = hyp2f1(1.0, s + i, s + 1.0, q / (q + 1.0));
    const double log_miss = s * std::log(q) + ln_gamma(s + i) -
                            std::log(s) - (s + i) * std::log1p(q) -
                            ln_gamma(s) - ln_gamma(i);
    p = 1.0 - std::exp(log_miss + std::log(out.hypergeom));
  }
  if (!(p >= 0.0) || p > 1.0 + 1e-9) {
    throw NumericError("dgr_sop: computed probability " + std::to_string(p) +
                       " escapes [0, 1]");
  }
  out.sop = std::min(p, 1.0);
  return out;
}

double dgr_sop(const DgrInputs& in) { return dgr_sop_detail(in).sop; }

double sop_oracle_numeric(const DgrInputs& in) {
  check_dgr_inputs("sop_oracle_numeric", in);
  const double s = in.signal.shape;
  const double i = in.interference.shape;
  const double ti = in.interference.scale;
  const double rate = in.beta_e / in.signal.scale;
  constexpr double kAbsTol = 1e-12;

  // Upper limit covering all but a negligible sliver of the interference
  // mass; the extra constant keeps the exponential tail below 1e-20 even
  // for shapes far below 1, where the mean + 40 sigma rule alone is thin.
  const double upper = ti * (i + 40.0 * std::sqrt(i) + 45.0);

  // Both integrands can have an x^shape endpoint cusp (from the regularized
  // lower gamma factor when a shape is below 1). Integrating through the
  // cubic substitution x = hi t^2 (3 - 2t), whose Jacobian vanishes at both
  // ends, tames such cusps to at least C^1 so the Richardson-accelerated
  // Simpson recursion converges within its depth limit.
  const auto clustered = [kAbsTol](auto&& f, double hi) {
    return adaptive_simpson(
        [&](double t) {
          const double x = hi * t * t * (3.0 - 2.0 * t);
          return f(x) * hi * 6.0 * t * (1.0 - t);
        },
        0.0, 1.0, kAbsTol);
  };

  double covered;
  if (i >= 1.0) {
    covered = clustered(
        [&](double x) {
          return gamma_pdf(in.interference, x) * reg_lower_gamma(s, rate * x);
        },
        upper);
  } else {
    // Shapes below 1 make the density blow up at 0; the substitution
    // u = (x / scale)^shape flattens it to exp(-u^(1/shape)) / Gamma(shape+1).
    const double norm = std::exp(-ln_gamma(i + 1.0));
    const double inv_shape = 1.0 / i;
    const double scaled_rate = rate * ti;
    covered = clustered(
        [&](double u) {
          if (u <= 0.0) return 0.0;
          const double x_over_ti = std::pow(u, inv_shape);
          return norm * std::exp(-x_over_ti) *
                 reg_lower_gamma(s, scaled_rate * x_over_ti);
        },
        std::pow(upper / ti, i));
  }
  return std::clamp(1.0 - covered, 0.0, 1.0);
}

namespace {

template <class E>
[[noreturn]] void rethrow_staged(const char* stage, const E& e) {
  throw E(std::string("analytic pipeline stage '") + stage + "': " + e.what());
}

template <class Fn>
auto run_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const DivergentIntegral& e) {
    rethrow_staged(stage, e);
  } catch (const ToleranceNotMet& e) {
    rethrow_staged(stage, e);
  } catch (const SeriesNonConvergence& e) {
    rethrow_staged(stage, e);
  } catch (const DegenerateSignal& e) {
    rethrow_staged(stage, e);
  } catch (const DegenerateJamming& e) {
    rethrow_staged(stage, e);
  } catch (const NumericError& e) {
    rethrow_staged(stage, e);
  }
}

}  // namespace

SopReport analytic_sop(const NetworkConfig& cfg) {
  cfg.validate();
  if (!(cfg.eve.r > cfg.l1 + cfg.epsilon_z)) {
    throw ConfigError(
        "analytic pipeline requires the eavesdropper exclusion disk to clear "
        "the relay disk (eve.r > l1 + epsilon_z); closer in, the path-loss "
        "moments diverge");
  }
  const ThinnedDensities densities = thinned_densities(cfg);
  const Point2D eve = cfg.eve_xy();

  AnalyticSop out;
  out.q1 = run_stage("relay path-loss moment q1",
                     [&] { return q_z(1, cfg, eve); });
  out.q2 = run_stage("relay path-loss moment q2",
                     [&] { return q_z(2, cfg, eve); });
  out.j1 = run_stage("interference path-loss moment j1",
                     [&] { return jam_integral(1, cfg); });
  out.j2 = run_stage("interference path-loss moment j2",
                     [&] { return jam_integral(2, cfg); });
  const Moments signal = run_stage("signal moments", [&] {
    return moments_signal(densities.relays, cfg.ps_mw(), out.q1, out.q2);
  });
  const Moments interference = run_stage("interference moments", [&] {
    return moments_jamming(densities.jammers, cfg.pj_mw(), out.j1, out.j2);
  });
  out.signal = moment_match(signal);
  out.interference = moment_match(interference);
  const DgrBreakdown dgr = run_stage("closed form", [&] {
    return dgr_sop_detail({out.signal, out.interference, cfg.beta_e()});
  });
  out.sop = dgr.sop;
  out.q_e = dgr.q_e;
  out.hypergeom = dgr.hypergeom;

  SopReport report;
  report.analytic = out;
  report.trials = 0;
  report.seed = cfg.seed;
  return report;
}

}  // namespace secnet
