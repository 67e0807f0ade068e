// Tests for the physical-layer simulator: classification, fading draws,
// received powers, per-trial determinism, and the outage estimators.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "secnet/analytic.hpp"
#include "secnet/config.hpp"
#include "secnet/geometry.hpp"
#include "secnet/montecarlo.hpp"
#include "secnet/network.hpp"
#include "secnet/quadrature.hpp"
#include "secnet/rng.hpp"
#include "support/stats.hpp"

using namespace secnet;

namespace {

// Small deployment used where full-size trials would be needlessly slow:
// same structure, a tenth of the radius.
NetworkConfig reduced_config() {
  NetworkConfig cfg;
  cfg.lambda = 1.0;
  cfg.c1 = 0.8;
  cfg.c2 = 0.7;
  cfg.l1 = 3.0;
  cfg.l2 = 12.0;
  cfg.l_g = 2.0;
  cfg.dest = {0.0, 0.0};
  cfg.eve = {40.0, 0.0};
  cfg.validate();
  return cfg;
}

double exp_cdf(double mean, double x) { return -std::expm1(-x / mean); }

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("classify_nodes: trust bands and geometric eligibility") {
  NetworkConfig cfg;  // c1=0.8, c2=0.79, l1=6, l_g=5, epsilon_z=1
  const std::vector<Point2D> points = {
      {1.0, 0.0},    // trusted, inside relay disk -> relay
      {0.0, 6.0},    // trusted, on the relay-disk rim -> relay
      {20.0, 0.0},   // trusted but outside the relay disk -> dummy
      {2.0, 2.0},    // jammer band but inside the relay disk -> dummy
      {30.0, 0.0},   // jammer band, in the clear -> active jammer
      {50.0, 3.0},   // jammer band, inside the destination guard -> idle
      {0.2, 60.0},   // jammer band, inside the eavesdropper exclusion -> idle
      {70.0, 0.0},   // trust below both thresholds -> dummy
  };
  const std::vector<double> trust = {0.95, 0.8, 0.9, 0.795,
                                     0.79, 0.795, 0.795, 0.5};
  const Classification c = classify_nodes(points, trust, cfg);

  CHECK(c.relays.size() == 2);
  CHECK(c.jammers.size() == 3);
  CHECK(c.active_jammers.size() == 1);
  CHECK(c.dummies.size() == 3);
  CHECK(c.relays.size() + c.jammers.size() + c.dummies.size() == points.size());
  CHECK(c.active_jammers[0].x == 30.0);

  SUBCASE("trust boundaries: c2 inclusive, c1 switches band") {
    const std::vector<Point2D> pts = {{10.0, 0.0}, {10.0, 0.0}, {10.0, 0.0}};
    const std::vector<double> tr = {cfg.c1, cfg.c2, cfg.c2 - 1e-12};
    const Classification b = classify_nodes(pts, tr, cfg);
    // Trust exactly c1 outside the relay disk: relay band, wrong place.
    CHECK(b.jammers.size() == 1);
    CHECK(b.dummies.size() == 2);
  }
  SUBCASE("guard boundary is exclusive") {
    // Jammer exactly l_g from the destination stays idle (strict >).
    const std::vector<Point2D> pts = {{45.0, 0.0}};  // dist to (50,0) = 5
    const Classification b = classify_nodes(pts, {0.795}, cfg);
    CHECK(b.jammers.size() == 1);
    CHECK(b.active_jammers.empty());
  }
  SUBCASE("disabling the eavesdropper exclusion reactivates the jammer") {
    NetworkConfig open = cfg;
    open.eve_exclusion_in_mc = false;
    const std::vector<Point2D> pts = {{0.2, 60.0}};
    CHECK(classify_nodes(pts, {0.795}, cfg).active_jammers.empty());
    CHECK(classify_nodes(pts, {0.795}, open).active_jammers.size() == 1);
  }
}

TEST_CASE("classify_nodes: dummy nodes never influence the realization") {
  NetworkConfig cfg;
  std::vector<Point2D> points = {{1.0, 1.0}, {30.0, 0.0}, {0.0, 20.0}};
  std::vector<double> trust = {0.9, 0.795, 0.795};
  const Classification before = classify_nodes(points, trust, cfg);
  // Append low-trust nodes everywhere; nothing already classified moves.
  points.insert(points.end(), {{2.0, 0.0}, {40.0, 40.0}, {0.0, 90.0}});
  trust.insert(trust.end(), {0.1, 0.5, 0.2});
  const Classification after = classify_nodes(points, trust, cfg);
  REQUIRE(after.relays.size() == before.relays.size());
  REQUIRE(after.active_jammers.size() == before.active_jammers.size());
  for (std::size_t i = 0; i < before.relays.size(); ++i) {
    CHECK(after.relays[i].x == before.relays[i].x);
    CHECK(after.relays[i].y == before.relays[i].y);
  }
  for (std::size_t i = 0; i < before.active_jammers.size(); ++i) {
    CHECK(after.active_jammers[i].x == before.active_jammers[i].x);
    CHECK(after.active_jammers[i].y == before.active_jammers[i].y);
  }
  CHECK(after.dummies.size() == before.dummies.size() + 3);
}

TEST_CASE("thinning: classified counts match the thinned Poisson processes") {
  const NetworkConfig cfg = reduced_config();
  const ThinnedDensities d = thinned_densities(cfg);
  const double relay_mean = d.relays * area(Disk{{0.0, 0.0}, cfg.l1});
  const double active_mean = d.jammers * area(jam_region(cfg));

  const std::size_t reps = 20000;
  TrialRng rng = make_trial_rng(31, 0);
  const Region deployment = Disk{{0.0, 0.0}, cfg.l2};
  std::vector<double> relay_counts, active_counts;
  relay_counts.reserve(reps);
  active_counts.reserve(reps);
  teststat::KahanSum relay_r2;
  std::size_t relay_total = 0;
  for (std::size_t k = 0; k < reps; ++k) {
    const std::vector<Point2D> pts = sample_ppp(deployment, cfg.lambda, rng);
    std::vector<double> trust(pts.size());
    for (double& t : trust) t = rng.uniform();
    const Classification c = classify_nodes(pts, trust, cfg);
    relay_counts.push_back(static_cast<double>(c.relays.size()));
    active_counts.push_back(static_cast<double>(c.active_jammers.size()));
    for (const Point2D& p : c.relays) {
      relay_r2.add(p.x * p.x + p.y * p.y);
      ++relay_total;
    }
  }

  // Counts: Poisson mean and Poisson dispersion, both at the 1% level.
  const double m_r = teststat::mean_of(relay_counts);
  CHECK(std::abs(teststat::z_score(m_r, relay_mean,
                                   std::sqrt(relay_mean /
                                             static_cast<double>(reps)))) <
        teststat::kZCrit1pc);
  CHECK(std::abs(teststat::poisson_dispersion_z(relay_counts)) <
        teststat::kZCrit1pc);
  const double m_a = teststat::mean_of(active_counts);
  CHECK(std::abs(teststat::z_score(m_a, active_mean,
                                   std::sqrt(active_mean /
                                             static_cast<double>(reps)))) <
        teststat::kZCrit1pc);
  CHECK(std::abs(teststat::poisson_dispersion_z(active_counts)) <
        teststat::kZCrit1pc);

  // Positions: relays are uniform on the disk, so E|p|^2 = l1^2 / 2.
  const double mean_r2 = relay_r2.sum / static_cast<double>(relay_total);
  // Var(r^2) for uniform r^2 on [0, l1^2] is l1^4/12.
  const double se_r2 = cfg.l1 * cfg.l1 / std::sqrt(12.0) /
                       std::sqrt(static_cast<double>(relay_total));
  CHECK(std::abs(teststat::z_score(mean_r2, cfg.l1 * cfg.l1 / 2.0, se_r2)) <
        teststat::kZCrit1pc);
}

TEST_CASE("relay-disk void probability at the reference densities") {
  // Relay process: density 0.04 on a disk of radius 6, so the void
  // probability is exp(-0.04 * pi * 36) = 0.010836.
  const double mean = 0.04 * 36.0 * std::numbers::pi;
  const double p_void = std::exp(-mean);
  const Region disk = Disk{{0.0, 0.0}, 6.0};
  TrialRng rng = make_trial_rng(57, 0);
  const std::size_t reps = 100000;
  std::size_t empties = 0;
  for (std::size_t k = 0; k < reps; ++k) {
    if (sample_ppp(disk, 0.04, rng).empty()) ++empties;
  }
  const double est = static_cast<double>(empties) / static_cast<double>(reps);
  const double se = std::sqrt(p_void * (1.0 - p_void) /
                              static_cast<double>(reps));
  CHECK(std::abs(teststat::z_score(est, p_void, se)) < teststat::kZCrit1pc);
}

TEST_CASE("sample_channels: draw order is the documented contract") {
  NodeRealization nodes;
  nodes.relays = {{2.0, 1.0}, {-3.0, 0.5}};
  nodes.active_jammers = {{8.0, 0.0}};
  TrialRng rng = make_trial_rng(11, 4);
  const ChannelTable t = sample_channels(nodes, rng);
  REQUIRE(t.relay_dest.size() == 2);
  REQUIRE(t.relay_eve.size() == 2);
  REQUIRE(t.jam_power_dest.size() == 1);
  REQUIRE(t.jam_power_eve.size() == 1);

  // Replay the same stream by hand: per relay destination-then-eve complex
  // gains, then per active jammer destination-then-eve power fades.
  TrialRng replay = make_trial_rng(11, 4);
  CHECK(t.relay_dest[0] == replay.complex_normal());
  CHECK(t.relay_eve[0] == replay.complex_normal());
  CHECK(t.relay_dest[1] == replay.complex_normal());
  CHECK(t.relay_eve[1] == replay.complex_normal());
  CHECK(t.jam_power_dest[0] == replay.exponential());
  CHECK(t.jam_power_eve[0] == replay.exponential());
}

TEST_CASE("sample_channels: marginals") {
  NodeRealization nodes;
  nodes.relays = {{2.0, 1.0}};
  nodes.active_jammers = {{8.0, 0.0}};
  const std::size_t n = 100000;
  std::vector<double> gain_power(n), fade(n);
  teststat::KahanSum power_sum;
  for (std::size_t k = 0; k < n; ++k) {
    TrialRng rng = make_trial_rng(13, k);
    const ChannelTable t = sample_channels(nodes, rng);
    gain_power[k] = std::norm(t.relay_eve[0]);
    fade[k] = t.jam_power_dest[0];
    power_sum.add(gain_power[k]);
  }
  // |H|^2 for a unit circularly-symmetric complex normal is Exp(1).
  std::sort(gain_power.begin(), gain_power.end());
  CHECK(teststat::ks_statistic(gain_power,
                               [](double x) { return exp_cdf(1.0, x); }) <
        teststat::kKsCrit1pc);
  CHECK(std::abs(teststat::z_score(power_sum.sum / n, 1.0,
                                   1.0 / std::sqrt(double(n)))) <
        teststat::kZCrit1pc);
  // Jamming power fades are Exp(1) too.
  std::sort(fade.begin(), fade.end());
  CHECK(teststat::ks_statistic(fade,
                               [](double x) { return exp_cdf(1.0, x); }) <
        teststat::kKsCrit1pc);
}

TEST_CASE("received powers: closed-form micro-cases") {
  NetworkConfig cfg;
  cfg.ps_dbm = 0.0;  // 1 mW
  cfg.pj_dbm = 0.0;
  cfg.dest = {0.0, 0.0};
  ChannelTable t;

  SUBCASE("no relays, no jammers") {
    NodeRealization empty;
    CHECK(signal_power_dest(empty, t, cfg) == 0.0);
    CHECK(signal_power_eve(empty, t, cfg) == 0.0);
    CHECK(jamming_power(empty, t, Target::Destination, cfg) == 0.0);
  }
  SUBCASE("one relay at unit distance with unit gain") {
    NodeRealization nodes;
    nodes.relays = {{1.0, 0.0}};
    t.relay_dest = {{1.0, 0.0}};
    t.relay_eve = {{0.3, -0.4}};
    CHECK(signal_power_dest(nodes, t, cfg) == doctest::Approx(1.0));
  }
  SUBCASE("two relays at unit distance combine coherently") {
    NodeRealization nodes;
    nodes.relays = {{1.0, 0.0}, {0.0, 1.0}};
    t.relay_dest = {{0.6, 0.8}, {-1.0, 0.0}};  // both envelopes 1
    t.relay_eve = {{0.1, 0.0}, {0.0, 0.2}};
    CHECK(signal_power_dest(nodes, t, cfg) == doctest::Approx(4.0));
  }
  SUBCASE("single-relay eavesdropper power ignores the destination gain") {
    NodeRealization nodes;
    nodes.relays = {{0.0, 2.0}};
    cfg.eve = {4.0, 0.0};
    const std::complex<double> h_z{0.3, -0.7};
    const double dist = std::hypot(0.0 - 4.0, 2.0 - 0.0);
    const double expected =
        std::norm(h_z) * std::pow(dist, -cfg.alpha);
    for (const std::complex<double> h_d :
         {std::complex<double>{1.0, 0.0}, std::complex<double>{-0.3, 2.1},
          std::complex<double>{0.0, -5.0}}) {
      ChannelTable ct;
      ct.relay_dest = {h_d};
      ct.relay_eve = {h_z};
      CHECK(signal_power_eve(nodes, ct, cfg) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("one jammer, unit fade, unit distance") {
    NodeRealization nodes;
    nodes.active_jammers = {{1.0, 0.0}};
    t.jam_power_dest = {1.0};
    t.jam_power_eve = {1.0};
    CHECK(jamming_power(nodes, t, Target::Destination, cfg) ==
          doctest::Approx(1.0));
    cfg.eve = {3.0, 0.0};  // jammer 2 m from the eavesdropper
    CHECK(jamming_power(nodes, t, Target::Eavesdropper, cfg) ==
          doctest::Approx(std::pow(2.0, -4.0)));
  }
}

TEST_CASE("phase invariance of the beamformer") {
  NetworkConfig cfg;
  NodeRealization nodes;
  nodes.relays = {{2.0, 1.0}, {-3.0, 0.5}, {0.0, -4.0}};

  SUBCASE("rotation by the imaginary unit is exactly neutral") {
    // (a+bi) * i = (-b, a): representable exactly, so both powers must be
    // bit-identical, not merely close.
    for (std::uint64_t k = 0; k < 64; ++k) {
      TrialRng rng = make_trial_rng(17, k);
      ChannelTable t = sample_channels(nodes, rng);
      ChannelTable rotated = t;
      for (auto& h : rotated.relay_dest) {
        h = std::complex<double>(-h.imag(), h.real());
      }
      CHECK(signal_power_dest(nodes, rotated, cfg) ==
            signal_power_dest(nodes, t, cfg));
      CHECK(signal_power_eve(nodes, rotated, cfg) ==
            signal_power_eve(nodes, t, cfg));
    }
  }
  SUBCASE("generic rotation preserves the eavesdropper power law") {
    // The conditional law of the eavesdropper power for this fixed relay
    // pattern is exponential with mean ps * sum of path losses; a rotated
    // destination channel must not disturb it.
    const Point2D eve = cfg.eve_xy();
    double mean = 0.0;
    for (const Point2D& r : nodes.relays) {
      mean += cfg.ps_mw() * std::pow(distance(r, eve), -cfg.alpha);
    }
    const std::complex<double> u = std::polar(1.0, 0.7321);
    const std::size_t n = 50000;
    std::vector<double> draws(n);
    for (std::size_t k = 0; k < n; ++k) {
      TrialRng rng = make_trial_rng(19, k);
      ChannelTable t = sample_channels(nodes, rng);
      for (auto& h : t.relay_dest) h *= u;
      draws[k] = signal_power_eve(nodes, t, cfg);
    }
    std::sort(draws.begin(), draws.end());
    CHECK(teststat::ks_statistic(
              draws, [mean](double x) { return exp_cdf(mean, x); }) <
          teststat::kKsCrit1pc);
  }
}

TEST_CASE("sir_at: edge cases") {
  CHECK(sir_at(2.0, 1.0) == 2.0);
  CHECK(sir_at(0.0, 5.0) == 0.0);
  CHECK(sir_at(0.0, 0.0) == 0.0);
  CHECK(std::isinf(sir_at(1.0, 0.0)));
  CHECK(sir_at(1.0, 0.0) > 0.0);
}

TEST_CASE("run_trial: fully determined by (config, seed, index)") {
  NetworkConfig cfg;
  const TrialOutcome a = run_trial(cfg, 7, 123);
  const TrialOutcome b = run_trial(cfg, 7, 123);
  CHECK(a.sir_eve == b.sir_eve);
  CHECK(a.sir_dest == b.sir_dest);
  CHECK(a.signal_eve == b.signal_eve);
  CHECK(a.interference_eve == b.interference_eve);
  CHECK(a.n_relays == b.n_relays);
  CHECK(a.n_active_jammers == b.n_active_jammers);

  const TrialOutcome c = run_trial(cfg, 7, 124);
  const TrialOutcome d = run_trial(cfg, 8, 123);
  CHECK(a.signal_eve != c.signal_eve);
  CHECK(a.signal_eve != d.signal_eve);
}

TEST_CASE("estimate_sop: worker count cannot change the answer") {
  NetworkConfig cfg;
  const std::uint64_t trials = 8192;  // spans two reduction blocks
  const SopEstimate lone = estimate_sop(cfg, trials, 3, 1);
  const SopEstimate pooled = estimate_sop(cfg, trials, 3, 3);
  CHECK(lone.sop == pooled.sop);
  CHECK(lone.std_error == pooled.std_error);
  CHECK(lone.diag.mean_relays == pooled.diag.mean_relays);
  CHECK(lone.diag.mean_active_jammers == pooled.diag.mean_active_jammers);
  CHECK(lone.diag.frac_no_relay == pooled.diag.frac_no_relay);
  CHECK(lone.trials == trials);
  CHECK(lone.seed == 3);

  // The multi-threshold estimator at a single threshold is the same
  // simulation, so it must reproduce the plain estimator bit for bit.
  const MultiSopEstimate multi =
      estimate_sop_thresholds(cfg, {cfg.beta_e()}, trials, 3, 2);
  REQUIRE(multi.sop.size() == 1);
  CHECK(multi.sop[0] == lone.sop);
  CHECK(multi.std_error[0] == lone.std_error);
}

TEST_CASE("estimate_sop_thresholds: limits and exact threshold monotonicity") {
  NetworkConfig cfg;
  std::vector<double> betas = {0.0};
  for (double db : {-5.0, 0.0, 5.0, 10.0}) betas.push_back(db_to_linear(db));
  betas.push_back(1e12);

  const std::uint64_t trials = 30000;
  const MultiSopEstimate est = estimate_sop_thresholds(cfg, betas, trials, 1);
  REQUIRE(est.sop.size() == betas.size());

  // Common random numbers make monotonicity exact, not statistical.
  for (std::size_t i = 1; i < est.sop.size(); ++i) {
    CHECK(est.sop[i] <= est.sop[i - 1]);
  }

  // Zero threshold: outage unless the relay set is empty (strict >).
  const double p_relay = 1.0 - std::exp(-0.04 * 36.0 * std::numbers::pi);
  const double se0 = std::sqrt(p_relay * (1.0 - p_relay) /
                               static_cast<double>(trials));
  CHECK(std::abs(teststat::z_score(est.sop[0], p_relay, se0)) <
        teststat::kZCrit1pc);
  CHECK(est.sop[0] == doctest::Approx(1.0 - est.diag.frac_no_relay));

  // Astronomical threshold: outage needs signal to beat 1e12 x interference.
  CHECK(est.sop.back() <= 3.0 * est.std_error.back() + 1e-12);
}

TEST_CASE("estimate_trial_moments matches the analytic moments") {
  // Reduced geometry keeps 100k trials cheap; the bands (2% means, 5%
  // variances) sit at 4-5 standard errors here.
  const NetworkConfig cfg = reduced_config();
  const ThinnedDensities d = thinned_densities(cfg);
  const Point2D eve = cfg.eve_xy();

  const double q1 = q_z(1, cfg, eve);
  const double q2 = q_z(2, cfg, eve);
  const double j1 = jam_integral(1, cfg);
  const double j2 = jam_integral(2, cfg);
  const Moments sig = moments_signal(d.relays, cfg.ps_mw(), q1, q2);
  const Moments jam = moments_jamming(d.jammers, cfg.pj_mw(), j1, j2);

  const TrialMomentEstimates est = estimate_trial_moments(cfg, 100000, 5);
  CHECK(est.signal.mean ==
        doctest::Approx(sig.mean).epsilon(0.02));
  CHECK(est.signal.variance ==
        doctest::Approx(sig.variance).epsilon(0.05));
  CHECK(est.interference.mean ==
        doctest::Approx(jam.mean).epsilon(0.02));
  CHECK(est.interference.variance ==
        doctest::Approx(jam.variance).epsilon(0.05));

  // The reported uncertainties should make those agreements unsurprising.
  CHECK(std::abs(est.signal.mean - sig.mean) < 4.0 * est.signal.se_mean);
  CHECK(std::abs(est.interference.mean - jam.mean) <
        4.0 * est.interference.se_mean);
}

}  // TEST_SUITE
