#include "secnet/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

#include "secnet/errors.hpp"
#include "secnet/rng.hpp"

namespace secnet {

ChannelTable sample_channels(const NodeRealization& nodes, TrialRng& rng) {
  ChannelTable ch;
  ch.relay_dest.reserve(nodes.relays.size());
  ch.relay_eve.reserve(nodes.relays.size());
  for (std::size_t i = 0; i < nodes.relays.size(); ++i) {
    ch.relay_dest.push_back(rng.complex_normal());
    ch.relay_eve.push_back(rng.complex_normal());
  }
  ch.jam_power_dest.reserve(nodes.active_jammers.size());
  ch.jam_power_eve.reserve(nodes.active_jammers.size());
  for (std::size_t i = 0; i < nodes.active_jammers.size(); ++i) {
    ch.jam_power_dest.push_back(rng.exponential());
    ch.jam_power_eve.push_back(rng.exponential());
  }
  return ch;
}

double signal_power_dest(const NodeRealization& nodes,
                         const ChannelTable& channels,
                         const NetworkConfig& cfg) {
  const Point2D dest = cfg.dest_xy();
  const double half_alpha = 0.5 * cfg.alpha;
  double envelope = 0.0;
  for (std::size_t i = 0; i < nodes.relays.size(); ++i) {
    const double d = distance(nodes.relays[i], dest);
    envelope += std::abs(channels.relay_dest[i]) * std::pow(d, -half_alpha);
  }
  return cfg.ps_mw() * envelope * envelope;
}

double signal_power_eve(const NodeRealization& nodes,
                        const ChannelTable& channels,
                        const NetworkConfig& cfg) {
  const Point2D eve = cfg.eve_xy();
  const double half_alpha = 0.5 * cfg.alpha;
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < nodes.relays.size(); ++i) {
    const std::complex<double> h_d = channels.relay_dest[i];
    const double mag = std::abs(h_d);
    if (mag == 0.0) continue;  // a zero channel gets no beamforming weight
    const double d = distance(nodes.relays[i], eve);
    sum += channels.relay_eve[i] * (std::conj(h_d) / mag) *
           std::pow(d, -half_alpha);
  }
  return cfg.ps_mw() * std::norm(sum);
}

double jamming_power(const NodeRealization& nodes, const ChannelTable& channels,
                     Target target, const NetworkConfig& cfg) {
  const Point2D at =
      target == Target::Destination ? cfg.dest_xy() : cfg.eve_xy();
  const std::vector<double>& fades = target == Target::Destination
                                         ? channels.jam_power_dest
                                         : channels.jam_power_eve;
  const double neg_alpha = -cfg.alpha;
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.active_jammers.size(); ++i) {
    const double d = distance(nodes.active_jammers[i], at);
    sum += fades[i] * std::pow(d, neg_alpha);
  }
  return cfg.pj_mw() * sum;
}

double sir_at(double signal_power, double interference_power) {
  if (interference_power > 0.0) return signal_power / interference_power;
  if (signal_power > 0.0) return std::numeric_limits<double>::infinity();
  return 0.0;
}

TrialOutcome run_trial(const NetworkConfig& cfg, std::uint64_t seed,
                       std::uint64_t trial_index) {
  TrialRng rng = make_trial_rng(seed, trial_index);

  // Canonical draw order: node count, node positions, trust marks,
  // relay channels, jammer fades. Everything downstream is a pure
  // function of these draws.
  const Region deployment = Disk{{0.0, 0.0}, cfg.l2};
  const std::vector<Point2D> points = sample_ppp(deployment, cfg.lambda, rng);
  std::vector<double> trust(points.size());
  for (double& t : trust) t = rng.uniform();

  Classification cls = classify_nodes(points, trust, cfg);
  NodeRealization nodes{std::move(cls.relays), std::move(cls.active_jammers)};
  const ChannelTable channels = sample_channels(nodes, rng);

  const double sig_dest = signal_power_dest(nodes, channels, cfg);
  const double sig_eve = signal_power_eve(nodes, channels, cfg);
  const double jam_dest = jamming_power(nodes, channels, Target::Destination, cfg);
  const double jam_eve = jamming_power(nodes, channels, Target::Eavesdropper, cfg);

  TrialOutcome out;
  out.sir_dest = sir_at(sig_dest, jam_dest);
  out.sir_eve = sir_at(sig_eve, jam_eve);
  out.signal_eve = sig_eve;
  out.interference_eve = jam_eve;
  out.n_relays = static_cast<std::uint32_t>(nodes.relays.size());
  out.n_active_jammers = static_cast<std::uint32_t>(nodes.active_jammers.size());
  return out;
}

namespace {

// Trials are processed in fixed blocks of this size no matter how many
// workers run; per-block results are reduced in block order afterwards, so
// every estimate is a deterministic function of (cfg, trials, seed) alone.
constexpr std::uint64_t kBlockSize = 4096;

template <class PerTrial>
void run_blocks(std::uint64_t trials, unsigned threads, PerTrial&& per_trial) {
  const std::uint64_t n_blocks = (trials + kBlockSize - 1) / kBlockSize;
  unsigned n_workers = threads == 0
                           ? std::max(1u, std::thread::hardware_concurrency())
                           : threads;
  if (n_workers > n_blocks) n_workers = static_cast<unsigned>(n_blocks);

  std::atomic<std::uint64_t> next_block{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  const auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t b = next_block.fetch_add(1);
        if (b >= n_blocks || failed.load(std::memory_order_relaxed)) break;
        const std::uint64_t begin = b * kBlockSize;
        const std::uint64_t end = std::min(trials, begin + kBlockSize);
        per_trial(b, begin, end);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

struct DiagAcc {
  std::uint64_t relays = 0;
  std::uint64_t jammers = 0;
  std::uint64_t no_relay = 0;
  std::uint64_t no_jammer = 0;
  std::uint64_t zero_over_zero = 0;

  void absorb(const TrialOutcome& o) {
    relays += o.n_relays;
    jammers += o.n_active_jammers;
    if (o.n_relays == 0) ++no_relay;
    if (o.n_active_jammers == 0) ++no_jammer;
    if (o.signal_eve == 0.0 && o.interference_eve == 0.0) ++zero_over_zero;
  }
};

McDiagnostics finalize_diag(const DiagAcc& acc, std::uint64_t trials) {
  const double n = static_cast<double>(trials);
  McDiagnostics d;
  d.mean_relays = static_cast<double>(acc.relays) / n;
  d.mean_active_jammers = static_cast<double>(acc.jammers) / n;
  d.frac_no_relay = static_cast<double>(acc.no_relay) / n;
  d.frac_no_jammer = static_cast<double>(acc.no_jammer) / n;
  d.frac_zero_over_zero = static_cast<double>(acc.zero_over_zero) / n;
  return d;
}

}  // namespace

MultiSopEstimate estimate_sop_thresholds(const NetworkConfig& cfg,
                                         const std::vector<double>& beta_linear,
                                         std::uint64_t trials,
                                         std::uint64_t seed,
                                         unsigned threads) {
  cfg.validate();
  if (trials == 0) throw ConfigError("Monte-Carlo run requested with trials == 0");
  if (beta_linear.empty()) {
    throw std::domain_error("estimate_sop_thresholds: no thresholds given");
  }
  const std::size_t n_beta = beta_linear.size();
  const std::uint64_t n_blocks = (trials + kBlockSize - 1) / kBlockSize;

  struct BlockAcc {
    std::vector<std::uint64_t> outages;
    DiagAcc diag;
  };
  std::vector<BlockAcc> blocks(n_blocks);

  run_blocks(trials, threads,
             [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
               BlockAcc& acc = blocks[b];
               acc.outages.assign(n_beta, 0);
               for (std::uint64_t t = begin; t < end; ++t) {
                 const TrialOutcome o = run_trial(cfg, seed, t);
                 acc.diag.absorb(o);
                 for (std::size_t i = 0; i < n_beta; ++i) {
                   if (o.sir_eve > beta_linear[i]) ++acc.outages[i];
                 }
               }
             });

  std::vector<std::uint64_t> outages(n_beta, 0);
  DiagAcc diag;
  for (const BlockAcc& acc : blocks) {
    for (std::size_t i = 0; i < n_beta; ++i) outages[i] += acc.outages[i];
    diag.relays += acc.diag.relays;
    diag.jammers += acc.diag.jammers;
    diag.no_relay += acc.diag.no_relay;
    diag.no_jammer += acc.diag.no_jammer;
    diag.zero_over_zero += acc.diag.zero_over_zero;
  }

  MultiSopEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.diag = finalize_diag(diag, trials);
  est.sop.resize(n_beta);
  est.std_error.resize(n_beta);
  const double n = static_cast<double>(trials);
  for (std::size_t i = 0; i < n_beta; ++i) {
    const double p = static_cast<double>(outages[i]) / n;
    est.sop[i] = p;
    est.std_error[i] = std::sqrt(p * (1.0 - p) / n);
  }
  return est;
}

SopEstimate estimate_sop(const NetworkConfig& cfg, std::uint64_t trials,
                         std::uint64_t seed, unsigned threads) {
  const MultiSopEstimate multi =
      estimate_sop_thresholds(cfg, {cfg.beta_e()}, trials, seed, threads);
  SopEstimate est;
  est.sop = multi.sop[0];
  est.std_error = multi.std_error[0];
  est.diag = multi.diag;
  est.trials = trials;
  est.seed = seed;
  return est;
}

namespace {

MomentEstimate reduce_moments(const std::vector<double>& vals) {
  const std::size_t n = vals.size();
  const double dn = static_cast<double>(n);
  double sum = 0.0;
  for (double v : vals) sum += v;
  const double mean = sum / dn;

  double s2 = 0.0;
  for (double v : vals) {
    const double c = v - mean;
    s2 += c * c;
  }
  const double variance = s2 / (dn - 1.0);

  MomentEstimate est;
  est.mean = mean;
  est.variance = variance;
  est.se_mean = std::sqrt(variance / dn);

  // Delete-one jackknife for the variance: leaving out sample i gives
  // var_i = (s2 - c_i^2 * n/(n-1)) / (n-2); the jackknife standard error is
  // sqrt((n-1)/n * sum (var_i - mean(var_i))^2), computed in two passes to
  // dodge the cancellation in sum(var_i^2) - n*vbar^2.
  const double scale = dn / (dn - 1.0);
  double vsum = 0.0;
  for (double v : vals) {
    const double c = v - mean;
    vsum += (s2 - c * c * scale) / (dn - 2.0);
  }
  const double vbar = vsum / dn;
  double dev2 = 0.0;
  for (double v : vals) {
    const double c = v - mean;
    const double var_i = (s2 - c * c * scale) / (dn - 2.0);
    dev2 += (var_i - vbar) * (var_i - vbar);
  }
  est.se_variance = std::sqrt((dn - 1.0) / dn * dev2);
  return est;
}

}  // namespace

TrialMomentEstimates estimate_trial_moments(const NetworkConfig& cfg,
                                            std::uint64_t trials,
                                            std::uint64_t seed,
                                            unsigned threads) {
  cfg.validate();
  if (trials < 3) {
    throw ConfigError("moment estimation requires at least 3 trials");
  }
  std::vector<double> signal(trials);
  std::vector<double> interference(trials);
  run_blocks(trials, threads,
             [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
               for (std::uint64_t t = begin; t < end; ++t) {
                 const TrialOutcome o = run_trial(cfg, seed, t);
                 signal[t] = o.signal_eve;
                 interference[t] = o.interference_eve;
               }
             });
  return {reduce_moments(signal), reduce_moments(interference)};
}

MomentEstimate estimate_moments(const NetworkConfig& cfg, Quantity what,
                                std::uint64_t trials, std::uint64_t seed,
                                unsigned threads) {
  const TrialMomentEstimates both =
      estimate_trial_moments(cfg, trials, seed, threads);
  return what == Quantity::SignalPowerEve ? both.signal : both.interference;
}

}  // namespace secnet
