#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "secnet/config.hpp"
#include "secnet/network.hpp"

namespace secnet {

// Fading draws for one realization, aligned index-for-index with the
// realization's node vectors. Relay channels are kept as complex gains
// because the beamformer needs their phases; for jammers only the power
// fade enters anywhere, so the unit-mean exponential is stored directly.
struct ChannelTable {
  std::vector<std::complex<double>> relay_dest;
  std::vector<std::complex<double>> relay_eve;
  std::vector<double> jam_power_dest;
  std::vector<double> jam_power_eve;
};

// Draw order is fixed and part of the reproducibility contract:
// per relay the destination gain then the eavesdropper gain, then per
// active jammer the destination fade then the eavesdropper fade.
ChannelTable sample_channels(const NodeRealization& nodes, TrialRng& rng);

// Coherent combining at the destination: each relay pre-compensates its own
// channel phase, so envelopes add. Returns the received power
// ( sum_k sqrt(ps) |h_k| d_k^(-alpha/2) )^2; zero when no relays.
double signal_power_dest(const NodeRealization& nodes,
                         const ChannelTable& channels,
                         const NetworkConfig& cfg);

// The same beamforming weights observed at the eavesdropper, where the
// phases do not line up: | sum_k sqrt(ps) g_k conj(h_k)/|h_k| e_k |^2 with
// e_k the path loss toward the eavesdropper.
double signal_power_eve(const NodeRealization& nodes,
                        const ChannelTable& channels,
                        const NetworkConfig& cfg);

enum class Target { Destination, Eavesdropper };

// Aggregate jamming power received at the target: sum over active jammers
// of pj * fade * d^(-alpha).
double jamming_power(const NodeRealization& nodes, const ChannelTable& channels,
                     Target target, const NetworkConfig& cfg);

// signal/interference with the edge cases pinned down: 0/0 -> 0 (a silent
// network leaks nothing), positive/0 -> +infinity.
double sir_at(double signal_power, double interference_power);

struct TrialOutcome {
  double sir_dest = 0.0;
  double sir_eve = 0.0;
  double signal_eve = 0.0;        // beamformed power at the eavesdropper
  double interference_eve = 0.0;  // aggregate jamming power there
  std::uint32_t n_relays = 0;
  std::uint32_t n_active_jammers = 0;
};

// One complete network draw: node process over the deployment disk, trust
// marks, classification, fading, received powers. Fully determined by
// (cfg, seed, trial_index).
TrialOutcome run_trial(const NetworkConfig& cfg, std::uint64_t seed,
                       std::uint64_t trial_index);

struct McDiagnostics {
  double mean_relays = 0.0;
  double mean_active_jammers = 0.0;
  double frac_no_relay = 0.0;       // trials with an empty relay set
  double frac_no_jammer = 0.0;      // trials with no active jammer
  double frac_zero_over_zero = 0.0; // trials where both powers were zero
};

struct SopEstimate {
  double sop = 0.0;        // outage_count / trials
  double std_error = 0.0;  // binomial standard error
  McDiagnostics diag;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Secrecy outage probability: fraction of trials with sir_eve strictly
// above cfg.beta_e(). Trials are processed in fixed-size blocks claimed by
// a work-stealing pool but reduced in block order, so the result is
// bit-identical for any worker count (threads == 0 picks the hardware
// count). The outage count is an integer, so sop itself is exact.
SopEstimate estimate_sop(const NetworkConfig& cfg, std::uint64_t trials,
                         std::uint64_t seed, unsigned threads = 0);

// Same simulation evaluated against several thresholds at once (common
// random numbers): sop[i] corresponds to beta_linear[i], and monotonicity
// in the threshold is exact by construction.
struct MultiSopEstimate {
  std::vector<double> sop;
  std::vector<double> std_error;
  McDiagnostics diag;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};
MultiSopEstimate estimate_sop_thresholds(const NetworkConfig& cfg,
                                         const std::vector<double>& beta_linear,
                                         std::uint64_t trials,
                                         std::uint64_t seed,
                                         unsigned threads = 0);

struct MomentEstimate {
  double mean = 0.0;
  double variance = 0.0;     // unbiased sample variance
  double se_mean = 0.0;
  double se_variance = 0.0;  // delete-one jackknife
};

enum class Quantity { SignalPowerEve, InterferencePowerEve };

MomentEstimate estimate_moments(const NetworkConfig& cfg, Quantity what,
                                std::uint64_t trials, std::uint64_t seed,
                                unsigned threads = 0);

// Both quantities from a single pass over the same trials (they share the
// network draws, which is also what the analytic model assumes).
struct TrialMomentEstimates {
  MomentEstimate signal;
  MomentEstimate interference;
};
TrialMomentEstimates estimate_trial_moments(const NetworkConfig& cfg,
                                            std::uint64_t trials,
                                            std::uint64_t seed,
                                            unsigned threads = 0);

}  // namespace secnet
