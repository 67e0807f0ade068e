#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace secnet {

// splitmix64 finalizer; used both as a stand-alone mixer and to seed streams.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based per-trial random stream (xoshiro256++ core).
//
// Streams are derived from (seed, stream_index) so that trial i always sees
// the same draws no matter how trials are distributed over workers, which is
// what makes every Monte-Carlo result in this library reproducible bit for
// bit. All variate generators consume a fixed, documented number of uniforms.
class TrialRng {
 public:
  explicit TrialRng(std::array<std::uint64_t, 4> state) : s_(state) {
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // avoid the fixed point
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53-bit resolution. One u64 draw.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Exponential with mean 1. One draw.
  double exponential();

  // Standard normal via Box-Muller; draws a pair of uniforms every other call.
  double normal();

  // Circularly-symmetric complex normal with E|h|^2 = 1 (so |h|^2 is
  // exponential with mean 1 and |h| is Rayleigh). Exactly two draws.
  std::complex<double> complex_normal();

  // Poisson(mu). Inversion-by-products for small mu, transformed rejection
  // for large mu; the number of draws consumed is itself random.
  std::int64_t poisson(double mu);

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Builds the stream for one trial. Distinct (seed, stream_index) pairs give
// statistically independent streams.
TrialRng make_trial_rng(std::uint64_t seed, std::uint64_t stream_index);

}  // namespace secnet
