#include "secnet/rng.hpp"

#include <cmath>
#include <numbers>

#include "secnet/specfun.hpp"

namespace secnet {

namespace {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace

TrialRng make_trial_rng(std::uint64_t seed, std::uint64_t stream_index) {
  SplitMix64 sm(mix64(mix64(seed) ^ (0xD1B54A32D192ED03ull * (stream_index + 1))));
  return TrialRng({sm.next(), sm.next(), sm.next(), sm.next()});
}

double TrialRng::exponential() {
  // -log(1 - U) with U in [0,1) keeps the argument strictly positive.
  return -std::log1p(-uniform());
}

double TrialRng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double r = std::sqrt(2.0 * exponential());
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_normal_ = r * std::sin(angle);
  has_cached_normal_ = true;
  return r * std::cos(angle);
}

std::complex<double> TrialRng::complex_normal() {
  // Polar Box-Muller scaled so that E|h|^2 = 1: the squared magnitude is the
  // exponential draw itself, which is exactly the power-fade distribution.
  const double r = std::sqrt(exponential());
  const double angle = 2.0 * std::numbers::pi * uniform();
  return {r * std::cos(angle), r * std::sin(angle)};
}

std::int64_t TrialRng::poisson(double mu) {
  if (!(mu > 0.0)) return 0;
  if (mu < 10.0) {
    // Knuth's product-of-uniforms inversion.
    const double limit = std::exp(-mu);
    std::int64_t k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }
  // Transformed rejection with squeeze (Hormann's PTRS).
  const double slam = std::sqrt(mu);
  const double loglam = std::log(mu);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mu + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        k * loglam - mu - ln_gamma(k + 1.0)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

}  // namespace secnet
