#pragma once

// Small statistics helpers for the test suite. Everything here is written
// independently of the library under test (no secnet headers) so that
// agreement between the two is a genuine cross-check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace teststat {

// Two-sided critical values at the 1% significance level.
inline constexpr double kZCrit1pc = 2.5758293035489004;
// Asymptotic Kolmogorov-Smirnov critical value for D*sqrt(n) at 1%.
inline constexpr double kKsCrit1pc = 1.6276;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// One-sample Kolmogorov-Smirnov distance against a cdf. Sorts in place.
inline double ks_distance(std::vector<double>& sample,
                          const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const double f = cdf(sample[k]);
    d = std::max(d, std::abs(f - static_cast<double>(k) / n));
    d = std::max(d, std::abs(static_cast<double>(k + 1) / n - f));
  }
  return d;
}

// KS statistic scaled for the one-sample test: D * sqrt(n).
inline double ks_statistic(std::vector<double>& sample,
                           const std::function<double(double)>& cdf) {
  return ks_distance(sample, cdf) *
         std::sqrt(static_cast<double>(sample.size()));
}

// Two-sample KS statistic scaled by sqrt(nm/(n+m)); compare against
// kKsCrit1pc. Sorts both samples in place.
inline double ks_two_sample_statistic(std::vector<double>& a,
                                      std::vector<double>& b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d * std::sqrt(na * nb / (na + nb));
}

// |observed - expected| in units of the expected standard error.
inline double z_score(double observed, double expected, double std_error) {
  return std::abs(observed - expected) / std_error;
}

inline double mean_of(const std::vector<double>& v) {
  KahanSum s;
  for (double x : v) s.add(x);
  return s.sum / static_cast<double>(v.size());
}

inline double variance_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  KahanSum s;
  for (double x : v) s.add((x - m) * (x - m));
  return s.sum / static_cast<double>(v.size() - 1);
}

// Dispersion z-statistic for a Poisson hypothesis: under Poisson(mu) the
// index variance/mean is 1 with standard error sqrt(2/(n-1)).
inline double poisson_dispersion_z(const std::vector<double>& counts) {
  const double m = mean_of(counts);
  const double v = variance_of(counts);
  const double n = static_cast<double>(counts.size());
  return std::abs(v / m - 1.0) / std::sqrt(2.0 / (n - 1.0));
}

}  // namespace teststat
