#pragma once

#include <stdexcept>
#include <string>

namespace secnet {

// Invalid or inconsistent user-supplied parameters. Messages name the
// violated constraint so a bad config file can be fixed from the text alone.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Base for failures of the numeric machinery (integration, series, special
// cases of the model that have no finite answer).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// The requested integral does not converge (singularity of order >= 2 inside
// the integration region).
class DivergentIntegral : public NumericError {
 public:
  explicit DivergentIntegral(const std::string& msg) : NumericError(msg) {}
};

// Adaptive refinement hit its depth limit before reaching the requested
// tolerance.
class ToleranceNotMet : public NumericError {
 public:
  explicit ToleranceNotMet(const std::string& msg) : NumericError(msg) {}
};

// A series or continued fraction failed to converge within its iteration cap.
class SeriesNonConvergence : public NumericError {
 public:
  explicit SeriesNonConvergence(const std::string& msg) : NumericError(msg) {}
};

// The relay population is almost surely empty, so the received-signal power
// is identically zero and no distribution can be fitted to it.
class DegenerateSignal : public NumericError {
 public:
  explicit DegenerateSignal(const std::string& msg) : NumericError(msg) {}
};

// The jammer population is almost surely empty, so the interference power is
// identically zero and the interference-limited ratio is undefined.
class DegenerateJamming : public NumericError {
 public:
  explicit DegenerateJamming(const std::string& msg) : NumericError(msg) {}
};

}  // namespace secnet
