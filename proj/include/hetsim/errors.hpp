#pragma once

#include <stdexcept>
#include <string>

namespace hetsim {

/// A parameter lies outside its mathematical domain (negative intensity,
/// path-loss exponent <= 2, retention probability outside [0,1], ...).
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Path loss requested at zero distance with no near-field cutoff, or an
/// active interferer coincides with the receiver under an unbounded law.
struct SingularGeometryError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Config-file rejection. `line` is 1-based; 0 when the error is not tied
/// to a specific line (e.g. a missing required key).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace hetsim
