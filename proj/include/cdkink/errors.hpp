#pragma once

#include <stdexcept>
#include <string>

namespace cdkink {

// Input violates a documented precondition. Maps to CLI exit code 2.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A mode could not be integrated to tolerance. Maps to CLI exit code 1.
class IntegrationError : public std::runtime_error {
public:
  IntegrationError(const std::string& what, double k, long steps, double norm_drift, long mode_index = -1)
      : std::runtime_error(what), k_(k), steps_(steps), norm_drift_(norm_drift), mode_index_(mode_index) {}

  double momentum() const noexcept { return k_; }
  long steps() const noexcept { return steps_; }
  double norm_drift() const noexcept { return norm_drift_; }
  long mode_index() const noexcept { return mode_index_; }

private:
  double k_;
  long steps_;
  double norm_drift_;
  long mode_index_;
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace detail
}  // namespace cdkink
