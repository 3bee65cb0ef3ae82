#ifndef RELAYIA_ERRORS_HPP
#define RELAYIA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relayia {

// Recoverable numerical failures. The Monte Carlo layer treats these as
// resample triggers, not fatal conditions.
class IllConditionedError : public std::runtime_error {
 public:
  explicit IllConditionedError(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateDenominatorError : public std::runtime_error {
 public:
  explicit DegenerateDenominatorError(const std::string& what) : std::runtime_error(what) {}
};

// Permanent failures: the requested configuration cannot work.
class InfeasibleRelayCountError : public std::runtime_error {
 public:
  InfeasibleRelayCountError(int required, int available)
      : std::runtime_error("infeasible relay count: " + std::to_string(available) +
                           " available, " + std::to_string(required) + " required"),
        required_(required),
        available_(available) {}
  int required() const { return required_; }
  int available() const { return available_; }

 private:
  int required_;
  int available_;
};

class AlignmentNotVerifiedError : public std::runtime_error {
 public:
  explicit AlignmentNotVerifiedError(const std::string& what) : std::runtime_error(what) {}
};

class InvalidArgumentError : public std::invalid_argument {
 public:
  explicit InvalidArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace relayia

#endif
