#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hillband {

/// Root iteration exhausted its budget. Carries the best residuals reached so
/// callers can decide whether to raise the budget.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, std::vector<double> best_residuals = {})
      : std::runtime_error(what), best_residuals_(std::move(best_residuals)) {}

  const std::vector<double>& best_residuals() const noexcept { return best_residuals_; }

 private:
  std::vector<double> best_residuals_;
};

/// Input outside the domain where an operation is defined (v = 0 where a
/// nonzero impurity is required, non-real v for a real-only routine, ...).
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hillband
