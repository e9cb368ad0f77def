#pragma once

#include <stdexcept>
#include <string>

namespace scopekit {

// Malformed or inconsistent file content (headers, cell counts, ranges).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mixture fit did not converge; carries the best residual seen across starts.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& msg, double best_residual)
      : std::runtime_error(msg), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace scopekit
