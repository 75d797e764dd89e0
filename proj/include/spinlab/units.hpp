#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace spinlab {

inline constexpr double kPi = std::numbers::pi;

/// Natural units: hbar = e = m_e = 1 unless a caller overrides them.
struct NaturalUnits {
  double hbar = 1.0;
  double charge = 1.0;
  double mass = 1.0;

  void validate() const {
    if (!(hbar > 0) || !(charge > 0) || !(mass > 0))
      throw std::invalid_argument("units: hbar, charge and mass must be positive");
  }
};

/// Iterative solve that ran out of iterations; carries the last residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what + " (iterations=" + std::to_string(iterations) +
                           ", residual=" + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

}  // namespace spinlab
