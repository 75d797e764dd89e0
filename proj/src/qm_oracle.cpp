#include "spinlab/qm_oracle.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinlab::oracle {

namespace {
constexpr double kUnitTolerance = 1e-12;
}

void check_unit(const Spinor2& s) {
  if (std::abs(s.norm() - 1.0) > kUnitTolerance) throw std::invalid_argument("Spinor2: not unit norm");
}

void check_unit(const PairState& s) {
  if (std::abs(s.norm() - 1.0) > kUnitTolerance) throw std::invalid_argument("PairState: not unit norm");
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd spin_along(double angle) {
  return std::cos(angle) * pauli_z() + std::sin(angle) * pauli_x();
}

Spinor2 rotated_up_state(double beta) {
  Spinor2 s(std::cos(beta / 2), std::sin(beta / 2));
  check_unit(s);
  return s;
}

Spinor2 rotated_down_state(double beta) {
  Spinor2 s(std::sin(beta / 2), -std::cos(beta / 2));
  check_unit(s);
  return s;
}

double overlap_prob(double beta1, double beta2) {
  return std::norm(rotated_up_state(beta1).dot(rotated_up_state(beta2)));
}

double overlap_prob_down(double beta1, double beta2) {
  return std::norm(rotated_down_state(beta1).dot(rotated_up_state(beta2)));
}

PairState bell_state(BellKind kind) {
  const double r = 1.0 / std::numbers::sqrt2;
  PairState s = PairState::Zero();
  switch (kind) {
    case BellKind::PsiMinus: s(1) = r; s(2) = -r; break;
    case BellKind::PsiPlus: s(1) = r; s(2) = r; break;
    case BellKind::PhiMinus: s(0) = r; s(3) = -r; break;
    case BellKind::PhiPlus: s(0) = r; s(3) = r; break;
  }
  return s;
}

double pair_expectation(const PairState& state, double a, double b) {
  check_unit(state);
  const Eigen::Matrix4cd op = Eigen::kroneckerProduct(spin_along(a), spin_along(b));
  return state.dot(op * state).real();
}

double bell_correlation(BellKind kind, double a, double b) {
  return pair_expectation(bell_state(kind), a, b);
}

double singlet_correlation(double a, double b) { return bell_correlation(BellKind::PsiMinus, a, b); }

}  // namespace spinlab::oracle
