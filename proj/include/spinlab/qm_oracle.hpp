#pragma once

#include <Eigen/Core>

#include <complex>

namespace spinlab::oracle {

using Complex = std::complex<double>;
using Spinor2 = Eigen::Vector2cd;
using PairState = Eigen::Vector4cd;  // basis: up-up, up-down, down-up, down-down

enum class BellKind { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

/// Throws std::invalid_argument unless |norm - 1| <= 1e-12.
void check_unit(const Spinor2& s);
void check_unit(const PairState& s);

Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();

/// sigma . n for n in the x-z plane at polar angle `angle` from z.
Eigen::Matrix2cd spin_along(double angle);

/// cos(beta/2)|up> + sin(beta/2)|down>.
Spinor2 rotated_up_state(double beta);
/// sin(beta/2)|up> - cos(beta/2)|down>, orthogonal to rotated_up_state(beta).
Spinor2 rotated_down_state(double beta);

/// |<up_beta1 | up_beta2>|^2.
double overlap_prob(double beta1, double beta2);
/// |<down_beta1 | up_beta2>|^2.
double overlap_prob_down(double beta1, double beta2);

PairState bell_state(BellKind kind);

/// <state| (sigma.a) x (sigma.b) |state> by explicit 4x4 algebra.
double pair_expectation(const PairState& state, double a, double b);
double bell_correlation(BellKind kind, double a, double b);
double singlet_correlation(double a, double b);

}  // namespace spinlab::oracle
