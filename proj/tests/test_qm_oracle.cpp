#include <doctest.h>

#include "spinlab/entanglement.hpp"
#include "spinlab/qm_oracle.hpp"
#include "spinlab/units.hpp"

#include <cmath>

using namespace spinlab;
using namespace spinlab::oracle;

TEST_CASE("pauli matrices") {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  CHECK((pauli_x() * pauli_x() - id).norm() < 1e-15);
  CHECK((pauli_y() * pauli_y() - id).norm() < 1e-15);
  CHECK((pauli_z() * pauli_z() - id).norm() < 1e-15);
  CHECK((pauli_x() * pauli_y() - Complex(0, 1) * pauli_z()).norm() < 1e-15);
  CHECK((spin_along(0.0) - pauli_z()).norm() < 1e-15);
  CHECK((spin_along(kPi / 2) - pauli_x()).norm() < 1e-15);
}

TEST_CASE("rotated states") {
  CHECK((rotated_up_state(0) - Spinor2(1, 0)).norm() < 1e-15);
  CHECK((rotated_up_state(kPi) - Spinor2(0, 1)).norm() < 1e-15);
  const double h = std::sqrt(2.0) / 2;
  CHECK((rotated_up_state(kPi / 2) - Spinor2(h, h)).norm() < 1e-15);
  RandomStream r(1, "states");
  for (int i = 0; i < 100; ++i) {
    const double b = 2 * kPi * r.uniform();
    CHECK_NOTHROW(check_unit(rotated_up_state(b)));
    // Eigenvectors of sigma . n with eigenvalues +1 and -1.
    CHECK((spin_along(b) * rotated_up_state(b) - rotated_up_state(b)).norm() < 1e-14);
    CHECK((spin_along(b) * rotated_down_state(b) + rotated_down_state(b)).norm() < 1e-14);
    CHECK(std::abs(rotated_up_state(b).dot(rotated_down_state(b))) < 1e-15);
  }
  CHECK_THROWS_AS(check_unit(Spinor2(1, 1)), std::invalid_argument);
}

TEST_CASE("overlap probabilities") {
  CHECK(overlap_prob(0.7, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(overlap_prob(0, kPi / 2) == doctest::Approx(0.5).epsilon(1e-15));
  RandomStream r(2, "overlap");
  for (int i = 0; i < 50; ++i) {
    const double a = 2 * kPi * r.uniform(), b = 2 * kPi * r.uniform();
    CHECK(overlap_prob(a, b) + overlap_prob_down(a, b) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(overlap_prob(a, b) == doctest::Approx(std::pow(std::cos((b - a) / 2), 2)).epsilon(1e-12));
  }
}

TEST_CASE("bell states and correlations") {
  for (auto k : {BellKind::PsiMinus, BellKind::PsiPlus, BellKind::PhiMinus, BellKind::PhiPlus})
    CHECK_NOTHROW(check_unit(bell_state(k)));
  CHECK(singlet_correlation(0.4, 0.4) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(singlet_correlation(0, kPi / 2)) < 1e-15);
  CHECK(bell_correlation(BellKind::PhiPlus, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bell_correlation(BellKind::PsiPlus, 0, 0) == doctest::Approx(-1.0).epsilon(1e-14));

  const double s = std::abs(singlet_correlation(0, kPi / 4) - singlet_correlation(0, 3 * kPi / 4) +
                            singlet_correlation(kPi / 2, kPi / 4) + singlet_correlation(kPi / 2, 3 * kPi / 4));
  CHECK(s == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));

  RandomStream r(3, "bell");
  for (int i = 0; i < 100; ++i) {
    const double a = 2 * kPi * r.uniform(), b = 2 * kPi * r.uniform();
    CHECK(std::abs(singlet_correlation(a, b) + std::cos(a - b)) < 1e-12);
    CHECK(std::abs(singlet_correlation(a, b) - correlation(BellPairModel::from(BellState::PsiMinus), a, b)) <= 1e-12);
    CHECK(std::abs(bell_correlation(BellKind::PsiPlus, a, b) -
                   correlation(BellPairModel::from(BellState::PsiPlus), a, b)) <= 1e-12);
    for (auto k : {BellKind::PsiMinus, BellKind::PsiPlus, BellKind::PhiMinus, BellKind::PhiPlus}) {
      const double e = bell_correlation(k, a, b);
      CHECK(e >= -1 - 1e-14);
      CHECK(e <= 1 + 1e-14);
    }
  }
}
