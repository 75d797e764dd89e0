#include <doctest.h>

#include "spinlab/entanglement.hpp"
#include "spinlab/units.hpp"

#include <cmath>
#include <sstream>

using namespace spinlab;

namespace {

const std::array<BellState, 4> kStates{BellState::PsiMinus, BellState::PsiPlus, BellState::PhiMinus,
                                       BellState::PhiPlus};

// Brute-force branch expectation: sum over sub-branches and outcome pairs of
// s_A s_B times the product of the marginal outcome probabilities.
double brute_branch(AxisCorrelation corr, double alpha, double beta) {
  double e = 0;
  for (int alice_top : {0, 1}) {
    const int bob_top = corr == AxisCorrelation::Same ? alice_top : 1 - alice_top;
    const double pa = alice_top ? std::pow(std::cos(alpha / 2), 2) : std::pow(std::sin(alpha / 2), 2);
    const double pb = bob_top ? std::pow(std::cos(beta / 2), 2) : std::pow(std::sin(beta / 2), 2);
    for (int sa : {1, -1})
      for (int sb : {1, -1}) e += 0.5 * sa * sb * (sa > 0 ? pa : 1 - pa) * (sb > 0 ? pb : 1 - pb);
  }
  return e;
}

MeasurementPlan canonical(std::uint64_t samples) {
  MeasurementPlan p;
  p.samples = samples;
  return p;
}

}  // namespace

TEST_CASE("Bell models map bijectively to the four states") {
  using AC = AxisCorrelation;
  CHECK(BellPairModel{AC::Anti, AC::Anti}.state() == BellState::PsiMinus);
  CHECK(BellPairModel{AC::Anti, AC::Same}.state() == BellState::PsiPlus);
  CHECK(BellPairModel{AC::Same, AC::Anti}.state() == BellState::PhiMinus);
  CHECK(BellPairModel{AC::Same, AC::Same}.state() == BellState::PhiPlus);
  for (auto s : kStates) {
    CHECK(BellPairModel::from(s).state() == s);
    CHECK(parse_bell_state(to_string(s)) == s);
  }
  CHECK(parse_bell_state("psi_minus") == BellState::PsiMinus);
  CHECK_THROWS_AS(parse_bell_state("chi+"), std::invalid_argument);
}

TEST_CASE("joint densities") {
  const auto psi_z = joint_density(BellPairModel::from(BellState::PsiMinus), Axis::Z);
  CHECK(psi_z.at(0, 1) == 0.5);
  CHECK(psi_z.at(1, 0) == 0.5);
  CHECK(psi_z.at(0, 0) == 0.0);
  const auto phi_z = joint_density(BellPairModel::from(BellState::PhiPlus), Axis::Z);
  CHECK(phi_z.at(0, 0) == 0.5);
  CHECK(phi_z.at(1, 1) == 0.5);
  const auto psip_y = joint_density(BellPairModel::from(BellState::PsiPlus), Axis::Y);
  CHECK(psip_y.at(0, 0) == 0.5);
  CHECK(psip_y.at(1, 1) == 0.5);
  for (auto s : kStates)
    for (auto ax : {Axis::Z, Axis::Y}) {
      const auto d = joint_density(BellPairModel::from(s), ax);
      CHECK(d.weights.sum() == 1.0);
      CHECK((d.weights.array() >= 0).all());
      CHECK(d.alice_marginal().isApprox(Eigen::Vector2d(0.5, 0.5)));
      CHECK(d.bob_marginal().isApprox(Eigen::Vector2d(0.5, 0.5)));
    }
}

TEST_CASE("factorization witness") {
  CHECK(factorization_residual(joint_density(BellPairModel::from(BellState::PsiMinus), Axis::Z)) > 0.4);
  JointTwoPointDensity product;
  product.weights = Eigen::Vector2d(0.5, 0.5) * Eigen::RowVector2d(0.5, 0.5);
  CHECK(factorization_residual(product) <= 1e-12);
  product.weights = Eigen::Vector2d(0.3, 0.7) * Eigen::RowVector2d(0.9, 0.1);
  CHECK(factorization_residual(product) <= 1e-12);
}

TEST_CASE("branch expectations") {
  CHECK(branch_expectation(AxisCorrelation::Anti, 0, 0) == -1.0);
  CHECK(std::abs(branch_expectation(AxisCorrelation::Anti, 0, kPi / 2)) < 1e-16);
  CHECK(branch_expectation(AxisCorrelation::Anti, kPi / 3, kPi / 6) == doctest::Approx(-0.4330127019).epsilon(1e-9));
  RandomStream r(1, "branch");
  for (int i = 0; i < 200; ++i) {
    const double al = 2 * kPi * r.uniform(), be = 2 * kPi * r.uniform();
    for (auto c : {AxisCorrelation::Anti, AxisCorrelation::Same})
      CHECK(branch_expectation(c, al, be) == doctest::Approx(brute_branch(c, al, be)).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("correlation") {
  const auto psi = BellPairModel::from(BellState::PsiMinus);
  CHECK(correlation(psi, 0.3, 0.3) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(correlation(psi, 0, kPi / 4) == doctest::Approx(-0.70710678118654752).epsilon(1e-12));
  CHECK(std::abs(correlation(psi, 0, kPi / 2)) < 1e-15);
}

TEST_CASE("perfect (anti)correlation on the defining axes") {
  RandomStream r(2, "perfect");
  for (auto s : kStates) {
    const auto model = BellPairModel::from(s);
    for (auto ax : {Axis::Z, Axis::Y}) {
      // Angle zero from the branch axis.
      const double angle = ax == Axis::Z ? 0.0 : kPi / 2;
      const int expected = model.on(ax) == AxisCorrelation::Anti ? -1 : 1;
      for (int i = 0; i < 2000; ++i) {
        const auto o = sample_branch_outcome(model, ax, angle, angle, r);
        REQUIRE(o.alice * o.bob == expected);
        REQUIRE(o.branch == ax);
      }
    }
  }
}

TEST_CASE("Monte Carlo estimator targets the branch sum") {
  const auto psi = BellPairModel::from(BellState::PsiMinus);
  const double e = delayed_correlation(psi, 0, kPi / 4, 0.0, DwellModel{}, EstimationMode::MonteCarlo,
                                       DelayScope::ZOnly, 1000000, 7);
  CHECK(std::abs(e + 0.70710678) < 0.005);

  RandomStream r(3, "triples");
  const std::uint64_t n = 100000;
  for (int i = 0; i < 20; ++i) {
    const auto model = BellPairModel::from(kStates[std::size_t(r() % 4)]);
    const double a = 2 * kPi * r.uniform(), b = 2 * kPi * r.uniform();
    const double exact = correlation(model, a, b);
    const double est =
        delayed_correlation(model, a, b, 0.0, DwellModel{}, EstimationMode::MonteCarlo, DelayScope::ZOnly, n, 100 + i);
    // Var(2 s_A s_B) <= 4 - E^2.
    CHECK(std::abs(est - exact) < 4 * std::sqrt((4 - exact * exact) / double(n)));
  }
}

TEST_CASE("CHSH") {
  const auto psi = BellPairModel::from(BellState::PsiMinus);
  const auto exact = chsh(canonical(1), psi, EstimationMode::Analytic);
  CHECK(exact.S == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-15));

  MeasurementPlan zero = canonical(1);
  zero.a = zero.a_prime = zero.b = zero.b_prime = 0;
  CHECK(chsh(zero, psi, EstimationMode::Analytic).S == doctest::Approx(2.0).epsilon(1e-15));

  const auto mc = chsh(canonical(200000), psi, EstimationMode::MonteCarlo, 42);
  CHECK(std::abs(mc.S - 2 * std::sqrt(2.0)) < 4 * mc.S_standard_error);
  for (const auto& c : mc.counts) CHECK(c[0] + c[1] + c[2] + c[3] == 200000);
  for (double e : mc.E) {
    CHECK(e >= -2.0);
    CHECK(e <= 2.0);
  }
  const auto again = chsh(canonical(200000), psi, EstimationMode::MonteCarlo, 42);
  CHECK(again.S == mc.S);
  CHECK(again.counts == mc.counts);
  CHECK(chsh(canonical(200000), psi, EstimationMode::MonteCarlo, 43).S != mc.S);
  CHECK_THROWS_AS(chsh(canonical(0), psi, EstimationMode::MonteCarlo), std::invalid_argument);
}

TEST_CASE("parity factor matches simulated telegraph parity") {
  for (auto [tp, tm] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
    const DwellModel dwell{tp, tm};
    const double delay = 0.4;
    const int n = 200000;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      RandomStream r(5, "parity", std::uint64_t(i));
      const Trend start = r.uniform() < 0.5 ? Trend::Up : Trend::Down;
      const auto traj = simulate(dwell, delay, start, r);
      sum += traj.flips_until(delay) % 2 ? -1.0 : 1.0;
    }
    CHECK(std::abs(sum / n - parity_factor(dwell, delay)) < 4 / std::sqrt(double(n)));
  }
  CHECK(parity_factor(DwellModel{}, 0.0) == 1.0);
  CHECK_THROWS_AS(parity_factor(DwellModel{1, 1, DwellDistribution::FixedDuration}, 1.0), std::invalid_argument);
}

TEST_CASE("delayed correlation limits") {
  const auto psi = BellPairModel::from(BellState::PsiMinus);
  const DwellModel dwell{};
  RandomStream r(6, "delayed");
  for (int i = 0; i < 50; ++i) {
    const double a = 2 * kPi * r.uniform(), b = 2 * kPi * r.uniform();
    CHECK(delayed_correlation(psi, a, b, 0, dwell, EstimationMode::Analytic) ==
          doctest::Approx(-std::cos(a - b)).scale(1.0).epsilon(1e-12));
    CHECK(delayed_correlation(psi, a, b, 1e3, dwell, EstimationMode::Analytic) ==
          doctest::Approx(-std::sin(a) * std::sin(b)).scale(1.0).epsilon(1e-12));
    CHECK(std::abs(delayed_correlation(psi, a, b, 1e3, dwell, EstimationMode::Analytic, DelayScope::BothAxes)) <
          1e-12);
  }
  CHECK(std::abs(delayed_correlation(psi, 0, kPi / 4, 1e3, dwell, EstimationMode::Analytic)) < 1e-16);

  MeasurementPlan plan = canonical(1);
  plan.delay = 100;
  CHECK(chsh(plan, psi, EstimationMode::Analytic).S == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  plan.scope = DelayScope::BothAxes;
  CHECK(chsh(plan, psi, EstimationMode::Analytic).S < 1e-12);

  plan.samples = 200000;
  plan.scope = DelayScope::ZOnly;
  plan.delay = 20;
  const auto mc = chsh(plan, psi, EstimationMode::MonteCarlo, 9);
  CHECK(std::abs(mc.S - std::sqrt(2.0)) < 4 * mc.S_standard_error);
}

TEST_CASE("delayed Monte Carlo follows the analytic decay") {
  const auto psi = BellPairModel::from(BellState::PsiMinus);
  const DwellModel dwell{1.0, 1.0};
  const std::uint64_t n = 100000;
  double prev = 2.0;
  for (double delay : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double mc =
        delayed_correlation(psi, 0, 0, delay, dwell, EstimationMode::MonteCarlo, DelayScope::ZOnly, n, 11);
    const double exact = delayed_correlation(psi, 0, 0, delay, dwell, EstimationMode::Analytic);
    CHECK(std::abs(mc - exact) < 4 * std::sqrt(4.0 / double(n)));
    // |E(dt) - E(0)| inside the 1 - exp(-dt/tau) envelope (C = 2 covers the rate 2/tau).
    CHECK(std::abs(mc - (-1.0)) <= 2 * (1 - std::exp(-delay)) + 4 * std::sqrt(4.0 / double(n)));
    CHECK(-mc <= prev + 0.01);
    prev = -mc;
  }
}

TEST_CASE("delay sweep") {
  const auto psi = BellPairModel::from(BellState::PsiMinus);
  MeasurementPlan plan = canonical(20000);
  std::vector<double> delays;
  for (int i = 0; i <= 20; ++i) delays.push_back(0.25 * i);
  const auto rows = delay_sweep(plan, psi, delays, 3);
  REQUIRE(rows.size() == delays.size());
  CHECK(rows.front().S_analytic == doctest::Approx(2 * std::sqrt(2.0)));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].S_analytic < rows[i - 1].S_analytic);
    // Rises only within Monte Carlo noise at this sample size.
    CHECK(rows[i].S_monte_carlo <= rows[i - 1].S_monte_carlo + 3 * rows[i].S_standard_error);
    CHECK(std::abs(rows[i].S_monte_carlo - rows[i].S_analytic) < 5 * rows[i].S_standard_error);
  }
  plan.dwell.distribution = DwellDistribution::FixedDuration;
  const auto fixed = delay_sweep(plan, psi, {0.0, 1.0}, 3);
  CHECK(std::isnan(fixed[1].S_analytic));
  CHECK(std::isfinite(fixed[1].S_monte_carlo));
  CHECK_THROWS_AS(delay_sweep(plan, psi, {}, 3), std::invalid_argument);
  CHECK_THROWS_AS(delay_sweep(plan, psi, {-1.0}, 3), std::invalid_argument);
}

TEST_CASE("time constraint") {
  CHECK(time_constraint_satisfied(0, 0.5, 1.0));
  CHECK_FALSE(time_constraint_satisfied(0, 1.5, 1.0));
  CHECK_FALSE(time_constraint_satisfied(0, 1.0, 1.0));
  CHECK_THROWS_AS(time_constraint_satisfied(1.0, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("csv export") {
  const auto r = chsh(canonical(10), BellPairModel::from(BellState::PsiMinus), EstimationMode::MonteCarlo, 1);
  std::ostringstream ss;
  write_csv(r, canonical(10), ss);
  const std::string s = ss.str();
  CHECK(s.rfind("setting,a,b,n_pp,n_pm,n_mp,n_mm,E,standard_error\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 6);
  CHECK(s.find("\nS,") != std::string::npos);
  CHECK(s.find('\r') == std::string::npos);
}
