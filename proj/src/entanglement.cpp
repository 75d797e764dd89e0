#include "spinlab/entanglement.hpp"

#include "spinlab/csv.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace spinlab {

std::string_view to_string(BellState state) {
  switch (state) {
    case BellState::PsiMinus: return "psi-";
    case BellState::PsiPlus: return "psi+";
    case BellState::PhiMinus: return "phi-";
    case BellState::PhiPlus: return "phi+";
  }
  return "?";
}

BellState parse_bell_state(std::string_view text) {
  if (text == "psi-" || text == "psi_minus" || text == "singlet") return BellState::PsiMinus;
  if (text == "psi+" || text == "psi_plus") return BellState::PsiPlus;
  if (text == "phi-" || text == "phi_minus") return BellState::PhiMinus;
  if (text == "phi+" || text == "phi_plus") return BellState::PhiPlus;
  throw std::invalid_argument("unknown Bell state '" + std::string(text) + "'");
}

BellPairModel BellPairModel::from(BellState state) {
  using C = AxisCorrelation;
  switch (state) {
    case BellState::PsiMinus: return {C::Anti, C::Anti};
    case BellState::PsiPlus: return {C::Anti, C::Same};
    case BellState::PhiMinus: return {C::Same, C::Anti};
    case BellState::PhiPlus: return {C::Same, C::Same};
  }
  throw std::invalid_argument("BellPairModel: bad state");
}

BellState BellPairModel::state() const noexcept {
  if (z == AxisCorrelation::Anti) return y == AxisCorrelation::Anti ? BellState::PsiMinus : BellState::PsiPlus;
  return y == AxisCorrelation::Anti ? BellState::PhiMinus : BellState::PhiPlus;
}

JointTwoPointDensity joint_density(const BellPairModel& model, Axis axis) {
  JointTwoPointDensity d;
  if (model.on(axis) == AxisCorrelation::Anti) {
    d.weights(0, 1) = 0.5;
    d.weights(1, 0) = 0.5;
  } else {
    d.weights(0, 0) = 0.5;
    d.weights(1, 1) = 0.5;
  }
  return d;
}

double factorization_residual(const JointTwoPointDensity& density) {
  // The smaller singular value; unlike entries of the residual matrix it does
  // not depend on which singular vectors a degenerate decomposition returns.
  return Eigen::JacobiSVD<Eigen::Matrix2d>(density.weights).singularValues()(1);
}

double branch_expectation(AxisCorrelation correlation, double alpha, double beta) {
  const double product = std::cos(alpha) * std::cos(beta);
  return correlation == AxisCorrelation::Anti ? -product : product;
}

double correlation(const BellPairModel& model, double a, double b) {
  return branch_expectation(model.z, branch_angle(Axis::Z, a), branch_angle(Axis::Z, b)) +
         branch_expectation(model.y, branch_angle(Axis::Y, a), branch_angle(Axis::Y, b));
}

namespace {

// Outcome of a particle sitting at theta = 0 (at_top) or pi on the branch axis,
// measured at `angle` from that axis, given a uniform draw u.
int outcome(bool at_top, double angle, double u) {
  const double c = std::cos(angle / 2);
  const double p_up = at_top ? c * c : 1.0 - c * c;
  return u < p_up ? +1 : -1;
}

// Sub-branch and measurement draws for one pair, taken in a fixed order.
struct PairDraw {
  Axis branch;
  bool alice_top;
  double u_alice;
  double u_bob;
};

PairDraw draw_branch(Axis branch, RandomStream& rng) {
  const bool alice_top = rng.uniform() < 0.5;
  const double ua = rng.uniform();
  const double ub = rng.uniform();
  return {branch, alice_top, ua, ub};
}

PairOutcome resolve(const BellPairModel& model, const PairDraw& d, double a, double b, bool bob_flipped) {
  bool bob_top = model.on(d.branch) == AxisCorrelation::Same ? d.alice_top : !d.alice_top;
  if (bob_flipped) bob_top = !bob_top;
  return {outcome(d.alice_top, branch_angle(d.branch, a), d.u_alice),
          outcome(bob_top, branch_angle(d.branch, b), d.u_bob), d.branch};
}

bool degraded(DelayScope scope, Axis branch) { return scope == DelayScope::BothAxes || branch == Axis::Z; }

std::size_t outcome_index(const PairOutcome& o) { return (o.alice > 0 ? 0 : 2) + (o.bob > 0 ? 0 : 1); }

struct Estimate {
  double E;
  double se;
};

Estimate estimate_from(std::int64_t product_sum, std::uint64_t n) {
  const double mean = double(product_sum) / double(n);
  const double var = std::max(0.0, 1.0 - mean * mean);
  return {2.0 * mean, 2.0 * std::sqrt(var / double(n))};
}

// Bob's trend over [0, horizon], starting from a 50/50 trend.
TelegraphTrajectory bob_trajectory(const DwellModel& dwell, double horizon, RandomStream& rng) {
  const Trend initial = rng.uniform() < 0.5 ? Trend::Up : Trend::Down;
  return simulate(dwell, horizon, initial, rng, StartMode::Stationary);
}

}  // namespace

PairOutcome sample_branch_outcome(const BellPairModel& model, Axis branch, double a, double b, RandomStream& rng,
                                  bool bob_flipped) {
  return resolve(model, draw_branch(branch, rng), a, b, bob_flipped);
}

PairOutcome sample_pair_outcome(const BellPairModel& model, double a, double b, RandomStream& rng) {
  const Axis branch = rng.uniform() < 0.5 ? Axis::Z : Axis::Y;
  return sample_branch_outcome(model, branch, a, b, rng);
}

void MeasurementPlan::validate() const {
  if (samples < 1) throw std::invalid_argument("MeasurementPlan: samples must be >= 1");
  if (!(delay >= 0.0) || !std::isfinite(delay)) throw std::invalid_argument("MeasurementPlan: delay must be >= 0");
  for (double x : {a, a_prime, b, b_prime})
    if (!std::isfinite(x)) throw std::invalid_argument("MeasurementPlan: angles must be finite");
  dwell.validate();
}

std::array<std::pair<double, double>, 4> MeasurementPlan::settings() const {
  return {{{a, b}, {a, b_prime}, {a_prime, b}, {a_prime, b_prime}}};
}

double chsh_statistic(const std::array<double, 4>& E) noexcept { return std::abs(E[0] - E[1] + E[2] + E[3]); }

double parity_factor(const DwellModel& dwell, double delay) {
  dwell.validate();
  if (!(delay >= 0.0)) throw std::invalid_argument("parity_factor: delay must be >= 0");
  if (dwell.distribution != DwellDistribution::Exponential)
    throw std::invalid_argument("parity_factor: closed form needs exponential dwell times");
  return std::exp(-dwell.switching_rate() * delay);
}

namespace {

double analytic_delayed(const BellPairModel& model, double a, double b, double delay, const DwellModel& dwell,
                        DelayScope scope) {
  const double f = delay == 0.0 ? 1.0 : parity_factor(dwell, delay);
  const double ez = branch_expectation(model.z, branch_angle(Axis::Z, a), branch_angle(Axis::Z, b));
  const double ey = branch_expectation(model.y, branch_angle(Axis::Y, a), branch_angle(Axis::Y, b));
  return (degraded(scope, Axis::Z) ? f : 1.0) * ez + (degraded(scope, Axis::Y) ? f : 1.0) * ey;
}

std::array<double, 4> analytic_terms(const MeasurementPlan& plan, const BellPairModel& model, double delay) {
  std::array<double, 4> E{};
  const auto settings = plan.settings();
  for (std::size_t k = 0; k < 4; ++k)
    E[k] = analytic_delayed(model, settings[k].first, settings[k].second, delay, plan.dwell, plan.scope);
  return E;
}

RandomStream setting_stream(std::uint64_t seed, std::size_t k) {
  return RandomStream(seed, "chsh/" + std::to_string(k));
}

}  // namespace

ChshResult chsh(const MeasurementPlan& plan, const BellPairModel& model, EstimationMode mode, std::uint64_t seed) {
  plan.validate();
  ChshResult result;
  if (mode == EstimationMode::Analytic) {
    result.E = analytic_terms(plan, model, plan.delay);
    result.S = chsh_statistic(result.E);
    return result;
  }

  const auto settings = plan.settings();
  double var_s = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto [a, b] = settings[k];
    const RandomStream base = setting_stream(seed, k);
    std::int64_t sum = 0;
    OutcomeCounts counts{};
    for (std::uint64_t i = 0; i < plan.samples; ++i) {
      RandomStream rng = base.for_trial(i);
      const Axis branch = rng.uniform() < 0.5 ? Axis::Z : Axis::Y;
      const PairDraw d = draw_branch(branch, rng);
      bool flipped = false;
      if (plan.delay > 0.0 && degraded(plan.scope, branch))
        flipped = bob_trajectory(plan.dwell, plan.delay, rng).flips_until(plan.delay) % 2 == 1;
      const PairOutcome o = resolve(model, d, a, b, flipped);
      sum += o.alice * o.bob;
      ++counts[outcome_index(o)];
    }
    const Estimate est = estimate_from(sum, plan.samples);
    result.E[k] = est.E;
    result.standard_error[k] = est.se;
    result.counts[k] = counts;
    var_s += est.se * est.se;
  }
  result.S = chsh_statistic(result.E);
  result.S_standard_error = std::sqrt(var_s);
  return result;
}

double delayed_correlation(const BellPairModel& model, double a, double b, double delay, const DwellModel& dwell,
                           EstimationMode mode, DelayScope scope, std::uint64_t samples, std::uint64_t seed) {
  if (!(delay >= 0.0)) throw std::invalid_argument("delayed_correlation: delay must be >= 0");
  dwell.validate();
  if (mode == EstimationMode::Analytic) return analytic_delayed(model, a, b, delay, dwell, scope);
  if (samples < 1) throw std::invalid_argument("delayed_correlation: samples must be >= 1");

  const RandomStream base(seed, "bell-delay/correlation");
  std::int64_t sum = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    RandomStream rng = base.for_trial(i);
    const Axis branch = rng.uniform() < 0.5 ? Axis::Z : Axis::Y;
    const PairDraw d = draw_branch(branch, rng);
    bool flipped = false;
    if (delay > 0.0 && degraded(scope, branch))
      flipped = bob_trajectory(dwell, delay, rng).flips_until(delay) % 2 == 1;
    const PairOutcome o = resolve(model, d, a, b, flipped);
    sum += o.alice * o.bob;
  }
  return estimate_from(sum, samples).E;
}

std::vector<DelaySweepRow> delay_sweep(const MeasurementPlan& plan, const BellPairModel& model,
                                       const std::vector<double>& delays, std::uint64_t seed) {
  plan.validate();
  if (delays.empty()) throw std::invalid_argument("delay_sweep: no delays");
  for (double d : delays)
    if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("delay_sweep: delays must be >= 0");
  const double horizon = *std::max_element(delays.begin(), delays.end());

  const std::size_t nd = delays.size();
  std::vector<std::array<std::int64_t, 4>> sums(nd, std::array<std::int64_t, 4>{});
  const auto settings = plan.settings();
  for (std::size_t k = 0; k < 4; ++k) {
    const auto [a, b] = settings[k];
    const RandomStream base(seed, "bell-delay/" + std::to_string(k));
    for (std::uint64_t i = 0; i < plan.samples; ++i) {
      RandomStream rng = base.for_trial(i);
      const Axis branch = rng.uniform() < 0.5 ? Axis::Z : Axis::Y;
      const PairDraw d = draw_branch(branch, rng);
      const PairOutcome kept = resolve(model, d, a, b, false);
      const PairOutcome flipped = resolve(model, d, a, b, true);
      if (horizon > 0.0 && degraded(plan.scope, branch)) {
        const TelegraphTrajectory traj = bob_trajectory(plan.dwell, horizon, rng);
        for (std::size_t j = 0; j < nd; ++j) {
          const bool odd = traj.flips_until(delays[j]) % 2 == 1;
          const PairOutcome& o = odd ? flipped : kept;
          sums[j][k] += o.alice * o.bob;
        }
      } else {
        for (std::size_t j = 0; j < nd; ++j) sums[j][k] += kept.alice * kept.bob;
      }
    }
  }

  std::vector<DelaySweepRow> rows;
  rows.reserve(nd);
  for (std::size_t j = 0; j < nd; ++j) {
    std::array<double, 4> E{};
    double var = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const Estimate est = estimate_from(sums[j][k], plan.samples);
      E[k] = est.E;
      var += est.se * est.se;
    }
    const double analytic = plan.dwell.distribution == DwellDistribution::Exponential
                                ? chsh_statistic(analytic_terms(plan, model, delays[j]))
                                : std::numeric_limits<double>::quiet_NaN();
    rows.push_back({delays[j], analytic, chsh_statistic(E), std::sqrt(var)});
  }
  return rows;
}

bool time_constraint_satisfied(double t_alice, double t_bob, double tau_plus) {
  if (t_bob < t_alice) throw std::invalid_argument("time_constraint_satisfied: t_bob < t_alice");
  return t_bob - t_alice < tau_plus;
}

void write_csv(const ChshResult& result, const MeasurementPlan& plan, std::ostream& out) {
  static constexpr std::array<std::string_view, 4> kLabels{"ab", "ab'", "a'b", "a'b'"};
  CsvWriter csv(out, {"setting", "a", "b", "n_pp", "n_pm", "n_mp", "n_mm", "E", "standard_error"});
  const auto settings = plan.settings();
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& c = result.counts[k];
    csv.row(kLabels[k], settings[k].first, settings[k].second, c[0], c[1], c[2], c[3], result.E[k],
            result.standard_error[k]);
  }
  csv.row(std::string_view("S"), 0.0, 0.0, 0, 0, 0, 0, result.S, result.S_standard_error);
}

void write_csv(const std::vector<DelaySweepRow>& rows, std::ostream& out) {
  CsvWriter csv(out, {"delay", "S_analytic", "S_monte_carlo", "S_standard_error"});
  for (const auto& r : rows) csv.row(r.delay, r.S_analytic, r.S_monte_carlo, r.S_standard_error);
}

}  // namespace spinlab
