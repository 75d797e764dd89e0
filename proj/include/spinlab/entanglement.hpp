#pragma once

#include "spinlab/random.hpp"
#include "spinlab/telegraph.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace spinlab {

enum class Axis { Z, Y };
enum class AxisCorrelation { Anti, Same };
enum class BellState { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

std::string_view to_string(BellState state);
/// Accepts psi-, psi+, phi-, phi+ (and the spelled-out psi_minus etc.).
BellState parse_bell_state(std::string_view text);

struct BellPairModel {
  AxisCorrelation z = AxisCorrelation::Anti;
  AxisCorrelation y = AxisCorrelation::Anti;

  static BellPairModel from(BellState state);
  BellState state() const noexcept;
  AxisCorrelation on(Axis axis) const noexcept { return axis == Axis::Z ? z : y; }
};

/// Weights over (theta_A, theta_B) in {0, pi}^2; row = Alice, column = Bob,
/// index 0 for theta = 0 and 1 for theta = pi.
struct JointTwoPointDensity {
  Eigen::Matrix2d weights = Eigen::Matrix2d::Zero();

  double at(int alice, int bob) const { return weights(alice, bob); }
  Eigen::Vector2d alice_marginal() const { return weights.rowwise().sum(); }
  Eigen::Vector2d bob_marginal() const { return weights.colwise().sum().transpose(); }
};

JointTwoPointDensity joint_density(const BellPairModel& model, Axis axis);

/// Spectral norm of W minus its best rank-one approximation (the second
/// singular value). Zero exactly when W is an outer product of marginals.
double factorization_residual(const JointTwoPointDensity& density);

/// Anti: -cos(alpha)cos(beta); Same: +cos(alpha)cos(beta). Angles from the branch axis.
double branch_expectation(AxisCorrelation correlation, double alpha, double beta);

/// Branch angles for settings a, b measured from z.
inline double branch_angle(Axis axis, double angle) noexcept {
  return axis == Axis::Z ? angle : 1.5707963267948966 - angle;
}

/// E_z(a, b) + E_y(pi/2 - a, pi/2 - b). The two branch terms are added, not averaged.
double correlation(const BellPairModel& model, double a, double b);

struct PairOutcome {
  int alice = 1;
  int bob = 1;
  Axis branch = Axis::Z;
};

/// Outcome within a given branch. The sub-branch (which particle sits at
/// theta = 0 on the branch axis) is drawn with probability 1/2; a particle at
/// theta = 0 reports +1 with probability cos^2(angle/2), one at theta = pi
/// with probability sin^2(angle/2). `bob_flipped` toggles Bob's sub-state.
PairOutcome sample_branch_outcome(const BellPairModel& model, Axis branch, double a, double b, RandomStream& rng,
                                  bool bob_flipped = false);

/// Branch z or y with probability 1/2, then sample_branch_outcome.
PairOutcome sample_pair_outcome(const BellPairModel& model, double a, double b, RandomStream& rng);

enum class EstimationMode { Analytic, MonteCarlo };

/// Which branches a delayed measurement degrades.
enum class DelayScope { ZOnly, BothAxes };

struct MeasurementPlan {
  double a = 0.0;
  double a_prime = 1.5707963267948966;
  double b = 0.7853981633974483;
  double b_prime = 2.356194490192345;
  std::uint64_t samples = 1000000;
  double delay = 0.0;
  DwellModel dwell;
  DelayScope scope = DelayScope::ZOnly;

  void validate() const;
  /// Settings in CHSH order: (a,b), (a,b'), (a',b), (a',b').
  std::array<std::pair<double, double>, 4> settings() const;
};

/// Counts of (++, +-, -+, --) for one setting.
using OutcomeCounts = std::array<std::uint64_t, 4>;

struct ChshResult {
  std::array<double, 4> E{};
  std::array<double, 4> standard_error{};
  std::array<OutcomeCounts, 4> counts{};
  double S = 0.0;
  double S_standard_error = 0.0;
};

/// S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')|.
double chsh_statistic(const std::array<double, 4>& E) noexcept;

/// Monte Carlo estimator: E = 2 mean(S_A S_B) over equiprobable branches, so
/// that it targets the branch sum. Setting k draws from experiment
/// "chsh/k" of `seed`, trial i for pair i. plan.delay > 0 applies the
/// delayed-measurement model.
ChshResult chsh(const MeasurementPlan& plan, const BellPairModel& model, EstimationMode mode,
                std::uint64_t seed = 0);

/// Probability-weighted sign of the flip parity over `delay`, averaged over a
/// 50/50 initial trend: exp(-(1/tau+ + 1/tau-) delay). Exponential dwell only.
double parity_factor(const DwellModel& dwell, double delay);

/// Correlation when Bob measures `delay` after Alice. Bob's sub-state on the
/// degraded branches flips when his trend has switched an odd number of
/// times during the delay (trajectory started from a 50/50 trend, stationary
/// phase).
double delayed_correlation(const BellPairModel& model, double a, double b, double delay, const DwellModel& dwell,
                           EstimationMode mode, DelayScope scope = DelayScope::ZOnly,
                           std::uint64_t samples = 100000, std::uint64_t seed = 0);

struct DelaySweepRow {
  double delay = 0.0;
  double S_analytic = 0.0;
  double S_monte_carlo = 0.0;
  double S_standard_error = 0.0;
};

/// CHSH statistic over a list of delays. Each pair draws one trajectory up to
/// the largest delay and is re-measured at every delay (common random
/// numbers), so Monte Carlo noise is shared across the sweep. S_analytic is
/// NaN unless the dwell distribution is exponential.
std::vector<DelaySweepRow> delay_sweep(const MeasurementPlan& plan, const BellPairModel& model,
                                       const std::vector<double>& delays, std::uint64_t seed);

/// Strict: t_bob - t_alice < tau_plus. Throws if t_bob < t_alice.
bool time_constraint_satisfied(double t_alice, double t_bob, double tau_plus);

/// Columns: setting,a,b,n_pp,n_pm,n_mp,n_mm,E,standard_error; then a final
/// row with setting=S.
void write_csv(const ChshResult& result, const MeasurementPlan& plan, std::ostream& out);

/// Columns: delay,S_analytic,S_monte_carlo,S_standard_error.
void write_csv(const std::vector<DelaySweepRow>& rows, std::ostream& out);

}  // namespace spinlab
