#pragma once

#include "spinlab/quadrature.hpp"
#include "spinlab/random.hpp"
#include "spinlab/units.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace spinlab {

inline constexpr Eigen::Index kDefaultThetaNodes = 2048;
inline constexpr double kNormalizationTolerance = 1e-10;

/// Polar angle between the intrinsic angular momentum and the field axis.
class PolarAngle {
 public:
  explicit PolarAngle(double radians) : value_(radians) {
    if (!(radians >= 0.0 && radians <= kPi))
      throw std::invalid_argument("PolarAngle: value outside [0, pi]");
  }
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Integer order m of the cosine-power family; alpha = 1 + 1/(2m).
/// m = 0 stands for the completely random orientation (alpha -> infinity).
class DivergenceOrder {
 public:
  explicit DivergenceOrder(int m = 1) : m_(m) {
    if (m < 0) throw std::invalid_argument("DivergenceOrder: m must be non-negative");
  }
  int m() const noexcept { return m_; }
  bool is_uniform() const noexcept { return m_ == 0; }
  double alpha() const;

 private:
  int m_;
};

enum class Divergence { Tsallis, Renyi, KullbackLeibler };

/// alpha = 1 + 1/(2m); rejects m = 0.
double alpha_from_m(int m);

/// Z_m = integral of cos^{2m} over [0, pi] by adaptive quadrature.
double normalization_constant(int m);

/// p_m(theta) = cos^{2m}(theta) / Z_m.
double eval_density(int m, PolarAngle theta);

/// Mass of p_m within `eps` of either pole.
double pole_mass(int m, double eps);

/// Uniform theta-grid on [0, pi] with trapezoid weights.
template <typename Scalar = double>
class ThetaGrid {
 public:
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  explicit ThetaGrid(Eigen::Index nodes = kDefaultThetaNodes) {
    if (nodes < 3) throw std::invalid_argument("ThetaGrid: need at least 3 nodes");
    nodes_ = Array::LinSpaced(nodes, Scalar(0), Scalar(kPi));
    step_ = Scalar(kPi) / Scalar(nodes - 1);
  }

  Eigen::Index size() const noexcept { return nodes_.size(); }
  Scalar step() const noexcept { return step_; }
  const Array& nodes() const noexcept { return nodes_; }

  template <typename Derived>
  Scalar integrate(const Eigen::ArrayBase<Derived>& f) const {
    return trapezoid(f, step_);
  }

  bool operator==(const ThetaGrid& other) const { return size() == other.size(); }

 private:
  Array nodes_;
  Scalar step_;
};

/// Orientation density sampled on a theta-grid. Always non-negative and
/// normalized under the grid's trapezoid rule.
template <typename Scalar = double>
class GridDensity {
 public:
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  GridDensity(ThetaGrid<Scalar> grid, Array values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("GridDensity: size mismatch");
    if (!values_.allFinite() || (values_ < Scalar(0)).any())
      throw std::invalid_argument("GridDensity: values must be finite and non-negative");
    const Scalar mass = grid_.integrate(values_);
    if (std::abs(mass - Scalar(1)) > Scalar(kNormalizationTolerance))
      throw std::invalid_argument("GridDensity: density is not normalized");
  }

  /// Rescales arbitrary non-negative weights to unit mass.
  static GridDensity normalized(ThetaGrid<Scalar> grid, Array values) {
    if (!values.allFinite() || (values < Scalar(0)).any())
      throw std::invalid_argument("GridDensity: values must be finite and non-negative");
    const Scalar mass = grid.integrate(values);
    if (!(mass > Scalar(0))) throw std::invalid_argument("GridDensity: zero total mass");
    values /= mass;
    return GridDensity(std::move(grid), std::move(values));
  }

  static GridDensity uniform(ThetaGrid<Scalar> grid) {
    Array values = Array::Constant(grid.size(), Scalar(1 / kPi));
    return GridDensity(std::move(grid), std::move(values));
  }

  /// Closed-form p_m on the grid nodes.
  static GridDensity cos_power(ThetaGrid<Scalar> grid, int m) {
    Array values = grid.nodes().cos().pow(Scalar(2 * m));
    return normalized(std::move(grid), std::move(values));
  }

  const ThetaGrid<Scalar>& grid() const noexcept { return grid_; }
  const Array& values() const noexcept { return values_; }

  /// Integral of the piecewise-linear interpolant over [lo, hi].
  Scalar mass_between(Scalar lo, Scalar hi) const {
    lo = std::clamp(lo, Scalar(0), Scalar(kPi));
    hi = std::clamp(hi, Scalar(0), Scalar(kPi));
    if (hi <= lo) return Scalar(0);
    return cumulative_at(hi) - cumulative_at(lo);
  }

  /// Linear interpolation of the density at theta.
  Scalar at(Scalar theta) const {
    const auto [i, t] = locate(theta);
    if (i + 1 >= values_.size()) return values_(values_.size() - 1);
    return values_(i) + t * (values_(i + 1) - values_(i));
  }

 private:
  std::pair<Eigen::Index, Scalar> locate(Scalar theta) const {
    theta = std::clamp(theta, Scalar(0), Scalar(kPi));
    const Scalar pos = theta / grid_.step();
    auto i = static_cast<Eigen::Index>(std::floor(pos));
    i = std::clamp<Eigen::Index>(i, 0, values_.size() - 2);
    return {i, pos - Scalar(i)};
  }

  Scalar cumulative_at(Scalar theta) const {
    const auto [i, t] = locate(theta);
    const Scalar h = grid_.step();
    Scalar acc = 0;
    for (Eigen::Index j = 0; j < i; ++j) acc += Scalar(0.5) * h * (values_(j) + values_(j + 1));
    const Scalar v = values_(i) + t * (values_(i + 1) - values_(i));
    return acc + Scalar(0.5) * h * t * (values_(i) + v);
  }

  ThetaGrid<Scalar> grid_;
  Array values_;
};

/// Quantization-limit density: delta weights at theta = 0 and theta = pi.
class TwoPointDensity {
 public:
  /// weight_down is derived as 1 - weight_up so the pair sums to one exactly.
  explicit TwoPointDensity(double weight_up) : up_(weight_up), down_(1.0 - weight_up) {
    if (!(weight_up >= 0.0 && weight_up <= 1.0))
      throw std::invalid_argument("TwoPointDensity: weight_up outside [0, 1]");
  }

  static TwoPointDensity from_weights(double up, double down) {
    if (!(up >= 0.0) || !(down >= 0.0) || std::abs(up + down - 1.0) > 1e-12)
      throw std::invalid_argument("TwoPointDensity: weights must be non-negative and sum to 1");
    return TwoPointDensity(up);
  }

  double weight_up() const noexcept { return up_; }
  double weight_down() const noexcept { return down_; }

 private:
  double up_;
  double down_;
};

using OrientationDensity = std::variant<GridDensity<double>, TwoPointDensity>;

/// Ingredients of the total action for the orientation density.
template <typename Scalar = double>
struct ActionSpec {
  Scalar g_s = 2;
  Scalar L_s = Scalar(0.5);  // in units of hbar
  Scalar delta_phi = 1;
  Scalar hbar = 1;
  Divergence divergence = Divergence::Tsallis;
  DivergenceOrder order{1};
  std::optional<GridDensity<Scalar>> prior;  // uniform when empty

  void validate() const {
    if (!(delta_phi > 0)) throw std::invalid_argument("ActionSpec: delta_phi must be positive");
    if (!(L_s > 0)) throw std::invalid_argument("ActionSpec: L_s must be positive");
    if (!(hbar > 0)) throw std::invalid_argument("ActionSpec: hbar must be positive");
  }

  typename GridDensity<Scalar>::Array prior_on(const ThetaGrid<Scalar>& grid) const {
    if (!prior) return GridDensity<Scalar>::Array::Constant(grid.size(), Scalar(1 / kPi));
    if (!(prior->grid() == grid)) throw std::invalid_argument("ActionSpec: prior grid mismatch");
    return prior->values();
  }
};

/// A_t = -(1/2) g_s L_s dphi \int p cos + (hbar/2) I_f, with I_f chosen by
/// spec.divergence. Tsallis and Renyi require m >= 1.
template <typename Scalar>
Scalar total_action(const GridDensity<Scalar>& density, const ActionSpec<Scalar>& spec) {
  spec.validate();
  const auto& grid = density.grid();
  const auto& p = density.values();
  const auto sigma = spec.prior_on(grid);

  const Scalar coupling =
      -Scalar(0.5) * spec.g_s * spec.L_s * spec.delta_phi * grid.integrate(p * grid.nodes().cos());

  Scalar info = 0;
  if (spec.divergence == Divergence::KullbackLeibler) {
    typename GridDensity<Scalar>::Array integrand = GridDensity<Scalar>::Array::Zero(p.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (p(i) > 0) {
        if (!(sigma(i) > 0)) throw std::invalid_argument("total_action: density not dominated by prior");
        integrand(i) = p(i) * std::log(p(i) / sigma(i));
      }
    }
    info = spec.delta_phi * grid.integrate(integrand);
  } else {
    if (spec.order.is_uniform())
      throw std::invalid_argument("total_action: alpha = 1 / unbounded order not allowed for Tsallis/Renyi");
    const Scalar alpha = Scalar(spec.order.alpha());
    const Scalar moment = spec.delta_phi * grid.integrate(p.pow(alpha) * sigma.pow(1 - alpha));
    info = spec.divergence == Divergence::Tsallis ? (moment - 1) / (alpha - 1)
                                                  : std::log(moment) / (alpha - 1);
  }
  return coupling + Scalar(0.5) * spec.hbar * info;
}

struct VariationalOptions {
  double tolerance = 1e-10;  // successive-iterate L-inf change
  double relaxation = 0.5;   // geometric mixing weight of the Euler-Lagrange update
  int max_iterations = 10000;
};

template <typename Scalar = double>
struct VariationalSolution {
  GridDensity<Scalar> density;
  int iterations = 0;
  Scalar last_change = 0;
  Scalar residual = 0;  // L-inf distance between density and its stationarity image
};

namespace detail {

/// Normalized image of p under the Euler-Lagrange stationarity condition.
///
/// Tsallis: -(1/2) g_s L_s cos + (alpha hbar / 2(alpha-1)) (p/sigma)^(alpha-1) = 0,
/// read on the even-root branch (1/(alpha-1) = 2m) so that
/// p = sigma (k cos)^{2m}, k = (alpha-1) g_s L_s / (alpha hbar).
/// Renyi carries the extra functional F[p] = dphi \int p^alpha sigma^(1-alpha)
/// inside the bracket. K-L gives p = sigma exp(g_s L_s cos / hbar).
/// The delta_phi window multiplies both terms and drops out.
template <typename Scalar>
typename GridDensity<Scalar>::Array stationarity_image(const typename GridDensity<Scalar>::Array& p,
                                                       const typename GridDensity<Scalar>::Array& sigma,
                                                       const ThetaGrid<Scalar>& grid,
                                                       const ActionSpec<Scalar>& spec) {
  using Array = typename GridDensity<Scalar>::Array;
  const Array cosine = grid.nodes().cos();
  const Scalar neg_inf = -std::numeric_limits<Scalar>::infinity();
  Array log_image(p.size());

  if (spec.divergence == Divergence::KullbackLeibler) {
    const Scalar kappa = spec.g_s * spec.L_s / spec.hbar;
    for (Eigen::Index i = 0; i < p.size(); ++i)
      log_image(i) = sigma(i) > 0 ? std::log(sigma(i)) + kappa * cosine(i) : neg_inf;
  } else {
    const int m = spec.order.m();
    const Scalar alpha = Scalar(spec.order.alpha());
    Scalar k = (alpha - 1) * spec.g_s * spec.L_s / (alpha * spec.hbar);
    if (spec.divergence == Divergence::Renyi)
      k *= spec.delta_phi * grid.integrate(p.pow(alpha) * sigma.pow(1 - alpha));
    const Scalar log_k = std::log(std::abs(k));
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const Scalar c = std::abs(cosine(i));
      log_image(i) = (sigma(i) > 0 && c > 0) ? std::log(sigma(i)) + Scalar(2 * m) * (log_k + std::log(c))
                                             : neg_inf;
    }
  }

  const Scalar top = log_image.maxCoeff();
  Array image = (log_image - top).exp();
  return image / grid.integrate(image);
}

}  // namespace detail

/// Solves the stationarity condition of total_action under normalization.
///
/// Starts from the prior and iterates p <- N[p^(1-w) T[p]^w], where T is the
/// Euler-Lagrange image and N renormalizes, until successive iterates differ
/// by less than `tolerance` in L-inf. For K-L this is mirror descent on a
/// convex functional. Throws ConvergenceError when the budget runs out.
template <typename Scalar = double>
VariationalSolution<Scalar> variational_solve(const ActionSpec<Scalar>& spec,
                                              const ThetaGrid<Scalar>& grid = ThetaGrid<Scalar>(),
                                              const VariationalOptions& options = {}) {
  spec.validate();
  if (spec.divergence != Divergence::KullbackLeibler && spec.order.is_uniform())
    throw std::invalid_argument("variational_solve: Tsallis/Renyi need m >= 1");
  if (!(options.relaxation > 0 && options.relaxation <= 1))
    throw std::invalid_argument("variational_solve: relaxation must be in (0, 1]");

  using Array = typename GridDensity<Scalar>::Array;
  const Array sigma = spec.prior_on(grid);
  Array p = sigma / grid.integrate(sigma);
  const Scalar w = Scalar(options.relaxation);

  Scalar change = std::numeric_limits<Scalar>::infinity();
  int it = 0;
  while (it < options.max_iterations) {
    ++it;
    const Array image = detail::stationarity_image(p, sigma, grid, spec);
    Array next = p.pow(1 - w) * image.pow(w);
    next /= grid.integrate(next);
    change = (next - p).abs().maxCoeff();
    p = std::move(next);
    if (change < Scalar(options.tolerance)) break;
  }
  if (!(change < Scalar(options.tolerance)))
    throw ConvergenceError("variational_solve did not converge", it, double(change));

  const Array image = detail::stationarity_image(p, sigma, grid, spec);
  const Scalar residual = (image - p).abs().maxCoeff();
  return {GridDensity<Scalar>::normalized(grid, p), it, change, residual};
}

/// Measurement-limit weights: mass of sigma on [0, pi/2] and on [pi/2, pi].
template <typename Scalar>
TwoPointDensity limit_density(const GridDensity<Scalar>& initial) {
  const double up = double(initial.mass_between(Scalar(0), Scalar(kPi / 2)));
  const double down = double(initial.mass_between(Scalar(kPi / 2), Scalar(kPi)));
  return TwoPointDensity(up / (up + down));
}

/// Inverse-CDF sampler for p_m built on a fine monotone table.
class ThetaSampler {
 public:
  explicit ThetaSampler(int m, Eigen::Index table_nodes = 8193);

  double operator()(RandomStream& rng) const;
  int order() const noexcept { return m_; }

 private:
  int m_;
  Eigen::ArrayXd nodes_;
  Eigen::ArrayXd cdf_;
};

/// Draws theta ~ p_m. Builds (and caches per thread) a sampler for m.
PolarAngle sample_theta(int m, RandomStream& rng);

}  // namespace spinlab
