#include "spinlab/fluctuations.hpp"

#include "spinlab/quadrature.hpp"
#include "spinlab/units.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <stdexcept>

namespace spinlab {

void TranslationParams::validate() const {
  if (!(mass > 0) || !(dt > 0) || !(hbar > 0))
    throw std::invalid_argument("TranslationParams: mass, dt and hbar must be positive");
}

void RotationParams::validate() const {
  if (!(mass > 0) || !(omega > 0) || !(hbar > 0))
    throw std::invalid_argument("RotationParams: mass, omega and hbar must be positive");
}

double RotationParams::width() const noexcept { return std::sqrt(hbar / (2.0 * mass * omega)); }

Eigen::Vector3d sample_displacement(const TranslationParams& params, RandomStream& rng) {
  params.validate();
  std::normal_distribution<double> normal(0.0, std::sqrt(params.variance()));
  return {normal(rng), normal(rng), normal(rng)};
}

Eigen::MatrixX3d sample_displacements(const TranslationParams& params, std::uint64_t samples,
                                      const RandomStream& base) {
  Eigen::MatrixX3d w(Eigen::Index(samples), 3);
  for (std::uint64_t i = 0; i < samples; ++i) {
    RandomStream rng = base.for_trial(i);
    w.row(Eigen::Index(i)) = sample_displacement(params, rng).transpose();
  }
  return w;
}

double uncertainty_product(const Eigen::MatrixX3d& w, const TranslationParams& params) {
  params.validate();
  if (w.rows() < 10000) throw std::invalid_argument("uncertainty_product: need at least 10^4 samples");
  // dx dp = w * (m w / dt).
  return params.mass * w.array().square().mean() / params.dt;
}

double rms_uncertainty_product(const Eigen::MatrixX3d& w, const TranslationParams& params) {
  params.validate();
  if (w.rows() < 10000) throw std::invalid_argument("rms_uncertainty_product: need at least 10^4 samples");
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double rx = std::sqrt(w.col(c).array().square().mean());
    acc += rx * (params.mass * rx / params.dt);
  }
  return acc / 3.0;
}

double radius_normalization(const RotationParams& params) {
  params.validate();
  const double k = params.mass * params.omega / params.hbar;
  return integrate_adaptive([k](double u) { return std::exp(-k * u * u); }, 0.0, 40.0 * params.width(), 1e-14,
                            64);
}

double radius_density(double u, const RotationParams& params) {
  if (!(u >= 0.0)) throw std::invalid_argument("radius_density: u must be non-negative");
  const double k = params.mass * params.omega / params.hbar;
  return std::exp(-k * u * u) / radius_normalization(params);
}

double radius_second_moment(const RotationParams& params) {
  params.validate();
  const double k = params.mass * params.omega / params.hbar;
  const double m2 = integrate_adaptive([k](double u) { return u * u * std::exp(-k * u * u); }, 0.0,
                                       40.0 * params.width(), 1e-14, 64);
  return m2 / radius_normalization(params);
}

double expected_angular_momentum(const RotationParams& params, std::uint64_t samples, const RandomStream& base) {
  params.validate();
  if (samples < 10000) throw std::invalid_argument("expected_angular_momentum: need at least 10^4 samples");
  std::normal_distribution<double> normal(0.0, params.width());
  double acc = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    RandomStream rng = base.for_trial(i);
    const double u = std::abs(normal(rng));
    acc += params.mass * params.omega * u * u;
  }
  return acc / double(samples);
}

Eigen::ArrayXd RadiusGrid::points(const RotationParams& params) const {
  if (nodes < 3) throw std::invalid_argument("RadiusGrid: need at least 3 nodes");
  const double top = u_max > 0 ? u_max : 12.0 * params.width();
  return Eigen::ArrayXd::LinSpaced(nodes, 0.0, top);
}

double RadiusSolution::second_moment() const {
  const double h = u(1) - u(0);
  return trapezoid((density * u.square()).eval(), h);
}

double RadiusSolution::angular_momentum(const RotationParams& params) const {
  return params.mass * params.omega * second_moment();
}

RadiusSolution variational_radius_solve(const RotationParams& params, const RadiusGrid& grid,
                                        const RadiusSolveOptions& options) {
  params.validate();
  if (!(options.prior_level > 0)) throw std::invalid_argument("variational_radius_solve: prior level must be positive");
  if (!(options.step > 0 && options.step <= 1)) throw std::invalid_argument("variational_radius_solve: step in (0, 1]");
  const Eigen::ArrayXd u = grid.points(params);
  if (u(u.size() - 1) < 6.0 * params.width())
    throw std::invalid_argument("variational_radius_solve: grid must cover at least 6 standard deviations");

  const double h = u(1) - u(0);
  const double mu = options.prior_level;
  const double eta = 2.0 * options.step / params.hbar;
  const Eigen::ArrayXd potential = 0.5 * params.mass * params.omega * u.square();

  const auto gradient = [&](const Eigen::ArrayXd& p) -> Eigen::ArrayXd {
    return potential + 0.5 * params.hbar * ((p / mu).log() + 1.0);
  };

  Eigen::ArrayXd p = Eigen::ArrayXd::Constant(u.size(), 1.0 / (u(u.size() - 1)));
  double change = std::numeric_limits<double>::infinity();
  int it = 0;
  while (it < options.max_iterations) {
    ++it;
    Eigen::ArrayXd log_next = p.log() - eta * gradient(p);
    log_next -= log_next.maxCoeff();
    Eigen::ArrayXd next = log_next.exp();
    next /= trapezoid(next, h);
    change = (next - p).abs().maxCoeff();
    p = std::move(next);
    if (change < options.tolerance) break;
  }
  if (!(change < options.tolerance))
    throw ConvergenceError("variational_radius_solve did not converge", it, change);

  const Eigen::ArrayXd g = gradient(p);
  const double lambda = trapezoid((p * g).eval(), h);
  RadiusSolution out;
  out.u = u;
  out.density = p;
  out.iterations = it;
  out.last_change = change;
  out.residual = (g - lambda).abs().maxCoeff();
  return out;
}

double fisher_functional(const SpatialGrid<double>& grid, const Eigen::ArrayXd& rho, const TranslationParams& params) {
  params.validate();
  if (grid.dimension() != 1 || rho.size() != grid.size())
    throw std::invalid_argument("fisher_functional: needs a 1D grid and matching density");
  if (!rho.allFinite() || (rho <= 0.0).any()) throw std::invalid_argument("fisher_functional: rho must be positive");
  const Eigen::ArrayXd root = rho.sqrt();
  const Eigen::ArrayXd d = spectral_derivative(grid, root);
  // |grad rho|^2 / rho = 4 |grad sqrt(rho)|^2.
  return params.hbar / (4.0 * params.mass) * 4.0 * grid.integrate(d.square());
}

HermiteRule gauss_hermite(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite: order must be positive");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int i = 1; i < order; ++i) J(i, i - 1) = J(i - 1, i) = std::sqrt(i / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
  HermiteRule rule;
  rule.nodes = eig.eigenvalues().array();
  rule.weights = std::sqrt(kPi) * eig.eigenvectors().row(0).array().square().transpose();
  return rule;
}

double kl_shift_rate(const SpatialGrid<double>& grid, const Eigen::ArrayXd& rho, const TranslationParams& params,
                     int hermite_order) {
  params.validate();
  if (grid.dimension() != 1 || rho.size() != grid.size())
    throw std::invalid_argument("kl_shift_rate: needs a 1D grid and matching density");
  if (!rho.allFinite() || (rho <= 0.0).any()) throw std::invalid_argument("kl_shift_rate: rho must be positive");

  const double floor = 1e-14 * rho.maxCoeff();
  const HermiteRule rule = gauss_hermite(hermite_order);
  const double scale = std::sqrt(2.0 * params.variance());
  double average = 0.0;
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
    const Eigen::ArrayXd shifted = spectral_shift(grid, rho, scale * rule.nodes(q));
    double kl = 0.0;
    for (Eigen::Index i = 0; i < rho.size(); ++i)
      if (rho(i) > floor && shifted(i) > floor) kl += rho(i) * std::log(rho(i) / shifted(i));
    average += rule.weights(q) * kl * grid.cell_volume();
  }
  return average / std::sqrt(kPi) / params.dt;
}

std::vector<double> kl_shift_limit(const SpatialGrid<double>& grid, const Eigen::ArrayXd& rho,
                                   const TranslationParams& params, const std::vector<double>& dts) {
  std::vector<double> out;
  out.reserve(dts.size());
  for (double dt : dts) {
    TranslationParams p = params;
    p.dt = dt;
    out.push_back(kl_shift_rate(grid, rho, p));
  }
  return out;
}

}  // namespace spinlab
