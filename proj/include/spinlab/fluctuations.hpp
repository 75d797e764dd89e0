#pragma once

#include "spinlab/random.hpp"
#include "spinlab/spectral.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace spinlab {

struct TranslationParams {
  double mass = 1.0;
  double dt = 1.0;
  double hbar = 1.0;

  void validate() const;
  /// <w_i^2> = hbar dt / 2m.
  double variance() const noexcept { return hbar * dt / (2.0 * mass); }
};

struct RotationParams {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;

  void validate() const;
  /// Standard deviation of the underlying Gaussian in u: sqrt(hbar / 2 m omega).
  double width() const noexcept;
};

/// One 3-vector w with independent N(0, hbar dt / 2m) components.
Eigen::Vector3d sample_displacement(const TranslationParams& params, RandomStream& rng);

/// N x 3 samples, row i drawn from trial i of `base`.
Eigen::MatrixX3d sample_displacements(const TranslationParams& params, std::uint64_t samples,
                                      const RandomStream& base);

/// <dx_i dp_i> with dx = w and dp = m w / dt, averaged over samples and the
/// three components. Needs at least 10^4 rows.
double uncertainty_product(const Eigen::MatrixX3d& w, const TranslationParams& params);

/// rms(dx) * rms(dp) per component, averaged over components.
double rms_uncertainty_product(const Eigen::MatrixX3d& w, const TranslationParams& params);

/// (1/Z) exp(-m omega u^2 / hbar) on u >= 0, with Z from quadrature.
double radius_density(double u, const RotationParams& params);

/// Z of radius_density, by adaptive quadrature over [0, 40 width].
double radius_normalization(const RotationParams& params);

/// <u^2> under radius_density, by quadrature.
double radius_second_moment(const RotationParams& params);

/// Monte Carlo <m omega u^2>, u drawn from the half-Gaussian.
double expected_angular_momentum(const RotationParams& params, std::uint64_t samples, const RandomStream& base);

struct RadiusGrid {
  Eigen::Index nodes = 4097;
  double u_max = 0.0;  // 0 selects 12 widths

  Eigen::ArrayXd points(const RotationParams& params) const;
};

struct RadiusSolveOptions {
  double prior_level = 1.0;  // mu
  double step = 0.5;         // mirror-descent step in units of 2/hbar
  double tolerance = 1e-12;  // successive-iterate L-inf change
  int max_iterations = 10000;
};

struct RadiusSolution {
  Eigen::ArrayXd u;
  Eigen::ArrayXd density;
  int iterations = 0;
  double last_change = 0.0;
  double residual = 0.0;  // L-inf gradient spread around the Lagrange multiplier

  double second_moment() const;
  double angular_momentum(const RotationParams& params) const;
};

/// Minimizes (m/2) int p omega u^2 + (hbar/2) int p ln(p/mu) over normalized p
/// on the grid by entropic mirror descent. The grid must reach 6 widths.
RadiusSolution variational_radius_solve(const RotationParams& params, const RadiusGrid& grid = {},
                                        const RadiusSolveOptions& options = {});

/// (hbar / 4m) int |grad rho|^2 / rho, evaluated as (hbar/m) int |grad sqrt(rho)|^2
/// with a spectral derivative. rho must be positive on a 1D periodic grid.
double fisher_functional(const SpatialGrid<double>& grid, const Eigen::ArrayXd& rho, const TranslationParams& params);

/// <D_KL(rho || rho(. + w))>_w / dt with w ~ N(0, hbar dt / 2m), for the dt in
/// params. The w average uses Gauss-Hermite quadrature; shifts are spectral.
/// Nodes where rho or its shift is below 1e-14 of the maximum are skipped.
double kl_shift_rate(const SpatialGrid<double>& grid, const Eigen::ArrayXd& rho, const TranslationParams& params,
                     int hermite_order = 24);

/// kl_shift_rate for each dt in the sequence.
std::vector<double> kl_shift_limit(const SpatialGrid<double>& grid, const Eigen::ArrayXd& rho,
                                   const TranslationParams& params, const std::vector<double>& dts);

struct HermiteRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;  // for weight function exp(-x^2); they sum to sqrt(pi)
};

/// Golub-Welsch.
HermiteRule gauss_hermite(int order);

}  // namespace spinlab
