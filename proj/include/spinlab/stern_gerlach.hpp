#pragma once

#include "spinlab/orientation.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace spinlab {

enum class Spin : int { Up = +1, Down = -1 };

inline int sign_of(Spin s) noexcept { return static_cast<int>(s); }

struct SpinOutcome {
  Spin value = Spin::Up;
  double axis_angle = 0.0;
};

/// One Stern-Gerlach magnet: B = B0 z - eta z z-hat, traversed in time transit_time.
/// `order` is the cosine power m reached inside the magnet; empty means the
/// quantization limit (two-point density).
struct ApparatusConfig {
  double axis_angle = 0.0;
  double gradient = 1.0;
  double constant_field = 0.0;
  double transit_time = 1.0;
  std::optional<int> order;
  NaturalUnits units;

  void validate() const;
};

/// Draws Up with probability weight_up.
SpinOutcome measure(const TwoPointDensity& density, RandomStream& rng, double axis_angle = 0.0);

struct MeasurementTally {
  std::uint64_t up = 0;
  std::uint64_t down = 0;
  double up_fraction() const noexcept { return double(up) / double(up + down); }
};

/// N independent measurements, trial i drawing from stream trial i.
MeasurementTally measure_many(const TwoPointDensity& density, std::uint64_t samples,
                              const RandomStream& base);

/// p_m(theta'|theta) proportional to sigma(theta) cos^{2m}(theta'), on the
/// prior's grid. The caller supplies sigma already expressed in the rotated frame.
template <typename Scalar>
GridDensity<Scalar> conditional_density(const GridDensity<Scalar>& prior, int m) {
  if (m < 0) throw std::invalid_argument("conditional_density: m must be non-negative");
  auto values = (prior.values() * prior.grid().nodes().cos().pow(Scalar(2 * m))).eval();
  return GridDensity<Scalar>::normalized(prior.grid(), std::move(values));
}

/// Polar angle of an in-plane direction at angle psi from the z-axis.
double polar_of_direction(double psi);

/// Quantization limit of the conditional density for an apparatus tilted by
/// beta: weights (sigma(beta), sigma(beta + pi)) renormalized.
TwoPointDensity conditional_limit(const GridDensity<double>& prior, double beta);

/// cos^2(beta/2), from rho(beta) - rho(beta+pi) = cos(beta) and rho(beta) + rho(beta+pi) = 1.
double rotated_up_probability(double beta);
double rotated_down_probability(double beta);

enum class Relaxation { Full, None };

/// Outcome density of a second apparatus tilted by beta after an Up result.
/// Without relaxation the orientation stays at polar angle beta from the
/// new axis and the result is deterministic (pi/2 counts as Up).
TwoPointDensity rotated_outcome_density(double beta, Relaxation relaxation = Relaxation::Full);

/// cos^2((beta2 - beta1)/2).
double two_apparatus_up_probability(double beta1, double beta2);
double two_apparatus_down_probability(double beta1, double beta2);

enum class RotationSign { Positive, Negative };

/// Weights at theta'_y = 0 and theta'_y = pi for the y'-axis after a rotation
/// by +beta (Positive) or -beta (Negative).
std::pair<double, double> y_axis_density_coefficients(double beta, RotationSign sign);

/// Delta z = e hbar eta / (4 m_e^2 Z_m) * T^2 * cos^{2m+1}(theta).
double displacement(PolarAngle theta, int m, double eta, double transit_time, const NaturalUnits& units = {});

/// Displacement at theta = 0.
double max_displacement(int m, double eta, double transit_time, const NaturalUnits& units = {});

struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  double sum = 0.0;     // of all samples
  double sum_sq = 0.0;
  double sum_cube = 0.0;

  static Histogram uniform(double lo, double hi, std::size_t bins);
  void add(double x);
  std::size_t bins() const noexcept { return counts.size(); }
  double width(std::size_t i) const { return edges[i + 1] - edges[i]; }
  double density(std::size_t i) const;
  double mean() const;
  double skewness() const;
};

/// CSV columns: bin_left,bin_right,count,density.
void write_csv(const Histogram& histogram, std::ostream& out);

/// Samples theta ~ p_m and maps each draw through `displacement`.
/// Bins span [-dz_max, dz_max].
Histogram displacement_distribution(int m, const ApparatusConfig& config, std::uint64_t samples,
                                    const RandomStream& base, std::size_t bins = 200);

/// Probability that dz falls in [lo, hi], obtained by pulling the interval back
/// through the monotone map theta -> cos^{2m+1}(theta) and integrating p_m.
double displacement_interval_probability(double lo, double hi, int m, const ApparatusConfig& config);

}  // namespace spinlab
