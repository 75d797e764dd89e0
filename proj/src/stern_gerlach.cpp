#include "spinlab/stern_gerlach.hpp"

#include "spinlab/csv.hpp"

#include <cmath>
#include <ostream>

namespace spinlab {

void ApparatusConfig::validate() const {
  if (!(transit_time > 0)) throw std::invalid_argument("ApparatusConfig: transit_time must be positive");
  if (!(gradient >= 0)) throw std::invalid_argument("ApparatusConfig: gradient must be non-negative");
  if (order && *order < 0) throw std::invalid_argument("ApparatusConfig: order must be non-negative");
  units.validate();
}

SpinOutcome measure(const TwoPointDensity& density, RandomStream& rng, double axis_angle) {
  const double u = rng.uniform();
  return {u < density.weight_up() ? Spin::Up : Spin::Down, axis_angle};
}

MeasurementTally measure_many(const TwoPointDensity& density, std::uint64_t samples,
                              const RandomStream& base) {
  MeasurementTally tally;
  for (std::uint64_t i = 0; i < samples; ++i) {
    RandomStream rng = base.for_trial(i);
    if (measure(density, rng).value == Spin::Up)
      ++tally.up;
    else
      ++tally.down;
  }
  return tally;
}

double polar_of_direction(double psi) {
  double r = std::fmod(psi, 2 * kPi);
  if (r < 0) r += 2 * kPi;
  return r <= kPi ? r : 2 * kPi - r;
}

TwoPointDensity conditional_limit(const GridDensity<double>& prior, double beta) {
  const double up = prior.at(polar_of_direction(beta));
  const double down = prior.at(polar_of_direction(beta + kPi));
  const double z = up + down;
  if (!(z > 0)) throw std::invalid_argument("conditional_limit: prior vanishes on both poles of the axis");
  return TwoPointDensity(up / z);
}

double rotated_up_probability(double beta) {
  const double c = std::cos(beta / 2);
  return c * c;
}

double rotated_down_probability(double beta) {
  const double s = std::sin(beta / 2);
  return s * s;
}

TwoPointDensity rotated_outcome_density(double beta, Relaxation relaxation) {
  if (relaxation == Relaxation::Full) return TwoPointDensity(rotated_up_probability(beta));
  return TwoPointDensity(polar_of_direction(beta) <= kPi / 2 ? 1.0 : 0.0);
}

double two_apparatus_up_probability(double beta1, double beta2) {
  return rotated_up_probability(beta2 - beta1);
}

double two_apparatus_down_probability(double beta1, double beta2) {
  return rotated_down_probability(beta2 - beta1);
}

std::pair<double, double> y_axis_density_coefficients(double beta, RotationSign sign) {
  const double c = std::cos(beta / 2);
  const double s = std::sin(beta / 2);
  const double toward = 0.5 * (c - s) * (c - s);
  const double away = 0.5 * (c + s) * (c + s);
  return sign == RotationSign::Positive ? std::pair{toward, away} : std::pair{away, toward};
}

double max_displacement(int m, double eta, double transit_time, const NaturalUnits& units) {
  if (m < 0) throw std::invalid_argument("displacement: m must be finite and non-negative");
  if (!(eta > 0) || !(transit_time > 0))
    throw std::invalid_argument("displacement: eta and transit_time must be positive");
  units.validate();
  return units.charge * units.hbar * eta /
         (4.0 * units.mass * units.mass * normalization_constant(m)) * transit_time * transit_time;
}

double displacement(PolarAngle theta, int m, double eta, double transit_time, const NaturalUnits& units) {
  return max_displacement(m, eta, transit_time, units) * std::pow(std::cos(theta.value()), 2 * m + 1);
}

Histogram Histogram::uniform(double lo, double hi, std::size_t bins) {
  if (!(hi > lo) || bins == 0) throw std::invalid_argument("Histogram: need hi > lo and bins > 0");
  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * double(i) / double(bins);
  h.counts.assign(bins, 0);
  return h;
}

void Histogram::add(double x) {
  ++total;
  sum += x;
  sum_sq += x * x;
  sum_cube += x * x * x;
  if (x < edges.front() || x > edges.back()) return;
  auto it = std::upper_bound(edges.begin(), edges.end(), x);
  std::size_t i = std::size_t(it - edges.begin());
  i = i == 0 ? 0 : i - 1;
  if (i >= counts.size()) i = counts.size() - 1;
  ++counts[i];
}

double Histogram::density(std::size_t i) const {
  return total == 0 ? 0.0 : double(counts[i]) / (double(total) * width(i));
}

double Histogram::mean() const { return total == 0 ? 0.0 : sum / double(total); }

double Histogram::skewness() const {
  if (total < 3) return 0.0;
  const double n = double(total);
  const double mu = sum / n;
  const double var = sum_sq / n - mu * mu;
  if (!(var > 0)) return 0.0;
  const double third = sum_cube / n - 3 * mu * sum_sq / n + 2 * mu * mu * mu;
  return third / std::pow(var, 1.5);
}

void write_csv(const Histogram& histogram, std::ostream& out) {
  CsvWriter csv(out, {"bin_left", "bin_right", "count", "density"});
  for (std::size_t i = 0; i < histogram.bins(); ++i)
    csv.row(histogram.edges[i], histogram.edges[i + 1], histogram.counts[i], histogram.density(i));
}

Histogram displacement_distribution(int m, const ApparatusConfig& config, std::uint64_t samples,
                                    const RandomStream& base, std::size_t bins) {
  config.validate();
  const double dz_max = max_displacement(m, config.gradient, config.transit_time, config.units);
  Histogram hist = Histogram::uniform(-dz_max, dz_max, bins);
  const ThetaSampler sampler(m);
  for (std::uint64_t i = 0; i < samples; ++i) {
    RandomStream rng = base.for_trial(i);
    const double theta = sampler(rng);
    hist.add(dz_max * std::pow(std::cos(theta), 2 * m + 1));
  }
  return hist;
}

double displacement_interval_probability(double lo, double hi, int m, const ApparatusConfig& config) {
  config.validate();
  const double dz_max = max_displacement(m, config.gradient, config.transit_time, config.units);
  lo = std::clamp(lo / dz_max, -1.0, 1.0);
  hi = std::clamp(hi / dz_max, -1.0, 1.0);
  if (hi <= lo) return 0.0;
  const double power = 1.0 / double(2 * m + 1);
  const auto preimage = [power](double r) {
    const double c = std::copysign(std::pow(std::abs(r), power), r);
    return std::acos(std::clamp(c, -1.0, 1.0));
  };
  // cos^{2m+1} decreases on [0, pi], so the interval maps to [theta(hi), theta(lo)].
  const double t_lo = preimage(hi);
  const double t_hi = preimage(lo);
  if (t_hi <= t_lo) return 0.0;
  if (m == 0) return (t_hi - t_lo) / kPi;
  const auto f = [m](double t) { return std::pow(std::cos(t), 2 * m); };
  return integrate_adaptive(f, t_lo, t_hi, 1e-12, 16) / normalization_constant(m);
}

}  // namespace spinlab
