#include "spinlab/orientation.hpp"

#include <map>

namespace spinlab {

double DivergenceOrder::alpha() const { return alpha_from_m(m_); }

double alpha_from_m(int m) {
  if (m < 1) throw std::invalid_argument("alpha_from_m: m must be >= 1 (m = 0 is the uniform density)");
  return 1.0 + 1.0 / (2.0 * m);
}

double normalization_constant(int m) {
  if (m < 0) throw std::invalid_argument("normalization_constant: m must be non-negative");
  if (m == 0) return kPi;
  const auto f = [m](double t) { return std::pow(std::cos(t), 2 * m); };
  // Symmetric about pi/2; integrate one half where the peak sits at the edge.
  return 2.0 * integrate_adaptive(f, 0.0, kPi / 2, 1e-13, 64);
}

double eval_density(int m, PolarAngle theta) {
  if (m < 0) throw std::invalid_argument("eval_density: m must be non-negative");
  if (m == 0) return 1.0 / kPi;
  return std::pow(std::cos(theta.value()), 2 * m) / normalization_constant(m);
}

double pole_mass(int m, double eps) {
  if (m < 0) throw std::invalid_argument("pole_mass: m must be non-negative");
  if (!(eps >= 0.0)) throw std::invalid_argument("pole_mass: eps must be non-negative");
  if (eps >= kPi / 2) return 1.0;
  if (m == 0) return 2.0 * eps / kPi;
  const auto f = [m](double t) { return std::pow(std::cos(t), 2 * m); };
  return 2.0 * integrate_adaptive(f, 0.0, eps, 1e-13, 64) / normalization_constant(m);
}

ThetaSampler::ThetaSampler(int m, Eigen::Index table_nodes) : m_(m) {
  if (m < 0) throw std::invalid_argument("ThetaSampler: m must be non-negative");
  if (table_nodes < 4097) throw std::invalid_argument("ThetaSampler: table needs at least 4097 nodes");
  nodes_ = Eigen::ArrayXd::LinSpaced(table_nodes, 0.0, kPi);
  const double h = kPi / double(table_nodes - 1);
  const auto f = [m](double t) { return std::pow(std::cos(t), 2 * m); };

  cdf_.resize(table_nodes);
  cdf_(0) = 0.0;
  for (Eigen::Index i = 1; i < table_nodes; ++i) {
    const double a = nodes_(i - 1);
    const double b = nodes_(i);
    cdf_(i) = cdf_(i - 1) + h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
  }
  cdf_ /= cdf_(table_nodes - 1);
}

double ThetaSampler::operator()(RandomStream& rng) const {
  const double u = rng.uniform();
  if (m_ == 0) return u * kPi;
  const auto* first = cdf_.data();
  const auto* last = first + cdf_.size();
  auto it = std::upper_bound(first, last, u);
  Eigen::Index i = std::clamp<Eigen::Index>(it - first, 1, cdf_.size() - 1);
  // Skip zero-mass cells so the interpolation denominator is positive.
  while (i < cdf_.size() - 1 && cdf_(i) <= cdf_(i - 1)) ++i;
  const double lo = cdf_(i - 1);
  const double hi = cdf_(i);
  const double t = hi > lo ? (u - lo) / (hi - lo) : 0.5;
  return std::clamp(nodes_(i - 1) + t * (nodes_(i) - nodes_(i - 1)), 0.0, kPi);
}

PolarAngle sample_theta(int m, RandomStream& rng) {
  thread_local std::map<int, ThetaSampler> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, ThetaSampler(m)).first;
  return PolarAngle(it->second(rng));
}

}  // namespace spinlab
