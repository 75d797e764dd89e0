#include <doctest.h>

#include "spinlab/qm_oracle.hpp"
#include "spinlab/stern_gerlach.hpp"

#include <cmath>
#include <sstream>

using namespace spinlab;

namespace {

double up_fraction(double w, std::uint64_t n, const char* name) {
  return measure_many(TwoPointDensity(w), n, RandomStream(99, name)).up_fraction();
}

// Composite Simpson on [a, b]; test-side quadrature, independent of the library's.
template <typename F>
double simpson(F f, double a, double b, int panels = 20000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

// P(dz <= z) for theta ~ p_m: dz <= z  <=>  cos(theta) <= cbrt-like odd root of z / dz_max.
double displacement_cdf(double z, int m, double dz_max) {
  const double r = std::clamp(z / dz_max, -1.0, 1.0);
  const double c = std::copysign(std::pow(std::abs(r), 1.0 / (2 * m + 1)), r);
  const double theta = std::acos(c);
  const double zm = simpson([m](double t) { return std::pow(std::cos(t), 2 * m); }, 0.0, kPi);
  return simpson([m](double t) { return std::pow(std::cos(t), 2 * m); }, theta, kPi) / zm;
}

}  // namespace

TEST_CASE("measure honours the two-point weights") {
  RandomStream r(1, "det");
  for (int i = 0; i < 1000; ++i) CHECK(measure(TwoPointDensity(1.0), r).value == Spin::Up);
  for (int i = 0; i < 1000; ++i) CHECK(measure(TwoPointDensity(0.0), r).value == Spin::Down);
  CHECK(measure(TwoPointDensity(0.5), r, 0.3).axis_angle == 0.3);
  CHECK(std::abs(up_fraction(0.5, 1000000, "half") - 0.5) < 0.002);
  CHECK(std::abs(up_fraction(0.25, 1000000, "quarter") - 0.25) < 0.002);
  CHECK(sign_of(Spin::Up) == 1);
  CHECK(sign_of(Spin::Down) == -1);
}

TEST_CASE("frequencies converge at the Monte Carlo rate") {
  const double p = rotated_up_probability(kPi / 3);
  for (std::uint64_t n : {10000ull, 100000ull, 1000000ull}) {
    const double f = measure_many(rotated_outcome_density(kPi / 3), n, RandomStream(5, "rate")).up_fraction();
    CHECK(std::abs(f - p) < 4 * std::sqrt(p * (1 - p) / double(n)));
  }
}

TEST_CASE("conditional density") {
  const ThetaGrid<double> grid(1025);
  const auto uniform = GridDensity<double>::uniform(grid);
  const auto c1 = conditional_density(uniform, 1);
  CHECK((c1.values() - GridDensity<double>::cos_power(grid, 1).values()).abs().maxCoeff() < 1e-12);

  const auto skew = GridDensity<double>::normalized(grid, 1.0 + 0.5 * grid.nodes().cos());
  CHECK((conditional_density(skew, 0).values() - skew.values()).abs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(conditional_density(skew, -1), std::invalid_argument);

  // Spike at beta: the limit keeps only the weights at beta and beta + pi.
  const double beta = 1.0;
  const Eigen::ArrayXd spike = (-(grid.nodes() - beta).square() / 0.01).exp() + 0.1;
  const auto sigma = GridDensity<double>::normalized(grid, spike);
  const auto lim = conditional_limit(sigma, beta);
  const double a = sigma.at(beta), b = sigma.at(kPi - beta);
  CHECK(lim.weight_up() == doctest::Approx(a / (a + b)).epsilon(1e-12));
}

TEST_CASE("polar angle of an in-plane direction") {
  CHECK(polar_of_direction(0.0) == 0.0);
  CHECK(polar_of_direction(kPi) == doctest::Approx(kPi));
  CHECK(polar_of_direction(3 * kPi / 2) == doctest::Approx(kPi / 2));
  CHECK(polar_of_direction(-kPi / 4) == doctest::Approx(kPi / 4));
}

TEST_CASE("rotated apparatus probabilities") {
  CHECK(rotated_up_probability(0.0) == 1.0);
  CHECK(rotated_up_probability(kPi) == doctest::Approx(0.0).scale(1.0));
  CHECK(rotated_up_probability(kPi / 2) == doctest::Approx(0.5).epsilon(1e-15));
  RandomStream r(3, "betas");
  for (int i = 0; i < 1000; ++i) {
    const double beta = 2 * kPi * r.uniform();
    const double up = rotated_up_probability(beta), down = rotated_down_probability(beta);
    CHECK(std::abs(up + down - 1.0) <= 4.5e-16);
    // rho(beta) - rho(beta + pi) = cos(beta)
    CHECK(up - rotated_up_probability(beta + kPi) == doctest::Approx(std::cos(beta)).epsilon(1e-12));
  }
  CHECK(rotated_outcome_density(kPi / 3, Relaxation::None).weight_up() == 1.0);
  CHECK(rotated_outcome_density(kPi / 2, Relaxation::None).weight_up() == 1.0);
  CHECK(rotated_outcome_density(2.0, Relaxation::None).weight_up() == 0.0);
}

TEST_CASE("two apparatus agree with the spinor oracle") {
  CHECK(two_apparatus_up_probability(kPi / 4, kPi / 4) == 1.0);
  CHECK(two_apparatus_up_probability(0, kPi / 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(two_apparatus_up_probability(kPi / 6, kPi / 2) == doctest::Approx(0.75).epsilon(1e-15));
  RandomStream r(11, "pairs");
  for (int i = 0; i < 100; ++i) {
    const double b1 = 2 * kPi * r.uniform(), b2 = 2 * kPi * r.uniform();
    CHECK(std::abs(two_apparatus_up_probability(b1, b2) - oracle::overlap_prob(b1, b2)) <= 1e-12);
    CHECK(std::abs(two_apparatus_down_probability(b1, b2) - oracle::overlap_prob_down(b1, b2)) <= 1e-12);
  }
}

TEST_CASE("y-axis coefficients") {
  auto [a, b] = y_axis_density_coefficients(0.0, RotationSign::Positive);
  CHECK(a == doctest::Approx(0.5));
  CHECK(b == doctest::Approx(0.5));
  std::tie(a, b) = y_axis_density_coefficients(kPi / 2, RotationSign::Positive);
  CHECK(a == doctest::Approx(0.0).scale(1.0));
  CHECK(b == doctest::Approx(1.0));
  const auto [c, d] = y_axis_density_coefficients(kPi / 2, RotationSign::Negative);
  CHECK(c == doctest::Approx(1.0));
  CHECK(d == doctest::Approx(0.0).scale(1.0));
  RandomStream r(8, "y");
  for (int i = 0; i < 200; ++i) {
    const double beta = 2 * kPi * r.uniform();
    const auto [p, q] = y_axis_density_coefficients(beta, RotationSign::Positive);
    CHECK(p + q == doctest::Approx(1.0).epsilon(1e-14));
    // toward the rotated y axis: (1 - sin beta) / 2
    CHECK(p == doctest::Approx((1 - std::sin(beta)) / 2).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("displacement") {
  CHECK(std::abs(displacement(PolarAngle(kPi / 2), 1, 1, 1)) < 1e-16);
  CHECK(displacement(PolarAngle(0), 1, 1, 1) == doctest::Approx(1 / (4 * (kPi / 2))).epsilon(1e-10));
  CHECK(displacement(PolarAngle(0), 1, 1, 1) == doctest::Approx(0.15915).epsilon(1e-4));
  for (double t = 0; t <= kPi; t += 0.05)
    CHECK(displacement(PolarAngle(t), 3, 2, 1.5) ==
          doctest::Approx(-displacement(PolarAngle(std::min(kPi, kPi - t)), 3, 2, 1.5)).scale(1.0).epsilon(1e-12));
  // T^2 and eta scaling.
  CHECK(max_displacement(2, 3, 2) == doctest::Approx(12 * max_displacement(2, 1, 1)));
  CHECK_THROWS_AS(max_displacement(-1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(max_displacement(1, 1, 0), std::invalid_argument);
}

TEST_CASE("histogram basics") {
  auto h = Histogram::uniform(-1, 1, 4);
  for (double x : {-1.0, -0.6, 0.0, 0.2, 1.0}) h.add(x);
  CHECK(h.counts == std::vector<std::uint64_t>{2, 0, 2, 1});
  CHECK(h.total == 5);
  CHECK(h.density(3) == doctest::Approx(1.0 / (5 * 0.5)));
  std::ostringstream ss;
  write_csv(h, ss);
  CHECK(ss.str().rfind("bin_left,bin_right,count,density\n-1,-0.5,2,0.8\n", 0) == 0);
  CHECK_THROWS_AS(Histogram::uniform(1, 1, 3), std::invalid_argument);
}

TEST_CASE("displacement histogram follows the pushforward density") {
  ApparatusConfig cfg;
  const std::uint64_t n = 1000000;
  for (int m : {0, 3}) {
    const auto h = displacement_distribution(m, cfg, n, RandomStream(17, "push"), 50);
    const double dz = max_displacement(m, cfg.gradient, cfg.transit_time);
    CHECK(h.edges.front() == doctest::Approx(-dz));
    CHECK(h.edges.back() == doctest::Approx(dz));
    double chi2 = 0;
    int bins = 0;
    for (std::size_t i = 0; i < h.bins(); ++i) {
      const double p = displacement_cdf(h.edges[i + 1], m, dz) - displacement_cdf(h.edges[i], m, dz);
      CHECK(displacement_interval_probability(h.edges[i], h.edges[i + 1], m, cfg) ==
            doctest::Approx(p).epsilon(1e-6).scale(1e-9));
      const double e = p * double(n);
      if (e < 5) continue;
      chi2 += (double(h.counts[i]) - e) * (double(h.counts[i]) - e) / e;
      ++bins;
    }
    // chi-square with ~49 dof: mean 49, sd ~10.
    CHECK(chi2 < bins + 5 * std::sqrt(2.0 * bins));
    if (m == 0) {
      // Symmetric: zero mean and zero skewness within Monte Carlo error.
      const double sd = std::sqrt(h.sum_sq / double(n));
      CHECK(std::abs(h.mean()) < 4 * sd / std::sqrt(double(n)));
      CHECK(std::abs(h.skewness()) < 4 * std::sqrt(6.0 / double(n)) * 2);
    }
  }
}

TEST_CASE("displacement modes move outward with m") {
  ApparatusConfig cfg;
  double prev = 0;
  for (int m : {1, 3, 6, 10}) {
    const auto h = displacement_distribution(m, cfg, 200000, RandomStream(4, "modes"), 40);
    const double outer = double(h.counts.front() + h.counts.back()) / double(h.total);
    CHECK(outer > prev);
    prev = outer;
    CHECK(h.counts.front() > h.counts[h.bins() / 2]);
  }
}

TEST_CASE("m = 20 tail mass near the extremes") {
  // Quadrature value of P(|dz| >= 0.95 dz_max), measured once and frozen.
  ApparatusConfig cfg;
  const double dz = max_displacement(20, cfg.gradient, cfg.transit_time);
  const double q = 1.0 - displacement_interval_probability(-0.95 * dz, 0.95 * dz, 20, cfg);
  CHECK(q == doctest::Approx(0.2498).epsilon(1e-3));
  const std::uint64_t n = 1000000;
  const auto h = displacement_distribution(20, cfg, n, RandomStream(6, "m20"), 40);
  // bins of width 0.05 dz_max: the outer two hold exactly |dz| >= 0.95 dz_max.
  const double f = double(h.counts.front() + h.counts.back()) / double(n);
  CHECK(std::abs(f - q) < 4 * std::sqrt(q * (1 - q) / double(n)));
}
