#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace spinlab {

/// Composite trapezoid rule over equally spaced samples.
template <typename Derived>
typename Derived::Scalar trapezoid(const Eigen::ArrayBase<Derived>& samples,
                                   typename Derived::Scalar step) {
  using Scalar = typename Derived::Scalar;
  const auto n = samples.size();
  if (n < 2) return Scalar(0);
  return step * (samples.sum() - Scalar(0.5) * (samples(0) + samples(n - 1)));
}

/// Running trapezoid integral; element i holds the integral from node 0 to node i.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> cumulative_trapezoid(
    const Eigen::ArrayBase<Derived>& samples, typename Derived::Scalar step) {
  using Scalar = typename Derived::Scalar;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> out(samples.size());
  if (samples.size() == 0) return out;
  out(0) = Scalar(0);
  for (Eigen::Index i = 1; i < samples.size(); ++i)
    out(i) = out(i - 1) + Scalar(0.5) * step * (samples(i - 1) + samples(i));
  return out;
}

namespace detail {

template <typename F, typename Scalar>
Scalar adaptive_simpson_step(F& f, Scalar a, Scalar b, Scalar fa, Scalar fm, Scalar fb,
                             Scalar whole, Scalar tol, int depth) {
  const Scalar m = (a + b) / 2;
  const Scalar lm = (a + m) / 2;
  const Scalar rm = (m + b) / 2;
  const Scalar flm = f(lm);
  const Scalar frm = f(rm);
  const Scalar left = (m - a) / 6 * (fa + 4 * flm + fm);
  const Scalar right = (b - m) / 6 * (fm + 4 * frm + fb);
  const Scalar delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with Richardson correction.
///
/// The interval is pre-split into `panels` pieces so that sharply peaked
/// integrands (high cosine powers) are not missed by the first sample.
/// `rel_tol` is applied against a coarse estimate of the integral magnitude.
template <typename F, typename Scalar = double>
Scalar integrate_adaptive(F&& f, Scalar a, Scalar b, Scalar rel_tol = Scalar(1e-12),
                          int panels = 64, int max_depth = 40) {
  if (!(b > a)) throw std::invalid_argument("integrate_adaptive: empty interval");
  const Scalar width = (b - a) / panels;

  Scalar scale = 0;
  for (int i = 0; i <= 4 * panels; ++i) scale += std::abs(f(a + (b - a) * i / (4 * panels)));
  scale *= (b - a) / (4 * panels);
  const Scalar tol = rel_tol * (scale > 0 ? scale : Scalar(1)) / panels;

  Scalar total = 0;
  for (int i = 0; i < panels; ++i) {
    const Scalar lo = a + width * i;
    const Scalar hi = (i + 1 == panels) ? b : lo + width;
    const Scalar flo = f(lo);
    const Scalar fhi = f(hi);
    const Scalar fmid = f((lo + hi) / 2);
    const Scalar whole = (hi - lo) / 6 * (flo + 4 * fmid + fhi);
    total += detail::adaptive_simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol, max_depth);
  }
  return total;
}

}  // namespace spinlab
