#include "spinlab/pauli.hpp"

#include "spinlab/csv.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <ostream>

namespace spinlab {

namespace {

template <typename Scalar>
Scalar wrap_angle(Scalar a) {
  const Scalar two_pi = Scalar(2 * kPi);
  a = std::fmod(a + Scalar(kPi), two_pi);
  if (a <= 0) a += two_pi;
  return a - Scalar(kPi);
}

template <typename Scalar>
bool all_finite(const typename SpinorField<Scalar>::CArray& a) {
  return a.real().allFinite() && a.imag().allFinite();
}

}  // namespace

template <typename Scalar>
SpinorField<Scalar> SpinorField<Scalar>::normalized() const {
  const Scalar n = grid.integrate(plus.abs2() + minus.abs2());
  if (!(n > 0)) throw std::invalid_argument("SpinorField: zero norm");
  const Scalar s = 1 / std::sqrt(n);
  return SpinorField(grid, plus * s, minus * s);
}

template <typename Scalar>
void FieldConfig<Scalar>::validate(const SpatialGrid<Scalar>& grid) const {
  if (!(charge > 0) || !(mass > 0) || !(hbar > 0))
    throw std::invalid_argument("FieldConfig: charge, mass and hbar must be positive");
  for (const Array* a : {&A_x, &A_y, &phi, &B_z}) {
    if (a->size() != 0 && a->size() != grid.size())
      throw std::invalid_argument("FieldConfig: field size does not match grid");
    if (!a->allFinite()) throw std::invalid_argument("FieldConfig: fields must be finite");
  }
  if (grid.dimension() == 1 && A_y.size() != 0 && (A_y != 0).any())
    throw std::invalid_argument("FieldConfig: A_y given on a 1D grid");
}

template <typename Scalar>
bool FieldConfig<Scalar>::uniform_vector_potential() const {
  for (const Array* a : {&A_x, &A_y})
    if (a->size() != 0 && (*a != (*a)(0)).any()) return false;
  return true;
}

template <typename Scalar>
typename FieldConfig<Scalar>::Array FieldConfig<Scalar>::potential(const SpatialGrid<Scalar>& grid, int sign) const {
  Array v = Array::Zero(grid.size());
  if (phi.size()) v -= charge * phi;
  if (B_z.size()) v += Scalar(sign) * charge * hbar / (2 * mass) * B_z;
  return v;
}

template <typename Scalar>
Scalar norm(const SpinorField<Scalar>& field) {
  return field.grid.integrate(field.plus.abs2() + field.minus.abs2());
}

template <typename Scalar>
std::pair<Scalar, Scalar> spin_populations(const SpinorField<Scalar>& field) {
  return {field.grid.integrate(field.plus.abs2()), field.grid.integrate(field.minus.abs2())};
}

template <typename Scalar>
Scalar zeeman_energy(const SpinorField<Scalar>& field, const FieldConfig<Scalar>& config) {
  config.validate(field.grid);
  if (!config.B_z.size()) return 0;
  return config.charge * config.hbar / (2 * config.mass) *
         field.grid.integrate(config.B_z * (field.plus.abs2() - field.minus.abs2()));
}

namespace {

// (hbar k + e A)^2 / 2m on the FFT grid, A uniform.
template <typename Scalar>
typename SpatialGrid<Scalar>::Array kinetic_symbol(const SpatialGrid<Scalar>& grid, const FieldConfig<Scalar>& c) {
  const Scalar ax = c.A_x.size() ? c.A_x(0) : Scalar(0);
  const Scalar ay = c.A_y.size() ? c.A_y(0) : Scalar(0);
  const auto px = (c.hbar * grid.kx() + c.charge * ax).eval();
  typename SpatialGrid<Scalar>::Array t = px.square();
  if (grid.dimension() == 2) t += (c.hbar * grid.ky() + c.charge * ay).square();
  return t / (2 * c.mass);
}

}  // namespace

template <typename Scalar>
Scalar energy(const SpinorField<Scalar>& field, const FieldConfig<Scalar>& config) {
  config.validate(field.grid);
  if (!config.uniform_vector_potential()) throw std::invalid_argument("energy: needs a uniform vector potential");
  const auto& grid = field.grid;
  GridFFT<Scalar> fft(grid);
  const auto T = kinetic_symbol(grid, config);
  const Scalar n = Scalar(grid.size());
  Scalar e = 0;
  for (const auto* psi : {&field.plus, &field.minus}) e += (T * fft.forward(*psi).abs2()).sum() / n;
  e *= grid.cell_volume();
  e += grid.integrate(config.potential(grid, +1) * field.plus.abs2() + config.potential(grid, -1) * field.minus.abs2());
  return e;
}

template <typename Scalar>
struct PauliPropagator<Scalar>::Impl {
  using Complex = std::complex<Scalar>;
  using CArray = typename SpinorField<Scalar>::CArray;
  using Sparse = Eigen::SparseMatrix<Complex>;

  SpatialGrid<Scalar> grid;
  FieldConfig<Scalar> config;
  Scalar dt;
  Scheme scheme;

  // Split step
  std::unique_ptr<GridFFT<Scalar>> fft;
  CArray half_plus, half_minus, kinetic;

  // Crank-Nicolson
  Sparse rhs_plus, rhs_minus;
  Eigen::SparseLU<Sparse> lu_plus, lu_minus;

  Impl(const SpatialGrid<Scalar>& g, FieldConfig<Scalar> c, Scalar step, Scheme s)
      : grid(g), config(std::move(c)), dt(step), scheme(s) {
    config.validate(grid);
    if (!(dt > 0)) throw std::invalid_argument("PauliPropagator: dt must be positive");
    if (scheme == Scheme::SplitStep) init_split();
    else init_cn();
  }

  CArray phase_factor(const typename SpatialGrid<Scalar>::Array& energy, Scalar tau) const {
    CArray out(energy.size());
    for (Eigen::Index i = 0; i < energy.size(); ++i) out(i) = std::polar(Scalar(1), -energy(i) * tau / config.hbar);
    return out;
  }

  void init_split() {
    if (!config.uniform_vector_potential())
      throw std::invalid_argument("PauliPropagator: split-step needs a uniform vector potential; use Crank-Nicolson");
    fft = std::make_unique<GridFFT<Scalar>>(grid);
    half_plus = phase_factor(config.potential(grid, +1), dt / 2);
    half_minus = phase_factor(config.potential(grid, -1), dt / 2);
    kinetic = phase_factor(kinetic_symbol(grid, config), dt);
  }

  Sparse hamiltonian(int sign) const {
    const Scalar h = grid.spacing();
    const Scalar c = config.hbar * config.hbar / (2 * config.mass * h * h);
    const auto v = config.potential(grid, sign);
    std::vector<Eigen::Triplet<Complex>> trip;
    const Eigen::Index n = grid.size();
    trip.reserve(std::size_t(n * (1 + 4 * grid.dimension())));
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index ix = grid.ix(k), iy = grid.iy(k);
      trip.emplace_back(k, k, Complex(v(k) + 2 * c * grid.dimension()));
      for (int axis = 0; axis < grid.dimension(); ++axis) {
        const Eigen::Index fwd = axis == 0 ? grid.flat(ix + 1, iy) : grid.flat(ix, iy + 1);
        const Scalar a_here = axis == 0 ? config.ax_at(k) : config.ay_at(k);
        const Scalar a_next = axis == 0 ? config.ax_at(fwd) : config.ay_at(fwd);
        // Peierls phase of the link k -> fwd.
        const Scalar theta = config.charge * Scalar(0.5) * (a_here + a_next) * h / config.hbar;
        const Complex link = std::polar(Scalar(1), theta);
        trip.emplace_back(k, fwd, -c * link);
        trip.emplace_back(fwd, k, -c * std::conj(link));
      }
    }
    Sparse H(n, n);
    H.setFromTriplets(trip.begin(), trip.end());
    return H;
  }

  void init_cn() {
    const Eigen::Index n = grid.size();
    Sparse I(n, n);
    I.setIdentity();
    const Complex factor(0, dt / (2 * config.hbar));
    for (int sign : {+1, -1}) {
      const Sparse H = hamiltonian(sign);
      Sparse lhs = I + factor * H;
      Sparse rhs = I - factor * H;
      lhs.makeCompressed();
      auto& lu = sign > 0 ? lu_plus : lu_minus;
      lu.analyzePattern(lhs);
      lu.factorize(lhs);
      if (lu.info() != Eigen::Success) throw std::runtime_error("PauliPropagator: Crank-Nicolson factorization failed");
      (sign > 0 ? rhs_plus : rhs_minus) = rhs;
    }
  }

  void step(SpinorField<Scalar>& f) {
    if (scheme == Scheme::SplitStep) {
      f.plus *= half_plus;
      f.minus *= half_minus;
      f.plus = fft->inverse(fft->forward(f.plus) * kinetic);
      f.minus = fft->inverse(fft->forward(f.minus) * kinetic);
      f.plus *= half_plus;
      f.minus *= half_minus;
    } else {
      Eigen::Matrix<Complex, Eigen::Dynamic, 1> bp = rhs_plus * f.plus.matrix();
      Eigen::Matrix<Complex, Eigen::Dynamic, 1> bm = rhs_minus * f.minus.matrix();
      f.plus = lu_plus.solve(bp).array();
      f.minus = lu_minus.solve(bm).array();
    }
  }
};

template <typename Scalar>
PauliPropagator<Scalar>::PauliPropagator(const SpatialGrid<Scalar>& grid, FieldConfig<Scalar> config, Scalar dt,
                                         Scheme scheme)
    : impl_(std::make_unique<Impl>(grid, std::move(config), dt, scheme)) {}

template <typename Scalar>
PauliPropagator<Scalar>::~PauliPropagator() = default;
template <typename Scalar>
PauliPropagator<Scalar>::PauliPropagator(PauliPropagator&&) noexcept = default;
template <typename Scalar>
PauliPropagator<Scalar>& PauliPropagator<Scalar>::operator=(PauliPropagator&&) noexcept = default;

template <typename Scalar>
void PauliPropagator<Scalar>::step(SpinorField<Scalar>& field) {
  if (!(field.grid == impl_->grid)) throw std::invalid_argument("PauliPropagator: field grid mismatch");
  impl_->step(field);
}

template <typename Scalar>
Scalar PauliPropagator<Scalar>::dt() const noexcept { return impl_->dt; }

template <typename Scalar>
Scheme PauliPropagator<Scalar>::scheme() const noexcept { return impl_->scheme; }

template <typename Scalar>
SpinorField<Scalar> evolve(SpinorField<Scalar> field, const FieldConfig<Scalar>& config, Scalar dt,
                           std::int64_t steps, Scheme scheme, const StepObserver<Scalar>& observer) {
  if (steps < 0) throw std::invalid_argument("evolve: steps must be non-negative");
  if (std::abs(norm(field) - 1) > Scalar(1e-8)) throw std::invalid_argument("evolve: field is not normalized");
  PauliPropagator<Scalar> prop(field.grid, config, dt, scheme);
  for (std::int64_t n = 1; n <= steps; ++n) {
    prop.step(field);
    if (!all_finite<Scalar>(field.plus) || !all_finite<Scalar>(field.minus))
      throw NumericalBreakdown("evolve: non-finite amplitude", n);
    if (observer) observer(n, field);
  }
  return field;
}

namespace {

template <typename Scalar>
typename SpinorField<Scalar>::Array unwrap_phase(const SpatialGrid<Scalar>& grid,
                                                 const typename SpinorField<Scalar>::CArray& psi) {
  const Eigen::Index n = grid.nodes();
  typename SpinorField<Scalar>::Array s(psi.size());
  const auto raw = [&](Eigen::Index k) { return std::arg(psi(k)); };
  const Eigen::Index rows = grid.dimension() == 1 ? 1 : n;
  // Anchor column (ix = 0) unwrapped along y.
  s(grid.flat(0, 0)) = raw(grid.flat(0, 0));
  for (Eigen::Index r = 1; r < rows; ++r) {
    const Eigen::Index k = grid.flat(0, r), km = grid.flat(0, r - 1);
    s(k) = s(km) + wrap_angle(raw(k) - raw(km));
  }
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index i = 1; i < n; ++i) {
      const Eigen::Index k = grid.flat(i, r), km = grid.flat(i - 1, r);
      s(k) = s(km) + wrap_angle(raw(k) - raw(km));
    }
  return s;
}

}  // namespace

template <typename Scalar>
MadelungDecomposition<Scalar> madelung(const SpinorField<Scalar>& field, Scalar hbar) {
  MadelungDecomposition<Scalar> d;
  d.rho_plus = field.plus.abs2();
  d.rho_minus = field.minus.abs2();
  d.S_plus = hbar * unwrap_phase(field.grid, field.plus);
  d.S_minus = hbar * unwrap_phase(field.grid, field.minus);
  d.mask_plus = d.rho_plus > Scalar(kDensityThreshold);
  d.mask_minus = d.rho_minus > Scalar(kDensityThreshold);
  return d;
}

template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> phase_gradient(const SpatialGrid<Scalar>& grid,
                                                       const typename SpinorField<Scalar>::CArray& psi, int axis,
                                                       Scalar hbar) {
  if (axis < 0 || axis >= grid.dimension()) throw std::invalid_argument("phase_gradient: bad axis");
  Eigen::Array<Scalar, Eigen::Dynamic, 1> g(psi.size());
  const Scalar h = grid.spacing();
  for (Eigen::Index k = 0; k < psi.size(); ++k) {
    const Eigen::Index ix = grid.ix(k), iy = grid.iy(k);
    const Eigen::Index f = axis == 0 ? grid.flat(ix + 1, iy) : grid.flat(ix, iy + 1);
    const Eigen::Index b = axis == 0 ? grid.flat(ix - 1, iy) : grid.flat(ix, iy - 1);
    g(k) = hbar * (wrap_angle(std::arg(psi(f)) - std::arg(psi(k))) + wrap_angle(std::arg(psi(k)) - std::arg(psi(b)))) /
           (2 * h);
  }
  return g;
}

namespace {

template <typename Scalar>
void check_triplet(const SpinorField<Scalar>& a, const SpinorField<Scalar>& b, const SpinorField<Scalar>& c,
                   Scalar dt) {
  if (!(a.grid == b.grid) || !(b.grid == c.grid)) throw std::invalid_argument("residual: snapshot grids differ");
  if (!(dt > 0)) throw std::invalid_argument("residual: dt must be positive");
}

// Nodes where the + density is above threshold at k, its neighbours, and in
// the outer snapshots.
template <typename Scalar>
Eigen::Array<bool, Eigen::Dynamic, 1> residual_mask(const SpinorField<Scalar>& prev, const SpinorField<Scalar>& cur,
                                                    const SpinorField<Scalar>& next) {
  const auto& grid = cur.grid;
  const Scalar thr = Scalar(kDensityThreshold);
  Eigen::Array<bool, Eigen::Dynamic, 1> mask(cur.plus.size());
  for (Eigen::Index k = 0; k < mask.size(); ++k) {
    bool ok = std::norm(prev.plus(k)) > thr && std::norm(next.plus(k)) > thr && std::norm(cur.plus(k)) > thr;
    const Eigen::Index ix = grid.ix(k), iy = grid.iy(k);
    for (int axis = 0; ok && axis < grid.dimension(); ++axis)
      for (int s : {-1, 1}) {
        const Eigen::Index j = axis == 0 ? grid.flat(ix + s, iy) : grid.flat(ix, iy + s);
        ok = ok && std::norm(cur.plus(j)) > thr;
      }
    mask(k) = ok;
  }
  return mask;
}

template <typename Scalar>
Scalar masked_rms(const Eigen::Array<Scalar, Eigen::Dynamic, 1>& r, const Eigen::Array<bool, Eigen::Dynamic, 1>& mask) {
  Scalar acc = 0;
  Eigen::Index count = 0;
  for (Eigen::Index k = 0; k < r.size(); ++k)
    if (mask(k)) {
      acc += r(k) * r(k);
      ++count;
    }
  return count ? std::sqrt(acc / Scalar(count)) : Scalar(0);
}

}  // namespace

template <typename Scalar>
Scalar continuity_residual(const SpinorField<Scalar>& previous, const SpinorField<Scalar>& current,
                           const SpinorField<Scalar>& next, const FieldConfig<Scalar>& config, Scalar dt) {
  check_triplet(previous, current, next, dt);
  config.validate(current.grid);
  const auto& grid = current.grid;
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  const Array rho = current.plus.abs2();
  Array r = (next.plus.abs2() - previous.plus.abs2()) / (2 * dt);
  const Scalar h = grid.spacing();
  for (int axis = 0; axis < grid.dimension(); ++axis) {
    Array a = Array::Zero(grid.size());
    const Array& field_a = axis == 0 ? config.A_x : config.A_y;
    if (field_a.size()) a = field_a;
    const Array flux = rho * (phase_gradient(grid, current.plus, axis, config.hbar) + config.charge * a) / config.mass;
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
      const Eigen::Index ix = grid.ix(k), iy = grid.iy(k);
      const Eigen::Index f = axis == 0 ? grid.flat(ix + 1, iy) : grid.flat(ix, iy + 1);
      const Eigen::Index b = axis == 0 ? grid.flat(ix - 1, iy) : grid.flat(ix, iy - 1);
      r(k) += (flux(f) - flux(b)) / (2 * h);
    }
  }
  return masked_rms(r, residual_mask(previous, current, next));
}

template <typename Scalar>
Scalar hj_residual(const SpinorField<Scalar>& previous, const SpinorField<Scalar>& current,
                   const SpinorField<Scalar>& next, const FieldConfig<Scalar>& config, Scalar dt) {
  check_triplet(previous, current, next, dt);
  config.validate(current.grid);
  const auto& grid = current.grid;
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  const Scalar hbar = config.hbar;
  const Scalar h = grid.spacing();

  Array r(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k)
    r(k) = hbar * std::arg(next.plus(k) * std::conj(previous.plus(k))) / (2 * dt);

  const Array root = current.plus.abs();
  Array lap = Array::Zero(grid.size());
  for (int axis = 0; axis < grid.dimension(); ++axis) {
    Array a = Array::Zero(grid.size());
    const Array& field_a = axis == 0 ? config.A_x : config.A_y;
    if (field_a.size()) a = field_a;
    const Array p = phase_gradient(grid, current.plus, axis, hbar) + config.charge * a;
    r += p.square() / (2 * config.mass);
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
      const Eigen::Index ix = grid.ix(k), iy = grid.iy(k);
      const Eigen::Index f = axis == 0 ? grid.flat(ix + 1, iy) : grid.flat(ix, iy + 1);
      const Eigen::Index b = axis == 0 ? grid.flat(ix - 1, iy) : grid.flat(ix, iy - 1);
      lap(k) += (root(f) - 2 * root(k) + root(b)) / (h * h);
    }
  }
  r += config.potential(grid, +1);
  const auto mask = residual_mask(previous, current, next);
  for (Eigen::Index k = 0; k < grid.size(); ++k)
    if (mask(k)) r(k) -= hbar * hbar / (2 * config.mass) * lap(k) / root(k);
  return masked_rms(r, mask);
}

template <typename Scalar>
SpinorField<Scalar> gaussian_packet(const SpatialGrid<Scalar>& grid, Scalar width, Scalar x0, Scalar k0,
                                    Scalar weight_plus, Scalar y0, Scalar ky0) {
  if (!(width > 0)) throw std::invalid_argument("gaussian_packet: width must be positive");
  if (!(weight_plus >= 0 && weight_plus <= 1)) throw std::invalid_argument("gaussian_packet: weight_plus in [0, 1]");
  using Complex = std::complex<Scalar>;
  typename SpinorField<Scalar>::CArray base(grid.size());
  const auto x = grid.x();
  const auto y = grid.y();
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    Scalar arg = -(x(k) - x0) * (x(k) - x0) / (4 * width * width);
    Scalar phase = k0 * x(k);
    if (grid.dimension() == 2) {
      arg -= (y(k) - y0) * (y(k) - y0) / (4 * width * width);
      phase += ky0 * y(k);
    }
    base(k) = std::exp(arg) * Complex(std::cos(phase), std::sin(phase));
  }
  SpinorField<Scalar> f(grid, base * std::sqrt(weight_plus), base * std::sqrt(1 - weight_plus));
  return f.normalized();
}

template <typename Scalar>
Scalar mean_position(const SpinorField<Scalar>& field, int axis) {
  const auto coord = axis == 0 ? field.grid.x() : field.grid.y();
  const auto rho = (field.plus.abs2() + field.minus.abs2()).eval();
  return field.grid.integrate(coord * rho) / field.grid.integrate(rho);
}

template <typename Scalar>
Scalar position_variance(const SpinorField<Scalar>& field) {
  const auto x = field.grid.x();
  const auto rho = (field.plus.abs2() + field.minus.abs2()).eval();
  const Scalar n = field.grid.integrate(rho);
  const Scalar mu = field.grid.integrate(x * rho) / n;
  return field.grid.integrate((x - mu).square() * rho) / n;
}

template <typename Scalar>
Scalar relative_phase(const SpinorField<Scalar>& field) {
  return std::arg((field.plus.conjugate() * field.minus).sum());
}

template <typename Scalar>
void write_snapshot_csv(const SpinorField<Scalar>& field, std::ostream& out, Eigen::Index stride, Scalar hbar) {
  if (stride < 1) throw std::invalid_argument("write_snapshot_csv: stride must be >= 1");
  const auto d = madelung(field, hbar);
  const auto& grid = field.grid;
  if (grid.dimension() == 1) {
    CsvWriter csv(out, {"x", "rho_plus", "rho_minus", "S_plus", "S_minus"});
    for (Eigen::Index k = 0; k < grid.size(); k += stride)
      csv.row(double(grid.coordinate(k)), double(d.rho_plus(k)), double(d.rho_minus(k)), double(d.S_plus(k)),
              double(d.S_minus(k)));
  } else {
    CsvWriter csv(out, {"x", "y", "rho_plus", "rho_minus", "S_plus", "S_minus"});
    for (Eigen::Index iy = 0; iy < grid.nodes(); iy += stride)
      for (Eigen::Index ix = 0; ix < grid.nodes(); ix += stride) {
        const Eigen::Index k = grid.flat(ix, iy);
        csv.row(double(grid.coordinate(ix)), double(grid.coordinate(iy)), double(d.rho_plus(k)),
                double(d.rho_minus(k)), double(d.S_plus(k)), double(d.S_minus(k)));
      }
  }
}

#define SPINLAB_INSTANTIATE_PAULI(S)                                                                             \
  template struct SpinorField<S>;                                                                                \
  template struct FieldConfig<S>;                                                                                \
  template class PauliPropagator<S>;                                                                             \
  template S norm(const SpinorField<S>&);                                                                        \
  template std::pair<S, S> spin_populations(const SpinorField<S>&);                                              \
  template S zeeman_energy(const SpinorField<S>&, const FieldConfig<S>&);                                        \
  template S energy(const SpinorField<S>&, const FieldConfig<S>&);                                               \
  template SpinorField<S> evolve(SpinorField<S>, const FieldConfig<S>&, S, std::int64_t, Scheme,                 \
                                 const StepObserver<S>&);                                                        \
  template MadelungDecomposition<S> madelung(const SpinorField<S>&, S);                                          \
  template Eigen::Array<S, Eigen::Dynamic, 1> phase_gradient(const SpatialGrid<S>&,                              \
                                                             const typename SpinorField<S>::CArray&, int, S);    \
  template S continuity_residual(const SpinorField<S>&, const SpinorField<S>&, const SpinorField<S>&,            \
                                 const FieldConfig<S>&, S);                                                      \
  template S hj_residual(const SpinorField<S>&, const SpinorField<S>&, const SpinorField<S>&,                    \
                         const FieldConfig<S>&, S);                                                              \
  template SpinorField<S> gaussian_packet(const SpatialGrid<S>&, S, S, S, S, S, S);                              \
  template S mean_position(const SpinorField<S>&, int);                                                          \
  template S position_variance(const SpinorField<S>&);                                                           \
  template S relative_phase(const SpinorField<S>&);                                                              \
  template void write_snapshot_csv(const SpinorField<S>&, std::ostream&, Eigen::Index, S);

SPINLAB_INSTANTIATE_PAULI(double)
SPINLAB_INSTANTIATE_PAULI(long double)

}  // namespace spinlab
