#pragma once

#include "spinlab/units.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <complex>
#include <stdexcept>
#include <vector>

namespace spinlab {

/// Periodic grid with the same node count on each axis. Nodes sit at
/// x_j = -extent/2 + j * spacing; the flat index of (ix, iy) is iy * n + ix.
template <typename Scalar = double>
class SpatialGrid {
 public:
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  SpatialGrid(int dimension, Eigen::Index nodes, Scalar extent) : dim_(dimension), n_(nodes), extent_(extent) {
    if (dim_ != 1 && dim_ != 2) throw std::invalid_argument("SpatialGrid: dimension must be 1 or 2");
    if (n_ < 16 || (n_ & (n_ - 1)) != 0)
      throw std::invalid_argument("SpatialGrid: nodes per axis must be a power of two >= 16");
    if (!(extent_ > 0)) throw std::invalid_argument("SpatialGrid: extent must be positive");
  }

  int dimension() const noexcept { return dim_; }
  Eigen::Index nodes() const noexcept { return n_; }
  Scalar extent() const noexcept { return extent_; }
  Scalar spacing() const noexcept { return extent_ / Scalar(n_); }
  Eigen::Index size() const noexcept { return dim_ == 1 ? n_ : n_ * n_; }
  Scalar cell_volume() const noexcept { return dim_ == 1 ? spacing() : spacing() * spacing(); }

  Scalar coordinate(Eigen::Index i) const noexcept { return -extent_ / 2 + Scalar(i) * spacing(); }
  Eigen::Index ix(Eigen::Index flat) const noexcept { return flat % n_; }
  Eigen::Index iy(Eigen::Index flat) const noexcept { return dim_ == 1 ? 0 : flat / n_; }
  Eigen::Index flat(Eigen::Index ix, Eigen::Index iy = 0) const noexcept {
    ix = (ix % n_ + n_) % n_;
    iy = (iy % n_ + n_) % n_;
    return dim_ == 1 ? ix : iy * n_ + ix;
  }

  /// Coordinate arrays over all flat nodes.
  Array x() const {
    Array out(size());
    for (Eigen::Index k = 0; k < size(); ++k) out(k) = coordinate(ix(k));
    return out;
  }
  Array y() const {
    Array out(size());
    for (Eigen::Index k = 0; k < size(); ++k) out(k) = dim_ == 1 ? Scalar(0) : coordinate(iy(k));
    return out;
  }

  /// Angular wavenumber of FFT bin i along one axis.
  Scalar wavenumber(Eigen::Index i) const noexcept {
    const Eigen::Index s = i <= n_ / 2 ? i : i - n_;
    return Scalar(2 * kPi) * Scalar(s) / extent_;
  }
  Array kx() const {
    Array out(size());
    for (Eigen::Index k = 0; k < size(); ++k) out(k) = wavenumber(ix(k));
    return out;
  }
  Array ky() const {
    Array out(size());
    for (Eigen::Index k = 0; k < size(); ++k) out(k) = dim_ == 1 ? Scalar(0) : wavenumber(iy(k));
    return out;
  }

  template <typename Derived>
  Scalar integrate(const Eigen::ArrayBase<Derived>& f) const {
    return f.sum() * cell_volume();
  }

  bool operator==(const SpatialGrid& o) const noexcept {
    return dim_ == o.dim_ && n_ == o.n_ && extent_ == o.extent_;
  }

 private:
  int dim_;
  Eigen::Index n_;
  Scalar extent_;
};

/// 1D/2D FFT over a SpatialGrid. Inverse includes the 1/N factor.
template <typename Scalar = double>
class GridFFT {
 public:
  using Complex = std::complex<Scalar>;
  using CArray = Eigen::Array<Complex, Eigen::Dynamic, 1>;

  explicit GridFFT(const SpatialGrid<Scalar>& grid) : grid_(grid), in_(grid.nodes()), out_(grid.nodes()) {}

  CArray forward(const CArray& f) { return transform(f, true); }
  CArray inverse(const CArray& f) { return transform(f, false); }

 private:
  CArray transform(const CArray& f, bool fwd) {
    const Eigen::Index n = grid_.nodes();
    CArray g = f;
    // x direction: contiguous rows.
    const Eigen::Index rows = grid_.dimension() == 1 ? 1 : n;
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index i = 0; i < n; ++i) in_[i] = g(r * n + i);
      fwd ? fft_.fwd(out_, in_) : fft_.inv(out_, in_);
      for (Eigen::Index i = 0; i < n; ++i) g(r * n + i) = out_[i];
    }
    if (grid_.dimension() == 2) {
      for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index i = 0; i < n; ++i) in_[i] = g(i * n + c);
        fwd ? fft_.fwd(out_, in_) : fft_.inv(out_, in_);
        for (Eigen::Index i = 0; i < n; ++i) g(i * n + c) = out_[i];
      }
    }
    return g;
  }

  SpatialGrid<Scalar> grid_;
  Eigen::FFT<Scalar> fft_;
  std::vector<Complex> in_;
  std::vector<Complex> out_;
};

/// d f / dx of a real periodic 1D sample set, by FFT. The Nyquist mode is dropped.
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> spectral_derivative(const SpatialGrid<Scalar>& grid,
                                                            const Eigen::Array<Scalar, Eigen::Dynamic, 1>& f) {
  if (grid.dimension() != 1 || f.size() != grid.size())
    throw std::invalid_argument("spectral_derivative: needs a 1D grid and matching samples");
  GridFFT<Scalar> fft(grid);
  typename GridFFT<Scalar>::CArray F = fft.forward(f.template cast<std::complex<Scalar>>());
  for (Eigen::Index i = 0; i < F.size(); ++i)
    F(i) *= i == grid.nodes() / 2 ? std::complex<Scalar>(0) : std::complex<Scalar>(0, grid.wavenumber(i));
  return fft.inverse(F).real();
}

/// Samples of f(x + w) for a real periodic 1D sample set, by phase shift.
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> spectral_shift(const SpatialGrid<Scalar>& grid,
                                                       const Eigen::Array<Scalar, Eigen::Dynamic, 1>& f, Scalar w) {
  if (grid.dimension() != 1 || f.size() != grid.size())
    throw std::invalid_argument("spectral_shift: needs a 1D grid and matching samples");
  GridFFT<Scalar> fft(grid);
  typename GridFFT<Scalar>::CArray F = fft.forward(f.template cast<std::complex<Scalar>>());
  const Eigen::Index half = grid.nodes() / 2;
  for (Eigen::Index i = 0; i < F.size(); ++i) {
    const Scalar phase = grid.wavenumber(i) * w;
    // Split the Nyquist bin symmetrically so the result stays real.
    F(i) *= i == half ? std::complex<Scalar>(std::cos(phase)) : std::polar(Scalar(1), phase);
  }
  return fft.inverse(F).real();
}

}  // namespace spinlab
