#pragma once

#include "spinlab/spectral.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinlab {

/// Non-finite value produced during time stepping.
class NumericalBreakdown : public std::runtime_error {
 public:
  NumericalBreakdown(const std::string& what, std::int64_t step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}
  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

template <typename Scalar = double>
struct SpinorField {
  using Complex = std::complex<Scalar>;
  using CArray = Eigen::Array<Complex, Eigen::Dynamic, 1>;
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  SpatialGrid<Scalar> grid;
  CArray plus;
  CArray minus;

  SpinorField(SpatialGrid<Scalar> g, CArray p, CArray m) : grid(std::move(g)), plus(std::move(p)), minus(std::move(m)) {
    if (plus.size() != grid.size() || minus.size() != grid.size())
      throw std::invalid_argument("SpinorField: component size does not match grid");
  }

  /// Both components scaled so the total norm is one.
  SpinorField normalized() const;
};

/// A along x (and y in 2D), scalar potential phi and B_z. Empty arrays mean zero.
template <typename Scalar = double>
struct FieldConfig {
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  Array A_x;
  Array A_y;
  Array phi;
  Array B_z;
  Scalar charge = 1;
  Scalar mass = 1;
  Scalar hbar = 1;

  void validate(const SpatialGrid<Scalar>& grid) const;
  bool uniform_vector_potential() const;

  /// Diagonal potential energy for the + (sign = +1) or - (sign = -1) component:
  /// -e phi + sign (e hbar / 2m) B_z.
  Array potential(const SpatialGrid<Scalar>& grid, int sign) const;

  Scalar ax_at(Eigen::Index k) const { return A_x.size() ? A_x(k) : Scalar(0); }
  Scalar ay_at(Eigen::Index k) const { return A_y.size() ? A_y(k) : Scalar(0); }
};

enum class Scheme { SplitStep, CrankNicolson };

template <typename Scalar>
Scalar norm(const SpinorField<Scalar>& field);

/// (int |psi+|^2, int |psi-|^2).
template <typename Scalar>
std::pair<Scalar, Scalar> spin_populations(const SpinorField<Scalar>& field);

/// (e hbar / 2m) int B_z (|psi+|^2 - |psi-|^2).
template <typename Scalar>
Scalar zeeman_energy(const SpinorField<Scalar>& field, const FieldConfig<Scalar>& config);

/// <H> with the kinetic part evaluated spectrally. Requires uniform A.
template <typename Scalar>
Scalar energy(const SpinorField<Scalar>& field, const FieldConfig<Scalar>& config);

/// Advances i hbar dPsi/dt = [(1/2m)(-i hbar grad + e A)^2 + (e hbar/2m) sigma_z B_z - e phi] Psi.
///
/// SplitStep is Strang splitting with the kinetic factor applied in Fourier
/// space (needs uniform A). CrankNicolson uses second-order finite
/// differences with Peierls link phases, so A may vary in space.
template <typename Scalar = double>
class PauliPropagator {
 public:
  PauliPropagator(const SpatialGrid<Scalar>& grid, FieldConfig<Scalar> config, Scalar dt,
                  Scheme scheme = Scheme::SplitStep);
  ~PauliPropagator();
  PauliPropagator(PauliPropagator&&) noexcept;
  PauliPropagator& operator=(PauliPropagator&&) noexcept;

  void step(SpinorField<Scalar>& field);
  Scalar dt() const noexcept;
  Scheme scheme() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Called after step `n` (1-based) with the current field.
template <typename Scalar>
using StepObserver = std::function<void(std::int64_t, const SpinorField<Scalar>&)>;

/// Rejects fields whose norm differs from one by more than 1e-8. Throws
/// NumericalBreakdown with the step index if a non-finite value appears.
template <typename Scalar>
SpinorField<Scalar> evolve(SpinorField<Scalar> field, const FieldConfig<Scalar>& config, Scalar dt,
                           std::int64_t steps, Scheme scheme = Scheme::SplitStep,
                           const StepObserver<Scalar>& observer = {});

template <typename Scalar = double>
struct MadelungDecomposition {
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  Array rho_plus, rho_minus;
  Array S_plus, S_minus;  // hbar times the path-unwrapped phase
  Eigen::Array<bool, Eigen::Dynamic, 1> mask_plus, mask_minus;  // rho above threshold
};

inline constexpr double kDensityThreshold = 1e-12;

/// Phases are unwrapped along x in each row, rows anchored by an unwrap of
/// the first column along y. Jumps are folded into (-pi, pi].
template <typename Scalar>
MadelungDecomposition<Scalar> madelung(const SpinorField<Scalar>& field, Scalar hbar = 1);

/// grad S along x (axis 0) or y (axis 1) by centered differences of the phase,
/// each difference folded into (-pi, pi]. Periodic.
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> phase_gradient(const SpatialGrid<Scalar>& grid,
                                                       const typename SpinorField<Scalar>::CArray& psi, int axis,
                                                       Scalar hbar = 1);

/// RMS over unmasked nodes of d rho+/dt + (1/m) div(rho+ (grad S+ + e A)),
/// from three snapshots spaced dt apart (residual at the middle one).
/// Centered second-order differences in time and space.
template <typename Scalar>
Scalar continuity_residual(const SpinorField<Scalar>& previous, const SpinorField<Scalar>& current,
                           const SpinorField<Scalar>& next, const FieldConfig<Scalar>& config, Scalar dt);

/// RMS over unmasked nodes of
/// dS+/dt + (1/2m)|grad S+ + e A|^2 + V+ - (hbar^2/2m) lap(sqrt rho+)/sqrt rho+,
/// V+ = -e phi + (e hbar/2m) B_z, at the middle of three snapshots.
template <typename Scalar>
Scalar hj_residual(const SpinorField<Scalar>& previous, const SpinorField<Scalar>& current,
                   const SpinorField<Scalar>& next, const FieldConfig<Scalar>& config, Scalar dt);

/// Gaussian packet exp(-(r - r0)^2 / 4 s^2 + i k0 . r) in one component, normalized.
template <typename Scalar>
SpinorField<Scalar> gaussian_packet(const SpatialGrid<Scalar>& grid, Scalar width, Scalar x0, Scalar k0,
                                    Scalar weight_plus = 1, Scalar y0 = 0, Scalar ky0 = 0);

/// Expectation of x (axis 0) or y (axis 1) over both components.
template <typename Scalar>
Scalar mean_position(const SpinorField<Scalar>& field, int axis = 0);

/// Position variance along x over both components.
template <typename Scalar>
Scalar position_variance(const SpinorField<Scalar>& field);

/// arg of int conj(psi+) psi-.
template <typename Scalar>
Scalar relative_phase(const SpinorField<Scalar>& field);

/// Columns: x[,y],rho_plus,rho_minus,S_plus,S_minus; every `stride`-th node.
template <typename Scalar>
void write_snapshot_csv(const SpinorField<Scalar>& field, std::ostream& out, Eigen::Index stride = 1, Scalar hbar = 1);

}  // namespace spinlab
