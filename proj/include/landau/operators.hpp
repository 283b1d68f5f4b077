#pragma once

#include <optional>

#include "landau/grid.hpp"

namespace landau {

struct OperatorOptions {
  // Spectral/finite-difference bandwidth check before differentiating.
  bool check_resolution = true;
};

// Throws ResolutionError when the data the derivatives act on is not resolved:
// more than 1e-6 of the spectral power above 0.8·k_Nyquist on a periodic axis,
// or ‖Δ²u‖/‖u‖ > 1 (kh ≳ 1) on a finite-difference axis.
void check_resolution(const SampledState& state);

// ∂ψ/∂x or ∂ψ/∂y. Spectral on periodic axes, 4th-order central differences
// (one-sided at the two edge points) otherwise; frame-aware.
SampledState derivative(const SampledState& state, Axis axis, const OperatorOptions& opts = {});

// Mechanical x-momentum p̂ₓ + mω_c y.
SampledState apply_mechanical_x(const SampledState& state, const OperatorOptions& opts = {});
// Canonical momenta p̂ = −iħ∂.
SampledState apply_momentum(const SampledState& state, Axis axis, const OperatorOptions& opts = {});
// Conserved momenta π̂′ₓ = p̂ₓ and π̂′_y = p̂_y + mω_c x − qℰt (t = state.time).
SampledState apply_pi_x(const SampledState& state, const OperatorOptions& opts = {});
SampledState apply_pi_y(const SampledState& state, const OperatorOptions& opts = {});
// Ĥ = ((p̂ₓ + mω_c y)² + p̂_y²)/2m − qℰy.
SampledState apply_hamiltonian(const SampledState& state, const OperatorOptions& opts = {});

// Re⟨ψ|Â|ψ⟩/⟨ψ|ψ⟩ given ψ and Âψ.
double expectation(const SampledState& state, const SampledState& applied);

// Pure translation ψ(x − a) or ψ(y − a), frame-aware. Periodic axes shift
// spectrally; finite-difference axes need an integer number of grid steps and
// zero-fill the vacated samples. Throws ShiftError otherwise.
SampledState translate(const SampledState& state, Axis axis, double amount);

// Û_x = exp(−iδx π̂′ₓ/ħ) (axis X) or Û_y = exp(−iδy π̂′_y/ħ) (axis Y). Û_y is the
// y-translation times exp(−iδy(mω_c x − qℰt)/ħ); the summands of π̂′_y commute.
SampledState unitary_shift(const SampledState& state, Axis axis, double amount);

struct PhaseExtraction {
  cplx phase{1.0, 0.0};  // ⟨a,b⟩/|⟨a,b⟩|
  double defect = 0.0;   // ‖b − phase·a‖/‖a‖
};

// Throws NoPhaseError when a and b are (numerically) orthogonal or zero.
PhaseExtraction extract_global_phase(const SampledState& a, const SampledState& b);

// ‖b − c·a‖/‖b‖ with the least-squares c = ⟨a,b⟩/⟨a,a⟩.
double proportionality_defect(const SampledState& a, const SampledState& b);

// Linear map on a SampledState, described by value.
struct GridOperator {
  enum class Kind { Hamiltonian, PiX, PiY, EnergyOp, ShiftX, ShiftY, TimeShift, Multiply, Derivative };

  Kind kind = Kind::Hamiltonian;
  PhysicalParams params;
  double amount = 0.0;                 // ShiftX / ShiftY
  Axis axis = Axis::X;                 // Derivative
  std::function<cplx(double, double, double)> multiplier;  // Multiply

  // EnergyOp and TimeShift need the trajectory, not a snapshot: they are
  // applied through Wavefunction (see wavefunction.hpp) and throw here.
  SampledState apply(const SampledState& state, const OperatorOptions& opts = {}) const;
};

}  // namespace landau
