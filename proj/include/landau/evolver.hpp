#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "landau/grid.hpp"

namespace landau {

enum class Scheme { SplitStep2, CrankNicolson };

const char* to_string(Scheme scheme);

struct EvolverConfig {
  double dt = 0.0;
  int n_steps = 0;
  Scheme scheme = Scheme::SplitStep2;
  GridSpec grid;
  // Record a trajectory row every this many steps (the first and last step are
  // always recorded).
  int record_every = 1;
  // Drop the ω_c terms (free particle). Landau frame only.
  bool magnetic = true;
  // Abort when more than boundary_tolerance of the probability lies within
  // boundary_margin magnetic lengths of the non-translation-invariant edges.
  double boundary_margin = 4.0;
  double boundary_tolerance = 1e-10;
  // dt ≤ max_step_fraction·(2π/ω_c).
  double max_step_fraction = 0.01;
  double cn_tolerance = 1e-12;
  int cn_max_iterations = 500;

  void validate(const PhysicalParams& params) const;
};

// Expectation values along an evolution. pix/piy are the conserved momenta
// π̂′ₓ and π̂′_y; norm is the window norm ‖ψ‖; energy is ⟨Ĥ⟩.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> mean_x;
  std::vector<double> mean_y;
  std::vector<double> mean_pix;
  std::vector<double> mean_piy;
  std::vector<double> norm;
  std::vector<double> energy;

  std::size_t size() const { return times.size(); }
  // Columns: t,mean_x,mean_y,pix,piy,norm,energy.
  void write_csv(std::ostream& out) const;
};

struct EvolutionResult {
  SampledState final_state;
  Trajectory trajectory;
};

// Second-order operator splitting (or Crank–Nicolson) under
// Ĥ = ((p̂ₓ + mω_c y)² + p̂_y²)/2m − qℰy, started from `initial`.
//
// Landau-frame grids split Ĥ as K_y/2 · (K_x + V) · K_y/2, where
// K_x + V = (p̂ₓ + mω_c y)²/2m − qℰy is diagonal in (k_x, y) and K_y = p̂_y²/2m in
// k_y. Twisted-frame grids evolve χ = G⁻¹ψ under
// p̂ₓ²/2m + (p̂_y − mω_c(x − x₀) + qℰ(t − t₀))²/2m, diagonal in k_x and (x, k_y).
EvolutionResult evolve(const SampledState& initial, const EvolverConfig& config);

struct LorentzReport {
  double max_defect_x = 0.0;         // max |d²⟨x⟩/dt² − ω_c d⟨y⟩/dt|
  double max_defect_y = 0.0;         // max |d²⟨y⟩/dt² + ω_c d⟨x⟩/dt − qℰ/m|
  double acceleration_scale = 0.0;   // normalisation of the relative defect
  double max_relative_defect = 0.0;
  double pix_drift = 0.0;            // max |⟨π̂′ₓ⟩(t) − ⟨π̂′ₓ⟩(0)|
  double piy_drift = 0.0;
  double mean_drift_velocity = 0.0;  // (⟨x⟩(T) − ⟨x⟩(0))/T
  Trajectory trajectory;
};

// Evolves with a trajectory row per step and checks the Newton–Lorentz
// equations on ⟨x⟩(t), ⟨y⟩(t) by second differences.
LorentzReport ehrenfest_lorentz_check(const SampledState& initial, EvolverConfig config);

}  // namespace landau
