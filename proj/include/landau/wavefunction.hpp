#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "landau/grid.hpp"
#include "landau/operators.hpp"

namespace landau {

// Central-difference settings for time derivatives. `step` is the spacing used
// for a first derivative; higher orders widen it as ε^{1/(d+p)} to balance
// truncation against roundoff.
struct TimeStencil {
  double step = 0.0;
  int accuracy = 4;

  // step = 1e-4 of a cyclotron period.
  static TimeStencil for_params(const PhysicalParams& params, int accuracy = 4);
  double step_for_order(int derivative_order) const;
};

// Fornberg weights of the symmetric stencil −r..r (unit spacing) for the given
// derivative order and even accuracy order.
std::vector<double> central_weights(int derivative_order, int accuracy);

// A wavefunction known along its trajectory: it can be sampled on any grid at
// any time, which is what Ê = iħ∂_t needs.
class Wavefunction {
 public:
  explicit Wavefunction(PhysicalParams params) : params_(params) {}
  virtual ~Wavefunction() = default;

  const PhysicalParams& params() const { return params_; }

  virtual SampledState sample(const GridSpec& grid, double t) const = 0;
  // Êψ; central differences of sample() unless a subclass knows better.
  virtual SampledState apply_energy(const GridSpec& grid, double t, const TimeStencil& stencil) const;

 private:
  PhysicalParams params_;
};

using WavefunctionPtr = std::shared_ptr<const Wavefunction>;

// ∂ᵈψ/∂tᵈ by one central stencil.
SampledState time_derivative(const Wavefunction& wf, const GridSpec& grid, double t, int order,
                             const TimeStencil& stencil);

WavefunctionPtr make_analytic(const PhysicalParams& params, const AnalyticState& state);
WavefunctionPtr make_field(const PhysicalParams& params, PointField field);

// Û_x, Û_y, Û_t applied to a wavefunction. Exact: they resample the source on
// a translated grid (and multiply by the Û_y phase) instead of interpolating.
WavefunctionPtr apply_ux(WavefunctionPtr wf, double delta_x);
WavefunctionPtr apply_uy(WavefunctionPtr wf, double delta_y);
WavefunctionPtr apply_ut(WavefunctionPtr wf, double delta_t);

// (Ĥ − Ê)ψ as a wavefunction of its own.
WavefunctionPtr make_residual(WavefunctionPtr wf, TimeStencil stencil);

// Ê^{j'} π̂^j applied to ζ_n (π̂ = π̂′_y) or ζ̄_n (π̂ = π̂′ₓ).
WavefunctionPtr make_generator(const PhysicalParams& params, const AnalyticState& base, int j,
                               int j_prime, TimeStencil stencil);

WavefunctionPtr make_superposition(const PhysicalParams& params,
                                   std::vector<std::pair<cplx, WavefunctionPtr>> terms);

}  // namespace landau
