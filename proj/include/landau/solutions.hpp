#pragma once

#include <vector>

#include "landau/wavefunction.hpp"

namespace landau {

// Êψ = iħ(ψ(t+h) − ψ(t−h))/(2h) from the analytic family (accuracy 2), or a
// wider central stencil when accuracy > 2.
SampledState apply_energy_op(const PhysicalParams& params, const AnalyticState& state,
                             const GridSpec& grid, double t, double dt_fd, int accuracy = 2);

// ‖Ĥψ − Êψ‖/‖ψ‖ on the grid window.
double schrodinger_residual(const Wavefunction& wf, const GridSpec& grid, double t,
                            const TimeStencil& stencil);
double schrodinger_residual(const PhysicalParams& params, const AnalyticState& state,
                            const GridSpec& grid, double t);

// Ê^{j'} π̂^j applied to ζ_n (π̂ = π̂′_y) or ζ̄_n (π̂ = π̂′ₓ), sampled on the grid.
SampledState generator_apply(const PhysicalParams& params, const AnalyticState& family, int j,
                             int j_prime, const GridSpec& grid, double t);

// One coefficient of the general solution: c_{n,j,j′} (bar = false, built on
// ζ_n) or c̄_{n,j,j′} (bar = true, built on ζ̄_n).
struct SolutionTerm {
  bool bar = true;
  int level = 0;
  int j = 0;
  int j_prime = 0;
  cplx coefficient{1.0, 0.0};
};

WavefunctionPtr make_general_solution(const PhysicalParams& params,
                                      const std::vector<SolutionTerm>& terms,
                                      const TimeStencil& stencil);
SampledState general_solution(const PhysicalParams& params, const std::vector<SolutionTerm>& terms,
                              const GridSpec& grid, double t);

// c̄_{0,j,j′} = (1/j!)(δx/(iħ))^j (1/j′!)(δt/(−iħ))^{j′} for j + j′ ≤ max_order:
// the truncated series of Û_x Û_t acting on ζ̄₀.
std::vector<SolutionTerm> ground_series(const PhysicalParams& params, double delta_x,
                                        double delta_t, int max_order);

}  // namespace landau
