#include "landau/solutions.hpp"

#include <cmath>
#include <stdexcept>

namespace landau {

namespace {

cplx ipow(cplx base, int e) {
  cplx r{1.0, 0.0};
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace

SampledState apply_energy_op(const PhysicalParams& params, const AnalyticState& state,
                             const GridSpec& grid, double t, double dt_fd, int accuracy) {
  if (!(dt_fd > 0.0)) throw std::invalid_argument("dt_fd must be positive");
  return make_analytic(params, state)->apply_energy(grid, t, TimeStencil{dt_fd, accuracy});
}

double schrodinger_residual(const Wavefunction& wf, const GridSpec& grid, double t,
                            const TimeStencil& stencil) {
  const SampledState psi = wf.sample(grid, t);
  SampledState r = apply_hamiltonian(psi);
  r -= wf.apply_energy(grid, t, stencil);
  return window_norm(r) / window_norm(psi);
}

double schrodinger_residual(const PhysicalParams& params, const AnalyticState& state,
                            const GridSpec& grid, double t) {
  return schrodinger_residual(*make_analytic(params, state), grid, t,
                              TimeStencil::for_params(params));
}

SampledState generator_apply(const PhysicalParams& params, const AnalyticState& family, int j,
                             int j_prime, const GridSpec& grid, double t) {
  return make_generator(params, family, j, j_prime, TimeStencil::for_params(params))->sample(grid, t);
}

WavefunctionPtr make_general_solution(const PhysicalParams& params,
                                      const std::vector<SolutionTerm>& terms,
                                      const TimeStencil& stencil) {
  std::vector<std::pair<cplx, WavefunctionPtr>> parts;
  parts.reserve(terms.size());
  for (const SolutionTerm& term : terms) {
    AnalyticState base;
    base.family = term.bar ? Family::ZetaBarY : Family::ZetaX;
    base.level = term.level;
    parts.emplace_back(term.coefficient, make_generator(params, base, term.j, term.j_prime, stencil));
  }
  return make_superposition(params, std::move(parts));
}

SampledState general_solution(const PhysicalParams& params, const std::vector<SolutionTerm>& terms,
                              const GridSpec& grid, double t) {
  return make_general_solution(params, terms, TimeStencil::for_params(params))->sample(grid, t);
}

std::vector<SolutionTerm> ground_series(const PhysicalParams& params, double delta_x,
                                        double delta_t, int max_order) {
  if (max_order < 0 || max_order > 6) throw std::invalid_argument("series order must be in 0..6");
  const cplx ih{0.0, params.hbar};
  std::vector<SolutionTerm> terms;
  double j_fact = 1.0;
  for (int j = 0; j <= max_order; ++j) {
    if (j > 0) j_fact *= j;
    double jp_fact = 1.0;
    for (int jp = 0; j + jp <= max_order; ++jp) {
      if (jp > 0) jp_fact *= jp;
      SolutionTerm term;
      term.bar = true;
      term.level = 0;
      term.j = j;
      term.j_prime = jp;
      term.coefficient = ipow(delta_x / ih, j) / j_fact * ipow(delta_t / (-ih), jp) / jp_fact;
      terms.push_back(term);
    }
  }
  return terms;
}

}  // namespace landau
