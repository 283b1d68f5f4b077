#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "landau/grid.hpp"

namespace landau {

struct CurrentOptions {
  // Keep the −(q²/mc)A|Ψ|² term; switching it off leaves the bare probability
  // current times q.
  bool vector_potential = true;
  bool check_resolution = true;
};

// Electric current density J = (q/m)Re(Ψ*(p̂ − qA/c)Ψ) sampled on a grid.
struct CurrentField {
  GridSpec grid;
  double time = 0.0;
  std::vector<double> j_x;
  std::vector<double> j_y;

  // Columns: x,y,jx,jy.
  void write_csv(std::ostream& out) const;
};

CurrentField current_density(const SampledState& state, const CurrentOptions& opts = {});
CurrentField current_density(const PhysicalParams& params, const AnalyticState& state,
                             const GridSpec& grid, double t, const CurrentOptions& opts = {});

// Closed-form current of the ground state ζ̄₀(x − δx, y, t − δt).
CurrentField ground_current_closed_form(const PhysicalParams& params, double delta_x, double delta_t,
                                        const GridSpec& grid, double t);

struct CurrentComparison {
  double max_relative_x = 0.0;
  double max_relative_y = 0.0;
  std::size_t masked_points = 0;
};

// Pointwise comparison on the support |Ψ|² > mask·max|Ψ|². Each difference is
// divided by max(|J_ref|, q·ω_c·ℓ·|Ψ|²) so the zero line of J_y stays meaningful.
CurrentComparison compare_currents(const CurrentField& numeric, const CurrentField& reference,
                                   const SampledState& state, double mask = 1e-8);

double von_klitzing(const PhysicalParams& params);

// ⟨ρ_H⟩ = (ħ/q²)(mω_c/ħ)δxδy.
double hall_resistivity_expectation(const PhysicalParams& params, double delta_x, double delta_y);

// The same value as the |Ψ|²-weighted integral of ρ_H = (m ω_c/q²)/|Ψ|² over the
// cell [c_x ± δx/2] × [c_y ± δy/2] with a midpoint rule of n×n points.
double hall_resistivity_quadrature(const PhysicalParams& params, double delta_x, double delta_y,
                                   double delta_t, double center_x, double center_y, double t,
                                   int points = 64);

struct InvarianceConditions {
  double l_real = 0.0;
  double k_real = 0.0;
  bool is_invariant = false;
};

InvarianceConditions invariance_conditions(const PhysicalParams& params, double delta_x,
                                           double delta_y, double delta_t, double tolerance = 1e-9);

// ρ_L = (ℰ/(qω_c))(Δx − v_dΔt)⁻¹/|Ψ|². Throws SingularityError at the pole.
double longitudinal_resistivity(const PhysicalParams& params, double delta_x_rel, double delta_t_rel,
                                double psi_sq);

struct LongitudinalSample {
  double delta_t = 0.0;
  double rho = 0.0;
};

struct ResistivityReport {
  double delta_x = 0.0;
  double delta_y = 0.0;
  double delta_t = 0.0;
  double rho_hall_expect = 0.0;
  double rho_hall_quadrature = 0.0;
  double quantum_ratio = 0.0;
  double quadrature_ratio = 0.0;
  double l_real = 0.0;
  double k_real = 0.0;
  bool is_invariant = false;
  std::optional<long> l;
  std::optional<long> k;
  double phase_re = 0.0;
  double phase_im = 0.0;
  double phase_defect = 0.0;
  std::vector<LongitudinalSample> rho_long;
  bool vanishing_flag = false;

  std::string to_json() const;
};

struct ScanOptions {
  GridSpec grid;                 // twisted, periodic y with period δy is chosen per cell
  double invariance_tolerance = 1e-9;
  double rho_long_x = 1.0;       // Δx at which ρ_L(Δt) is sampled
  int rho_long_samples = 16;
  int quadrature_points = 64;
};

// Builds one report for an explicit cell.
ResistivityReport resistivity_report(const PhysicalParams& params, double delta_x, double delta_y,
                                     double delta_t, const ScanOptions& opts = {});

// δx = δy = sqrt(2πlħ/mω_c) and δt = 2πkħ/(qℰδy) (δt = 0 when ℰ = 0).
struct CellChoice {
  double delta_x = 0.0;
  double delta_y = 0.0;
  double delta_t = 0.0;
};
CellChoice quantized_cell(const PhysicalParams& params, double l, long k);

std::vector<ResistivityReport> quantization_scan(const PhysicalParams& params,
                                                 const std::vector<double>& l_values, long k,
                                                 const ScanOptions& opts = {});

// Columns: l,delta_x,delta_y,delta_t,rho_over_klitzing,quadrature_ratio,phase_defect,is_invariant.
void write_scan_csv(std::ostream& out, const std::vector<double>& l_values,
                    const std::vector<ResistivityReport>& reports);

}  // namespace landau
