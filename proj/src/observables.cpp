#include "landau/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "landau/errors.hpp"
#include "landau/operators.hpp"

namespace landau {

void CurrentField::write_csv(std::ostream& out) const {
  out << "x,y,jx,jy\n";
  out.precision(17);
  for (int i = 0; i < grid.n_x; ++i) {
    for (int j = 0; j < grid.n_y; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * grid.n_y + j;
      out << grid.x(i) << ',' << grid.y(j) << ',' << j_x[k] << ',' << j_y[k] << '\n';
    }
  }
}

CurrentField current_density(const SampledState& state, const CurrentOptions& opts) {
  state.validate();
  if (opts.check_resolution) check_resolution(state);
  const OperatorOptions unchecked{false};
  const SampledState px = opts.vector_potential ? apply_mechanical_x(state, unchecked)
                                                : apply_momentum(state, Axis::X, unchecked);
  const SampledState py = apply_momentum(state, Axis::Y, unchecked);
  const double q_over_m = state.params.charge / state.params.mass;
  CurrentField field;
  field.grid = state.grid;
  field.time = state.time;
  field.j_x.resize(state.amplitudes.size());
  field.j_y.resize(state.amplitudes.size());
  for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
    const cplx c = std::conj(state.amplitudes[k]);
    field.j_x[k] = q_over_m * (c * px.amplitudes[k]).real();
    field.j_y[k] = q_over_m * (c * py.amplitudes[k]).real();
  }
  return field;
}

CurrentField current_density(const PhysicalParams& params, const AnalyticState& state,
                             const GridSpec& grid, double t, const CurrentOptions& opts) {
  return current_density(sample(params, state, grid, t), opts);
}

CurrentField ground_current_closed_form(const PhysicalParams& params, double delta_x, double delta_t,
                                        const GridSpec& grid, double t) {
  params.require_positive_cyclotron();
  const double wc = params.cyclotron_frequency();
  const double q = params.charge;
  const double vd = derive(params).drift_velocity;
  const double dt = t - delta_t;
  CurrentField field;
  field.grid = grid;
  field.time = t;
  field.j_x.resize(grid.size());
  field.j_y.resize(grid.size());
  for (int i = 0; i < grid.n_x; ++i) {
    const double dx = grid.x(i) - delta_x;
    for (int j = 0; j < grid.n_y; ++j) {
      const double density = std::norm(eval_ground(params, delta_x, delta_t, grid.x(i), grid.y(j), t));
      const std::size_t k = static_cast<std::size_t>(i) * grid.n_y + j;
      field.j_x[k] = q * q / (params.mass * wc) * params.field_e * density;
      field.j_y[k] = -q * wc * (dx - vd * dt) * density;
    }
  }
  return field;
}

CurrentComparison compare_currents(const CurrentField& numeric, const CurrentField& reference,
                                   const SampledState& state, double mask) {
  if (!numeric.grid.same_layout(reference.grid) || !numeric.grid.same_layout(state.grid)) {
    throw std::invalid_argument("current fields live on different grids");
  }
  double peak = 0.0;
  for (const cplx& a : state.amplitudes) peak = std::max(peak, std::norm(a));
  const PhysicalParams& p = state.params;
  const double natural = std::abs(p.charge * p.cyclotron_frequency()) * p.magnetic_length();
  CurrentComparison out;
  for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
    const double density = std::norm(state.amplitudes[k]);
    if (density <= mask * peak) continue;
    ++out.masked_points;
    const double floor = natural * density;
    out.max_relative_x = std::max(out.max_relative_x, std::abs(numeric.j_x[k] - reference.j_x[k]) /
                                                          std::max(std::abs(reference.j_x[k]), floor));
    out.max_relative_y = std::max(out.max_relative_y, std::abs(numeric.j_y[k] - reference.j_y[k]) /
                                                          std::max(std::abs(reference.j_y[k]), floor));
  }
  return out;
}

double von_klitzing(const PhysicalParams& params) {
  return 2.0 * std::numbers::pi * params.hbar / (params.charge * params.charge);
}

double hall_resistivity_expectation(const PhysicalParams& params, double delta_x, double delta_y) {
  params.validate();
  const double hb = params.hbar;
  return hb / (params.charge * params.charge) * (params.mass * params.cyclotron_frequency() / hb) *
         delta_x * delta_y;
}

double hall_resistivity_quadrature(const PhysicalParams& params, double delta_x, double delta_y,
                                   double delta_t, double center_x, double center_y, double t,
                                   int points) {
  if (points < 1) throw std::invalid_argument("quadrature needs at least one point per axis");
  params.validate();
  const double hb = params.hbar;
  const double coefficient = hb / (params.charge * params.charge) * (params.mass * params.cyclotron_frequency() / hb);
  const double hx = delta_x / points;
  const double hy = delta_y / points;
  double total = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = center_x - 0.5 * delta_x + (i + 0.5) * hx;
    double row = 0.0;
    for (int j = 0; j < points; ++j) {
      const double y = center_y - 0.5 * delta_y + (j + 0.5) * hy;
      const double density = std::norm(eval_ground(params, delta_x, delta_t, x, y, t));
      if (!(density > 0.0)) {
        throw SingularityError("|Ψ|² vanishes inside the Hall cell; move the cell onto the packet");
      }
      const double rho = coefficient / density;
      row += rho * density;
    }
    total += row;
  }
  return total * hx * hy;
}

InvarianceConditions invariance_conditions(const PhysicalParams& params, double delta_x,
                                           double delta_y, double delta_t, double tolerance) {
  const double two_pi_hbar = 2.0 * std::numbers::pi * params.hbar;
  InvarianceConditions c;
  c.l_real = params.mass * params.cyclotron_frequency() * delta_x * delta_y / two_pi_hbar;
  c.k_real = params.charge * params.field_e * delta_t * delta_y / two_pi_hbar;
  c.is_invariant = std::abs(c.l_real - std::round(c.l_real)) <= tolerance &&
                   std::abs(c.k_real - std::round(c.k_real)) <= tolerance;
  return c;
}

double longitudinal_resistivity(const PhysicalParams& params, double delta_x_rel, double delta_t_rel,
                                double psi_sq) {
  params.require_positive_cyclotron();
  if (!(psi_sq > 0.0)) throw SingularityError("ρ_L needs |Ψ|² > 0");
  const double wc = params.cyclotron_frequency();
  if (params.field_e == 0.0) return 0.0;
  const double gap = delta_x_rel - derive(params).drift_velocity * delta_t_rel;
  if (gap == 0.0) throw SingularityError("ρ_L pole at Δx = v_d·Δt");
  return params.field_e / (params.charge * wc) / gap / psi_sq;
}

CellChoice quantized_cell(const PhysicalParams& params, double l, long k) {
  params.require_positive_cyclotron();
  if (!(l > 0.0)) throw std::invalid_argument("cell index l must be positive");
  CellChoice cell;
  const double two_pi_hbar = 2.0 * std::numbers::pi * params.hbar;
  cell.delta_x = cell.delta_y = std::sqrt(two_pi_hbar * l / (params.mass * params.cyclotron_frequency()));
  const double qe = params.charge * params.field_e;
  cell.delta_t = qe == 0.0 ? 0.0 : two_pi_hbar * static_cast<double>(k) / (qe * cell.delta_y);
  return cell;
}

ResistivityReport resistivity_report(const PhysicalParams& params, double delta_x, double delta_y,
                                     double delta_t, const ScanOptions& opts) {
  params.require_positive_cyclotron();
  if (!(delta_x > 0.0) || !(delta_y > 0.0)) throw std::invalid_argument("cell sides must be positive");
  ResistivityReport r;
  r.delta_x = delta_x;
  r.delta_y = delta_y;
  r.delta_t = delta_t;
  const double klitzing = von_klitzing(params);
  r.rho_hall_expect = hall_resistivity_expectation(params, delta_x, delta_y);
  r.quantum_ratio = r.rho_hall_expect / klitzing;

  // The packet sits at x = δx when t = δt; the cell is centred on it.
  const double t = delta_t;
  r.rho_hall_quadrature =
      hall_resistivity_quadrature(params, delta_x, delta_y, delta_t, delta_x, 0.0, t, opts.quadrature_points);
  r.quadrature_ratio = r.rho_hall_quadrature / klitzing;

  const InvarianceConditions inv = invariance_conditions(params, delta_x, delta_y, delta_t, opts.invariance_tolerance);
  r.l_real = inv.l_real;
  r.k_real = inv.k_real;

  // Grid oracle: twisted frame with the twist origin on the state so χ is
  // y-independent and Û_y is an exact spectral shift.
  GridSpec g = opts.grid;
  const double half = 0.5 * (g.x_max - g.x_min);
  g.frame = GaugeFrame::Twisted;
  g.x_min = delta_x - half;
  g.x_max = delta_x + half;
  g.periodic_x = true;
  g.periodic_y = true;
  g.y_min = 0.0;
  g.y_max = 4.0 * delta_y;
  g.n_y = 16;
  g.twist_origin_x = delta_x;
  g.twist_origin_t = delta_t;
  AnalyticState ground;
  ground.family = Family::Ground;
  ground.offset_x = delta_x;
  ground.offset_t = delta_t;
  const SampledState psi = sample(params, ground, g, t);
  const SampledState shifted = unitary_shift(psi, Axis::Y, delta_y);
  const PhaseExtraction phase = extract_global_phase(psi, shifted);
  r.phase_re = phase.phase.real();
  r.phase_im = phase.phase.imag();
  r.phase_defect = window_norm(shifted - psi) / window_norm(psi);
  r.is_invariant = inv.is_invariant && r.phase_defect < 1e-8;
  if (r.is_invariant) {
    r.l = std::lround(inv.l_real);
    r.k = std::lround(inv.k_real);
  }

  const double psi_peak = std::norm(eval_ground(params, 0.0, 0.0, 0.0, 0.0, 0.0));
  const double vd = derive(params).drift_velocity;
  const double bound = vd == 0.0 ? 1.0 : opts.rho_long_x / vd;
  const int n = std::max(2, opts.rho_long_samples);
  double largest = 0.0;
  for (int s = 0; s < n; ++s) {
    const double dt = 0.9 * bound * s / (n - 1);
    const double rho = longitudinal_resistivity(params, opts.rho_long_x, dt, psi_peak);
    r.rho_long.push_back({dt, rho});
    largest = std::max(largest, std::abs(rho));
  }
  r.vanishing_flag = largest <= 1e-12 * klitzing;
  return r;
}

std::vector<ResistivityReport> quantization_scan(const PhysicalParams& params,
                                                 const std::vector<double>& l_values, long k,
                                                 const ScanOptions& opts) {
  if (l_values.empty()) throw std::invalid_argument("quantization scan needs at least one l");
  std::vector<ResistivityReport> out(l_values.size());
  for (std::size_t i = 0; i < l_values.size(); ++i) {
    const CellChoice cell = quantized_cell(params, l_values[i], k);
    out[i] = resistivity_report(params, cell.delta_x, cell.delta_y, cell.delta_t, opts);
  }
  return out;
}

void write_scan_csv(std::ostream& out, const std::vector<double>& l_values,
                    const std::vector<ResistivityReport>& reports) {
  out << "l,delta_x,delta_y,delta_t,rho_over_klitzing,quadrature_ratio,phase_defect,is_invariant\n";
  out.precision(17);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ResistivityReport& r = reports[i];
    out << l_values[i] << ',' << r.delta_x << ',' << r.delta_y << ',' << r.delta_t << ','
        << r.quantum_ratio << ',' << r.quadrature_ratio << ',' << r.phase_defect << ','
        << (r.is_invariant ? 1 : 0) << '\n';
  }
}

std::string ResistivityReport::to_json() const {
  nlohmann::json j;
  j["delta_x"] = delta_x;
  j["delta_y"] = delta_y;
  j["delta_t"] = delta_t;
  j["rho_hall_expect"] = rho_hall_expect;
  j["rho_hall_quadrature"] = rho_hall_quadrature;
  j["quantum_ratio"] = quantum_ratio;
  j["quadrature_ratio"] = quadrature_ratio;
  j["l_real"] = l_real;
  j["k_real"] = k_real;
  j["is_invariant"] = is_invariant;
  j["l"] = l ? nlohmann::json(*l) : nlohmann::json(nullptr);
  j["k"] = k ? nlohmann::json(*k) : nlohmann::json(nullptr);
  j["phase"] = {phase_re, phase_im};
  j["phase_defect"] = phase_defect;
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : rho_long) samples.push_back({{"delta_t", s.delta_t}, {"rho", s.rho}});
  j["rho_long"] = samples;
  j["vanishing_flag"] = vanishing_flag;
  return j.dump(2);
}

}  // namespace landau
