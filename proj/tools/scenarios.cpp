#include "scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "landau/evolver.hpp"
#include "landau/observables.hpp"
#include "landau/solutions.hpp"
#include "landau/state_io.hpp"

namespace landau::app {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const auto& c : cells) {
    if (!row.empty()) row += ',';
    row += c;
  }
  return row + '\n';
}

std::string exact(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

// --- verify -----------------------------------------------------------------

Report run_verify(const ScenarioConfig& c, const Logger& log) {
  const VerifyOptions& o = c.verify;
  Report report;
  const WarningSink warn = [&](const std::string& w) { report.warnings.push_back(w); };
  std::string csv = "family,level,field_e,t,residual,passed\n";
  double worst = 0.0;
  nlohmann::json energies = nlohmann::json::array();
  for (double e : o.field_e_values) {
    PhysicalParams p = c.physics;
    p.field_e = e;
    const double period = p.cyclotron_period();
    for (Family f : o.families) {
      for (int n : o.levels) {
        AnalyticState s{f, n, 0.0, 0.0, 0.0};
        if (f == Family::PsiBarY) s.offset_x = o.offset_x;
        if (f == Family::PsiX) s.offset_y = o.offset_y;
        if (f == Family::Ground) s.offset_x = o.offset_x;
        for (double frac : o.period_fractions) {
          const double t = frac * period;
          const GridSpec grid = family_grid(p, s, t, c.grid, warn);
          const double r = schrodinger_residual(p, s, grid, t);
          const std::string name = std::string("residual ") + to_string(f) + " n=" + std::to_string(n) +
                                   " E=" + fmt(e) + " t/T=" + fmt(frac);
          report.less(name, r, o.residual_tolerance);
          worst = std::max(worst, r);
          csv += csv_row({to_string(f), std::to_string(n), exact(e), exact(t), exact(r),
                          r < o.residual_tolerance ? "1" : "0"});
          log(name + " = " + fmt(r));
        }
      }
    }

    // ⟨Ĥ⟩ of ζ_n against its closed-form eigenvalue, and the ψ/ζ energy gap.
    for (int n : o.levels) {
      const AnalyticState zeta{Family::ZetaX, n, 0.0, 0.0, 0.0};
      const GridSpec gz = family_grid(p, zeta, 0.0, c.grid, warn);
      const SampledState sz = sample(p, zeta, gz, 0.0);
      const double ez = expectation(sz, apply_hamiltonian(sz));
      const double exact_e = energy_psibar(p, n).value;
      const double scale = std::max(std::abs(exact_e), p.hbar * std::abs(p.cyclotron_frequency()));
      const double rel = std::abs(ez - exact_e) / scale;
      report.less("eigenvalue zeta n=" + std::to_string(n) + " E=" + fmt(e), rel, o.energy_tolerance);

      const AnalyticState psi{Family::PsiX, n, 0.0, o.offset_y, 0.0};
      const double gap_closed = energy_psibar(p, n).value - energy_psi(p, n, o.offset_y).value;
      const double gap_expected = p.charge * e * o.offset_y;
      report.less("energy gap closed form n=" + std::to_string(n) + " E=" + fmt(e),
                  std::abs(gap_closed - gap_expected), 1e-12 * std::max(1.0, scale));
      const GridSpec gp = family_grid(p, psi, 0.0, c.grid, warn);
      const SampledState sp = sample(p, psi, gp, 0.0);
      const double ep = expectation(sp, apply_hamiltonian(sp));
      const double gap_grid = ez - ep;
      report.less("energy gap grid n=" + std::to_string(n) + " E=" + fmt(e),
                  std::abs(gap_grid - gap_expected) / scale, o.energy_tolerance);
      energies.push_back({{"level", n}, {"field_e", e}, {"zeta_expectation", ez}, {"closed_form", exact_e},
                          {"relative_error", rel}, {"gap_grid", gap_grid}, {"gap_expected", gap_expected}});
    }

    if (o.negative_control) {
      const double shift = 0.5 * p.magnetic_length();
      const AnalyticState zeta{Family::ZetaX, 0, 0.0, 0.0, 0.0};
      auto wf = make_field(p, [p, shift](double x, double y, double t) { return eval_zeta(p, 0, x, y - shift, t); });
      const GridSpec grid = family_grid(p, zeta, 0.0, c.grid, warn);
      const double r = schrodinger_residual(*wf, grid, 0.0, TimeStencil::for_params(p));
      report.greater("negative control (mis-centred zeta_0) E=" + fmt(e), r, o.control_threshold);
      log("negative control residual = " + fmt(r));
    }
  }
  report.results["max_residual"] = worst;
  report.results["energies"] = energies;
  report.artifacts.push_back({"residuals.csv", "Schrodinger residual per family, level, field and time", csv});
  report.plots.push_back({"residuals.csv", "t", "residual", "Residual of each analytic family"});
  return report;
}

// --- evolve -----------------------------------------------------------------

GridSpec evolution_grid(const GridSpec& base, const AnalyticState& s) {
  GridSpec g = base;
  g.periodic_x = g.periodic_y = true;
  if (confined_axis(s.family) == Axis::X) {
    g.frame = GaugeFrame::Twisted;
    g.twist_origin_x = s.offset_x;
    g.twist_origin_t = s.family == Family::Ground ? s.offset_t : 0.0;
  } else {
    g.frame = GaugeFrame::Landau;
  }
  return g;
}

double relative_error(const SampledState& num, const SampledState& ref) {
  return window_norm(num - ref) / window_norm(ref);
}

void append(Trajectory& into, const Trajectory& from, bool skip_first) {
  for (std::size_t k = skip_first ? 1 : 0; k < from.size(); ++k) {
    into.times.push_back(from.times[k]);
    into.mean_x.push_back(from.mean_x[k]);
    into.mean_y.push_back(from.mean_y[k]);
    into.mean_pix.push_back(from.mean_pix[k]);
    into.mean_piy.push_back(from.mean_piy[k]);
    into.norm.push_back(from.norm[k]);
    into.energy.push_back(from.energy[k]);
  }
}

double max_deviation(const std::vector<double>& v) {
  double d = 0.0;
  for (double x : v) d = std::max(d, std::abs(x - v.front()));
  return d;
}

int step_count(double periods, int steps_per_period) {
  if (!(periods > 0.0) || steps_per_period < 1) throw std::invalid_argument("periods and steps_per_period must be positive");
  return static_cast<int>(std::lround(periods * steps_per_period));
}

Report run_evolve(const ScenarioConfig& c, const Logger& log) {
  const EvolveOptions& o = c.evolve;
  const PhysicalParams& p = c.physics;
  o.state.validate();
  Report report;
  const double period = p.cyclotron_period();
  const int total = step_count(o.periods, o.steps_per_period);
  EvolverConfig cfg;
  cfg.dt = period / o.steps_per_period;
  cfg.scheme = o.scheme;
  cfg.grid = evolution_grid(c.grid, o.state);
  cfg.record_every = std::max(1, o.record_every);

  SampledState state = sample(p, o.state, cfg.grid, 0.0);
  const double initial_norm = window_norm(state);
  state *= cplx{1.0 / initial_norm, 0.0};
  Trajectory traj;
  std::string overlap_csv = "t,overlap,relative_error\n";
  double min_overlap = 1.0;
  int done = 0;
  while (done < total) {
    EvolverConfig seg = cfg;
    seg.n_steps = std::min(cfg.record_every, total - done);
    seg.record_every = seg.n_steps;
    EvolutionResult r = evolve(state, seg);
    append(traj, r.trajectory, done > 0);
    state = std::move(r.final_state);
    done += seg.n_steps;
    SampledState ref = sample(p, o.state, cfg.grid, state.time);
    ref *= cplx{1.0 / initial_norm, 0.0};
    const double ov = std::abs(inner(ref, state)) / (window_norm(ref) * window_norm(state));
    const double err = relative_error(state, ref);
    min_overlap = std::min(min_overlap, ov);
    overlap_csv += csv_row({exact(state.time), exact(ov), exact(err)});
    log("t = " + fmt(state.time) + "  overlap = " + exact(ov));
  }
  SampledState ref = sample(p, o.state, cfg.grid, state.time);
  ref *= cplx{1.0 / initial_norm, 0.0};
  const double terminal_error = relative_error(state, ref);

  report.greater("minimum overlap with the analytic state", min_overlap, o.overlap_threshold);
  const double norm_drift = max_deviation(traj.norm);
  report.less("norm drift", norm_drift, o.norm_tolerance);
  const double scale = p.mass * std::abs(p.cyclotron_frequency()) * p.magnetic_length();
  const double pix_drift = max_deviation(traj.mean_pix);
  const double piy_drift = max_deviation(traj.mean_piy);
  // On twisted grids the splitting conserves π̂′_y exactly but ⟨π̂′ₓ⟩ only to
  // O(dt²): the state is y-invariant, so the ⟨y⟩ shift that would compensate
  // the O(dt²) lag of ⟨x⟩ cannot appear. Reported, asserted on Landau grids.
  if (cfg.grid.frame == GaugeFrame::Landau) {
    report.less("pi'_x drift / (m omega_c l)", pix_drift / scale, o.conservation_tolerance);
  } else {
    report.warnings.push_back("pi'_x drift on a twisted grid is O(dt^2); reported, not asserted");
  }
  report.less("pi'_y drift / (m omega_c l)", piy_drift / scale, o.conservation_tolerance);
  const double energy_drift = max_deviation(traj.energy) / std::max(std::abs(traj.energy.front()), 1e-300);
  if (p.field_e == 0.0) report.less("relative energy drift (E = 0)", energy_drift, o.energy_tolerance);

  report.results["steps"] = total;
  report.results["dt"] = cfg.dt;
  report.results["frame"] = to_string(cfg.grid.frame);
  report.results["min_overlap"] = min_overlap;
  report.results["terminal_error"] = terminal_error;
  report.results["norm_drift"] = norm_drift;
  report.results["pix_drift"] = pix_drift;
  report.results["piy_drift"] = piy_drift;
  report.results["energy_drift"] = energy_drift;

  if (o.order_check) {
    EvolverConfig half = cfg;
    half.dt = cfg.dt / 2.0;
    half.n_steps = 2 * total;
    half.record_every = half.n_steps;
    SampledState start = sample(p, o.state, cfg.grid, 0.0);
    start *= cplx{1.0 / initial_norm, 0.0};
    const SampledState fine = evolve(start, half).final_state;
    SampledState ref_fine = sample(p, o.state, cfg.grid, fine.time);
    ref_fine *= cplx{1.0 / initial_norm, 0.0};
    const double fine_error = relative_error(fine, ref_fine);
    const double ratio = terminal_error / fine_error;
    report.within("error ratio dt vs dt/2", ratio, o.order_min, o.order_max);
    report.results["terminal_error_half_dt"] = fine_error;
    report.results["order_ratio"] = ratio;
    log("order ratio = " + fmt(ratio));
  }

  std::ostringstream tcsv;
  traj.write_csv(tcsv);
  report.artifacts.push_back({"trajectory.csv", "Expectation values along the evolution", tcsv.str()});
  report.artifacts.push_back({"overlap.csv", "Overlap with the analytic state at each record time", overlap_csv});
  if (o.save_state) {
    std::ostringstream bin;
    write_state(bin, state);
    report.artifacts.push_back({"final_state.lss", "Final sampled state (binary container)", bin.str()});
  }
  report.plots.push_back({"trajectory.csv", "mean_x", "mean_y", "Packet centre"});
  report.plots.push_back({"overlap.csv", "t", "overlap", "Overlap with the analytic solution"});
  return report;
}

// --- lorentz ----------------------------------------------------------------

Report run_lorentz(const ScenarioConfig& c, const Logger& log) {
  const LorentzOptions& o = c.lorentz;
  const PhysicalParams& p = c.physics;
  Report report;
  if (!(o.width > 0.0)) throw std::invalid_argument("lorentz.packet.width must be positive");
  const double w = o.width * p.magnetic_length();
  const double norm = 1.0 / (std::sqrt(std::numbers::pi) * w);
  const double hb = p.hbar;
  GridSpec grid = c.grid;
  grid.frame = GaugeFrame::Landau;
  grid.periodic_x = grid.periodic_y = true;
  const SampledState packet = sample(p, grid, 0.0, [=](double x, double y, double) {
    const double dx = x - o.center_x, dy = y - o.center_y;
    return norm * std::exp(-(dx * dx + dy * dy) / (2.0 * w * w)) *
           unit_phase((o.momentum_x * x + o.momentum_y * y) / hb);
  });
  const double period = p.cyclotron_period();
  EvolverConfig cfg;
  cfg.dt = period / o.steps_per_period;
  cfg.n_steps = step_count(o.periods, o.steps_per_period);
  cfg.scheme = o.scheme;
  cfg.grid = grid;
  const LorentzReport r = ehrenfest_lorentz_check(packet, cfg);
  const double scale = p.mass * std::abs(p.cyclotron_frequency()) * p.magnetic_length();
  report.less("max relative Newton-Lorentz defect", r.max_relative_defect, o.defect_tolerance);
  report.less("pi'_x drift / (m omega_c l)", r.pix_drift / scale, o.conservation_tolerance);
  report.less("pi'_y drift / (m omega_c l)", r.piy_drift / scale, o.conservation_tolerance);
  const double vd = derive(p).drift_velocity;
  const bool whole_periods = std::abs(o.periods - std::round(o.periods)) < 1e-12;
  if (whole_periods) {
    const double vscale = std::max(std::abs(vd), std::abs(p.cyclotron_frequency()) * p.magnetic_length());
    report.less("|mean drift velocity - v_d| / scale", std::abs(r.mean_drift_velocity - vd) / vscale,
                o.drift_tolerance);
  }
  log("relative defect = " + fmt(r.max_relative_defect) + ", drift velocity = " + fmt(r.mean_drift_velocity));
  report.results["max_relative_defect"] = r.max_relative_defect;
  report.results["max_defect_x"] = r.max_defect_x;
  report.results["max_defect_y"] = r.max_defect_y;
  report.results["acceleration_scale"] = r.acceleration_scale;
  report.results["pix_drift"] = r.pix_drift;
  report.results["piy_drift"] = r.piy_drift;
  report.results["mean_drift_velocity"] = r.mean_drift_velocity;
  report.results["expected_drift_velocity"] = vd;
  std::ostringstream tcsv;
  r.trajectory.write_csv(tcsv);
  report.artifacts.push_back({"trajectory.csv", "Packet expectation values at every step", tcsv.str()});
  report.plots.push_back({"trajectory.csv", "mean_x", "mean_y", "Cycloid of the packet centre"});
  report.plots.push_back({"trajectory.csv", "t", "piy", "Conserved momentum pi'_y"});
  return report;
}

// --- resistivity ------------------------------------------------------------

bool is_whole(double v) { return std::abs(v - std::round(v)) < 1e-12; }

Report run_resistivity(const ScenarioConfig& c, const Logger& log) {
  const ResistivityOptions& o = c.resistivity;
  const PhysicalParams& p = c.physics;
  Report report;
  ScanOptions scan;
  scan.grid = c.grid;
  scan.invariance_tolerance = o.integer_tolerance;
  scan.rho_long_x = o.rho_long_x;
  scan.rho_long_samples = o.rho_long_samples;
  scan.quadrature_points = o.quadrature_points;
  const std::vector<ResistivityReport> reports = quantization_scan(p, o.l_values, o.k, scan);
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ResistivityReport& r = reports[i];
    const double l = o.l_values[i];
    const std::string tag = "l=" + fmt(l);
    if (is_whole(l)) {
      report.less("closed-form |rho_H/(h/q^2) - l| " + tag, std::abs(r.quantum_ratio - l), o.integer_tolerance);
      report.less("quadrature |rho_H/(h/q^2) - l| " + tag, std::abs(r.quadrature_ratio - l), o.integer_tolerance);
      report.less("U_y invariance defect " + tag, r.phase_defect, o.phase_tolerance);
      report.flag("invariance conditions hold " + tag, r.is_invariant);
    } else {
      report.flag("non-integer cell is not invariant " + tag, !r.is_invariant);
    }
    log(tag + ": ratio = " + exact(r.quantum_ratio) + ", defect = " + fmt(r.phase_defect));
    list.push_back(nlohmann::json::parse(r.to_json()));
  }

  nlohmann::json controls = nlohmann::json::array();
  if (o.perturbation != 0.0) {
    for (double l : o.l_values) {
      if (!is_whole(l)) continue;
      const CellChoice cell = quantized_cell(p, l, o.k);
      const ResistivityReport r =
          resistivity_report(p, cell.delta_x * (1.0 + o.perturbation), cell.delta_y, cell.delta_t, scan);
      const std::string tag = "l=" + fmt(l);
      report.greater("perturbed cell breaks invariance " + tag, r.phase_defect, o.phase_tolerance);
      report.greater("perturbed cell is off-integer " + tag,
                     std::abs(r.quantum_ratio - std::round(r.quantum_ratio)), o.integer_tolerance);
      controls.push_back({{"l", l}, {"quantum_ratio", r.quantum_ratio}, {"phase_defect", r.phase_defect},
                          {"is_invariant", r.is_invariant}});
    }
  }

  // ρ_L along Δt ∈ [0, 0.9 Δx/v_d]: finite and increasing; zero field gives zero.
  std::string rho_csv = "delta_t,rho_long\n";
  const auto& samples = reports.front().rho_long;
  bool finite = true, monotone = true;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    finite = finite && std::isfinite(samples[k].rho);
    if (k > 0 && p.field_e != 0.0) monotone = monotone && samples[k].rho > samples[k - 1].rho;
    rho_csv += csv_row({exact(samples[k].delta_t), exact(samples[k].rho)});
  }
  report.flag("rho_L finite on [0, 0.9 bound]", finite);
  report.flag("rho_L monotone on [0, 0.9 bound]", monotone);
  PhysicalParams zero = p;
  zero.field_e = 0.0;
  const double psi_peak = std::norm(eval_ground(p, 0.0, 0.0, 0.0, 0.0, 0.0));
  report.flag("rho_L vanishes at zero electric field",
              longitudinal_resistivity(zero, o.rho_long_x, 0.0, psi_peak) == 0.0);
  nlohmann::json limit = nlohmann::json::array();
  for (double scale : {1.0, 1e-1, 1e-2, 1e-3, 1e-4}) {
    PhysicalParams weak = p;
    weak.field_e = (p.field_e == 0.0 ? 1.0 : p.field_e) * scale;
    limit.push_back({{"field_e", weak.field_e},
                     {"rho_long", longitudinal_resistivity(weak, o.rho_long_x, 0.0, psi_peak)}});
  }

  std::string scan_csv;
  {
    std::ostringstream s;
    write_scan_csv(s, o.l_values, reports);
    scan_csv = s.str();
  }
  report.results["von_klitzing"] = von_klitzing(p);
  report.results["reports"] = list;
  report.results["perturbed_controls"] = controls;
  report.results["rho_long_field_limit"] = limit;
  report.artifacts.push_back({"scan.csv", "Hall resistivity per cell index l", scan_csv});
  report.artifacts.push_back({"rho_long.csv", "Longitudinal resistivity against the time offset", rho_csv});
  report.artifacts.push_back({"reports.json", "Full resistivity reports", list.dump(2)});
  report.plots.push_back({"scan.csv", "l", "rho_over_klitzing", "Hall resistivity in units of h/q^2"});
  report.plots.push_back({"rho_long.csv", "delta_t", "rho_long", "Longitudinal resistivity"});
  return report;
}

// --- fourier ----------------------------------------------------------------

Report run_fourier(const ScenarioConfig& c, const Logger& log) {
  const FourierOptions& o = c.fourier;
  Report report;
  FourierLine line{o.half_width, o.points};
  std::string csv = "n,a,residual,phase_re,phase_im\n";
  nlohmann::json rows = nlohmann::json::array();
  for (int n : o.levels) {
    for (double a : o.shifts) {
      const FourierPairResult r = fourier_pair_check(n, a, line);
      report.less("Fourier pair residual n=" + std::to_string(n) + " a=" + fmt(a), r.residual, o.tolerance);
      csv += csv_row({std::to_string(n), exact(a), exact(r.residual), exact(r.phase.real()), exact(r.phase.imag())});
      rows.push_back({{"n", n}, {"a", a}, {"residual", r.residual}, {"phase", {r.phase.real(), r.phase.imag()}}});
      log("n=" + std::to_string(n) + " a=" + fmt(a) + " residual=" + fmt(r.residual));
    }
    const FourierPairResult r = fourier_pair_check(c.physics, n, line);
    report.less("Fourier pair residual at the physical shift n=" + std::to_string(n), r.residual, o.tolerance);
    rows.push_back({{"n", n}, {"a", derive(c.physics).ft_shift}, {"residual", r.residual},
                    {"phase", {r.phase.real(), r.phase.imag()}}, {"physical", true}});
  }
  report.results["checks"] = rows;
  report.artifacts.push_back({"fourier.csv", "Fourier pair residuals", csv});
  report.plots.push_back({"fourier.csv", "n", "residual", "Fourier pair residual"});
  return report;
}

// --- general ----------------------------------------------------------------

Report run_general(const ScenarioConfig& c, const Logger& log) {
  const GeneralOptions& o = c.general;
  const PhysicalParams& p = c.physics;
  Report report;
  std::vector<SolutionTerm> terms = o.terms;
  if (o.ground_series) {
    const auto series = ground_series(p, o.ground_series->delta_x, o.ground_series->delta_t, o.ground_series->max_order);
    terms.insert(terms.end(), series.begin(), series.end());
  }
  const TimeStencil stencil = TimeStencil::for_params(p);
  const WavefunctionPtr wf = make_general_solution(p, terms, stencil);
  const double period = p.cyclotron_period();
  std::string csv = "t,residual,series_error\n";
  for (double frac : o.period_fractions) {
    const double t = frac * period;
    const double r = schrodinger_residual(*wf, c.grid, t, stencil);
    report.less("general solution residual t/T=" + fmt(frac), r, o.residual_tolerance);
    double series_error = std::nan("");
    if (o.ground_series && o.terms.empty()) {
      const AnalyticState ground{Family::Ground, 0, o.ground_series->delta_x, 0.0, o.ground_series->delta_t};
      const SampledState exact_state = sample(p, ground, c.grid, t);
      series_error = relative_error(wf->sample(c.grid, t), exact_state);
      report.less("series vs exact ground state t/T=" + fmt(frac), series_error, o.series_tolerance);
    }
    csv += csv_row({exact(t), exact(r), std::isnan(series_error) ? "" : exact(series_error)});
    log("t/T=" + fmt(frac) + " residual=" + fmt(r));
  }
  report.results["terms"] = terms.size();
  report.artifacts.push_back({"general.csv", "Residual of the general solution per time", csv});
  report.plots.push_back({"general.csv", "t", "residual", "General solution residual"});
  return report;
}

}  // namespace

Report run_scenario(const ScenarioConfig& config, const Logger& log) {
  switch (config.verb) {
    case Verb::Verify: return run_verify(config, log);
    case Verb::Evolve: return run_evolve(config, log);
    case Verb::Lorentz: return run_lorentz(config, log);
    case Verb::Resistivity: return run_resistivity(config, log);
    case Verb::Fourier: return run_fourier(config, log);
    case Verb::General: return run_general(config, log);
  }
  throw std::logic_error("unhandled verb");
}

}  // namespace landau::app
