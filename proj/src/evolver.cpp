#include "landau/evolver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "landau/errors.hpp"
#include "landau/fft.hpp"
#include "landau/operators.hpp"

namespace landau {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Observables {
  double norm_sq = 0.0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  double pix = 0.0;
  double piy = 0.0;
  double energy = 0.0;
};

// Holds the periodic data (ψ on Landau grids, χ on twisted grids) and advances it.
class SplitStepper {
 public:
  SplitStepper(const SampledState& initial, const EvolverConfig& config)
      : grid_(initial.grid), params_(initial.params), config_(config), time_(initial.time) {
    twisted_ = grid_.frame == GaugeFrame::Twisted;
    data_ = initial.amplitudes;
    if (twisted_) {
      const auto g = frame_factor(grid_, params_, time_);
      for (std::size_t k = 0; k < data_.size(); ++k) data_[k] *= std::conj(g[k]);
    }
    kx_ = fft::wavenumbers(grid_.n_x, grid_.dx());
    ky_ = fft::wavenumbers(grid_.n_y, grid_.dy());
    precompute();
  }

  double time() const { return time_; }

  void step() {
    const double dt = config_.dt;
    if (twisted_) {
      fill_twisted_half(time_ + 0.5 * dt);
      apply_y(twisted_half_);
      apply_x(x_full_);
      apply_y(twisted_half_);
    } else {
      apply_y_diag(y_half_);
      apply_x(x_full_);
      apply_y_diag(y_half_);
    }
    time_ += dt;
  }

  SampledState state() const {
    SampledState s = SampledState::zeros(grid_, params_, time_);
    s.amplitudes = data_;
    if (twisted_) {
      const auto g = frame_factor(grid_, params_, time_);
      for (std::size_t k = 0; k < data_.size(); ++k) s.amplitudes[k] *= g[k];
    }
    return s;
  }

  Observables observe() const {
    const PhysicalParams& p = params_;
    const double mw = p.mass * p.cyclotron_frequency();
    const double qe = p.charge * p.field_e;
    const double hb = p.hbar;
    Observables o;
    double sx = 0.0;
    double sy = 0.0;
    for (int i = 0; i < grid_.n_x; ++i) {
      double row = 0.0;
      double row_y = 0.0;
      for (int j = 0; j < grid_.n_y; ++j) {
        const double w = std::norm(data_[idx(i, j)]);
        row += w;
        row_y += w * grid_.y(j);
      }
      o.norm_sq += row;
      sx += row * grid_.x(i);
      sy += row_y;
    }
    const double total = o.norm_sq;
    o.mean_x = sx / total;
    o.mean_y = sy / total;
    o.norm_sq *= grid_.cell_area();

    // Parseval along each axis: Σ_k |û|² = n Σ |u|².
    std::vector<cplx> fx = data_;
    fft::transform_axis(fx, grid_.n_x, grid_.n_y, 0, fft::Direction::Forward);
    std::vector<cplx> fy = data_;
    fft::transform_axis(fy, grid_.n_x, grid_.n_y, 1, fft::Direction::Forward);
    double px = 0.0, kin_x = 0.0, py = 0.0, kin_y = 0.0;
    for (int i = 0; i < grid_.n_x; ++i) {
      double rpx = 0.0, rkx = 0.0, rpy = 0.0, rky = 0.0;
      for (int j = 0; j < grid_.n_y; ++j) {
        const double wx = std::norm(fx[idx(i, j)]);
        const double wy = std::norm(fy[idx(i, j)]);
        const double momx = hb * kx_[static_cast<std::size_t>(i)];
        const double momy = hb * ky_[static_cast<std::size_t>(j)];
        rpx += momx * wx;
        rpy += momy * wy;
        if (twisted_) {
          rkx += momx * momx * wx;
          const double shifted = momy - mw * (grid_.x(i) - grid_.twist_origin_x) +
                                 qe * (time_ - grid_.twist_origin_t);
          rky += shifted * shifted * wy;
        } else {
          const double mech = momx + (config_.magnetic ? mw * grid_.y(j) : 0.0);
          rkx += mech * mech * wx;
          rky += momy * momy * wy;
        }
      }
      px += rpx;
      kin_x += rkx;
      py += rpy;
      kin_y += rky;
    }
    px /= grid_.n_x * total;
    kin_x /= grid_.n_x * total;
    py /= grid_.n_y * total;
    kin_y /= grid_.n_y * total;
    if (twisted_) {
      o.pix = px - mw * o.mean_y;
      o.piy = py;
    } else {
      o.pix = px;
      o.piy = py + mw * o.mean_x - qe * time_;
    }
    o.energy = (kin_x + kin_y) / (2.0 * p.mass) - qe * o.mean_y;
    return o;
  }

  // Probability fraction within the boundary margin of the confining edges.
  double edge_fraction() const {
    const double margin = config_.boundary_margin * params_.magnetic_length();
    double edge = 0.0;
    double total = 0.0;
    for (int i = 0; i < grid_.n_x; ++i) {
      for (int j = 0; j < grid_.n_y; ++j) {
        const double w = std::norm(data_[idx(i, j)]);
        total += w;
        const bool near = twisted_ ? (grid_.x(i) < grid_.x_min + margin || grid_.x(i) >= grid_.x_max - margin)
                                   : (grid_.y(j) < grid_.y_min + margin || grid_.y(j) >= grid_.y_max - margin);
        if (near) edge += w;
      }
    }
    return total > 0.0 ? edge / total : 0.0;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * grid_.n_y + j; }

  void precompute() {
    const PhysicalParams& p = params_;
    const double dt = config_.dt;
    const double hb = p.hbar;
    const double mw = p.mass * p.cyclotron_frequency();
    const double qe = p.charge * p.field_e;
    x_full_.resize(grid_.size());
    for (int i = 0; i < grid_.n_x; ++i) {
      const double momx = hb * kx_[static_cast<std::size_t>(i)];
      for (int j = 0; j < grid_.n_y; ++j) {
        double energy;
        if (twisted_) {
          energy = momx * momx / (2.0 * p.mass);
        } else {
          const double mech = momx + (config_.magnetic ? mw * grid_.y(j) : 0.0);
          energy = mech * mech / (2.0 * p.mass) - qe * grid_.y(j);
        }
        x_full_[idx(i, j)] = unit_phase(-energy * dt / hb) / static_cast<double>(grid_.n_x);
      }
    }
    if (!twisted_) {
      y_half_.resize(static_cast<std::size_t>(grid_.n_y));
      for (int j = 0; j < grid_.n_y; ++j) {
        const double momy = hb * ky_[static_cast<std::size_t>(j)];
        y_half_[static_cast<std::size_t>(j)] =
            unit_phase(-momy * momy / (2.0 * p.mass) * 0.5 * dt / hb) / static_cast<double>(grid_.n_y);
      }
    } else {
      twisted_half_.resize(grid_.size());
    }
  }

  void fill_twisted_half(double t_mid) {
    const PhysicalParams& p = params_;
    const double mw = p.mass * p.cyclotron_frequency();
    const double qe = p.charge * p.field_e;
    const double hb = p.hbar;
    const double tau = 0.5 * config_.dt / (2.0 * p.mass * hb);
    const double inv_n = 1.0 / grid_.n_y;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < grid_.n_x; ++i) {
      const double offset = -mw * (grid_.x(i) - grid_.twist_origin_x) + qe * (t_mid - grid_.twist_origin_t);
      for (int j = 0; j < grid_.n_y; ++j) {
        const double m = hb * ky_[static_cast<std::size_t>(j)] + offset;
        twisted_half_[idx(i, j)] = unit_phase(-m * m * tau) * inv_n;
      }
    }
  }

  void apply_x(const std::vector<cplx>& phase) {
    fft::transform_axis(data_, grid_.n_x, grid_.n_y, 0, fft::Direction::Forward);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] *= phase[k];
    fft::transform_axis(data_, grid_.n_x, grid_.n_y, 0, fft::Direction::Backward);
  }

  void apply_y(const std::vector<cplx>& phase) {
    fft::transform_axis(data_, grid_.n_x, grid_.n_y, 1, fft::Direction::Forward);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] *= phase[k];
    fft::transform_axis(data_, grid_.n_x, grid_.n_y, 1, fft::Direction::Backward);
  }

  void apply_y_diag(const std::vector<cplx>& phase) {
    fft::transform_axis(data_, grid_.n_x, grid_.n_y, 1, fft::Direction::Forward);
    for (int i = 0; i < grid_.n_x; ++i) {
      for (int j = 0; j < grid_.n_y; ++j) data_[idx(i, j)] *= phase[static_cast<std::size_t>(j)];
    }
    fft::transform_axis(data_, grid_.n_x, grid_.n_y, 1, fft::Direction::Backward);
  }

  GridSpec grid_;
  PhysicalParams params_;
  EvolverConfig config_;
  double time_;
  bool twisted_ = false;
  std::vector<cplx> data_;
  std::vector<double> kx_;
  std::vector<double> ky_;
  std::vector<cplx> x_full_;
  std::vector<cplx> y_half_;
  std::vector<cplx> twisted_half_;
};

// (1 + iτĤ)ψ_{n+1} = (1 − iτĤ)ψ_n, solved by BiCGSTAB with Ĥ applied on the grid.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(const SampledState& initial, const EvolverConfig& config)
      : state_(initial), config_(config) {}

  double time() const { return state_.time; }

  void step() {
    const double tau = 0.5 * config_.dt / state_.params.hbar;
    const OperatorOptions fast{false};
    SampledState rhs = state_;
    rhs -= cplx{0.0, tau} * apply_hamiltonian(state_, fast);
    SampledState x = state_;
    x.time = state_.time + config_.dt;
    rhs.time = x.time;
    auto apply_a = [&](const SampledState& v) {
      SampledState out = v;
      out += cplx{0.0, tau} * apply_hamiltonian(v, fast);
      return out;
    };
    solve(apply_a, rhs, x);
    state_ = std::move(x);
  }

  SampledState state() const { return state_; }

 private:
  template <typename Op>
  void solve(Op&& apply_a, const SampledState& b, SampledState& x) {
    const double b_norm = window_norm(b);
    if (b_norm == 0.0) {
      x = b;
      return;
    }
    SampledState r = b - apply_a(x);
    const SampledState r_hat = r;
    cplx rho{1.0, 0.0}, alpha{1.0, 0.0}, omega{1.0, 0.0};
    SampledState v = SampledState::zeros(x.grid, x.params, x.time);
    SampledState p = v;
    for (int it = 0; it < config_.cn_max_iterations; ++it) {
      if (window_norm(r) <= config_.cn_tolerance * b_norm) return;
      const cplx rho_next = inner(r_hat, r);
      const cplx beta = (rho_next / rho) * (alpha / omega);
      rho = rho_next;
      for (std::size_t k = 0; k < p.amplitudes.size(); ++k) {
        p.amplitudes[k] = r.amplitudes[k] + beta * (p.amplitudes[k] - omega * v.amplitudes[k]);
      }
      v = apply_a(p);
      alpha = rho / inner(r_hat, v);
      SampledState s = r - alpha * v;
      if (window_norm(s) <= config_.cn_tolerance * b_norm) {
        x += alpha * p;
        return;
      }
      const SampledState t = apply_a(s);
      omega = inner(t, s) / inner(t, t);
      for (std::size_t k = 0; k < x.amplitudes.size(); ++k) {
        x.amplitudes[k] += alpha * p.amplitudes[k] + omega * s.amplitudes[k];
      }
      r = s - omega * t;
    }
    if (window_norm(r) > 1e3 * config_.cn_tolerance * b_norm) {
      throw Error("Crank–Nicolson linear solve did not converge");
    }
  }

  SampledState state_;
  EvolverConfig config_;
};

double edge_fraction_of(const SampledState& s, const EvolverConfig& config) {
  const double margin = config.boundary_margin * s.params.magnetic_length();
  const bool twisted = s.grid.frame == GaugeFrame::Twisted;
  double edge = 0.0, total = 0.0;
  for (int i = 0; i < s.grid.n_x; ++i) {
    for (int j = 0; j < s.grid.n_y; ++j) {
      const double w = std::norm(s.at(i, j));
      total += w;
      const bool near = twisted ? (s.grid.x(i) < s.grid.x_min + margin || s.grid.x(i) >= s.grid.x_max - margin)
                                : (s.grid.y(j) < s.grid.y_min + margin || s.grid.y(j) >= s.grid.y_max - margin);
      if (near) edge += w;
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

Observables observe_on_grid(const SampledState& s) {
  Observables o;
  const double n2 = inner(s, s).real();
  o.norm_sq = n2;
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < s.grid.n_x; ++i) {
    for (int j = 0; j < s.grid.n_y; ++j) {
      const double w = std::norm(s.at(i, j));
      sx += w * s.grid.x(i);
      sy += w * s.grid.y(j);
    }
  }
  o.mean_x = sx * s.grid.cell_area() / n2;
  o.mean_y = sy * s.grid.cell_area() / n2;
  const OperatorOptions fast{false};
  o.pix = expectation(s, apply_pi_x(s, fast));
  o.piy = expectation(s, apply_pi_y(s, fast));
  o.energy = expectation(s, apply_hamiltonian(s, fast));
  return o;
}

void check_boundary(double fraction, const EvolverConfig& config, double t) {
  if (fraction > config.boundary_tolerance) {
    std::ostringstream msg;
    msg << "packet reached the grid boundary at t = " << t << " (edge probability " << fraction << ")";
    throw BoundaryError(msg.str());
  }
}

void record(Trajectory& tr, double t, const Observables& o) {
  tr.times.push_back(t);
  tr.mean_x.push_back(o.mean_x);
  tr.mean_y.push_back(o.mean_y);
  tr.mean_pix.push_back(o.pix);
  tr.mean_piy.push_back(o.piy);
  tr.norm.push_back(std::sqrt(o.norm_sq));
  tr.energy.push_back(o.energy);
}

}  // namespace

const char* to_string(Scheme scheme) {
  return scheme == Scheme::SplitStep2 ? "split-step2" : "crank-nicolson";
}

void EvolverConfig::validate(const PhysicalParams& params) const {
  params.require_positive_cyclotron();
  grid.validate();
  if (!(dt > 0.0) || n_steps < 0 || record_every < 1) {
    throw std::invalid_argument("evolver needs dt > 0, n_steps ≥ 0, record_every ≥ 1");
  }
  if (dt > max_step_fraction * params.cyclotron_period() * (1.0 + 1e-12)) {
    throw std::invalid_argument("time step exceeds the allowed fraction of the cyclotron period");
  }
  if (scheme == Scheme::SplitStep2 && !(grid.periodic_x && grid.periodic_y)) {
    throw std::invalid_argument("split-step evolution needs both axes periodic");
  }
  if (!magnetic && (grid.frame == GaugeFrame::Twisted || scheme == Scheme::CrankNicolson)) {
    throw std::invalid_argument("the free-particle mode runs split-step on Landau grids only");
  }
}

void Trajectory::write_csv(std::ostream& out) const {
  out << "t,mean_x,mean_y,pix,piy,norm,energy\n";
  out.precision(17);
  for (std::size_t k = 0; k < times.size(); ++k) {
    out << times[k] << ',' << mean_x[k] << ',' << mean_y[k] << ',' << mean_pix[k] << ','
        << mean_piy[k] << ',' << norm[k] << ',' << energy[k] << '\n';
  }
}

EvolutionResult evolve(const SampledState& initial, const EvolverConfig& config) {
  initial.validate();
  config.validate(initial.params);
  if (!initial.grid.same_layout(config.grid) || initial.grid.frame != config.grid.frame) {
    throw std::invalid_argument("initial state does not live on the configured grid");
  }
  check_resolution(initial);
  EvolutionResult result;
  if (config.scheme == Scheme::SplitStep2) {
    SplitStepper stepper(initial, config);
    check_boundary(stepper.edge_fraction(), config, stepper.time());
    record(result.trajectory, stepper.time(), stepper.observe());
    for (int n = 1; n <= config.n_steps; ++n) {
      stepper.step();
      if (n % config.record_every == 0 || n == config.n_steps) {
        check_boundary(stepper.edge_fraction(), config, stepper.time());
        record(result.trajectory, stepper.time(), stepper.observe());
      }
    }
    result.final_state = stepper.state();
  } else {
    CrankNicolsonStepper stepper(initial, config);
    check_boundary(edge_fraction_of(initial, config), config, initial.time);
    record(result.trajectory, initial.time, observe_on_grid(initial));
    for (int n = 1; n <= config.n_steps; ++n) {
      stepper.step();
      if (n % config.record_every == 0 || n == config.n_steps) {
        const SampledState s = stepper.state();
        check_boundary(edge_fraction_of(s, config), config, s.time);
        record(result.trajectory, s.time, observe_on_grid(s));
      }
    }
    result.final_state = stepper.state();
  }
  return result;
}

LorentzReport ehrenfest_lorentz_check(const SampledState& initial, EvolverConfig config) {
  config.record_every = 1;
  LorentzReport report;
  report.trajectory = evolve(initial, config).trajectory;
  const Trajectory& tr = report.trajectory;
  const std::size_t n = tr.size();
  if (n < 3) throw std::invalid_argument("Lorentz check needs at least two steps");
  const PhysicalParams& p = initial.params;
  const double wc = p.cyclotron_frequency();
  const double force = p.charge * p.field_e / p.mass;
  const double dt = config.dt;
  double max_acc = 0.0, max_vel = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double ax = (tr.mean_x[k + 1] - 2.0 * tr.mean_x[k] + tr.mean_x[k - 1]) / (dt * dt);
    const double ay = (tr.mean_y[k + 1] - 2.0 * tr.mean_y[k] + tr.mean_y[k - 1]) / (dt * dt);
    const double vx = (tr.mean_x[k + 1] - tr.mean_x[k - 1]) / (2.0 * dt);
    const double vy = (tr.mean_y[k + 1] - tr.mean_y[k - 1]) / (2.0 * dt);
    report.max_defect_x = std::max(report.max_defect_x, std::abs(ax - wc * vy));
    report.max_defect_y = std::max(report.max_defect_y, std::abs(ay + wc * vx - force));
    max_acc = std::max({max_acc, std::abs(ax), std::abs(ay)});
    max_vel = std::max({max_vel, std::abs(vx), std::abs(vy)});
  }
  report.acceleration_scale = std::max({max_acc, std::abs(wc) * max_vel, std::abs(force), 1e-300});
  report.max_relative_defect =
      std::max(report.max_defect_x, report.max_defect_y) / report.acceleration_scale;
  for (std::size_t k = 0; k < n; ++k) {
    report.pix_drift = std::max(report.pix_drift, std::abs(tr.mean_pix[k] - tr.mean_pix[0]));
    report.piy_drift = std::max(report.piy_drift, std::abs(tr.mean_piy[k] - tr.mean_piy[0]));
  }
  report.mean_drift_velocity = (tr.mean_x.back() - tr.mean_x.front()) / (tr.times.back() - tr.times.front());
  return report;
}

}  // namespace landau
