#include "landau/wavefunction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "landau/errors.hpp"

namespace landau {

namespace {

constexpr cplx kI{0.0, 1.0};

SampledState relabel(SampledState s, const GridSpec& grid, double t) {
  s.grid = grid;
  s.time = t;
  return s;
}

class AnalyticWavefunction final : public Wavefunction {
 public:
  AnalyticWavefunction(const PhysicalParams& params, const AnalyticState& state)
      : Wavefunction(params), state_(state) {
    state_.validate();
    params.require_positive_cyclotron();
  }
  SampledState sample(const GridSpec& grid, double t) const override {
    return landau::sample(params(), state_, grid, t);
  }

 private:
  AnalyticState state_;
};

class FieldWavefunction final : public Wavefunction {
 public:
  FieldWavefunction(const PhysicalParams& params, PointField field)
      : Wavefunction(params), field_(std::move(field)) {}
  SampledState sample(const GridSpec& grid, double t) const override {
    return landau::sample(params(), grid, t, field_);
  }

 private:
  PointField field_;
};

class TranslatedWavefunction final : public Wavefunction {
 public:
  TranslatedWavefunction(WavefunctionPtr base, double dx, double dy, double dt)
      : Wavefunction(base->params()), base_(std::move(base)), dx_(dx), dy_(dy), dt_(dt) {}

  SampledState sample(const GridSpec& grid, double t) const override {
    SampledState s = relabel(base_->sample(grid.shifted(-dx_, -dy_), t - dt_), grid, t);
    if (dy_ != 0.0) {
      const PhysicalParams& p = params();
      const double mw = p.mass * p.cyclotron_frequency();
      const double qet = p.charge * p.field_e * t;
      for (int i = 0; i < grid.n_x; ++i) {
        const cplx phase = unit_phase(-dy_ * (mw * grid.x(i) - qet) / p.hbar);
        for (int j = 0; j < grid.n_y; ++j) s.at(i, j) *= phase;
      }
    }
    return s;
  }

 private:
  WavefunctionPtr base_;
  double dx_;
  double dy_;
  double dt_;
};

class ResidualWavefunction final : public Wavefunction {
 public:
  ResidualWavefunction(WavefunctionPtr base, TimeStencil stencil)
      : Wavefunction(base->params()), base_(std::move(base)), stencil_(stencil) {}
  SampledState sample(const GridSpec& grid, double t) const override {
    SampledState r = apply_hamiltonian(base_->sample(grid, t));
    r -= base_->apply_energy(grid, t, stencil_);
    return r;
  }

 private:
  WavefunctionPtr base_;
  TimeStencil stencil_;
};

class GeneratorWavefunction final : public Wavefunction {
 public:
  GeneratorWavefunction(const PhysicalParams& params, const AnalyticState& base, int j, int j_prime,
                        TimeStencil stencil)
      : Wavefunction(params), base_(base), j_(j), j_prime_(j_prime), stencil_(stencil) {
    base_.validate();
    if (base.family != Family::ZetaX && base.family != Family::ZetaBarY) {
      throw std::invalid_argument("generators act on the ζ and ζ̄ families");
    }
    if (j < 0 || j_prime < 0 || j + j_prime > 6) {
      throw std::invalid_argument("generator orders need j, j' ≥ 0 and j + j' ≤ 6");
    }
  }

  SampledState sample(const GridSpec& grid, double t) const override {
    return energy_power(grid, t, j_prime_, stencil_);
  }

  SampledState apply_energy(const GridSpec& grid, double t, const TimeStencil& stencil) const override {
    return energy_power(grid, t, j_prime_ + 1, stencil);
  }

 private:
  SampledState spatial(const GridSpec& grid, double t) const {
    SampledState base = landau::sample(params(), base_, grid, t);
    const double base_norm = window_norm(base);
    SampledState s = base;
    for (int k = 0; k < j_; ++k) {
      const OperatorOptions opts{k == 0};
      s = base_.family == Family::ZetaX ? apply_pi_y(s, opts) : apply_pi_x(s, opts);
    }
    if (j_ > 0 && window_norm(s) > 1e12 * base_norm) {
      throw IllConditionedError("generator power amplifies the window norm beyond 1e12");
    }
    return s;
  }

  SampledState energy_power(const GridSpec& grid, double t, int order, const TimeStencil& st) const {
    if (order == 0) return spatial(grid, t);
    const std::vector<double> w = central_weights(order, st.accuracy);
    const int r = static_cast<int>(w.size() / 2);
    const double h = st.step_for_order(order);
    cplx factor{1.0, 0.0};
    for (int k = 0; k < order; ++k) factor *= kI * params().hbar / h;
    SampledState out = SampledState::zeros(grid, params(), t);
    for (int k = -r; k <= r; ++k) {
      const double wk = w[static_cast<std::size_t>(k + r)];
      if (wk == 0.0) continue;
      const SampledState s = spatial(grid, t + k * h);
      for (std::size_t m = 0; m < out.amplitudes.size(); ++m) out.amplitudes[m] += wk * s.amplitudes[m];
    }
    out *= factor;
    return out;
  }

  AnalyticState base_;
  int j_;
  int j_prime_;
  TimeStencil stencil_;
};

class SuperpositionWavefunction final : public Wavefunction {
 public:
  SuperpositionWavefunction(const PhysicalParams& params,
                            std::vector<std::pair<cplx, WavefunctionPtr>> terms)
      : Wavefunction(params), terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("empty superposition");
  }

  SampledState sample(const GridSpec& grid, double t) const override {
    return combine([&](const Wavefunction& w) { return w.sample(grid, t); }, grid, t);
  }
  SampledState apply_energy(const GridSpec& grid, double t, const TimeStencil& st) const override {
    return combine([&](const Wavefunction& w) { return w.apply_energy(grid, t, st); }, grid, t);
  }

 private:
  template <typename F>
  SampledState combine(F&& f, const GridSpec& grid, double t) const {
    SampledState out = SampledState::zeros(grid, params(), t);
    for (const auto& [c, w] : terms_) {
      if (c == cplx{0.0, 0.0}) continue;
      const SampledState s = f(*w);
      for (std::size_t m = 0; m < out.amplitudes.size(); ++m) out.amplitudes[m] += c * s.amplitudes[m];
    }
    return out;
  }

  std::vector<std::pair<cplx, WavefunctionPtr>> terms_;
};

}  // namespace

TimeStencil TimeStencil::for_params(const PhysicalParams& params, int accuracy) {
  return TimeStencil{1e-4 * params.cyclotron_period(), accuracy};
}

double TimeStencil::step_for_order(int d) const {
  if (!(step > 0.0)) throw std::invalid_argument("time stencil step must be positive");
  if (d <= 1) return step;
  const double eps = std::numeric_limits<double>::epsilon();
  return step * std::pow(eps, 1.0 / (d + accuracy)) / std::pow(eps, 1.0 / (1 + accuracy));
}

std::vector<double> central_weights(int derivative_order, int accuracy) {
  if (derivative_order < 1 || accuracy < 2 || accuracy % 2 != 0) {
    throw std::invalid_argument("central_weights: need order ≥ 1 and even accuracy ≥ 2");
  }
  const int r = (derivative_order + accuracy - 1) / 2;
  const int n = 2 * r + 1;
  std::vector<double> nodes(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) nodes[static_cast<std::size_t>(k)] = k - r;
  // Fornberg's recursion, evaluated at 0.
  const int m = derivative_order;
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] = c[k][m];
  return w;
}

SampledState time_derivative(const Wavefunction& wf, const GridSpec& grid, double t, int order,
                             const TimeStencil& stencil) {
  const std::vector<double> w = central_weights(order, stencil.accuracy);
  const int r = static_cast<int>(w.size() / 2);
  const double h = stencil.step_for_order(order);
  SampledState out = SampledState::zeros(grid, wf.params(), t);
  for (int k = -r; k <= r; ++k) {
    const double wk = w[static_cast<std::size_t>(k + r)];
    if (wk == 0.0) continue;
    const SampledState s = wf.sample(grid, t + k * h);
    for (std::size_t m = 0; m < out.amplitudes.size(); ++m) out.amplitudes[m] += wk * s.amplitudes[m];
  }
  out *= cplx{1.0 / std::pow(h, order), 0.0};
  return out;
}

SampledState Wavefunction::apply_energy(const GridSpec& grid, double t,
                                        const TimeStencil& stencil) const {
  SampledState d = time_derivative(*this, grid, t, 1, stencil);
  d *= kI * params_.hbar;
  return d;
}

WavefunctionPtr make_analytic(const PhysicalParams& params, const AnalyticState& state) {
  return std::make_shared<AnalyticWavefunction>(params, state);
}

WavefunctionPtr make_field(const PhysicalParams& params, PointField field) {
  return std::make_shared<FieldWavefunction>(params, std::move(field));
}

WavefunctionPtr apply_ux(WavefunctionPtr wf, double delta_x) {
  return std::make_shared<TranslatedWavefunction>(std::move(wf), delta_x, 0.0, 0.0);
}

WavefunctionPtr apply_uy(WavefunctionPtr wf, double delta_y) {
  return std::make_shared<TranslatedWavefunction>(std::move(wf), 0.0, delta_y, 0.0);
}

WavefunctionPtr apply_ut(WavefunctionPtr wf, double delta_t) {
  return std::make_shared<TranslatedWavefunction>(std::move(wf), 0.0, 0.0, delta_t);
}

WavefunctionPtr make_residual(WavefunctionPtr wf, TimeStencil stencil) {
  return std::make_shared<ResidualWavefunction>(std::move(wf), stencil);
}

WavefunctionPtr make_generator(const PhysicalParams& params, const AnalyticState& base, int j,
                               int j_prime, TimeStencil stencil) {
  return std::make_shared<GeneratorWavefunction>(params, base, j, j_prime, stencil);
}

WavefunctionPtr make_superposition(const PhysicalParams& params,
                                   std::vector<std::pair<cplx, WavefunctionPtr>> terms) {
  return std::make_shared<SuperpositionWavefunction>(params, std::move(terms));
}

}  // namespace landau
