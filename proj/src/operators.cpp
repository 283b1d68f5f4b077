#include "landau/operators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "landau/errors.hpp"
#include "landau/fft.hpp"

namespace landau {

namespace {

constexpr cplx kI{0.0, 1.0};

std::size_t index(const GridSpec& g, int i, int j) {
  return static_cast<std::size_t>(i) * g.n_y + j;
}

bool periodic(const GridSpec& g, Axis axis) { return axis == Axis::X ? g.periodic_x : g.periodic_y; }
int count(const GridSpec& g, Axis axis) { return axis == Axis::X ? g.n_x : g.n_y; }
double spacing(const GridSpec& g, Axis axis) { return axis == Axis::X ? g.dx() : g.dy(); }

// χ = G⁻¹ψ (or ψ itself on Landau grids).
std::vector<cplx> reduce(const SampledState& s, const std::vector<cplx>& factor) {
  std::vector<cplx> u(s.amplitudes);
  if (s.grid.frame == GaugeFrame::Twisted) {
    for (std::size_t k = 0; k < u.size(); ++k) u[k] *= std::conj(factor[k]);
  }
  return u;
}

void spectral_derivative(std::vector<cplx>& u, const GridSpec& g, Axis axis) {
  const int n = count(g, axis);
  const int ax = static_cast<int>(axis);
  std::vector<double> k = fft::wavenumbers(n, spacing(g, axis));
  if (n % 2 == 0) k[static_cast<std::size_t>(n / 2)] = 0.0;
  fft::transform_axis(u, g.n_x, g.n_y, ax, fft::Direction::Forward);
  const double scale = 1.0 / n;
  for (int i = 0; i < g.n_x; ++i) {
    for (int j = 0; j < g.n_y; ++j) {
      const double kk = k[static_cast<std::size_t>(axis == Axis::X ? i : j)];
      u[index(g, i, j)] *= kI * kk * scale;
    }
  }
  fft::transform_axis(u, g.n_x, g.n_y, ax, fft::Direction::Backward);
}

// 4th-order first derivative along a strided line, one-sided at the edges.
void fd_line(const cplx* in, cplx* out, int n, std::ptrdiff_t stride, double h) {
  auto f = [&](int k) { return in[k * stride]; };
  const double c = 1.0 / (12.0 * h);
  out[0] = c * (-25.0 * f(0) + 48.0 * f(1) - 36.0 * f(2) + 16.0 * f(3) - 3.0 * f(4));
  out[stride] = c * (-3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4));
  for (int k = 2; k < n - 2; ++k) {
    out[k * stride] = c * (f(k - 2) - 8.0 * f(k - 1) + 8.0 * f(k + 1) - f(k + 2));
  }
  const int m = n - 1;
  out[(m - 1) * stride] =
      -c * (-3.0 * f(m) - 10.0 * f(m - 1) + 18.0 * f(m - 2) - 6.0 * f(m - 3) + f(m - 4));
  out[m * stride] =
      -c * (-25.0 * f(m) + 48.0 * f(m - 1) - 36.0 * f(m - 2) + 16.0 * f(m - 3) - 3.0 * f(m - 4));
}

// 4th-order second derivative along a strided line, one-sided 6-point stencils
// at the two edge points on each side.
void fd2_line(const cplx* in, cplx* out, int n, std::ptrdiff_t stride, double h) {
  auto f = [&](int k) { return in[k * stride]; };
  const double c = 1.0 / (12.0 * h * h);
  const int m = n - 1;
  auto g = [&](int k) { return in[(m - k) * stride]; };
  out[0] = c * (45.0 * f(0) - 154.0 * f(1) + 214.0 * f(2) - 156.0 * f(3) + 61.0 * f(4) - 10.0 * f(5));
  out[stride] = c * (10.0 * f(0) - 15.0 * f(1) - 4.0 * f(2) + 14.0 * f(3) - 6.0 * f(4) + f(5));
  for (int k = 2; k < n - 2; ++k) {
    out[k * stride] = c * (-f(k - 2) + 16.0 * f(k - 1) - 30.0 * f(k) + 16.0 * f(k + 1) - f(k + 2));
  }
  out[(m - 1) * stride] = c * (10.0 * g(0) - 15.0 * g(1) - 4.0 * g(2) + 14.0 * g(3) - 6.0 * g(4) + g(5));
  out[m * stride] = c * (45.0 * g(0) - 154.0 * g(1) + 214.0 * g(2) - 156.0 * g(3) + 61.0 * g(4) - 10.0 * g(5));
}

template <typename Line>
void fd_apply(std::vector<cplx>& u, const GridSpec& g, Axis axis, Line line) {
  std::vector<cplx> out(u.size());
  const double h = spacing(g, axis);
  if (axis == Axis::X) {
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.n_y; ++j) line(u.data() + j, out.data() + j, g.n_x, g.n_y, h);
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < g.n_x; ++i) {
      line(u.data() + index(g, i, 0), out.data() + index(g, i, 0), g.n_y, 1, h);
    }
  }
  u.swap(out);
}

void fd_derivative(std::vector<cplx>& u, const GridSpec& g, Axis axis) {
  fd_apply(u, g, axis, fd_line);
}

void axis_derivative(std::vector<cplx>& u, const GridSpec& g, Axis axis) {
  if (periodic(g, axis)) {
    spectral_derivative(u, g, axis);
  } else {
    fd_derivative(u, g, axis);
  }
}

// ∂_axis of the frame phase θ where G = e^{iθ}.
double frame_phase_gradient(const SampledState& s, Axis axis, int i, int j) {
  const GridSpec& g = s.grid;
  const double k = s.params.mass * s.params.cyclotron_frequency() / s.params.hbar;
  if (axis == Axis::X) return -k * g.y(j);
  return -k * (g.x(i) - g.twist_origin_x) +
         s.params.charge * s.params.field_e / s.params.hbar * (s.time - g.twist_origin_t);
}

SampledState derivative_unchecked(const SampledState& s, Axis axis) {
  const std::vector<cplx> factor = frame_factor(s.grid, s.params, s.time);
  std::vector<cplx> u = reduce(s, factor);
  std::vector<cplx> du = u;
  axis_derivative(du, s.grid, axis);
  SampledState out = s;
  const bool twisted = s.grid.frame == GaugeFrame::Twisted;
  for (int i = 0; i < s.grid.n_x; ++i) {
    for (int j = 0; j < s.grid.n_y; ++j) {
      const std::size_t k = index(s.grid, i, j);
      cplx d = du[k];
      if (twisted) d = factor[k] * (d + kI * frame_phase_gradient(s, axis, i, j) * u[k]);
      out.amplitudes[k] = d;
    }
  }
  return out;
}

// ∂²ψ along an axis. Periodic axes apply the spectral derivative twice; finite-
// difference axes use the direct second-derivative stencil on χ with
// ∂²(Gχ) = G(∂²χ + 2iθ′∂χ − θ′²χ) (θ′ does not vary along its own axis).
SampledState second_derivative_unchecked(const SampledState& s, Axis axis) {
  if (periodic(s.grid, axis)) return derivative_unchecked(derivative_unchecked(s, axis), axis);
  const std::vector<cplx> factor = frame_factor(s.grid, s.params, s.time);
  const std::vector<cplx> u = reduce(s, factor);
  std::vector<cplx> d1 = u;
  std::vector<cplx> d2 = u;
  fd_apply(d2, s.grid, axis, fd2_line);
  const bool twisted = s.grid.frame == GaugeFrame::Twisted;
  if (twisted) fd_apply(d1, s.grid, axis, fd_line);
  SampledState out = s;
  for (int i = 0; i < s.grid.n_x; ++i) {
    for (int j = 0; j < s.grid.n_y; ++j) {
      const std::size_t k = index(s.grid, i, j);
      cplx d = d2[k];
      if (twisted) {
        const double w = frame_phase_gradient(s, axis, i, j);
        d = factor[k] * (d + 2.0 * kI * w * d1[k] - w * w * u[k]);
      }
      out.amplitudes[k] = d;
    }
  }
  return out;
}

OperatorOptions unchecked() { return OperatorOptions{false}; }

template <typename F>
void scale_pointwise(SampledState& out, const SampledState& in, F&& weight) {
  for (int i = 0; i < in.grid.n_x; ++i) {
    const double x = in.grid.x(i);
    for (int j = 0; j < in.grid.n_y; ++j) out.at(i, j) += weight(x, in.grid.y(j)) * in.at(i, j);
  }
}

}  // namespace

void check_resolution(const SampledState& state) {
  const GridSpec& g = state.grid;
  const std::vector<cplx> u = reduce(state, frame_factor(g, state.params, state.time));
  double total = 0.0;
  for (const cplx& a : u) total += std::norm(a);
  if (total == 0.0) return;
  for (Axis axis : {Axis::X, Axis::Y}) {
    const int n = count(g, axis);
    if (periodic(g, axis)) {
      std::vector<cplx> spec = u;
      fft::transform_axis(spec, g.n_x, g.n_y, static_cast<int>(axis), fft::Direction::Forward);
      const std::vector<double> k = fft::wavenumbers(n, spacing(g, axis));
      const double cutoff = 0.8 * M_PI / spacing(g, axis);
      double high = 0.0;
      double all = 0.0;
      for (int i = 0; i < g.n_x; ++i) {
        for (int j = 0; j < g.n_y; ++j) {
          const double p = std::norm(spec[index(g, i, j)]);
          all += p;
          if (std::abs(k[static_cast<std::size_t>(axis == Axis::X ? i : j)]) > cutoff) high += p;
        }
      }
      if (high > 1e-6 * all) {
        std::ostringstream msg;
        msg << "state under-resolved along " << (axis == Axis::X ? "x" : "y")
            << ": spectral power fraction " << high / all << " above 0.8 k_Nyquist";
        throw ResolutionError(msg.str());
      }
    } else {
      double curvature = 0.0;
      double base = 0.0;
      for (int i = 0; i < g.n_x; ++i) {
        for (int j = 0; j < g.n_y; ++j) {
          const int m = axis == Axis::X ? i : j;
          if (m == 0 || m == n - 1) continue;
          const cplx c = u[index(g, i, j)];
          const cplx lo = axis == Axis::X ? u[index(g, i - 1, j)] : u[index(g, i, j - 1)];
          const cplx hi = axis == Axis::X ? u[index(g, i + 1, j)] : u[index(g, i, j + 1)];
          curvature += std::norm(hi - 2.0 * c + lo);
          base += std::norm(c);
        }
      }
      if (base > 0.0 && std::sqrt(curvature / base) > 1.0) {
        throw ResolutionError(std::string("state under-resolved along ") +
                              (axis == Axis::X ? "x" : "y") + " (finite-difference axis)");
      }
    }
  }
}

SampledState derivative(const SampledState& state, Axis axis, const OperatorOptions& opts) {
  state.grid.validate();
  if (opts.check_resolution) check_resolution(state);
  return derivative_unchecked(state, axis);
}

SampledState apply_momentum(const SampledState& state, Axis axis, const OperatorOptions& opts) {
  SampledState out = derivative(state, axis, opts);
  out *= cplx{0.0, -state.params.hbar};
  return out;
}

SampledState apply_mechanical_x(const SampledState& state, const OperatorOptions& opts) {
  SampledState out = apply_momentum(state, Axis::X, opts);
  const double mw = state.params.mass * state.params.cyclotron_frequency();
  scale_pointwise(out, state, [mw](double, double y) { return mw * y; });
  return out;
}

SampledState apply_pi_x(const SampledState& state, const OperatorOptions& opts) {
  return apply_momentum(state, Axis::X, opts);
}

SampledState apply_pi_y(const SampledState& state, const OperatorOptions& opts) {
  SampledState out = apply_momentum(state, Axis::Y, opts);
  const double mw = state.params.mass * state.params.cyclotron_frequency();
  const double qet = state.params.charge * state.params.field_e * state.time;
  scale_pointwise(out, state, [mw, qet](double x, double) { return mw * x - qet; });
  return out;
}

SampledState apply_hamiltonian(const SampledState& state, const OperatorOptions& opts) {
  state.params.validate();
  if (opts.check_resolution) check_resolution(state);
  const PhysicalParams& p = state.params;
  const double hb = p.hbar;
  const double mw = p.mass * p.cyclotron_frequency();
  SampledState out;
  if (state.grid.periodic_x) {
    out = apply_mechanical_x(apply_mechanical_x(state, unchecked()), unchecked());
  } else {
    // (p̂ₓ + mω_c y)² = −ħ²∂ₓ² − 2iħmω_c y ∂ₓ + (mω_c y)²
    out = second_derivative_unchecked(state, Axis::X);
    out *= cplx{-hb * hb, 0.0};
    SampledState dx = derivative_unchecked(state, Axis::X);
    scale_pointwise(out, dx, [hb, mw](double, double y) { return cplx(0.0, -2.0 * hb * mw * y); });
    scale_pointwise(out, state, [mw](double, double y) { return cplx(mw * mw * y * y, 0.0); });
  }
  if (state.grid.periodic_y) {
    out += apply_momentum(apply_momentum(state, Axis::Y, unchecked()), Axis::Y, unchecked());
  } else {
    SampledState dyy = second_derivative_unchecked(state, Axis::Y);
    dyy *= cplx{-hb * hb, 0.0};
    out += dyy;
  }
  out *= cplx{1.0 / (2.0 * p.mass), 0.0};
  const double qe = p.charge * p.field_e;
  scale_pointwise(out, state, [qe](double, double y) { return -qe * y; });
  return out;
}

double expectation(const SampledState& state, const SampledState& applied) {
  return inner(state, applied).real() / inner(state, state).real();
}

SampledState translate(const SampledState& state, Axis axis, double amount) {
  const GridSpec& g = state.grid;
  g.validate();
  if (amount == 0.0) return state;
  const std::vector<cplx> factor = frame_factor(g, state.params, state.time);
  std::vector<cplx> u = reduce(state, factor);
  const int n = count(g, axis);
  const double h = spacing(g, axis);
  if (periodic(g, axis)) {
    const std::vector<double> k = fft::wavenumbers(n, h);
    fft::transform_axis(u, g.n_x, g.n_y, static_cast<int>(axis), fft::Direction::Forward);
    for (int i = 0; i < g.n_x; ++i) {
      for (int j = 0; j < g.n_y; ++j) {
        const double kk = k[static_cast<std::size_t>(axis == Axis::X ? i : j)];
        u[index(g, i, j)] *= unit_phase(-kk * amount);
      }
    }
    fft::transform_axis(u, g.n_x, g.n_y, static_cast<int>(axis), fft::Direction::Backward);
    for (cplx& a : u) a /= static_cast<double>(n);
  } else {
    const double steps = amount / h;
    const long shift = std::lround(steps);
    if (std::abs(steps - static_cast<double>(shift)) > 1e-9 * std::max(1.0, std::abs(steps))) {
      throw ShiftError("shift of " + std::to_string(amount) +
                       " is not a whole number of grid steps on a non-periodic axis");
    }
    std::vector<cplx> shifted(u.size(), cplx{0.0, 0.0});
    for (int i = 0; i < g.n_x; ++i) {
      for (int j = 0; j < g.n_y; ++j) {
        const long src = (axis == Axis::X ? i : j) - shift;
        if (src < 0 || src >= n) continue;
        const std::size_t from = axis == Axis::X ? index(g, static_cast<int>(src), j)
                                                 : index(g, i, static_cast<int>(src));
        shifted[index(g, i, j)] = u[from];
      }
    }
    u.swap(shifted);
  }
  SampledState out = state;
  if (g.frame == GaugeFrame::Twisted) {
    const double sx = axis == Axis::X ? amount : 0.0;
    const double sy = axis == Axis::Y ? amount : 0.0;
    GridSpec moved = g.shifted(-sx, -sy);
    const std::vector<cplx> moved_factor = frame_factor(moved, state.params, state.time);
    for (std::size_t k = 0; k < u.size(); ++k) out.amplitudes[k] = moved_factor[k] * u[k];
  } else {
    out.amplitudes = std::move(u);
  }
  return out;
}

SampledState unitary_shift(const SampledState& state, Axis axis, double amount) {
  SampledState out = translate(state, axis, amount);
  if (axis == Axis::Y && amount != 0.0) {
    const PhysicalParams& p = state.params;
    const double mw = p.mass * p.cyclotron_frequency();
    const double qet = p.charge * p.field_e * state.time;
    for (int i = 0; i < state.grid.n_x; ++i) {
      const cplx phase = unit_phase(-amount * (mw * state.grid.x(i) - qet) / p.hbar);
      for (int j = 0; j < state.grid.n_y; ++j) out.at(i, j) *= phase;
    }
  }
  return out;
}

PhaseExtraction extract_global_phase(const SampledState& a, const SampledState& b) {
  const double na = window_norm(a);
  const double nb = window_norm(b);
  const cplx overlap = inner(a, b);
  if (na == 0.0 || nb == 0.0 || std::abs(overlap) <= 1e-12 * na * nb) {
    throw NoPhaseError("states are orthogonal; no global phase relates them");
  }
  PhaseExtraction r;
  r.phase = overlap / std::abs(overlap);
  SampledState diff = b;
  for (std::size_t k = 0; k < diff.amplitudes.size(); ++k) diff.amplitudes[k] -= r.phase * a.amplitudes[k];
  r.defect = window_norm(diff) / na;
  return r;
}

double proportionality_defect(const SampledState& a, const SampledState& b) {
  const double nb = window_norm(b);
  if (nb == 0.0) return 0.0;
  const cplx c = inner(a, b) / inner(a, a);
  SampledState diff = b;
  for (std::size_t k = 0; k < diff.amplitudes.size(); ++k) diff.amplitudes[k] -= c * a.amplitudes[k];
  return window_norm(diff) / nb;
}

SampledState GridOperator::apply(const SampledState& state, const OperatorOptions& opts) const {
  SampledState in = state;
  in.params = params;
  switch (kind) {
    case Kind::Hamiltonian: return apply_hamiltonian(in, opts);
    case Kind::PiX: return apply_pi_x(in, opts);
    case Kind::PiY: return apply_pi_y(in, opts);
    case Kind::ShiftX: return unitary_shift(in, Axis::X, amount);
    case Kind::ShiftY: return unitary_shift(in, Axis::Y, amount);
    case Kind::Derivative: return derivative(in, axis, opts);
    case Kind::Multiply: {
      if (!multiplier) throw std::invalid_argument("Multiply operator without a multiplier");
      SampledState out = in;
      for (int i = 0; i < in.grid.n_x; ++i) {
        for (int j = 0; j < in.grid.n_y; ++j) {
          out.at(i, j) = multiplier(in.grid.x(i), in.grid.y(j), in.time) * in.at(i, j);
        }
      }
      return out;
    }
    case Kind::EnergyOp:
    case Kind::TimeShift:
      throw std::invalid_argument(
          "energy and time-shift operators act on time-dependent wavefunctions, not snapshots");
  }
  throw std::invalid_argument("unknown operator kind");
}

}  // namespace landau
