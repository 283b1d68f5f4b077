#include "landau/analytic.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "landau/errors.hpp"
#include "landau/fft.hpp"

namespace landau {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double envelope(const PhysicalParams& params, int n, double coordinate) {
  const double s = params.oscillator_scale();
  return hermite_function(n, s * coordinate, OscillatorScale(s));
}

}  // namespace

const char* to_string(Family family) {
  switch (family) {
    case Family::PsiX: return "psi";
    case Family::PsiBarY: return "psibar";
    case Family::ZetaX: return "zeta";
    case Family::ZetaBarY: return "zetabar";
    case Family::Ground: return "ground";
  }
  return "?";
}

Family family_from_string(const char* name) {
  for (Family f : {Family::PsiX, Family::PsiBarY, Family::ZetaX, Family::ZetaBarY, Family::Ground}) {
    if (std::strcmp(name, to_string(f)) == 0) return f;
  }
  throw std::invalid_argument(std::string("unknown family '") + name + "'");
}

void AnalyticState::validate() const {
  if (level < 0) throw std::invalid_argument("level must be non-negative");
  const bool uses_x = family == Family::PsiBarY || family == Family::Ground;
  const bool uses_y = family == Family::PsiX;
  const bool uses_t = family == Family::Ground;
  if ((!uses_x && offset_x != 0.0) || (!uses_y && offset_y != 0.0) || (!uses_t && offset_t != 0.0)) {
    throw std::invalid_argument(std::string("family ") + to_string(family) +
                                " does not take the given offsets");
  }
  if (family == Family::Ground && level != 0) {
    throw std::invalid_argument("the ground state has level 0");
  }
}

Axis confined_axis(Family family) {
  return (family == Family::PsiX || family == Family::ZetaX) ? Axis::Y : Axis::X;
}

cplx unit_phase(double arg) {
  if (std::abs(arg) > 1e6) arg = std::remainder(arg, kTwoPi);
  return std::polar(1.0, arg);
}

EnergyValue energy_psibar(const PhysicalParams& params, int n) {
  if (n < 0) throw RangeError("level must be non-negative");
  const double wc = params.cyclotron_frequency();
  const double qe = params.charge * params.field_e;
  return {params.hbar * wc * (n + 0.5) - qe * qe / (2.0 * params.mass * wc * wc)};
}

EnergyValue energy_psi(const PhysicalParams& params, int n, double delta_y) {
  return {energy_psibar(params, n).value - params.charge * params.field_e * delta_y};
}

cplx eval_psi(const PhysicalParams& params, int n, double delta_y, double x, double y, double t) {
  params.require_positive_cyclotron();
  const DriftConstants d = derive(params);
  const double k = params.mass * params.cyclotron_frequency() / params.hbar;
  const double arg = -energy_psi(params, n, delta_y).value * t / params.hbar - k * x * delta_y;
  return unit_phase(arg) * envelope(params, n, y - delta_y - d.displacement_y);
}

cplx eval_psibar(const PhysicalParams& params, int n, double delta_x, double x, double y, double t) {
  params.require_positive_cyclotron();
  const DriftConstants d = derive(params);
  const double wc = params.cyclotron_frequency();
  const double k = params.mass * wc / params.hbar;
  const double qe = params.charge * params.field_e;
  const double drift = x - delta_x - d.drift_velocity * t;
  const double arg = -energy_psibar(params, n).value * t / params.hbar - k * (x - delta_x) * y +
                     qe / params.hbar * t * y + qe / (params.hbar * wc) * drift;
  return unit_phase(arg) * envelope(params, n, drift);
}

cplx eval_zeta(const PhysicalParams& params, int n, double /*x*/, double y, double t) {
  params.require_positive_cyclotron();
  const DriftConstants d = derive(params);
  return unit_phase(-energy_psibar(params, n).value * t / params.hbar) *
         envelope(params, n, y - d.displacement_y);
}

cplx eval_zetabar(const PhysicalParams& params, int n, double x, double y, double t) {
  return eval_psibar(params, n, 0.0, x, y, t);
}

cplx eval_ground(const PhysicalParams& params, double delta_x, double delta_t, double x, double y,
                 double t) {
  return eval_zetabar(params, 0, x - delta_x, y, t - delta_t);
}

cplx evaluate(const PhysicalParams& params, const AnalyticState& state, double x, double y,
              double t) {
  switch (state.family) {
    case Family::PsiX: return eval_psi(params, state.level, state.offset_y, x, y, t);
    case Family::PsiBarY: return eval_psibar(params, state.level, state.offset_x, x, y, t);
    case Family::ZetaX: return eval_zeta(params, state.level, x, y, t);
    case Family::ZetaBarY: return eval_zetabar(params, state.level, x, y, t);
    case Family::Ground: return eval_ground(params, state.offset_x, state.offset_t, x, y, t);
  }
  throw std::invalid_argument("unknown family");
}

EnergyValue nominal_energy(const PhysicalParams& params, const AnalyticState& state) {
  if (state.family == Family::PsiX) return energy_psi(params, state.level, state.offset_y);
  return energy_psibar(params, state.level);
}

double envelope_center(const PhysicalParams& params, const AnalyticState& state, double t) {
  const DriftConstants d = derive(params);
  switch (state.family) {
    case Family::PsiX: return state.offset_y + d.displacement_y;
    case Family::ZetaX: return d.displacement_y;
    case Family::PsiBarY: return state.offset_x + d.drift_velocity * t;
    case Family::ZetaBarY: return d.drift_velocity * t;
    case Family::Ground: return state.offset_x + d.drift_velocity * (t - state.offset_t);
  }
  throw std::invalid_argument("unknown family");
}

AnalyticState time_shift(const AnalyticState& state, double delta_t) {
  const bool shiftable = state.family == Family::Ground ||
                         (state.family == Family::ZetaBarY && state.level == 0);
  if (!shiftable) {
    throw std::invalid_argument(std::string("time_shift: family ") + to_string(state.family) +
                                " carries no time offset");
  }
  AnalyticState out = state;
  out.family = Family::Ground;
  out.offset_t = state.offset_t + delta_t;
  return out;
}

FourierPairResult fourier_pair_check(int n, double shift_a, const FourierLine& line) {
  if (n < 0 || n > kFourierMaxLevel) {
    throw RangeError("Fourier check supports levels 0.." + std::to_string(kFourierMaxLevel));
  }
  if (line.points < 16 || !(line.half_width > 0.0)) throw std::invalid_argument("bad Fourier line");
  const int count = line.points;
  const double h = 2.0 * line.half_width / count;
  const double xi0 = -line.half_width;
  const OscillatorScale unit(1.0);

  std::vector<cplx> data(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double xi = xi0 + j * h;
    data[static_cast<std::size_t>(j)] = unit_phase(shift_a * xi) * hermite_function(n, xi, unit);
  }
  fft::transform(data, fft::Direction::Backward);

  const std::vector<double> k = fft::wavenumbers(count, h);
  const double prefactor = h / std::sqrt(kTwoPi);
  std::vector<double> expected(static_cast<std::size_t>(count));
  cplx overlap{0.0, 0.0};
  double expected_sq = 0.0;
  for (std::size_t m = 0; m < data.size(); ++m) {
    data[m] *= prefactor * unit_phase(k[m] * xi0);
    expected[m] = hermite_function(n, k[m] + shift_a, unit);
    overlap += expected[m] * data[m];
    expected_sq += expected[m] * expected[m];
  }
  FourierPairResult result;
  result.phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
  double diff_sq = 0.0;
  for (std::size_t m = 0; m < data.size(); ++m) diff_sq += std::norm(data[m] - result.phase * expected[m]);
  result.residual = std::sqrt(diff_sq / expected_sq);
  return result;
}

FourierPairResult fourier_pair_check(const PhysicalParams& params, int n, const FourierLine& line) {
  return fourier_pair_check(n, derive(params).ft_shift, line);
}

}  // namespace landau
