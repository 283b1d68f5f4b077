#include "landau/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace landau {

const char* to_string(GaugeFrame frame) {
  return frame == GaugeFrame::Landau ? "landau" : "twisted";
}

void GridSpec::validate() const {
  if (n_x < 16 || n_y < 16) throw std::invalid_argument("grid needs at least 16 points per axis");
  if (!(dx() > 0.0) || !(dy() > 0.0) || !std::isfinite(dx()) || !std::isfinite(dy())) {
    throw std::invalid_argument("grid extents must be increasing and finite");
  }
}

GridSpec GridSpec::shifted(double shift_x, double shift_y) const {
  GridSpec g = *this;
  g.x_min += shift_x;
  g.x_max += shift_x;
  g.y_min += shift_y;
  g.y_max += shift_y;
  return g;
}

bool GridSpec::same_layout(const GridSpec& o) const {
  return n_x == o.n_x && n_y == o.n_y && x_min == o.x_min && x_max == o.x_max &&
         y_min == o.y_min && y_max == o.y_max;
}

SampledState SampledState::zeros(const GridSpec& grid, const PhysicalParams& params, double time) {
  grid.validate();
  SampledState s;
  s.grid = grid;
  s.time = time;
  s.params = params;
  s.amplitudes.assign(grid.size(), cplx{0.0, 0.0});
  return s;
}

void SampledState::validate() const {
  grid.validate();
  if (amplitudes.size() != grid.size()) throw std::invalid_argument("amplitude count mismatch");
  for (const cplx& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("state contains non-finite amplitudes");
    }
  }
}

namespace {

void require_compatible(const SampledState& a, const SampledState& b) {
  if (!a.grid.same_layout(b.grid) || a.amplitudes.size() != b.amplitudes.size()) {
    throw std::invalid_argument("states live on different grids");
  }
}

}  // namespace

SampledState& SampledState::operator+=(const SampledState& other) {
  require_compatible(*this, other);
  for (std::size_t k = 0; k < amplitudes.size(); ++k) amplitudes[k] += other.amplitudes[k];
  return *this;
}

SampledState& SampledState::operator-=(const SampledState& other) {
  require_compatible(*this, other);
  for (std::size_t k = 0; k < amplitudes.size(); ++k) amplitudes[k] -= other.amplitudes[k];
  return *this;
}

SampledState& SampledState::operator*=(cplx factor) {
  for (cplx& a : amplitudes) a *= factor;
  return *this;
}

SampledState operator+(SampledState a, const SampledState& b) { return a += b; }
SampledState operator-(SampledState a, const SampledState& b) { return a -= b; }
SampledState operator*(cplx factor, SampledState a) { return a *= factor; }

cplx inner(const SampledState& a, const SampledState& b) {
  require_compatible(a, b);
  // Row partial sums, accumulated in a fixed order.
  cplx total{0.0, 0.0};
  for (int i = 0; i < a.grid.n_x; ++i) {
    cplx row{0.0, 0.0};
    const std::size_t base = static_cast<std::size_t>(i) * a.grid.n_y;
    for (int j = 0; j < a.grid.n_y; ++j) row += std::conj(a.amplitudes[base + j]) * b.amplitudes[base + j];
    total += row;
  }
  return total * a.grid.cell_area();
}

double window_norm(const SampledState& state) { return std::sqrt(std::abs(inner(state, state))); }

SampledState sample(const PhysicalParams& params, const GridSpec& grid, double t,
                    const PointField& field) {
  SampledState s = SampledState::zeros(grid, params, t);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid.n_x; ++i) {
    const double x = grid.x(i);
    for (int j = 0; j < grid.n_y; ++j) s.at(i, j) = field(x, grid.y(j), t);
  }
  return s;
}

SampledState sample(const PhysicalParams& params, const AnalyticState& state, const GridSpec& grid,
                    double t) {
  state.validate();
  params.require_positive_cyclotron();
  return sample(params, grid, t,
                [&](double x, double y, double tt) { return evaluate(params, state, x, y, tt); });
}

std::vector<cplx> frame_factor(const GridSpec& grid, const PhysicalParams& params, double t) {
  std::vector<cplx> g(grid.size(), cplx{1.0, 0.0});
  if (grid.frame == GaugeFrame::Landau) return g;
  const double k = params.mass * params.cyclotron_frequency() / params.hbar;
  const double w = params.charge * params.field_e / params.hbar * (t - grid.twist_origin_t);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid.n_x; ++i) {
    const double slope = -k * (grid.x(i) - grid.twist_origin_x) + w;
    for (int j = 0; j < grid.n_y; ++j) {
      g[static_cast<std::size_t>(i) * grid.n_y + j] = unit_phase(slope * grid.y(j));
    }
  }
  return g;
}

GridSpec ensure_containment(const GridSpec& grid, const PhysicalParams& params, Axis axis,
                            double center, const WarningSink& warn) {
  const double ell = params.magnetic_length();
  GridSpec g = grid;
  double& lo = axis == Axis::X ? g.x_min : g.y_min;
  double& hi = axis == Axis::X ? g.x_max : g.y_max;
  int& n = axis == Axis::X ? g.n_x : g.n_y;
  if (lo <= center - 8.0 * ell && hi >= center + 8.0 * ell) return g;
  const double h = (hi - lo) / n;
  const double new_lo = std::min(lo, center - 10.0 * ell);
  const double new_hi = std::max(hi, center + 10.0 * ell);
  n = static_cast<int>(std::ceil((new_hi - new_lo) / h - 1e-9));
  lo = new_lo;
  hi = new_lo + n * h;
  if (warn) {
    std::ostringstream msg;
    msg << "grid " << (axis == Axis::X ? "x" : "y") << " axis expanded to [" << lo << ", " << hi
        << "] with " << n << " points to contain the envelope at " << center;
    warn(msg.str());
  }
  return g;
}

GridSpec family_grid(const PhysicalParams& params, const AnalyticState& state, double t,
                     const GridSpec& base, const WarningSink& warn) {
  state.validate();
  GridSpec g = base;
  const Axis axis = confined_axis(state.family);
  if (axis == Axis::Y) {
    g.frame = GaugeFrame::Landau;
    g.periodic_x = false;
    g.periodic_y = true;
  } else {
    g.frame = GaugeFrame::Twisted;
    g.periodic_x = true;
    g.periodic_y = false;
    g.twist_origin_x = state.offset_x;
    g.twist_origin_t = state.offset_t;
  }
  return ensure_containment(g, params, axis, envelope_center(params, state, t), warn);
}

}  // namespace landau
