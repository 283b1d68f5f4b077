#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "landau/analytic.hpp"
#include "landau/params.hpp"

namespace landau {

// How amplitudes relate to the periodic data that derivatives act on.
//   Landau  : derivatives act on ψ directly.
//   Twisted : derivatives act on χ = G⁻¹ψ with the magnetic-translation factor
//             G = exp(−i(mω_c/ħ)(x − x₀)y + i(qℰ/ħ)(t − t₀)y). States that are
//             plane waves in y with an x-dependent wavenumber (ψ̄, ζ̄, ground)
//             become y-independent χ in this frame.
enum class GaugeFrame { Landau, Twisted };

const char* to_string(GaugeFrame frame);

struct GridSpec {
  double x_min = -20.0;
  double x_max = 20.0;
  double y_min = -20.0;
  double y_max = 20.0;
  int n_x = 512;
  int n_y = 512;
  bool periodic_x = true;
  bool periodic_y = true;
  GaugeFrame frame = GaugeFrame::Landau;
  double twist_origin_x = 0.0;
  double twist_origin_t = 0.0;

  double dx() const { return (x_max - x_min) / n_x; }
  double dy() const { return (y_max - y_min) / n_y; }
  double x(int i) const { return x_min + i * dx(); }
  double y(int j) const { return y_min + j * dy(); }
  std::size_t size() const { return static_cast<std::size_t>(n_x) * static_cast<std::size_t>(n_y); }
  double cell_area() const { return dx() * dy(); }

  // n ≥ 16 per axis and positive spacing; throws std::invalid_argument.
  void validate() const;
  // Same sample layout, origin moved by (shift_x, shift_y).
  GridSpec shifted(double shift_x, double shift_y) const;
  bool same_layout(const GridSpec& other) const;
};

// Complex wavefunction samples at a definite time, row-major (n_x, n_y):
// amplitudes[i*n_y + j] = ψ(x_i, y_j, time).
struct SampledState {
  GridSpec grid;
  double time = 0.0;
  PhysicalParams params;
  std::vector<cplx> amplitudes;

  static SampledState zeros(const GridSpec& grid, const PhysicalParams& params, double time);

  cplx& at(int i, int j) { return amplitudes[static_cast<std::size_t>(i) * grid.n_y + j]; }
  const cplx& at(int i, int j) const {
    return amplitudes[static_cast<std::size_t>(i) * grid.n_y + j];
  }

  // Shape and finiteness.
  void validate() const;

  SampledState& operator+=(const SampledState& other);
  SampledState& operator-=(const SampledState& other);
  SampledState& operator*=(cplx factor);
};

SampledState operator+(SampledState a, const SampledState& b);
SampledState operator-(SampledState a, const SampledState& b);
SampledState operator*(cplx factor, SampledState a);

// Discrete window inner product Σ conj(a)·b·dx·dy and its norm.
cplx inner(const SampledState& a, const SampledState& b);
double window_norm(const SampledState& state);

using PointField = std::function<cplx(double x, double y, double t)>;

SampledState sample(const PhysicalParams& params, const GridSpec& grid, double t,
                    const PointField& field);
SampledState sample(const PhysicalParams& params, const AnalyticState& state, const GridSpec& grid,
                    double t);

// The magnetic-translation factor G of a twisted grid at time t (all ones for Landau).
std::vector<cplx> frame_factor(const GridSpec& grid, const PhysicalParams& params, double t);

using WarningSink = std::function<void(const std::string&)>;

// Expands the given axis to center ± 10ℓ (same spacing) if it does not hold
// center ± 8ℓ, reporting the change through warn.
GridSpec ensure_containment(const GridSpec& grid, const PhysicalParams& params, Axis axis,
                            double center, const WarningSink& warn = {});

// Grid suited to a family: its confined axis spectral (periodic), the extended
// axis on finite differences, the gauge frame that keeps the data smooth, and
// containment enforced around the envelope at time t.
GridSpec family_grid(const PhysicalParams& params, const AnalyticState& state, double t,
                     const GridSpec& base, const WarningSink& warn = {});

}  // namespace landau
