#pragma once

#include <complex>

#include "landau/params.hpp"
#include "landau/special_fn.hpp"

namespace landau {

using cplx = std::complex<double>;

// Closed-form solution families of the crossed-field problem in Landau gauge.
//   PsiX     : p̂ₓ eigenstates, Gaussian in y around δy + y_0          (uses δy)
//   PsiBarY  : π̂′_y eigenstates, Gaussian in x drifting at v_d        (uses δx)
//   ZetaX    : PsiX with δy = 0
//   ZetaBarY : PsiBarY with δx = 0
//   Ground   : ζ̄₀(x − δx, y, t − δt)                                  (uses δx, δt)
enum class Family { PsiX, PsiBarY, ZetaX, ZetaBarY, Ground };

const char* to_string(Family family);
Family family_from_string(const char* name);

struct AnalyticState {
  Family family = Family::ZetaX;
  int level = 0;
  double offset_x = 0.0;
  double offset_y = 0.0;
  double offset_t = 0.0;

  // Rejects offsets the family does not use, negative levels and n ≠ 0 for Ground.
  void validate() const;
};

struct EnergyValue {
  double value = 0.0;
};

// Axis along which a family's envelope is Gaussian-confined.
enum class Axis { X = 0, Y = 1 };
Axis confined_axis(Family family);

EnergyValue energy_psi(const PhysicalParams& params, int n, double delta_y);
EnergyValue energy_psibar(const PhysicalParams& params, int n);

cplx eval_psi(const PhysicalParams& params, int n, double delta_y, double x, double y, double t);
cplx eval_psibar(const PhysicalParams& params, int n, double delta_x, double x, double y, double t);
cplx eval_zeta(const PhysicalParams& params, int n, double x, double y, double t);
cplx eval_zetabar(const PhysicalParams& params, int n, double x, double y, double t);
cplx eval_ground(const PhysicalParams& params, double delta_x, double delta_t, double x, double y,
                 double t);

cplx evaluate(const PhysicalParams& params, const AnalyticState& state, double x, double y,
              double t);

// Energy label of the family: E_n for PsiX, E_n′ otherwise.
EnergyValue nominal_energy(const PhysicalParams& params, const AnalyticState& state);

// Coordinate of the envelope maximum along confined_axis(family) at time t.
double envelope_center(const PhysicalParams& params, const AnalyticState& state, double t);

// Û_t acting on ζ̄₀ or the ground state: returns Ground with δt increased by delta_t.
// Other families throw std::invalid_argument.
AnalyticState time_shift(const AnalyticState& state, double delta_t);

// exp(i·arg), with arg reduced modulo 2π first when |arg| > 1e6.
cplx unit_phase(double arg);

struct FourierLine {
  double half_width = 14.0;
  int points = 4096;
};

struct FourierPairResult {
  double residual = 0.0;  // ‖F{D} − c·φ_n(k + a)‖ / ‖φ_n(k + a)‖ on the k grid
  cplx phase{1.0, 0.0};   // optimal unit constant c (expected iⁿ)
};

inline constexpr int kFourierMaxLevel = 12;

// Transforms D(ξ) = e^{iaξ} φ_n(ξ) with F{f}(k) = (2π)^{-1/2} ∫ e^{ikξ} f(ξ) dξ
// on a uniform line grid and compares with the shifted oscillator φ_n(k + a).
FourierPairResult fourier_pair_check(int n, double shift_a, const FourierLine& line = {});
FourierPairResult fourier_pair_check(const PhysicalParams& params, int n,
                                     const FourierLine& line = {});

}  // namespace landau
