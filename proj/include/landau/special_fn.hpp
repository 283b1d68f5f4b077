#pragma once

#include <span>

namespace landau {

inline constexpr int kDefaultMaxLevel = 64;

// s = sqrt(mω/ħ), the inverse length of an oscillator with frequency ω.
struct OscillatorScale {
  double value = 1.0;
  explicit OscillatorScale(double s);
};

// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
// Throws RangeError for n < 0 or n > n_max.
double hermite_poly(int n, double x, int n_max = kDefaultMaxLevel);

// Normalized oscillator eigenfunction
//   φ_n(ξ) = (2ⁿ n!)^{-1/2} (s²/π)^{1/4} exp(−ξ²/2) H_n(ξ)
// evaluated in ratio form so that neither 2ⁿn! nor H_n overflow.
// Normalized with respect to the physical coordinate u where ξ = s·u.
double hermite_function(int n, double xi, OscillatorScale scale, int n_max = kDefaultMaxLevel);

// Fills out[k] = φ_k(ξ) for k = 0 .. out.size()-1 in one recurrence pass.
void hermite_functions(double xi, OscillatorScale scale, std::span<double> out,
                       int n_max = kDefaultMaxLevel);

}  // namespace landau
