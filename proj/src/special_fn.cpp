#include "landau/special_fn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "landau/errors.hpp"

namespace landau {

namespace {

void check_level(int n, int n_max) {
  if (n < 0 || n > n_max) {
    throw RangeError("Hermite level " + std::to_string(n) + " outside [0, " +
                     std::to_string(n_max) + "]");
  }
}

}  // namespace

OscillatorScale::OscillatorScale(double s) : value(s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("oscillator scale must be > 0");
}

double hermite_poly(int n, double x, int n_max) {
  check_level(n, n_max);
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_functions(double xi, OscillatorScale scale, std::span<double> out, int n_max) {
  if (out.empty()) return;
  check_level(static_cast<int>(out.size()) - 1, n_max);
  // φ_0 = π^{-1/4} e^{-ξ²/2};  φ_{k+1} = sqrt(2/(k+1)) ξ φ_k − sqrt(k/(k+1)) φ_{k−1}
  const double norm = std::sqrt(scale.value) / std::sqrt(std::sqrt(std::numbers::pi));
  double prev = 0.0;
  double cur = norm * std::exp(-0.5 * xi * xi);
  out[0] = cur;
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double next = std::sqrt(2.0 / (kk + 1.0)) * xi * cur - std::sqrt(kk / (kk + 1.0)) * prev;
    prev = cur;
    cur = next;
    out[k + 1] = cur;
  }
}

double hermite_function(int n, double xi, OscillatorScale scale, int n_max) {
  check_level(n, n_max);
  if (n < 16) {
    double buf[16];
    hermite_functions(xi, scale, std::span<double>(buf, static_cast<std::size_t>(n) + 1), n_max);
    return buf[n];
  }
  std::vector<double> buf(static_cast<std::size_t>(n) + 1);
  hermite_functions(xi, scale, buf, n_max);
  return buf.back();
}

}  // namespace landau
