#include "landau/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "landau/errors.hpp"

namespace landau {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid physical parameters: ") + what);
}

}  // namespace

void PhysicalParams::validate() const {
  require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
  require(std::isfinite(hbar) && hbar > 0.0, "hbar must be positive");
  require(std::isfinite(light_speed) && light_speed > 0.0, "light_speed must be positive");
  require(std::isfinite(charge), "charge must be finite");
  require(std::isfinite(field_b), "field_b must be finite");
  require(std::isfinite(field_e) && field_e >= 0.0, "field_e must be non-negative");
  if (field_b == 0.0 || charge == 0.0) {
    throw DegenerateFieldError("cyclotron frequency undefined: q·B = 0");
  }
}

void PhysicalParams::require_positive_cyclotron() const {
  validate();
  if (cyclotron_frequency() <= 0.0) {
    throw DegenerateFieldError("closed-form states need q·B > 0 (cyclotron frequency " +
                               std::to_string(cyclotron_frequency()) + ")");
  }
}

double PhysicalParams::cyclotron_period() const {
  return 2.0 * std::numbers::pi / std::abs(cyclotron_frequency());
}

double PhysicalParams::magnetic_length() const { return std::sqrt(std::abs(magnetic_length_sq())); }

double PhysicalParams::oscillator_scale() const {
  return std::sqrt(mass * std::abs(cyclotron_frequency()) / hbar);
}

DriftConstants derive(const PhysicalParams& params) {
  params.validate();
  const double wc = params.cyclotron_frequency();
  const double force = params.charge * params.field_e;
  DriftConstants d;
  d.drift_velocity = force / (params.mass * wc);
  d.displacement_y = force / (params.mass * wc * wc);
  d.ft_shift = d.displacement_y * params.oscillator_scale();
  return d;
}

}  // namespace landau
