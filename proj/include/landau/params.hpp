#pragma once

namespace landau {

// Physical constants of one run. Natural units (m = q = c = ħ = 1) by default;
// every formula keeps the symbolic constants so CGS values work unchanged.
struct PhysicalParams {
  double mass = 1.0;
  double charge = 1.0;
  double light_speed = 1.0;
  double hbar = 1.0;
  double field_b = 1.0;
  double field_e = 0.0;

  bool operator==(const PhysicalParams&) const = default;

  // ω_c = qB/(mc), signed.
  double cyclotron_frequency() const { return charge * field_b / (mass * light_speed); }
  double cyclotron_period() const;
  // ℓ² = ħ/(mω_c); negative when qB < 0.
  double magnetic_length_sq() const { return hbar / (mass * cyclotron_frequency()); }
  double magnetic_length() const;
  // s = sqrt(mω_c/ħ), the inverse magnetic length.
  double oscillator_scale() const;

  // Throws std::invalid_argument on m, ħ, c <= 0, ℰ < 0 or non-finite values;
  // DegenerateFieldError on B = 0.
  void validate() const;
  // validate() plus ω_c > 0, which the closed-form states and grid operators need.
  void require_positive_cyclotron() const;
};

struct DriftConstants {
  double drift_velocity = 0.0;  // v_d = qℰ/(mω_c)
  double displacement_y = 0.0;  // y_0 = qℰ/(mω_c²)
  double ft_shift = 0.0;        // a = y_0·sqrt(m|ω_c|/ħ)
};

DriftConstants derive(const PhysicalParams& params);

inline PhysicalParams natural_units(double field_b = 1.0, double field_e = 0.0) {
  PhysicalParams p;
  p.field_b = field_b;
  p.field_e = field_e;
  return p;
}

}  // namespace landau
