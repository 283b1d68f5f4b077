#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "landau/errors.hpp"
#include "landau/params.hpp"

using namespace landau;

TEST_CASE("derive: zero electric field gives vanishing drift constants") {
  const DriftConstants d = derive(natural_units(1.0, 0.0));
  CHECK(d.drift_velocity == 0.0);
  CHECK(d.displacement_y == 0.0);
  CHECK(d.ft_shift == 0.0);
}

TEST_CASE("derive: hand substitution in natural units") {
  const DriftConstants d = derive(natural_units(1.0, 1.0));
  CHECK(d.drift_velocity == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.displacement_y == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.ft_shift == doctest::Approx(1.0).epsilon(1e-15));

  const DriftConstants d2 = derive(natural_units(2.0, 1.0));
  CHECK(d2.drift_velocity == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d2.displacement_y == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(d2.ft_shift == doctest::Approx(0.25 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("derive: general units against independent substitution") {
  PhysicalParams p{2.0, 3.0, 5.0, 0.7, 4.0, 1.5};
  const double wc = 3.0 * 4.0 / (2.0 * 5.0);
  CHECK(p.cyclotron_frequency() == doctest::Approx(wc));
  CHECK(p.cyclotron_period() == doctest::Approx(2.0 * std::numbers::pi / wc));
  CHECK(p.magnetic_length_sq() == doctest::Approx(0.7 / (2.0 * wc)));
  const DriftConstants d = derive(p);
  CHECK(d.drift_velocity == doctest::Approx(3.0 * 1.5 / (2.0 * wc)));
  CHECK(d.displacement_y == doctest::Approx(3.0 * 1.5 / (2.0 * wc * wc)));
  CHECK(d.ft_shift == doctest::Approx(d.displacement_y * std::sqrt(2.0 * wc / 0.7)).epsilon(1e-15));
}

TEST_CASE("cyclotron frequency scales linearly in B and inversely in m and c") {
  const PhysicalParams base{1.3, 0.9, 1.1, 1.0, 0.8, 0.0};
  for (double f : {0.5, 2.0, 7.0}) {
    PhysicalParams b = base, m = base, c = base;
    b.field_b *= f;
    m.mass *= f;
    c.light_speed *= f;
    CHECK(b.cyclotron_frequency() == doctest::Approx(f * base.cyclotron_frequency()));
    CHECK(m.cyclotron_frequency() == doctest::Approx(base.cyclotron_frequency() / f));
    CHECK(c.cyclotron_frequency() == doctest::Approx(base.cyclotron_frequency() / f));
  }
}

TEST_CASE("negative field carries its sign into the cyclotron frequency") {
  const PhysicalParams p = natural_units(-2.0, 0.0);
  CHECK(p.cyclotron_frequency() == doctest::Approx(-2.0));
  CHECK_NOTHROW(derive(p));
  CHECK_THROWS_AS(p.require_positive_cyclotron(), DegenerateFieldError);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(derive(natural_units(0.0, 1.0)), DegenerateFieldError);
  PhysicalParams p = natural_units();
  p.mass = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = natural_units();
  p.hbar = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = natural_units();
  p.light_speed = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
