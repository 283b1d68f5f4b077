#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "landau/errors.hpp"
#include "landau/evolver.hpp"
#include "landau/operators.hpp"

using namespace landau;

namespace {

GridSpec landau_grid(double hx, int nx, double hy, int ny) {
  GridSpec g;
  g.x_min = -hx;
  g.x_max = hx;
  g.y_min = -hy;
  g.y_max = hy;
  g.n_x = nx;
  g.n_y = ny;
  return g;
}

GridSpec ground_grid(int nx) {
  GridSpec g = landau_grid(20.0, nx, 4.0, 16);
  g.frame = GaugeFrame::Twisted;
  return g;
}

double overlap(const SampledState& a, const SampledState& b) {
  return std::abs(inner(a, b)) / (window_norm(a) * window_norm(b));
}

SampledState packet(const PhysicalParams& p, const GridSpec& g, double cx, double cy, double px) {
  const double norm = 1.0 / std::sqrt(std::numbers::pi);
  return sample(p, g, 0.0, [=](double x, double y, double) {
    const double dx = x - cx, dy = y - cy;
    return norm * std::exp(-0.5 * (dx * dx + dy * dy)) * unit_phase(px * x);
  });
}

}  // namespace

TEST_CASE("zeta_0 is stationary under the evolver") {
  const PhysicalParams p = natural_units(1.0, 0.0);
  const double period = p.cyclotron_period();
  const GridSpec g = landau_grid(20.0, 16, 20.0, 256);
  const AnalyticState zeta{Family::ZetaX, 0, 0.0, 0.0, 0.0};
  EvolverConfig cfg;
  cfg.dt = period / 1000.0;
  cfg.n_steps = 1000;
  cfg.grid = g;
  cfg.record_every = 50;
  const EvolutionResult r = evolve(sample(p, zeta, g, 0.0), cfg);
  CHECK(overlap(r.final_state, sample(p, zeta, g, period)) > 0.9999);
  CHECK(r.final_state.time == doctest::Approx(period));
  const Trajectory& tr = r.trajectory;
  REQUIRE(tr.size() == 21);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    CHECK(std::abs(tr.norm[k] - tr.norm[0]) < 1e-10);
    CHECK(std::abs(tr.mean_y[k]) < 1e-10);
    CHECK(std::abs(tr.mean_piy[k] - tr.mean_piy[0]) < 1e-10);
    CHECK(std::abs(tr.energy[k] - 0.5) < 1e-8 * 0.5);
  }
}

TEST_CASE("zeta_0 in a crossed field keeps its centre at y_0") {
  const PhysicalParams p = natural_units(1.0, 1.0);
  const GridSpec g = landau_grid(20.0, 16, 20.0, 256);
  EvolverConfig cfg;
  cfg.dt = p.cyclotron_period() / 1000.0;
  cfg.n_steps = 500;
  cfg.grid = g;
  cfg.record_every = 100;
  const EvolutionResult r = evolve(sample(p, AnalyticState{Family::ZetaX, 0, 0.0, 0.0, 0.0}, g, 0.0), cfg);
  for (double y : r.trajectory.mean_y) CHECK(y == doctest::Approx(derive(p).displacement_y).epsilon(1e-10));
}

TEST_CASE("ground state tracked over one period, second-order convergence") {
  const PhysicalParams p = natural_units(1.0, 1.0);
  const double period = p.cyclotron_period();
  const GridSpec g = ground_grid(256);
  const AnalyticState ground{Family::Ground, 0, 0.0, 0.0, 0.0};
  const SampledState exact = sample(p, ground, g, period);
  double errors[2];
  for (int k = 0; k < 2; ++k) {
    EvolverConfig cfg;
    cfg.n_steps = 500 << k;
    cfg.dt = period / cfg.n_steps;
    cfg.grid = g;
    cfg.record_every = cfg.n_steps;
    const EvolutionResult r = evolve(sample(p, ground, g, 0.0), cfg);
    CHECK(overlap(r.final_state, exact) > 0.999);
    CHECK(std::abs(r.trajectory.norm.back() - r.trajectory.norm.front()) < 1e-10);
    CHECK(std::abs(r.trajectory.mean_piy.back() - r.trajectory.mean_piy.front()) < 1e-10);
    errors[k] = window_norm(r.final_state - exact) / window_norm(exact);
  }
  const double ratio = errors[0] / errors[1];
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("free packet spreads by the textbook law") {
  const PhysicalParams p = natural_units(1.0, 0.0);
  const GridSpec g = landau_grid(20.0, 128, 20.0, 128);
  EvolverConfig cfg;
  cfg.dt = 0.005;
  cfg.n_steps = 400;
  cfg.grid = g;
  cfg.magnetic = false;
  cfg.record_every = 400;
  const SampledState s0 = packet(p, g, 0.0, 0.0, 0.0);
  const EvolutionResult r = evolve(s0, cfg);
  const double t = cfg.dt * cfg.n_steps;
  double var = 0.0, mass = 0.0;
  for (int i = 0; i < g.n_x; ++i)
    for (int j = 0; j < g.n_y; ++j) {
      const double w = std::norm(r.final_state.at(i, j));
      var += w * g.x(i) * g.x(i);
      mass += w;
    }
  var /= mass;
  // ⟨x²⟩ = (w²/2)(1 + (ħt/(m w²))²) with w = 1.
  const double expected = 0.5 * (1.0 + t * t);
  CHECK(std::abs(var - expected) < 0.01 * expected);
}

TEST_CASE("coherent packet obeys the Newton-Lorentz equations") {
  for (double e : {0.0, 1.0}) {
    CAPTURE(e);
    const PhysicalParams p = natural_units(1.0, e);
    // A bare Gaussian breathes in Landau gauge; ±20ℓ keeps its tails off the edges.
    const GridSpec g = landau_grid(20.0, 160, 20.0, 160);
    EvolverConfig cfg;
    cfg.dt = p.cyclotron_period() / 1000.0;
    cfg.n_steps = 1000;
    cfg.grid = g;
    const LorentzReport r = ehrenfest_lorentz_check(packet(p, g, -3.0, 1.0, 0.8), cfg);
    CHECK(r.max_relative_defect < 1e-3);
    CHECK(r.pix_drift < 1e-6);
    CHECK(r.piy_drift < 1e-6);
    CHECK(r.mean_drift_velocity == doctest::Approx(e).epsilon(1e-3).scale(1.0));
    CHECK(r.trajectory.size() == 1001);
  }
}

TEST_CASE("Crank-Nicolson agrees with the stationary solution") {
  const PhysicalParams p = natural_units(1.0, 0.0);
  const GridSpec g = landau_grid(10.0, 16, 10.0, 128);
  const AnalyticState zeta{Family::ZetaX, 1, 0.0, 0.0, 0.0};
  EvolverConfig cfg;
  cfg.scheme = Scheme::CrankNicolson;
  cfg.dt = p.cyclotron_period() / 1000.0;
  cfg.n_steps = 100;
  cfg.grid = g;
  cfg.record_every = 100;
  const EvolutionResult r = evolve(sample(p, zeta, g, 0.0), cfg);
  CHECK(overlap(r.final_state, sample(p, zeta, g, r.final_state.time)) > 0.9999);
  CHECK(std::abs(r.trajectory.norm.back() - r.trajectory.norm.front()) < 1e-9);
  CHECK(std::abs(r.trajectory.energy.back() - 1.5) < 1e-6);
}

TEST_CASE("configuration and boundary errors") {
  const PhysicalParams p = natural_units(1.0, 0.0);
  const GridSpec g = landau_grid(20.0, 64, 20.0, 64);
  const SampledState s = packet(p, g, 0.0, 0.0, 0.0);
  EvolverConfig cfg;
  cfg.grid = g;
  cfg.n_steps = 10;
  cfg.dt = 0.02 * p.cyclotron_period();
  CHECK_THROWS_AS(evolve(s, cfg), std::invalid_argument);
  cfg.dt = 0.0;
  CHECK_THROWS_AS(evolve(s, cfg), std::invalid_argument);
  cfg.dt = 0.001;
  cfg.grid.periodic_y = false;
  CHECK_THROWS_AS(cfg.validate(p), std::invalid_argument);
  cfg.grid = landau_grid(20.0, 32, 20.0, 64);
  CHECK_THROWS_AS(evolve(s, cfg), std::invalid_argument);
  cfg.grid = g;
  CHECK_NOTHROW(evolve(s, cfg));
  const GridSpec fine = landau_grid(20.0, 256, 20.0, 256);
  cfg.grid = fine;
  const SampledState edge = packet(p, fine, 0.0, 15.0, 0.0);
  CHECK_THROWS_AS(evolve(edge, cfg), BoundaryError);
}

TEST_CASE("trajectory rows match direct expectation values and export to CSV") {
  const PhysicalParams p = natural_units(1.0, 1.0);
  const GridSpec g = landau_grid(12.0, 64, 12.0, 64);
  const SampledState s = packet(p, g, 0.5, -0.5, 0.3);
  EvolverConfig cfg;
  cfg.grid = g;
  cfg.dt = 0.01;
  cfg.n_steps = 7;
  cfg.record_every = 3;
  const EvolutionResult r = evolve(s, cfg);
  const Trajectory& tr = r.trajectory;
  REQUIRE(tr.size() == 4);  // steps 0, 3, 6 and the final step 7
  CHECK(tr.times.back() == doctest::Approx(0.07));
  CHECK(tr.mean_pix[0] == doctest::Approx(expectation(s, apply_pi_x(s))).epsilon(1e-12));
  CHECK(tr.mean_piy[0] == doctest::Approx(expectation(s, apply_pi_y(s))).epsilon(1e-12));
  CHECK(tr.energy[0] == doctest::Approx(expectation(s, apply_hamiltonian(s))).epsilon(1e-12));
  std::ostringstream csv;
  tr.write_csv(csv);
  const std::string text = csv.str();
  CHECK(text.rfind("t,mean_x,mean_y,pix,piy,norm,energy\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
