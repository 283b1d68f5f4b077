#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "landau/errors.hpp"
#include "landau/operators.hpp"
#include "landau/solutions.hpp"
#include "landau/state_io.hpp"
#include "landau/wavefunction.hpp"

using namespace landau;

namespace {

double relative_gap(const SampledState& applied, cplx eigenvalue, const SampledState& state) {
  return window_norm(applied - eigenvalue * state) / window_norm(state);
}

GridSpec small_periodic(int n = 128, double half = 10.0) {
  GridSpec g;
  g.x_min = g.y_min = -half;
  g.x_max = g.y_max = half;
  g.n_x = g.n_y = n;
  return g;
}

SampledState gaussian(const PhysicalParams& p, const GridSpec& g, double cx, double cy, double kx, double ky) {
  return sample(p, g, 0.0, [=](double x, double y, double) {
    return std::exp(-0.5 * ((x - cx) * (x - cx) + (y - cy) * (y - cy))) * unit_phase(kx * x + ky * y);
  });
}

// Twisted grid on which the ground state is y-independent after the frame factor.
GridSpec ground_phase_grid(double dx, double dy, double dt) {
  GridSpec g;
  g.frame = GaugeFrame::Twisted;
  g.x_min = dx - 20.0;
  g.x_max = dx + 20.0;
  g.n_x = 512;
  g.y_min = 0.0;
  g.y_max = 4.0 * dy;
  g.n_y = 16;
  g.twist_origin_x = dx;
  g.twist_origin_t = dt;
  return g;
}

}  // namespace

TEST_CASE("apply_hamiltonian: eigenvalues and linearity") {
  const PhysicalParams p = natural_units(1.0, 1.0);
  const AnalyticState zeta{Family::ZetaX, 0, 0.0, 0.0, 0.0};
  const GridSpec g = family_grid(p, zeta, 0.0, GridSpec{});
  const SampledState s = sample(p, zeta, g, 0.0);
  const double e0 = energy_psibar(p, 0).value;
  // E′₀ = 0 here, so the deviation is measured against ħω_c.
  CHECK(window_norm(apply_hamiltonian(s) - e0 * s) / window_norm(s) / p.hbar < 1e-6);

  const SampledState zero = SampledState::zeros(g, p, 0.0);
  CHECK(window_norm(apply_hamiltonian(zero)) == 0.0);

  const PhysicalParams p0 = natural_units(1.0, 0.0);
  const AnalyticState psi{Family::PsiX, 1, 0.0, 0.0, 0.0};
  const GridSpec gp = family_grid(p0, psi, 0.0, GridSpec{});
  const SampledState sp = sample(p0, psi, gp, 0.0);
  CHECK(relative_gap(apply_hamiltonian(sp), 1.5, sp) < 1e-6);
}

TEST_CASE("conserved momenta: eigenvalue relations") {
  const PhysicalParams p = natural_units(1.0, 1.0);
  // x is a finite-difference axis for ψ; 1024 points keep the 4th-order error
  // of the e^{-iδy x} phase below 1e-6 up to |δy| = 1.2.
  GridSpec fine;
  fine.n_x = 1024;
  for (double dy : {0.0, 0.5, -1.2}) {
    const AnalyticState psi{Family::PsiX, 2, 0.0, dy, 0.0};
    const GridSpec g = family_grid(p, psi, 0.3, fine);
    const SampledState s = sample(p, psi, g, 0.3);
    CHECK(window_norm(apply_pi_x(s) + cplx(p.mass * p.cyclotron_frequency() * dy) * s) / window_norm(s) < 1e-6);
  }
  for (double dx : {0.0, 0.6}) {
    for (double t : {0.0, 0.9}) {
      const AnalyticState psibar{Family::PsiBarY, 1, dx, 0.0, 0.0};
      const GridSpec g = family_grid(p, psibar, t, GridSpec{});
      const SampledState s = sample(p, psibar, g, t);
      CHECK(window_norm(apply_pi_y(s) - cplx(p.mass * p.cyclotron_frequency() * dx) * s) / window_norm(s) < 1e-6);
    }
  }
  const GridSpec g = small_periodic(64);
  const SampledState constant = sample(p, g, 0.0, [](double, double, double) { return cplx{0.7, -0.2}; });
  CHECK(window_norm(apply_pi_x(constant)) < 1e-12);
}

TEST_CASE("apply_energy_op: eigenvalue, static field, non-proportional drifting state") {
  const PhysicalParams p = natural_units(1.0, 1.0);
  const double dt_fd = 1e-4 * p.cyclotron_period();
  const AnalyticState zeta{Family::ZetaX, 1, 0.0, 0.0, 0.0};
  const GridSpec gz = family_grid(p, zeta, 0.0, GridSpec{});
  const SampledState sz = sample(p, zeta, gz, 0.2);
  const double e1 = energy_psibar(p, 1).value;
  CHECK(relative_gap(apply_energy_op(p, zeta, gz, 0.2, dt_fd), e1, sz) < 1e-6);

  auto dummy = make_field(p, [](double x, double y, double) { return cplx(std::exp(-x * x - y * y), 0.0); });
  const GridSpec g = small_periodic(64);
  CHECK(window_norm(dummy->apply_energy(g, 0.3, TimeStencil::for_params(p, 2))) < 1e-12);

  const AnalyticState psibar{Family::PsiBarY, 0, 0.4, 0.0, 0.0};
  const GridSpec gb = family_grid(p, psibar, 0.5, GridSpec{});
  const SampledState sb = sample(p, psibar, gb, 0.5);
  CHECK(proportionality_defect(sb, apply_energy_op(p, psibar, gb, 0.5, dt_fd)) > 0.1);
}

TEST_CASE("schrodinger_residual: solutions vanish, a mis-centred state does not") {
  const PhysicalParams p = natural_units(1.0, 1.0);
  const double period = p.cyclotron_period();
  const AnalyticState zeta{Family::ZetaX, 0, 0.0, 0.0, 0.0};
  CHECK(schrodinger_residual(p, zeta, family_grid(p, zeta, 0.0, GridSpec{}), 0.0) < 1e-6);
  const AnalyticState zetabar{Family::ZetaBarY, 2, 0.0, 0.0, 0.0};
  const double t = 0.7 * period;
  CHECK(schrodinger_residual(p, zetabar, family_grid(p, zetabar, t, GridSpec{}), t) < 1e-5);
  auto bad = make_field(p, [p](double x, double y, double tt) { return eval_zeta(p, 0, x, y - 0.5, tt); });
  CHECK(schrodinger_residual(*bad, family_grid(p, zeta, 0.0, GridSpec{}), 0.0, TimeStencil::for_params(p)) > 1e-2);
}

TEST_CASE("unitary_shift: identity, translation of psibar, norm preservation") {
  const PhysicalParams p = natural_units(1.0, 1.0);
  const AnalyticState psibar0{Family::PsiBarY, 1, 0.0, 0.0, 0.0};
  const GridSpec g = family_grid(p, psibar0, 0.4, GridSpec{});
  const SampledState s = sample(p, psibar0, g, 0.4);
  const SampledState same = unitary_shift(s, Axis::X, 0.0);
  CHECK(window_norm(same - s) == 0.0);

  for (double dx : {0.75, -1.3}) {
    const SampledState shifted = unitary_shift(s, Axis::X, dx);
    const SampledState expect = sample(p, AnalyticState{Family::PsiBarY, 1, dx, 0.0, 0.0}, g, 0.4);
    double worst = 0.0;
    for (std::size_t k = 0; k < s.amplitudes.size(); ++k)
      worst = std::max(worst, std::abs(shifted.amplitudes[k] - expect.amplitudes[k]));
    CHECK(worst < 1e-8);
  }

  const GridSpec gp = small_periodic();
  const SampledState packet = gaussian(p, gp, 0.5, -1.0, 0.8, 0.3);
  const double n0 = window_norm(packet);
  for (double a : {0.37, 2.0, -4.1}) {
    CHECK(std::abs(window_norm(unitary_shift(packet, Axis::X, a)) - n0) < 1e-10 * n0);
    CHECK(std::abs(window_norm(unitary_shift(packet, Axis::Y, a)) - n0) < 1e-10 * n0);
  }
}

TEST_CASE("unitary_shift: finite-difference axes need whole grid steps") {
  const PhysicalParams p = natural_units(1.0, 0.0);
  GridSpec g = small_periodic(64);
  g.periodic_x = false;
  const SampledState s = gaussian(p, g, 0.0, 0.0, 0.0, 0.0);
  CHECK_THROWS_AS(unitary_shift(s, Axis::X, 0.37 * g.dx()), ShiftError);
  const SampledState moved = unitary_shift(s, Axis::X, 3.0 * g.dx());
  CHECK(std::abs(moved.at(20, 30) - s.at(17, 30)) < 1e-15);
}

TEST_CASE("extract_global_phase: identity, ground-state phases, orthogonal inputs") {
  const PhysicalParams p = natural_units(1.0, 1.0);
  const GridSpec gp = small_periodic(64);
  const SampledState a = gaussian(p, gp, 0.0, 0.0, 0.0, 0.0);
  const PhaseExtraction same = extract_global_phase(a, a);
  CHECK(std::abs(same.phase - cplx(1.0, 0.0)) < 1e-15);
  CHECK(same.defect < 1e-15);
  const SampledState far = gaussian(p, gp, 0.0, 0.0, 0.0, 0.0);
  SampledState odd = sample(p, gp, 0.0, [](double x, double y, double) { return x * std::exp(-0.5 * (x * x + y * y)); });
  CHECK_THROWS_AS(extract_global_phase(far, odd), NoPhaseError);
  CHECK_THROWS_AS(extract_global_phase(a, SampledState::zeros(gp, p, 0.0)), NoPhaseError);

  const double pi = std::numbers::pi;
  // m ω_c δx δy = 2π and qℰ δt δy = 2π.
  {
    const double dx = 2.0 * pi, dy = 1.0, dt = 2.0 * pi;
    const GridSpec g = ground_phase_grid(dx, dy, dt);
    const SampledState psi = sample(p, AnalyticState{Family::Ground, 0, dx, 0.0, dt}, g, 0.3);
    const PhaseExtraction r = extract_global_phase(psi, unitary_shift(psi, Axis::Y, dy));
    CHECK(std::abs(r.phase - cplx(1.0, 0.0)) < 1e-8);
    CHECK(r.defect < 1e-8);
  }
  // m ω_c δx δy = π: phase −exp(iqℰδtδy/ħ).
  {
    const double dx = std::sqrt(pi), dy = std::sqrt(pi), dt = 0.3;
    const GridSpec g = ground_phase_grid(dx, dy, dt);
    const SampledState psi = sample(p, AnalyticState{Family::Ground, 0, dx, 0.0, dt}, g, 1.1);
    const PhaseExtraction r = extract_global_phase(psi, unitary_shift(psi, Axis::Y, dy));
    CHECK(r.defect < 1e-8);
    CHECK(std::abs(r.phase - (-unit_phase(dt * dy))) < 1e-8);
    CHECK(std::abs(r.phase - cplx(1.0, 0.0)) > 0.1);
  }
}

TEST_CASE("Hamiltonian is Hermitian on periodic grids") {
  for (double e : {0.0, 1.0}) {
    const PhysicalParams p = natural_units(1.0, e);
    const GridSpec g = small_periodic();
    const SampledState a = gaussian(p, g, 0.5, -1.0, 0.8, 0.3);
    const SampledState b = gaussian(p, g, -0.7, 0.4, -0.2, 1.1);
    const cplx lhs = inner(a, apply_hamiltonian(b));
    const cplx rhs = inner(apply_hamiltonian(a), b);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
    const cplx pl = inner(a, apply_pi_y(b)), pr = inner(apply_pi_y(a), b);
    CHECK(std::abs(pl - pr) < 1e-10 * std::max(1.0, std::abs(pl)));
  }
}

TEST_CASE("resolution check and containment expansion") {
  const PhysicalParams p = natural_units(1.0, 0.0);
  const GridSpec g = small_periodic(64);
  const SampledState nyquist = sample(p, g, 0.0, [&](double x, double y, double) {
    const double sign = std::lround((x - g.x_min) / g.dx()) % 2 == 0 ? 1.0 : -1.0;
    return cplx(sign * std::exp(-0.05 * (x * x + y * y)), 0.0);
  });
  CHECK_THROWS_AS(apply_hamiltonian(nyquist), ResolutionError);
  CHECK_NOTHROW(apply_hamiltonian(nyquist, OperatorOptions{false}));

  std::vector<std::string> warnings;
  GridSpec tight = small_periodic(64, 3.0);
  const GridSpec grown = ensure_containment(tight, p, Axis::Y, 0.0, [&](const std::string& w) { warnings.push_back(w); });
  CHECK(warnings.size() == 1);
  CHECK(grown.y_min <= -10.0 + 1e-12);
  CHECK(grown.y_max >= 10.0 - 1e-12);
  CHECK(grown.dy() == doctest::Approx(tight.dy()).epsilon(0.05));
  warnings.clear();
  const GridSpec untouched = ensure_containment(small_periodic(64, 9.0), p, Axis::Y, 0.0,
                                                [&](const std::string& w) { warnings.push_back(w); });
  CHECK(warnings.empty());
  CHECK(untouched.y_max == 9.0);
  GridSpec tiny = small_periodic(8);
  CHECK_THROWS(tiny.validate());
}

TEST_CASE("GridOperator: dispatch matches the free functions") {
  const PhysicalParams p = natural_units(1.0, 1.0);
  const GridSpec g = small_periodic(64);
  const SampledState s = gaussian(p, g, 0.2, 0.1, 0.5, -0.4);
  GridOperator op;
  op.params = p;
  op.kind = GridOperator::Kind::Hamiltonian;
  CHECK(window_norm(op.apply(s) - apply_hamiltonian(s)) == 0.0);
  op.kind = GridOperator::Kind::PiY;
  CHECK(window_norm(op.apply(s) - apply_pi_y(s)) == 0.0);
  op.kind = GridOperator::Kind::ShiftX;
  op.amount = 0.4;
  CHECK(window_norm(op.apply(s) - unitary_shift(s, Axis::X, 0.4)) == 0.0);
  op.kind = GridOperator::Kind::Multiply;
  op.multiplier = [](double x, double, double) { return cplx(x, 0.0); };
  const SampledState xs = op.apply(s);
  CHECK(std::abs(xs.at(7, 9) - g.x(7) * s.at(7, 9)) < 1e-15);
  op.kind = GridOperator::Kind::Derivative;
  op.axis = Axis::Y;
  CHECK(window_norm(op.apply(s) - derivative(s, Axis::Y)) == 0.0);
  op.kind = GridOperator::Kind::EnergyOp;
  CHECK_THROWS(op.apply(s));
  op.kind = GridOperator::Kind::TimeShift;
  CHECK_THROWS(op.apply(s));
}

TEST_CASE("state container: bit-exact round trip and corrupt input") {
  PhysicalParams p{1.5, -0.3, 2.0, 0.9, 1.7, 0.123456789};
  GridSpec g = small_periodic(16, 3.3);
  g.frame = GaugeFrame::Twisted;
  g.periodic_y = false;
  g.twist_origin_x = 0.1;
  g.twist_origin_t = std::nextafter(0.2, 1.0);
  SampledState s = SampledState::zeros(g, p, 1.0 / 3.0);
  for (std::size_t k = 0; k < s.amplitudes.size(); ++k)
    s.amplitudes[k] = cplx(std::sin(1.0 + k) / 7.0, std::cos(k * k * 0.1) * 1e-300);
  std::stringstream buf;
  write_state(buf, s);
  const std::string bytes = buf.str();
  const SampledState r = read_state(buf);
  CHECK(r.params == p);
  CHECK(r.time == s.time);
  CHECK(r.grid.same_layout(g));
  CHECK(r.grid.frame == g.frame);
  CHECK(r.grid.twist_origin_t == g.twist_origin_t);
  CHECK(r.grid.periodic_y == false);
  REQUIRE(r.amplitudes.size() == s.amplitudes.size());
  CHECK(std::memcmp(r.amplitudes.data(), s.amplitudes.data(), s.amplitudes.size() * sizeof(cplx)) == 0);

  std::stringstream wrong_magic("NOTASTATE" + bytes.substr(9));
  CHECK_THROWS_AS(read_state(wrong_magic), FormatError);
  std::stringstream truncated(bytes.substr(0, bytes.size() - 5));
  CHECK_THROWS_AS(read_state(truncated), FormatError);
  CHECK_THROWS_AS(load_state("/nonexistent/dir/state.lss"), Error);
}
