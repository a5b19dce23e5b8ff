//==============================================================================
// test_evolve.cpp -- time integration, blow-up detection, scheme agreement
//==============================================================================
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wavelab/evolve.hpp"

using namespace wavelab;

namespace {

const RadialGrid& grid512() {
  static RadialGrid g(512, 16.0);
  return g;
}
const RadialFourier& fourier512() {
  static RadialFourier F(grid512());
  return F;
}
const RadialGrid& grid1024() {
  static RadialGrid g(1024, 16.0);
  return g;
}
const RadialFourier& fourier1024() {
  static RadialFourier F(grid1024());
  return F;
}

//! Compactly supported bump: amplitude * e^{-(r/width)^2}, flat window to
//! `lo`, gone by `hi` (keeps the causal pre-run check honest).
State bump_state(const RadialGrid& g, double amplitude, double width,
                 double lo, double hi) {
  State s = zero_state(g);
  s.u = sample(g, [=](double r) {
    return amplitude * std::exp(-r * r / (width * width)) *
           smooth_cut_down(r, lo, hi);
  });
  return s;
}

void check_increasing(const Vec& t) {
  for (std::size_t i = 1; i < t.size(); ++i) REQUIRE(t[i] > t[i - 1]);
}

} // namespace

TEST_CASE("scheme and termination names round-trip") {
  for (Scheme s : {Scheme::strang_spectral, Scheme::leapfrog_fd})
    CHECK(scheme_from_name(scheme_name(s)) == s);
  CHECK_THROWS_AS(scheme_from_name("midpoint"), std::invalid_argument);
  CHECK(termination_name(Termination::completed) == "completed");
  CHECK(termination_name(Termination::blowup) == "blowup");
  CHECK(termination_name(Termination::overflow) == "overflow");
}

TEST_CASE("evolve validates configuration and data") {
  const RadialGrid& g = grid512();
  const RadialFourier& F = fourier512();
  const ModelSpec m = ModelSpec::make(ModelKind::free);
  State s = bump_state(g, 0.5, 1.0, 4.0, 6.0);
  EvolveConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 0.1;

  EvolveConfig bad = cfg;
  bad.dt = 0.0;
  CHECK_THROWS_AS(evolve(m, s, bad, F), std::invalid_argument);
  bad = cfg;
  bad.t_end = -1.0;
  CHECK_THROWS_AS(evolve(m, s, bad, F), std::invalid_argument);
  bad = cfg;
  bad.blowup_linf = 0.0;
  CHECK_THROWS_AS(evolve(m, s, bad, F), std::invalid_argument);
  bad = cfg;
  bad.snapshot_stride = 0;
  CHECK_THROWS_AS(evolve(m, s, bad, F), std::invalid_argument);

  // leapfrog CFL: exactly 0.5 r_max/n is allowed, beyond is not
  bad = cfg;
  bad.scheme = Scheme::leapfrog_fd;
  bad.dt = 0.5 * g.r_max / g.n;
  CHECK_NOTHROW(validate(bad, g));
  bad.dt *= 1.01;
  CHECK_THROWS_AS(evolve(m, s, bad, F), std::invalid_argument);

  // causal pre-run check: support ~6 + flight 11 > r_max = 16
  State wide = bump_state(g, 0.5, 100.0, 4.0, 6.0);
  bad = cfg;
  bad.t_end = 11.0;
  CHECK_THROWS_AS(evolve(m, wide, bad, F), std::invalid_argument);
}

TEST_CASE("zero data stay zero for both schemes") {
  const RadialGrid& g = grid512();
  const RadialFourier& F = fourier512();
  const ModelSpec m = ModelSpec::make(ModelKind::cubic_focusing);
  CHECK(max_abs(step(m, zero_state(g), 0.1, F).u.values) == 0.0);
  for (Scheme sc : {Scheme::strang_spectral, Scheme::leapfrog_fd}) {
    EvolveConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 0.1;
    cfg.scheme = sc;
    Trajectory tr = evolve(m, zero_state(g), cfg, F);
    CHECK(tr.reason == Termination::completed);
    CHECK(max_abs(tr.snapshots.back().u.values) == 0.0);
    CHECK(max_abs(tr.snapshots.back().ut.values) == 0.0);
  }
}

TEST_CASE("free-model step is the exact propagator and is reversible") {
  const RadialGrid& g = grid512();
  const RadialFourier& F = fourier512();
  State s = bump_state(g, 0.7, 1.0, 6.0, 10.0);
  s.ut = sample(g, [](double r) {
    return -0.3 * std::exp(-0.5 * r * r) * smooth_cut_down(r, 6.0, 10.0);
  });
  const ModelSpec m = ModelSpec::make(ModelKind::free);

  State a = step(m, s, 0.37, F);
  State b = free_propagate(F, s, 0.37);
  CHECK(max_abs_diff(a.u.values, b.u.values) < 1e-12);
  CHECK(max_abs_diff(a.ut.values, b.ut.values) < 1e-12);

  State back = step(m, a, -0.37, F);
  CHECK(max_abs_diff(back.u.values, s.u.values) < 1e-11);
  CHECK(max_abs_diff(back.ut.values, s.ut.values) < 1e-11);
}

TEST_CASE("snapshots follow the configured stride") {
  RadialGrid g(64, 8.0);
  RadialFourier F(g);
  State s = bump_state(g, 0.1, 1.0, 2.0, 4.0);
  EvolveConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 0.25;
  cfg.snapshot_stride = 10;
  Trajectory tr = evolve(ModelSpec::make(ModelKind::free), s, cfg, F);
  REQUIRE(tr.reason == Termination::completed);
  // initial state, steps 10 and 20, and the final step 25
  REQUIRE(tr.snapshots.size() == 4);
  CHECK(tr.snapshots[0].t == Catch::Approx(0.0).margin(1e-15));
  CHECK(tr.snapshots[1].t == Catch::Approx(0.10));
  CHECK(tr.snapshots[2].t == Catch::Approx(0.20));
  CHECK(tr.snapshots[3].t == Catch::Approx(0.25));
  CHECK(tr.times.size() == 26);
  check_increasing(tr.times);
}

TEST_CASE("windowed blow-up data follow the space-independent solution "
          "inside the cone") {
  const RadialGrid& g = grid1024();
  const RadialFourier& F = fourier1024();
  State s = ode_blowup_ball(g, 1.0, 8.0);
  EvolveConfig cfg;
  cfg.dt = 2e-3;
  cfg.t_end = 0.8;
  cfg.snapshot_stride = 1 << 20;
  Trajectory tr =
      evolve(ModelSpec::make(ModelKind::cubic_focusing), s, cfg, F);
  REQUIRE(tr.reason == Termination::completed);
  const State& fin = tr.snapshots.back();
  // data are flat inside r <= 4, so below r < 4 - t the flow is the exact
  // ODE; compare against it with a small margin off the light cone
  const double want = exact_ode_blowup(1.0, 0.8);
  double worst = 0.0;
  for (int i = 0; i < g.n && g.nodes[i] < 3.1; ++i)
    worst = std::max(worst, std::fabs(fin.u.values[i] - want) / want);
  CHECK(worst < 1e-2);
  check_increasing(tr.times);
}

TEST_CASE("small data run to completion with bounded critical norm") {
  const RadialGrid& g = grid512();
  const RadialFourier& F = fourier512();
  State s = bump_state(g, 1.0, 1.0, 6.0, 10.0);
  const double scale = 0.01 / F.critical_norm(s);
  for (std::size_t i = 0; i < s.u.values.size(); ++i)
    s.u.values[i] *= scale;
  REQUIRE(F.critical_norm(s) == Catch::Approx(0.01));

  EvolveConfig cfg;
  cfg.dt = 2e-3;
  cfg.t_end = 1.0;
  cfg.snapshot_stride = 25;
  Trajectory tr =
      evolve(ModelSpec::make(ModelKind::cubic_focusing), s, cfg, F);
  REQUIRE(tr.reason == Termination::completed);
  double sup = 0.0;
  for (double c : tr.critical_series) sup = std::max(sup, c);
  CHECK(sup <= 2.0 * tr.critical_series.front());
}

TEST_CASE("truncated blow-up data trip the detector before the singular "
          "time") {
  const RadialGrid& g = grid1024();
  const RadialFourier& F = fourier1024();
  State s = ode_blowup_ball(g, 1.0, 8.0);
  EvolveConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.snapshot_stride = 1 << 20;
  Trajectory tr =
      evolve(ModelSpec::make(ModelKind::cubic_focusing), s, cfg, F);
  CHECK(tr.reason == Termination::blowup);
  CHECK(tr.times.back() < 1.0);
  // the critical norm crosses its threshold well before the sup norm
  CHECK(tr.critical_series.back() > cfg.blowup_norm);
  check_increasing(tr.times);
}

TEST_CASE("hyperbolic-target overflow keeps the last finite state") {
  const RadialGrid& g = grid512();
  const RadialFourier& F = fourier512();
  // |r u| exceeds 350 right away, so the first kick overflows sinh
  State s = bump_state(g, 60.0, 100.0, 8.0, 10.0);
  for (Scheme sc : {Scheme::strang_spectral, Scheme::leapfrog_fd}) {
    EvolveConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 0.5;
    cfg.scheme = sc;
    cfg.blowup_norm = 1e9;  // let the overflow fire, not the norm detector
    cfg.blowup_linf = 1e9;
    Trajectory tr = evolve(ModelSpec::make(ModelKind::wm_h3), s, cfg, F);
    CHECK(tr.reason == Termination::overflow);
    REQUIRE(tr.snapshots.size() == 1);
    // the retained snapshot is the untouched (finite) initial state
    CHECK(max_abs(tr.snapshots.back().u.values) == max_abs(s.u.values));
  }
}

TEST_CASE("wave-map run reproduces the exact self-similar solution") {
  RadialGrid g(2048, 16.0);
  RadialFourier F(g);
  State s = zero_state(g);
  s.t = 1.0;
  s.u = sample(g, [](double r) {
    return 2.0 * std::atan(r) / r * smooth_cut_down(r, 8.0, 10.0);
  });
  s.ut = sample(g, [](double r) {
    return -2.0 / (1.0 + r * r) * smooth_cut_down(r, 8.0, 10.0);
  });
  EvolveConfig cfg;
  cfg.dt = 5e-3;
  cfg.t_end = 2.0;
  cfg.snapshot_stride = 1 << 20;
  Trajectory tr = evolve(ModelSpec::make(ModelKind::wm_s3), s, cfg, F);
  REQUIRE(tr.reason == Termination::completed);
  const State& fin = tr.snapshots.back();
  // data agree with the exact solution out to r = 8, so by finite speed the
  // solution at t = 2 is exact inside r < 7
  double worst = 0.0;
  for (int i = 0; i < g.n && g.nodes[i] < 7.0; ++i) {
    const double r = g.nodes[i];
    const double want = 2.0 * std::atan(r / 2.0) / r;
    worst =
        std::max(worst, std::fabs(fin.u.values[i] - want) / std::fabs(want));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("temporal order: exact free flow, quadratic kick, degradation "
          "near blow-up") {
  const RadialGrid& g = grid512();
  const RadialFourier& F = fourier512();
  State s = bump_state(g, 0.8, 1.0, 6.0, 10.0);

  const double o_free = convergence_order(ModelSpec::make(ModelKind::free), s,
                                          {0.1, 0.05, 0.025}, F);
  CHECK(o_free >= 8.0);

  const double o_cubic =
      convergence_order(ModelSpec::make(ModelKind::cubic_focusing), s,
                        {0.05, 0.025, 0.0125}, F);
  CHECK(o_cubic == Catch::Approx(2.0).margin(0.2));

  // horizon 16 dt_max = 0.98, inside ten steps of the detection time
  State b = ode_blowup_ball(grid1024(), 1.0, 8.0);
  const double o_near =
      convergence_order(ModelSpec::make(ModelKind::cubic_focusing), b,
                        {0.06125, 0.030625, 0.0153125}, fourier1024());
  CHECK(o_near < 2.0);

  CHECK_THROWS_AS(
      convergence_order(ModelSpec::make(ModelKind::free), s, {0.1}, F),
      std::invalid_argument);
}

TEST_CASE("energy drift is second-order small") {
  const RadialGrid& g = grid1024();
  const RadialFourier& F = fourier1024();
  State s = bump_state(g, 0.5, 2.0, 8.0, 12.0);
  const ModelSpec m = ModelSpec::make(ModelKind::cubic_focusing);
  const double E0 = energy(m, s, F);
  REQUIRE(E0 != 0.0);

  double drift[2];
  int k = 0;
  for (double dt : {1e-3, 5e-4}) {
    EvolveConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 1.0;
    cfg.snapshot_stride = 1 << 20;
    Trajectory tr = evolve(m, s, cfg, F);
    REQUIRE(tr.reason == Termination::completed);
    drift[k++] =
        std::fabs(energy(m, tr.snapshots.back(), F) - E0) / std::fabs(E0);
  }
  CHECK(drift[0] < 1e-6);
  // halving dt divides the drift by 4 (second order), within 20%
  CHECK(drift[0] / drift[1] > 3.2);
  CHECK(drift[0] / drift[1] < 4.8);
}

TEST_CASE("finite speed of propagation for both schemes") {
  const RadialGrid& g = grid1024();
  const RadialFourier& F = fourier1024();
  State s = bump_state(g, 0.5, 1.0, 2.0, 4.0);  // support inside r <= 4
  const ModelSpec m = ModelSpec::make(ModelKind::cubic_focusing);
  for (Scheme sc : {Scheme::strang_spectral, Scheme::leapfrog_fd}) {
    EvolveConfig cfg;
    cfg.dt = 4e-3;
    cfg.t_end = 1.0;
    cfg.scheme = sc;
    cfg.snapshot_stride = 1 << 20;
    Trajectory tr = evolve(m, s, cfg, F);
    REQUIRE(tr.reason == Termination::completed);
    const State& fin = tr.snapshots.back();
    const double edge = 4.0 + 1.0 + 4.0 * (g.r_max / g.n);
    double leak = 0.0;
    for (int i = 0; i < g.n; ++i)
      if (g.nodes[i] > edge)
        leak = std::max(leak, std::max(std::fabs(fin.u.values[i]),
                                       std::fabs(fin.ut.values[i])));
    CHECK(leak < 1e-8);
  }
}

TEST_CASE("spectral and finite-difference schemes cross-validate") {
  const RadialGrid& g = grid1024();
  const RadialFourier& F = fourier1024();
  State s = bump_state(g, 0.3, 3.0, 8.0, 12.0);
  const ModelSpec m = ModelSpec::make(ModelKind::cubic_focusing);
  State fin[2];
  int k = 0;
  for (Scheme sc : {Scheme::strang_spectral, Scheme::leapfrog_fd}) {
    EvolveConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 0.5;
    cfg.scheme = sc;
    cfg.snapshot_stride = 1 << 20;
    fin[k++] = evolve(m, s, cfg, F).snapshots.back();
  }
  const double rel =
      F.l2_norm(fin[0].u - fin[1].u) / F.l2_norm(fin[0].u);
  CHECK(rel < 1e-3);
}
