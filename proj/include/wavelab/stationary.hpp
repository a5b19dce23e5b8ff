#pragma once
//==============================================================================
// stationary.hpp
//
// Singular stationary profiles via the autonomous log-radius reduction.
//
// A radial stationary state u(r) of one of the three model equations, written
// as u(r) = x(log r)/r, satisfies the autonomous second-order equation
//
//     x'' + x' = g(x),   g in { 2x - x^3,  sin 2x,  sinh 2x },
//
// i.e. a damped oscillator in the potential -G (G' = g).  The origin is a
// saddle with eigenvalues (1, -2) for every kind, and the branch of its
// stable manifold parameterized by x(s) ~ ell * e^{-2s} as s -> +infinity
// corresponds to profiles with r^3 u(r) -> ell as r -> infinity.
//
// This module computes equilibria and their linearizations, integrates the
// stable manifold backward from an asymptotic seed, resamples the profile
// onto a radial grid, and evaluates the diagnostic quantities attached to
// these trajectories (truncated L^5 growth toward r = 0 and the first
// integral obtained by multiplying the equation by x' and integrating).
//
// Backward in s the damping is energy-increasing, so trajectories generically
// leave every bounded region: the cubic kind oscillates across both potential
// wells with growing amplitude, the pendulum kinds whirl monotonically, and
// the sinh kind reaches the guard |x| > 50 after a short range of s.  The
// integrator therefore reports the escape location instead of integrating
// past it; callers choose s_min accordingly.
//==============================================================================
#include <complex>
#include <utility>
#include <vector>

#include "wavelab/numerics.hpp"
#include "wavelab/radial_grid.hpp"

namespace wavelab {

enum class AutonomousKind { cubic, pendulum_sin, pendulum_sinh };

const char* autonomous_name(AutonomousKind kind);
AutonomousKind parse_autonomous(const std::string& name);

//! The planar vector field (x', y') = (y, -y + g(x)) of one reduction.
struct AutonomousModel {
  AutonomousKind kind;

  double g(double x) const;        //!< restoring term
  double dg(double x) const;       //!< g'
  double g3_at_zero() const;       //!< g'''(0) (drives the seed correction)
  //! G(x) - G(0) with G' = g; the drop of the first-integral potential.
  double potential_drop(double x) const;
  std::pair<double, double> rhs(double x, double y) const {
    return {y, -y + g(x)};
  }
};

AutonomousModel make_autonomous(AutonomousKind kind);

//! Equilibria (g(x)=0, y=0) with |x| <= 20, ascending in x.  The pendulum
//! lattice k*pi/2 is enumerated directly; the polynomial/sinh kinds are
//! scanned for sign changes and bisected.
std::vector<std::pair<double, double>> equilibria(const AutonomousModel& model);

//! Eigenvalues of the linearization [[0,1],[g'(x),-1]] at a point, ordered by
//! descending real part.
std::pair<std::complex<double>, std::complex<double>>
jacobian_eigenvalues(const AutonomousModel& model, double x, double y);

//! One branch of the stable manifold of the origin saddle, sampled on a
//! uniform s-lattice (multiples of `ds`) from s_min up to the seed point.
struct ManifoldProfile {
  AutonomousKind kind = AutonomousKind::cubic;
  double ell = 0.0;     //!< asymptotic coefficient: x(s) ~ ell e^{-2s}
  double seed_a = 0.0;  //!< e^{-6s} seed coefficient (series matched)
  double s_seed = 0.0;  //!< seed location (= s_max of the integrated range)
  double ds = 0.0;      //!< lattice spacing of s_grid
  Vec s_grid;           //!< ascending, uniform, anchored at multiples of ds
  Vec phi;              //!< x(s) samples
  Vec phidot;           //!< x'(s) samples

  double s_min() const { return s_grid.front(); }
  double s_max() const { return s_grid.back(); }
};

//! Integrate the stable-manifold branch with asymptotic coefficient `ell`
//! backward from an automatically chosen seed (|ell| e^{-2 s_seed} < 1e-6,
//! two-term seed expansion) down to s_min, with adaptive embedded high-order
//! stepping at local tolerance 1e-12.  Throws std::runtime_error naming the
//! escape location if |x| exceeds 50 (or the stepper stalls) before s_min.
ManifoldProfile stable_manifold(const AutonomousModel& model, double ell,
                                double s_min, double ds = 0.005);

//! Resample the profile onto a radial grid: u(r) = x(log r)/r.  Every grid
//! node must satisfy s_min <= log r <= s_max; otherwise std::invalid_argument.
RadialField physical_profile(const ManifoldProfile& profile,
                             const RadialGrid& grid);

//! Truncated L^5 mass toward the origin: I(eps) = int_eps^1 |u(r)|^5 r^4 dr
//! = int_{log eps}^0 |x(s)|^5 ds, one row per requested eps, together with the
//! least-squares fit of I against log(1/eps).  Requires ell != 0 and
//! e^{s_min} below every requested eps (std::invalid_argument otherwise).
struct L5Report {
  Vec eps;
  Vec integral;
  double slope = 0.0;      //!< d I / d log(1/eps) of the line fit
  double intercept = 0.0;
  double r_squared = 0.0;
};
L5Report l5_divergence(const ManifoldProfile& profile, const Vec& eps_list);

//! Max pointwise residual over the profile's s-grid of the first integral
//!     int_s^inf x'(p)^2 dp  =  x'(s)^2/2 - (G(x(s)) - G(0)),   G' = g,
//! with the tail beyond the seed evaluated from the asymptotic expansion.
double ode_energy_identity(const AutonomousModel& model,
                           const ManifoldProfile& profile);

} // namespace wavelab
