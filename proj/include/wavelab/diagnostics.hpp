//==============================================================================
// diagnostics.hpp -- scalar and profile diagnostics computed from states and
// trajectories
//
//  * Strichartz accumulation: S(J) = (int_J ||u(t)||^2_{L^10} dt)^{1/2} by
//    trapezoid over stored snapshots, with exact piecewise-linear handling
//    of window endpoints that fall between snapshots.
//  * Tail concentration: given a tolerance eta, locates dyadic scales
//    c < C such that the critical-norm mass outside the annulus
//    [c N, C N] in frequency -- paired with the matching fractional-
//    derivative mass in space -- stays below eta times the total.  The
//    modulation scale N is the interpolated median of the spectral density,
//    which is dilation-covariant and needs no structure beyond a nonzero
//    state.
//  * Frequency envelopes: per-band masses a_k = 2^{3k/2}||P_k u||_2 +
//    2^{k/2}||P_k u_t||_2 and their geometric smoothing
//    alpha_k = sum_j 2^{-sigma|j-k|} a_j.
//  * Oscillatory band kernel: the radial wave half-propagator localized to
//    band k has kernel  2^k int e^{i rho lag} Ang(rho dist)
//    phi(rho/2^k) rho^5 d rho  where the angular factor reduces to the
//    elementary kernel Ang(z) = 4 (sin z - z cos z)/z^3.  The companion
//    decay bound  C_L 2^{6k} <2^k |lag - dist|>^{-L}  uses one constant per
//    L, fitted once on a fixed calibration sweep spanning the admissible
//    band range.
//  * v0/v1 functionals: v0 = r^3 u and v1 = r int_r^inf u_t rho d rho,
//    whose limits ell_0, ell_1 (when they exist) are read off by
//    least-squares fits with the known r^{-4} and r^{-2} approach rates.
//==============================================================================
#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "wavelab/evolve.hpp"
#include "wavelab/radial_grid.hpp"
#include "wavelab/transform.hpp"

namespace wavelab {

//------------------------------------------------------------------------------
// Strichartz accumulation
//------------------------------------------------------------------------------

//! S-norm of the trajectory over [t_lo, t_hi]: the square root of the
//! trapezoid integral of ||u(t)||^2_{L^10}.  Requires the window to lie
//! inside the snapshot span and the snapshot spacing inside the window to be
//! at most (t_hi - t_lo)/50; throws std::invalid_argument otherwise.
double strichartz_accumulate(const Trajectory& traj, double t_lo, double t_hi,
                             const RadialFourier& F);

//! S-norm over the modulated window [t0 - delta/N, t0 + delta/N], where N is
//! the tail-report scale of the snapshot nearest to t0 (at tolerance eta).
//! A zero nearest snapshot short-circuits to 0 (no intrinsic scale needed).
//! No density requirement: narrow windows between snapshots are integrated
//! on the piecewise-linear interpolant, so the value decreases monotonically
//! to 0 with delta.  Throws std::invalid_argument if the window exceeds the
//! snapshot span.
double local_strichartz(const Trajectory& traj, double t0, double delta,
                        const RadialFourier& F, double eta = 0.1);

//------------------------------------------------------------------------------
// Tail concentration
//------------------------------------------------------------------------------

//! Dyadic concentration scales of a state at tolerance eta.
struct TailReport {
  double eta = 0.0;   //!< tolerance used for the search
  double c = 0.0;     //!< inner dyadic scale (largest passing, below C)
  double C = 0.0;     //!< outer dyadic scale (smallest passing)
  double N_est = 0.0; //!< modulation scale: interpolated spectral median
};

//! Searches dyadic scales for the four tail bounds: for each of u (order
//! 3/2) and u_t (order 1/2), the fractional-derivative mass at radii
//! r >= C/N plus the spectral mass at frequencies rho >= C N must not
//! exceed eta * (total critical mass), and likewise for r <= c/N plus
//! rho <= c N.  C is the smallest passing power of two; c is the largest
//! passing power of two strictly below C.  Throws std::invalid_argument on
//! a zero state (no intrinsic scale) or eta outside (0, 1).
TailReport compactness_tails(const State& s, double eta, const RadialFourier& F);

//------------------------------------------------------------------------------
// Frequency envelopes
//------------------------------------------------------------------------------

//! Per-band masses a_k and their smoothed envelope alpha_k for bands
//! k_min .. k_min + size - 1.
struct EnvelopeSeq {
  int k_min = 0;
  double sigma = 1.25;
  Vec a;     //!< a_k = 2^{3k/2} ||P_k u||_{L^2} + 2^{k/2} ||P_k u_t||_{L^2}
  Vec alpha; //!< alpha_k = sum_j 2^{-sigma |j-k|} a_j

  int k_max() const { return k_min + static_cast<int>(a.size()) - 1; }
  double a_l2() const;
  double alpha_l2() const;
  //! || {2^k alpha_k} ||_{l^2}: the weighted sum controlling one extra
  //! derivative's worth of band mass.
  double weighted_alpha_l2() const;
};

//! Band masses of the state over the grid's resolved band range, computed
//! spectrally (no inverse transforms).  sigma must be positive.
EnvelopeSeq frequency_envelope(const State& s, double sigma,
                               const RadialFourier& F);

//------------------------------------------------------------------------------
// Oscillatory band kernel
//------------------------------------------------------------------------------

//! Kernel value and its fitted decay bound.
struct KernelReport {
  std::complex<double> value;
  double bound = 0.0;
};

//! Evaluates the band-k half-wave kernel at time lag `lag` (> 0) and
//! spatial distance `dist` (>= 0) by adaptive quadrature over the band
//! support [2^{k-1}, 2^{k+1}], together with the decay bound
//! C_L 2^{6k} <2^k |lag - dist|>^{-L}.  C_L is fitted once per L on a fixed
//! calibration sweep over the admissible band range k in [-4, 8] and cached.
//! The multiplier amplitude scales the value linearly.  Throws
//! std::invalid_argument on k outside [-4, 8], lag <= 0, dist < 0, or
//! L < 1; std::runtime_error if the quadrature fails to converge.
KernelReport kernel_Kk(int k, double lag, double dist, int L,
                       double phi_amplitude = 1.0);

//------------------------------------------------------------------------------
// v0/v1 functionals
//------------------------------------------------------------------------------

//! The pair v0 = r^3 u, v1 = r int_r^inf u_t rho d rho with fitted limits.
struct ProfileLimits {
  RadialField v0;
  RadialField v1;
  double ell0 = 0.0;   //!< fitted limit of v0 (rate r^{-4})
  double ell1 = 0.0;   //!< fitted limit of v1 (rate r^{-2})
  double resid0 = 0.0; //!< rms fit residual over the fit window
  double resid1 = 0.0;
  bool ok0 = false;    //!< residual small enough to trust the limit
  bool ok1 = false;
};

//! Computes v0, v1 on the grid (the tail integral runs to r_max and is
//! treated as zero beyond) and fits v ~ ell + A r^{-p} on the outer third
//! of the grid, excluding the last 5% of radii.  Requires |u_t| < 1e-10 on
//! the outermost 2% of nodes (the tail integral must have converged);
//! throws std::invalid_argument otherwise.  A residual above 1e-6 relative
//! to the window scale clears the ok flag instead of throwing.
ProfileLimits v0v1_profiles(const State& s);

//! One row of the pairwise difference diagnostic.
struct DifferencePair {
  double r = 0.0;
  double r_prime = 0.0;
  double ratio0 = 0.0; //!< |v0(r)-v0(r')| / (r^{-4}|v0(r)|^3 + r^{-1}|v1(r)|^3)
  double ratio1 = 0.0; //!< |v1(r)-v1(r')| / (r^{-5}|v0(r)|^3 + r^{-2}|v1(r)|^3)
  bool degenerate = false; //!< 0/0: both sides vanish
};

//! Measured difference-quotient ratios of v0/v1 between paired radii
//! r <= r' <= 2r (values interpolated between nodes).  Purely a report:
//! large ratios are informative, not errors.  Malformed pairs (r <= 0,
//! r' < r, r' > 2r) throw std::invalid_argument; pairs outside the grid
//! range come back flagged degenerate.
std::vector<DifferencePair> difference_report(
    const State& s, const std::vector<std::pair<double, double>>& pairs);

} // namespace wavelab
