#pragma once
//==============================================================================
// numerics.hpp
//
// Shared numerical kernels for the wave laboratory:
//  - Gauss-Legendre nodes/weights and composite panel quadrature
//  - Fornberg finite-difference / interpolation weights on arbitrary nodes
//  - local Lagrange interpolation of radial (even) fields
//  - C-infinity cutoffs and bump profiles
//  - the elementary oscillatory kernel j(z) = sqrt(2/pi)(sin z - z cos z)/z^3
//  - deterministic RNG (fully specified bit stream, Box-Muller normals)
//  - Richardson extrapolation with estimated convergence order
//  - least-squares line fit with R^2
//  - a static-partition parallel_for (deterministic for any thread count)
//==============================================================================
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace wavelab {

using Vec = std::vector<double>;

//! Mathematical constants used throughout (5 space dimensions).
namespace consts {
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double omega4 = 8.0 * pi * pi / 3.0;   //!< area of S^4
inline constexpr double twopi = 2.0 * pi;
inline constexpr double twopi5 = twopi * twopi * twopi * twopi * twopi;
inline const double twopi52 = std::sqrt(twopi5);        //!< (2*pi)^{5/2}
} // namespace consts

//------------------------------------------------------------------------------
// Gauss-Legendre quadrature
//------------------------------------------------------------------------------

//! n-point Gauss-Legendre rule mapped to [a,b]: nodes.size()==weights.size()==n.
struct QuadRule {
  Vec x;
  Vec w;
};

//! Gauss-Legendre rule on [a,b] (exact for polynomials of degree <= 2n-1).
QuadRule gauss_legendre(int n, double a, double b);

//! Composite rule: `panels` equal subintervals of [a,b], `pts` GL points each.
QuadRule composite_gauss(int pts, int panels, double a, double b);

//! Integrate a callable over [a,b] with a composite GL rule.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int pts = 12, int panels = 32);

//! Composite Boole rule (uniform nodes, closed, 6th order); kept deliberately
//! simple and node-uniform so it is independent of the GL machinery above.
double integrate_boole(const std::function<double(double)>& f, double a,
                       double b, int panels);

//------------------------------------------------------------------------------
// Finite differences / interpolation on scattered nodes
//------------------------------------------------------------------------------

//! Fornberg weights: for nodes xs[0..n), returns w such that
//! sum_i w[i] f(xs[i]) approximates the m-th derivative of f at z.
Vec fornberg_weights(double z, const Vec& xs, int m);

//! Local polynomial interpolation of a field sampled on sorted nodes.
//! With `even_at_zero` set, the field is treated as an even function of r,
//! so stencils near the origin borrow mirrored nodes (-r_k, f_k).
class NodeInterpolant {
public:
  NodeInterpolant(const Vec& nodes, const Vec& values, int width = 10,
                  bool even_at_zero = true);
  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

private:
  const Vec& m_x;
  const Vec& m_f;
  int m_width;
  bool m_even;
  void stencil(double x, Vec& xs, Vec& fs) const;
};

//! Derivative of a nodal field at every node (Fornberg stencils, mirrored at 0).
Vec derivative_at_nodes(const Vec& nodes, const Vec& values, int width = 8,
                        bool even_at_zero = true);

//! Even-polynomial extrapolation of a radial field to r = 0 (fit in r^2 on the
//! first nodes; cubic in r^2).
double value_at_zero(const Vec& nodes, const Vec& values);

//------------------------------------------------------------------------------
// Smooth cutoffs and bumps
//------------------------------------------------------------------------------

//! C-infinity step: 0 for x<=0, 1 for x>=1, strictly increasing between.
double smoothstep(double x);
double smoothstep_d1(double x);
double smoothstep_d2(double x);

//! chi_{lo,hi}(r): identically 0 for r<=lo, identically 1 for r>=hi.
inline double smooth_cut_up(double r, double lo, double hi) {
  return smoothstep((r - lo) / (hi - lo));
}
//! 1 below lo, 0 above hi.
inline double smooth_cut_down(double r, double lo, double hi) {
  return smoothstep((hi - r) / (hi - lo));
}

//! C-infinity bump supported exactly on (1/2, 2): exp(-1/((x-1/2)(2-x))).
double dyadic_bump(double x);

//------------------------------------------------------------------------------
// Oscillatory radial kernel
//------------------------------------------------------------------------------

//! j(z) = sqrt(2/pi) * (sin z - z cos z)/z^3, the radial plane-wave kernel in
//! five dimensions; j(0) = sqrt(2/pi)/3. Series branch below |z|=1 avoids the
//! cancellation in (sin z - z cos z).
double wave_kernel_j(double z);
//! d/dz of wave_kernel_j.
double wave_kernel_j_d1(double z);

//------------------------------------------------------------------------------
// Deterministic randomness
//------------------------------------------------------------------------------

//! splitmix64: used to derive independent stream seeds from (seed, stream id).
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

//! Deterministic RNG: mt19937_64 raw draws mapped to doubles explicitly, so
//! results are identical across standard libraries for a given seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : m_eng(seed) {}
  //! uniform double in [0,1)
  double uniform() { return double(m_eng() >> 11) * 0x1.0p-53; }
  //! uniform double in [a,b)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  //! standard normal via Box-Muller (explicit, library-independent)
  double gaussian();

private:
  std::mt19937_64 m_eng;
  bool m_have_spare = false;
  double m_spare = 0.0;
};

//------------------------------------------------------------------------------
// Extrapolation and fitting
//------------------------------------------------------------------------------

//! Result of a three-point Richardson extrapolation with estimated order.
struct RichardsonResult {
  double limit;       //!< extrapolated limit
  double order;       //!< estimated decay order p (NaN if fallback was used)
  bool fallback;      //!< true if the sequence was not decreasing geometrically
};

//! Extrapolate v(h), v(h/2), v(h/4) -> v(0) assuming v = L + A q^{-p k}; the
//! grid ratio q defaults to 2. Falls back to the last value when the
//! differences do not contract.
RichardsonResult richardson(double v1, double v2, double v3, double ratio = 2.0);

//! Least-squares line fit y ~ a + b x; returns slope b, intercept a, and R^2.
struct LineFit {
  double slope;
  double intercept;
  double r2;
};
LineFit fit_line(const Vec& x, const Vec& y);

//------------------------------------------------------------------------------
// Deterministic parallel loop
//------------------------------------------------------------------------------

//! Run fn(i) for i in [0,n) on `threads` workers with a static partition.
//! Each index is processed exactly once; writers must own disjoint slots, so
//! the result is identical for every thread count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

//! Clamp a requested thread count to something sane (>=1).
int sanitize_threads(int requested);

} // namespace wavelab
