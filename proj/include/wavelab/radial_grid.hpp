//==============================================================================
// radial_grid.hpp -- radial collocation grid and field containers
//
//  * RadialGrid: Gauss-Legendre nodes on (0, r_max] with weights for the
//    five-dimensional radial measure r^4 dr, plus a matching frequency grid
//    on (0, rho_max] with weights for rho^4 d(rho).
//  * RadialField / SpectralField: real samples bound to a grid.
//  * State: a position/velocity pair (u, u_t) on a common grid.
//==============================================================================
#pragma once

#include <functional>
#include <string>

#include "wavelab/numerics.hpp"

namespace wavelab {

//------------------------------------------------------------------------------
// RadialGrid
//------------------------------------------------------------------------------
//! Collocation grid for radial functions on the ball of radius r_max.
//!
//! `weights[i]` already contain the r^4 factor, so `sum_i weights[i] f(r_i)`
//! approximates the full radial integral of f against r^4 dr; likewise the
//! frequency weights carry rho^4.  The frequency cutoff is
//! rho_max = freq_scale * n / r_max.
struct RadialGrid {
  int n = 0;
  double r_max = 0.0;
  double freq_scale = 1.0;
  double rho_max = 0.0;
  Vec nodes;        //!< r-values, strictly increasing in (0, r_max]
  Vec weights;      //!< quadrature weights for \int f r^4 dr
  Vec freq_nodes;   //!< rho-values, strictly increasing in (0, rho_max]
  Vec freq_weights; //!< quadrature weights for \int g rho^4 d(rho)

  RadialGrid() = default;
  RadialGrid(int n, double r_max, double freq_scale = 1.0);

  bool same_as(const RadialGrid& other) const {
    return n == other.n && r_max == other.r_max &&
           freq_scale == other.freq_scale;
  }
};

//------------------------------------------------------------------------------
// Fields
//------------------------------------------------------------------------------
//! Real radial function sampled on grid nodes.
struct RadialField {
  const RadialGrid* grid = nullptr;
  Vec values;
};

//! Real radial Fourier transform sampled on frequency nodes, under the
//! convention F[f](xi) = \int f(x) e^{-i x.xi} dx restricted to radial f.
struct SpectralField {
  const RadialGrid* grid = nullptr;
  Vec values;
};

//! Position/velocity pair (u, u_t) on a common grid, tagged with its time.
struct State {
  double t = 0.0;
  RadialField u;
  RadialField ut;

  //! Equivariant reduction psi(r) = r * u(r) used by the wave-map models.
  RadialField psi() const;
};

//------------------------------------------------------------------------------
// Construction helpers
//------------------------------------------------------------------------------
RadialField sample(const RadialGrid& g, const std::function<double(double)>& f);
SpectralField sample_freq(const RadialGrid& g,
                          const std::function<double(double)>& f);
RadialField zero_field(const RadialGrid& g);
SpectralField zero_spectral(const RadialGrid& g);
State zero_state(const RadialGrid& g);

//! Even extrapolation of a nodal field to r = 0.
double eval_at_zero(const RadialField& f);

//! Five-dimensional radial Laplacian u'' + (4/r) u' evaluated node-wise.
//! Works in the squared-radius variable xi = r^2, where smooth even data
//! stay smooth and Delta u = 10 g' + 4 xi g'' (g(xi) = u(r)); this avoids
//! both the 1/r amplification near the axis and the noise blow-up of
//! stencils on the quadratically clustered innermost quadrature nodes
//! (stencils are built on a spacing-thinned subset of the nodes).
RadialField radial_laplacian(const RadialField& f);

//! Throws std::runtime_error naming `where` if any value is NaN/Inf.
void check_finite(const Vec& v, const std::string& where);

//! Throws std::invalid_argument if the two fields live on different grids.
void check_same_grid(const RadialGrid* a, const RadialGrid* b,
                     const std::string& where);

//------------------------------------------------------------------------------
// Field arithmetic (element-wise; grids must match)
//------------------------------------------------------------------------------
RadialField operator+(const RadialField& a, const RadialField& b);
RadialField operator-(const RadialField& a, const RadialField& b);
RadialField operator*(double c, const RadialField& a);
State operator+(const State& a, const State& b);
State operator-(const State& a, const State& b);
State operator*(double c, const State& a);

//! max_i |a_i - b_i|
double max_abs_diff(const Vec& a, const Vec& b);
//! max_i |a_i|
double max_abs(const Vec& v);

} // namespace wavelab
