//==============================================================================
// transform.hpp -- dense radial Fourier transform and Sobolev/Lebesgue norms
//
//  * RadialFourier precomputes three dense kernels on construction: forward
//    transform, inverse transform, and the radial derivative read off the
//    spectral representation.
//  * Convention: fhat(rho) = (2 pi)^{5/2} \int_0^inf f(r) j(r rho) r^4 dr with
//    the elementary kernel j(z) = sqrt(2/pi) (sin z - z cos z)/z^3, and
//    f(r) = (2 pi)^{-5/2} \int_0^inf fhat(rho) j(r rho) rho^4 d(rho).
//  * Homogeneous Sobolev norms: ||f||_{H^s}^2 = (2 pi)^{-5} w4
//    \int rho^{2s+4} |fhat|^2 d(rho), w4 = 8 pi^2 / 3 the area of S^4.
//==============================================================================
#pragma once

#include <Eigen/Dense>

#include "wavelab/radial_grid.hpp"

namespace wavelab {

class RadialFourier {
 public:
  explicit RadialFourier(const RadialGrid& g);

  const RadialGrid& grid() const { return *m_grid; }

  //---------------------------------------------------------------------------
  // Transforms
  //---------------------------------------------------------------------------
  SpectralField forward(const RadialField& f) const;
  RadialField inverse(const SpectralField& fh) const;

  //! d/dr of the field represented by spectral samples.
  RadialField derivative_from_spectral(const SpectralField& fh) const;
  //! d/dr computed by a forward transform followed by the spectral derivative.
  RadialField derivative(const RadialField& f) const;

  //! Inverse transform of rho^s fhat.  For s < 0 the input must carry
  //! negligible low-frequency mass; otherwise the request is ill-posed and
  //! throws std::domain_error.
  RadialField fractional_derivative(const RadialField& f, double s) const;

  //---------------------------------------------------------------------------
  // Norms
  //---------------------------------------------------------------------------
  double sobolev_norm(const RadialField& f, double s) const;
  double sobolev_norm_spectral(const SpectralField& fh, double s) const;
  //! Same quadrature as sobolev_norm_spectral but without the resolution
  //! guard; for threshold monitors that must not throw on states that are
  //! already leaving the resolvable class (mid blow-up).
  double sobolev_norm_raw(const SpectralField& fh, double s) const;
  //! (||f||_{L^2}^2 + ||f||_{H^s}^2)^{1/2}
  double inhom_sobolev_norm(const RadialField& f, double s) const;
  //! (w4 \int |f|^p r^4 dr)^{1/p}; p = +infinity gives max |f|.
  double lebesgue_norm(const RadialField& f, double p) const;
  //! L^2(R^5) norm computed in physical space.
  double l2_norm(const RadialField& f) const;
  //! H^{3/2} x H^{1/2} norm of (u, u_t).
  double critical_norm(const State& s) const;
  //! H^1 x L^2 norm of (u, u_t) (free-energy norm).
  double energy_norm(const State& s) const;

 private:
  const RadialGrid* m_grid;
  Eigen::MatrixXd m_fwd;    //!< spectral <- physical
  Eigen::MatrixXd m_inv;    //!< physical <- spectral
  Eigen::MatrixXd m_dinv;   //!< physical d/dr <- spectral
};

} // namespace wavelab
