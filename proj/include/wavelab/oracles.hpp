//==============================================================================
// oracles.hpp -- independent reference computations for cross-checking
//
//  Every oracle here deliberately avoids the production code path it
//  certifies:
//    * oracle_transform uses composite Boole quadrature on closed-form
//      integrands (production: dense Gauss-Legendre matrix on nodal samples).
//    * oracle_ode_integrate is a fixed-step classical RK4 marcher
//      (production: adaptive 8th-order Dormand-Prince from GSL).
//    * closed_form_residual evaluates hand-derived analytic derivatives
//      (production: discretized operators).
//==============================================================================
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wavelab/radial_grid.hpp"

namespace wavelab {

struct OracleConfig {
  int refinement = 8; //!< quadrature/step refinement over production (>= 4)
};

//! Forward radial Fourier transform of a closed-form radial function,
//! evaluated on the grid's frequency nodes by refined Boole quadrature.
SpectralField oracle_transform(const std::function<double(double)>& f,
                               const RadialGrid& g,
                               const OracleConfig& cfg = {});

//! Fixed-step classical RK4 integration of y' = rhs(s, y) from s0 to s1.
//! Steps: cfg.refinement * 1024 over the range.  Throws on overflow
//! (|y| > 1e12).  If `watch` is non-null it is called after every step.
Vec oracle_ode_integrate(
    const std::function<void(double, const Vec&, Vec&)>& rhs, Vec y0,
    double s0, double s1, const OracleConfig& cfg = {},
    const std::function<void(double, const Vec&)>& watch = nullptr);

//! Analytic residual of a named closed-form solution in its own equation.
//! Cases:
//!   phi_T        -- a=t, b=T: blow-up ODE solution sqrt(2)/(T-t)
//!   turok_spergel -- a=t, b=r: self-similar sphere-valued map 2 atan(r/t)
//!   plane_r3     -- a=t, b=r: static exterior profile r^{-3}
//!   plane_tr3    -- a=t, b=r: linearly growing exterior profile t r^{-3}
//! Throws std::domain_error outside the domain of validity.
double closed_form_residual(const std::string& which, double a, double b);

//! One comparison row of an oracle report.
struct OracleCase {
  std::string name;
  double production = 0.0;
  double oracle = 0.0;
  double rel_diff = 0.0;
};

//! Serialize comparison rows as JSON: [{case, production_value, oracle_value,
//! rel_diff}, ...].
std::string oracle_report_json(const std::vector<OracleCase>& cases);

} // namespace wavelab
