//==============================================================================
// models.hpp -- nonlinearity families, conserved energies, and closed-form
//               solutions for the radial wave equations handled by the lab
//
//  A ModelSpec selects the right-hand side F(r,u) of
//
//      u_tt - u_rr - (4/r) u_r = F(r, u)          (radial, 5 space dims)
//
//  together with its conserved energy.  Supported families:
//    * free            F = 0
//    * cubic_focusing  F = +u^3          * cubic_defocusing  F = -u^3
//    * power           F = sign |u|^{p-1} u
//    * wm_s3           F = (2ru - sin(2ru))/r^3   (sphere target, psi = ru)
//    * wm_h3           F = (2ru - sinh(2ru))/r^3  (hyperbolic target)
//  An optional cutoff factor chi_R (smooth, 0 below R/2, 1 above R)
//  multiplies F for the modified exterior problem.
//==============================================================================
#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "wavelab/radial_grid.hpp"
#include "wavelab/transform.hpp"

namespace wavelab {

//------------------------------------------------------------------------------
// ModelSpec
//------------------------------------------------------------------------------
enum class ModelKind {
  free,
  cubic_focusing,
  cubic_defocusing,
  power,
  wm_s3,
  wm_h3,
};

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

struct ModelSpec {
  ModelKind kind = ModelKind::cubic_focusing;
  double power_p = 3.0;            //!< exponent for kind == power
  int power_sign = +1;             //!< +1 focusing, -1 defocusing
  bool allow_subcritical = false;  //!< lift the p > 7/3 restriction
  std::optional<double> cutoff_R;  //!< chi_R factor when set

  static ModelSpec make(ModelKind kind);
};

//! Throws std::invalid_argument on inconsistent parameters (power exponent
//! not above 7/3 without the override flag, non-positive cutoff radius).
void validate(const ModelSpec& model);

nlohmann::json model_to_json(const ModelSpec& model);
ModelSpec model_from_json(const nlohmann::json& j);

//------------------------------------------------------------------------------
// Nonlinearities
//------------------------------------------------------------------------------
//! Cutoff factor chi_R(r): identically 0 for r <= R/2, 1 for r >= R.
//! Returns 1 when the model carries no cutoff.
double cutoff_chi(const ModelSpec& model, double r);

//! Z factors of the wave-map nonlinearities, F = u^3 Z(ru):
//!   z_s3(rho) = (2 rho - sin  2 rho)/rho^3  in [0, 4/3], even, peak at 0
//!   z_h3(rho) = (2 rho - sinh 2 rho)/rho^3  <= 0, even
//! Both switch to an 8-term Taylor series for |2 rho| < 0.5 where the
//! direct formula loses all significant digits to cancellation.
double z_s3(double rho);
double z_h3(double rho);

//! F(r, u) for the given model, including the cutoff factor.
//! Throws std::overflow_error for wm_h3 once |ru| > 350 (sinh overflow);
//! callers treat that as a blow-up signal.
double nonlinearity(const ModelSpec& model, double r, double u);

//! Pointwise application of `nonlinearity` on the grid nodes.
RadialField nonlinearity_field(const ModelSpec& model, const RadialField& u);

//------------------------------------------------------------------------------
// Energies
//------------------------------------------------------------------------------
//! Conserved energy of the model's flow.  Semilinear models use
//!   E = int [ ut^2/2 + ur^2/2 + chi V(u) ] r^4 dr
//! with V the antiderivative of -F; the wave maps use the equivariant form
//!   E = 1/2 int [ psi_t^2 + psi_r^2 + 2 G(psi)/r^2 ] r^2 dr,   psi = r u,
//! (G = sin^2 or sinh^2), which equals the u-variable energy but avoids the
//! r^-4 weight.  The radial derivative is computed spectrally; a field whose
//! spectrum has not decayed by the grid cutoff throws std::runtime_error.
double energy(const ModelSpec& model, const State& state,
              const RadialFourier& F);

//! Potential term of the semilinear energy alone (no derivatives involved).
double potential_energy(const ModelSpec& model, const RadialField& u);

//! Positive-definite diagnostic energy for the hyperbolic target:
//!   1/2 int [ ur^2 + ut^2 + 2 (sinh^2(ru) - (ru)^2)/r^4 ] r^4 dr.
double energy_h3_diagnostic(const State& state, const RadialFourier& F);

//------------------------------------------------------------------------------
// Closed-form solutions
//------------------------------------------------------------------------------
//! Space-independent blow-up solution of u_tt = u^3:
//! phi_T(t) = sqrt(2)/(T - t).  Throws std::domain_error for t >= T.
double exact_ode_blowup(double T, double t);
//! d/dt of the same: sqrt(2)/(T - t)^2.
double exact_ode_blowup_dt(double T, double t);

//! Equivariant self-similar wave map psi(t, r) = 2 arctan(r/t) and its time
//! derivative -2r/(t^2 + r^2).  Throws std::domain_error for t <= 0.
struct PsiPair {
  double psi = 0.0;
  double psi_t = 0.0;
};
PsiPair turok_spergel(double t, double r);

//! Initial state u = phi_T(0) chi, ut = phi_T'(0) chi with chi supported on
//! the ball of radius R (transition on [R/2, R]); inside radius R/2 the flow
//! follows the space-independent blow-up until the light cone arrives.
State ode_blowup_ball(const RadialGrid& g, double T, double R);

//! Initial state of the self-similar wave map at time t0, windowed to the
//! ball of radius `truncation` (u = psi/r, transition on [trunc/2, trunc]).
State turok_spergel_state(const RadialGrid& g, double t0, double truncation);

//------------------------------------------------------------------------------
// PDE residual
//------------------------------------------------------------------------------
//! One-time snapshot (u, u_t, u_tt) for residual evaluation.
struct StateTriple {
  double t = 0.0;
  RadialField u;
  RadialField ut;
  RadialField utt;
};

//! Pointwise residual  u_tt - u_rr - (4/r) u_r - F(r, u)  with the spatial
//! part evaluated by radial_laplacian and u_tt supplied by the caller.
RadialField residual(const ModelSpec& model, const StateTriple& snap);

} // namespace wavelab
