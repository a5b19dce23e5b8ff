//==============================================================================
// models.cpp -- nonlinearity families, energies, closed-form solutions
//==============================================================================
#include "wavelab/models.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wavelab {

//------------------------------------------------------------------------------
// ModelSpec
//------------------------------------------------------------------------------
std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::free: return "free";
    case ModelKind::cubic_focusing: return "cubic_focusing";
    case ModelKind::cubic_defocusing: return "cubic_defocusing";
    case ModelKind::power: return "power";
    case ModelKind::wm_s3: return "wm_s3";
    case ModelKind::wm_h3: return "wm_h3";
  }
  throw std::invalid_argument("model_kind_name: unknown kind");
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "free") return ModelKind::free;
  if (name == "cubic_focusing") return ModelKind::cubic_focusing;
  if (name == "cubic_defocusing") return ModelKind::cubic_defocusing;
  if (name == "power") return ModelKind::power;
  if (name == "wm_s3") return ModelKind::wm_s3;
  if (name == "wm_h3") return ModelKind::wm_h3;
  throw std::invalid_argument("model kind '" + name + "' not recognized");
}

ModelSpec ModelSpec::make(ModelKind kind) {
  ModelSpec m;
  m.kind = kind;
  return m;
}

void validate(const ModelSpec& model) {
  if (model.kind == ModelKind::power) {
    if (model.power_sign != 1 && model.power_sign != -1)
      throw std::invalid_argument("power model: sign must be +1 or -1");
    if (model.power_p < 1.0)
      throw std::invalid_argument("power model: exponent must be >= 1");
    if (model.power_p <= 7.0 / 3.0 && !model.allow_subcritical)
      throw std::invalid_argument(
          "power model: exponent must exceed 7/3 (set allow_subcritical to "
          "override)");
  }
  if (model.cutoff_R && *model.cutoff_R <= 0.0)
    throw std::invalid_argument("cutoff radius must be positive");
}

nlohmann::json model_to_json(const ModelSpec& model) {
  nlohmann::json j;
  j["kind"] = model_kind_name(model.kind);
  if (model.kind == ModelKind::power) {
    j["p"] = model.power_p;
    j["sign"] = model.power_sign;
    if (model.allow_subcritical) j["allow_subcritical"] = true;
  }
  if (model.cutoff_R) j["cutoff_R"] = *model.cutoff_R;
  return j;
}

ModelSpec model_from_json(const nlohmann::json& j) {
  ModelSpec m;
  m.kind = model_kind_from_name(j.at("kind").get<std::string>());
  if (j.contains("p")) m.power_p = j.at("p").get<double>();
  if (j.contains("sign")) m.power_sign = j.at("sign").get<int>();
  if (j.contains("allow_subcritical"))
    m.allow_subcritical = j.at("allow_subcritical").get<bool>();
  if (j.contains("cutoff_R")) m.cutoff_R = j.at("cutoff_R").get<double>();
  validate(m);
  return m;
}

//------------------------------------------------------------------------------
// Nonlinearities
//------------------------------------------------------------------------------
double cutoff_chi(const ModelSpec& model, double r) {
  if (!model.cutoff_R) return 1.0;
  const double R = *model.cutoff_R;
  return smooth_cut_up(r, 0.5 * R, R);
}

namespace {

// (2m+1)! for m = 1..8 (exact in double precision)
constexpr double kOddFact[9] = {1.0,
                                6.0,
                                120.0,
                                5040.0,
                                362880.0,
                                39916800.0,
                                6227020800.0,
                                1307674368000.0,
                                355687428096000.0};

// (2 rho - s(2 rho))/rho^3 via the Taylor series of s = sin (alternating)
// or s = sinh (sign = -1 branch below): sum_{m>=1} -/+ (2rho)^{2m+1} /
// ((2m+1)! rho^3).  Eight terms keep the truncation error below 1e-21 on
// the switchover range |2 rho| < 0.5.
double z_series(double rho, bool alternating) {
  const double rho2 = rho * rho;
  double sum = 0.0;
  double pow2 = 8.0;      // 2^{2m+1} at m = 1
  double rho_pow = 1.0;   // rho^{2m-2} at m = 1
  for (int m = 1; m <= 8; ++m) {
    const double term = pow2 * rho_pow / kOddFact[m];
    if (alternating)
      sum += (m % 2 == 1) ? term : -term;
    else
      sum -= term;
    pow2 *= 4.0;
    rho_pow *= rho2;
  }
  return sum;
}

} // namespace

double z_s3(double rho) {
  if (std::abs(2.0 * rho) < 0.5) return z_series(rho, true);
  return (2.0 * rho - std::sin(2.0 * rho)) / (rho * rho * rho);
}

double z_h3(double rho) {
  if (std::abs(2.0 * rho) < 0.5) return z_series(rho, false);
  return (2.0 * rho - std::sinh(2.0 * rho)) / (rho * rho * rho);
}

double nonlinearity(const ModelSpec& model, double r, double u) {
  double f = 0.0;
  switch (model.kind) {
    case ModelKind::free: return 0.0;
    case ModelKind::cubic_focusing: f = u * u * u; break;
    case ModelKind::cubic_defocusing: f = -u * u * u; break;
    case ModelKind::power:
      f = model.power_sign * std::pow(std::abs(u), model.power_p - 1.0) * u;
      break;
    case ModelKind::wm_s3: f = u * u * u * z_s3(r * u); break;
    case ModelKind::wm_h3: {
      if (std::abs(r * u) > 350.0)
        throw std::overflow_error(
            "wm_h3 nonlinearity overflow (|r u| > 350): blow-up signal");
      f = u * u * u * z_h3(r * u);
      break;
    }
  }
  return cutoff_chi(model, r) * f;
}

RadialField nonlinearity_field(const ModelSpec& model, const RadialField& u) {
  RadialField out{u.grid, Vec(u.values.size())};
  for (std::size_t i = 0; i < u.values.size(); ++i)
    out.values[i] = nonlinearity(model, u.grid->nodes[i], u.values[i]);
  return out;
}

//------------------------------------------------------------------------------
// Energies
//------------------------------------------------------------------------------
namespace {

// G(psi) - psi^2 with G = sin^2 (alternating) or sinh^2; series for small
// psi where the direct form cancels: sum_{m>=2} -/+ (2 psi)^{2m} / (2 (2m)!).
double g_minus_square(double psi, bool alternating) {
  if (std::abs(psi) < 0.1) {
    const double x2 = 4.0 * psi * psi; // (2 psi)^2
    // (2m)! for m = 2..6
    static constexpr double kFact[5] = {24.0, 720.0, 40320.0, 3628800.0,
                                        479001600.0};
    double sum = 0.0;
    double xp = x2 * x2; // (2 psi)^{2m} at m = 2
    for (int m = 2; m <= 6; ++m) {
      const double term = xp / (2.0 * kFact[m - 2]);
      if (alternating)
        sum += (m % 2 == 0) ? -term : term;
      else
        sum += term;
      xp *= x2;
    }
    return sum;
  }
  const double s = alternating ? std::sin(psi) : std::sinh(psi);
  return s * s - psi * psi;
}

// Semilinear potential V(u) with -V' = F (cutoff applied by the caller).
double potential_v(const ModelSpec& model, double u) {
  switch (model.kind) {
    case ModelKind::free: return 0.0;
    case ModelKind::cubic_focusing: return -0.25 * u * u * u * u;
    case ModelKind::cubic_defocusing: return 0.25 * u * u * u * u;
    case ModelKind::power:
      return -model.power_sign *
             std::pow(std::abs(u), model.power_p + 1.0) /
             (model.power_p + 1.0);
    default:
      throw std::logic_error("potential_v: not a semilinear model");
  }
}

bool is_wave_map(const ModelSpec& model) {
  return model.kind == ModelKind::wm_s3 || model.kind == ModelKind::wm_h3;
}

} // namespace

double potential_energy(const ModelSpec& model, const RadialField& u) {
  const RadialGrid& g = *u.grid;
  double total = 0.0;
  if (is_wave_map(model)) {
    // int chi (G(psi) - psi^2)/r^4 r^4 dr, the wave-map counterpart of the
    // semilinear potential term (exact conserved complement of the kinetic
    // and gradient terms for the possibly cut-off flow)
    const bool alt = model.kind == ModelKind::wm_s3;
    for (int i = 0; i < g.n; ++i) {
      const double r = g.nodes[i];
      const double psi = r * u.values[i];
      total += g.weights[i] * cutoff_chi(model, r) *
               g_minus_square(psi, alt) / (r * r * r * r);
    }
    return total;
  }
  for (int i = 0; i < g.n; ++i)
    total += g.weights[i] * cutoff_chi(model, g.nodes[i]) *
             potential_v(model, u.values[i]);
  return total;
}

double energy(const ModelSpec& model, const State& state,
              const RadialFourier& F) {
  check_same_grid(state.u.grid, state.ut.grid, "energy");
  const RadialGrid& g = *state.u.grid;
  SpectralField uh = F.forward(state.u);
  // the H^1 norm's spectral-tail test doubles as the resolution check for
  // the radial derivative below
  (void)F.sobolev_norm_spectral(uh, 1.0);
  RadialField ur = F.derivative_from_spectral(uh);

  if (is_wave_map(model) && !model.cutoff_R) {
    // equivariant form on the r^2 dr measure (identical value to the
    // u-variable energy, better conditioned near r = 0)
    const bool alt = model.kind == ModelKind::wm_s3;
    double total = 0.0;
    for (int i = 0; i < g.n; ++i) {
      const double r = g.nodes[i];
      const double psi = r * state.u.values[i];
      const double psi_t = r * state.ut.values[i];
      const double psi_r = state.u.values[i] + r * ur.values[i];
      const double s = alt ? std::sin(psi) : std::sinh(psi);
      total += (g.weights[i] / (r * r)) * 0.5 *
               (psi_t * psi_t + psi_r * psi_r + 2.0 * s * s / (r * r));
    }
    return total;
  }

  double total = potential_energy(model, state.u);
  for (int i = 0; i < g.n; ++i)
    total += g.weights[i] * 0.5 *
             (state.ut.values[i] * state.ut.values[i] +
              ur.values[i] * ur.values[i]);
  return total;
}

double energy_h3_diagnostic(const State& state, const RadialFourier& F) {
  check_same_grid(state.u.grid, state.ut.grid, "energy_h3_diagnostic");
  const RadialGrid& g = *state.u.grid;
  SpectralField uh = F.forward(state.u);
  (void)F.sobolev_norm_spectral(uh, 1.0);
  RadialField ur = F.derivative_from_spectral(uh);
  double total = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double r = g.nodes[i];
    const double psi = r * state.u.values[i];
    total += g.weights[i] * 0.5 *
             (ur.values[i] * ur.values[i] +
              state.ut.values[i] * state.ut.values[i] +
              2.0 * g_minus_square(psi, false) / (r * r * r * r));
  }
  return total;
}

//------------------------------------------------------------------------------
// Closed-form solutions
//------------------------------------------------------------------------------
double exact_ode_blowup(double T, double t) {
  if (t >= T)
    throw std::domain_error("exact_ode_blowup: requires t < T");
  return std::sqrt(2.0) / (T - t);
}

double exact_ode_blowup_dt(double T, double t) {
  if (t >= T)
    throw std::domain_error("exact_ode_blowup: requires t < T");
  const double d = T - t;
  return std::sqrt(2.0) / (d * d);
}

PsiPair turok_spergel(double t, double r) {
  if (t <= 0.0)
    throw std::domain_error("turok_spergel: requires t > 0");
  PsiPair p;
  p.psi = 2.0 * std::atan2(r, t);
  p.psi_t = -2.0 * r / (t * t + r * r);
  return p;
}

State ode_blowup_ball(const RadialGrid& g, double T, double R) {
  const double phi = exact_ode_blowup(T, 0.0);
  const double phi_t = exact_ode_blowup_dt(T, 0.0);
  State s = zero_state(g);
  for (int i = 0; i < g.n; ++i) {
    const double chi = smooth_cut_down(g.nodes[i], 0.5 * R, R);
    s.u.values[i] = phi * chi;
    s.ut.values[i] = phi_t * chi;
  }
  return s;
}

State turok_spergel_state(const RadialGrid& g, double t0, double truncation) {
  State s = zero_state(g);
  s.t = t0;
  for (int i = 0; i < g.n; ++i) {
    const double r = g.nodes[i];
    const double chi = smooth_cut_down(r, 0.5 * truncation, truncation);
    const PsiPair p = turok_spergel(t0, r);
    s.u.values[i] = chi * p.psi / r;
    s.ut.values[i] = chi * p.psi_t / r;
  }
  return s;
}

//------------------------------------------------------------------------------
// Residual
//------------------------------------------------------------------------------
RadialField residual(const ModelSpec& model, const StateTriple& snap) {
  check_same_grid(snap.u.grid, snap.utt.grid, "residual");
  RadialField lap = radial_laplacian(snap.u);
  RadialField rhs = nonlinearity_field(model, snap.u);
  RadialField out{snap.u.grid, Vec(snap.u.values.size())};
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = snap.utt.values[i] - lap.values[i] - rhs.values[i];
  return out;
}

} // namespace wavelab
