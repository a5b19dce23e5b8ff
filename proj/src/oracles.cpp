//==============================================================================
// oracles.cpp -- independent reference computations
//==============================================================================
#include "wavelab/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wavelab {

SpectralField oracle_transform(const std::function<double(double)>& f,
                               const RadialGrid& g, const OracleConfig& cfg) {
  if (cfg.refinement < 4)
    throw std::invalid_argument("OracleConfig: refinement >= 4");
  const int panels = cfg.refinement * g.n / 4;
  SpectralField out{&g, Vec(g.freq_nodes.size())};
  for (std::size_t i = 0; i < g.freq_nodes.size(); ++i) {
    const double rho = g.freq_nodes[i];
    out.values[i] =
        consts::twopi52 *
        integrate_boole(
            [&](double r) {
              return f(r) * wave_kernel_j(r * rho) * r * r * r * r;
            },
            0.0, g.r_max, panels);
  }
  return out;
}

Vec oracle_ode_integrate(
    const std::function<void(double, const Vec&, Vec&)>& rhs, Vec y0,
    double s0, double s1, const OracleConfig& cfg,
    const std::function<void(double, const Vec&)>& watch) {
  if (cfg.refinement < 4)
    throw std::invalid_argument("OracleConfig: refinement >= 4");
  const long steps = static_cast<long>(cfg.refinement) * 1024;
  const double h = (s1 - s0) / static_cast<double>(steps);
  const std::size_t d = y0.size();
  Vec y = std::move(y0);
  Vec k1(d), k2(d), k3(d), k4(d), tmp(d);
  double s = s0;
  for (long step = 0; step < steps; ++step) {
    rhs(s, y, k1);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs(s + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs(s + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(s + h, tmp, k4);
    for (std::size_t i = 0; i < d; ++i)
      y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    s = s0 + (step + 1) * h;
    for (double v : y)
      if (!std::isfinite(v) || std::fabs(v) > 1e12)
        throw std::overflow_error("oracle_ode_integrate: trajectory overflow");
    if (watch) watch(s, y);
  }
  return y;
}

//------------------------------------------------------------------------------
// Closed-form residuals (hand-derived derivatives)
//------------------------------------------------------------------------------
double closed_form_residual(const std::string& which, double a, double b) {
  if (which == "phi_T") {
    const double t = a, T = b;
    if (t >= T) throw std::domain_error("phi_T: requires t < T");
    // u(t) = sqrt(2)/(T-t): u_tt = 2 sqrt(2) (T-t)^{-3} and u^3 matches it.
    const double u = std::sqrt(2.0) / (T - t);
    const double utt = 2.0 * std::sqrt(2.0) / std::pow(T - t, 3);
    return utt - u * u * u;
  }
  if (which == "turok_spergel") {
    const double t = a, r = b;
    if (t <= 0.0) throw std::domain_error("turok_spergel: requires t > 0");
    if (r <= 0.0) throw std::domain_error("turok_spergel: requires r > 0");
    // psi = 2 atan(r/t) in psi_tt - psi_rr - (2/r) psi_r + sin(2 psi)/r^2 = 0
    const double q = t * t + r * r;
    const double psi = 2.0 * std::atan2(r, t);
    const double psi_tt = 4.0 * r * t / (q * q);
    const double psi_rr = -4.0 * r * t / (q * q);
    const double psi_r = 2.0 * t / q;
    return psi_tt - psi_rr - (2.0 / r) * psi_r + std::sin(2.0 * psi) / (r * r);
  }
  if (which == "plane_r3") {
    const double r = b;
    (void)a;
    if (r <= 0.0) throw std::domain_error("plane_r3: requires r > 0");
    // V = r^{-3}: V_tt = 0; Lap V = V'' + (4/r) V' = 12 r^{-5} - 12 r^{-5}.
    const double vpp = 12.0 * std::pow(r, -5.0);
    const double vp = -3.0 * std::pow(r, -4.0);
    return 0.0 - (vpp + 4.0 / r * vp);
  }
  if (which == "plane_tr3") {
    const double t = a, r = b;
    if (r <= 0.0) throw std::domain_error("plane_tr3: requires r > 0");
    // V = t r^{-3}: V_tt = 0; spatial part scales the static identity by t.
    const double vpp = t * 12.0 * std::pow(r, -5.0);
    const double vp = t * -3.0 * std::pow(r, -4.0);
    return 0.0 - (vpp + 4.0 / r * vp);
  }
  throw std::invalid_argument("closed_form_residual: unknown case " + which);
}

std::string oracle_report_json(const std::vector<OracleCase>& cases) {
  nlohmann::json arr = nlohmann::json::array();
  for (const OracleCase& c : cases) {
    arr.push_back({{"case", c.name},
                   {"production_value", c.production},
                   {"oracle_value", c.oracle},
                   {"rel_diff", c.rel_diff}});
  }
  return arr.dump(2);
}

} // namespace wavelab
