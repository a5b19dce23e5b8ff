#include "wavelab/stationary.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace wavelab {

namespace {

// GSL reports errors through return codes here; the default abort-on-error
// handler is disabled once for the whole process.
void quiet_gsl() {
  static gsl_error_handler_t* previous = gsl_set_error_handler_off();
  (void)previous;
}

} // namespace

const char* autonomous_name(AutonomousKind kind) {
  switch (kind) {
  case AutonomousKind::cubic: return "cubic";
  case AutonomousKind::pendulum_sin: return "pendulum_sin";
  case AutonomousKind::pendulum_sinh: return "pendulum_sinh";
  }
  return "?";
}

AutonomousKind parse_autonomous(const std::string& name) {
  if (name == "cubic") return AutonomousKind::cubic;
  if (name == "pendulum_sin") return AutonomousKind::pendulum_sin;
  if (name == "pendulum_sinh") return AutonomousKind::pendulum_sinh;
  throw std::invalid_argument("unknown autonomous kind: " + name);
}

double AutonomousModel::g(double x) const {
  switch (kind) {
  case AutonomousKind::cubic: return 2.0 * x - x * x * x;
  case AutonomousKind::pendulum_sin: return std::sin(2.0 * x);
  case AutonomousKind::pendulum_sinh: return std::sinh(2.0 * x);
  }
  return 0.0;
}

double AutonomousModel::dg(double x) const {
  switch (kind) {
  case AutonomousKind::cubic: return 2.0 - 3.0 * x * x;
  case AutonomousKind::pendulum_sin: return 2.0 * std::cos(2.0 * x);
  case AutonomousKind::pendulum_sinh: return 2.0 * std::cosh(2.0 * x);
  }
  return 0.0;
}

double AutonomousModel::g3_at_zero() const {
  switch (kind) {
  case AutonomousKind::cubic: return -6.0;
  case AutonomousKind::pendulum_sin: return -8.0;
  case AutonomousKind::pendulum_sinh: return 8.0;
  }
  return 0.0;
}

double AutonomousModel::potential_drop(double x) const {
  switch (kind) {
  case AutonomousKind::cubic: return x * x - 0.25 * x * x * x * x;
  case AutonomousKind::pendulum_sin: {
    const double s = std::sin(x);
    return s * s;
  }
  case AutonomousKind::pendulum_sinh: {
    const double s = std::sinh(x);
    return s * s;
  }
  }
  return 0.0;
}

AutonomousModel make_autonomous(AutonomousKind kind) { return {kind}; }

std::vector<std::pair<double, double>>
equilibria(const AutonomousModel& model) {
  std::vector<double> roots;
  if (model.kind == AutonomousKind::pendulum_sin) {
    // sin(2x) vanishes exactly on the half-pi lattice.
    const double half_pi = 0.5 * consts::pi;
    for (int k = -12; k <= 12; ++k) {
      const double x = k * half_pi;
      if (std::abs(x) <= 20.0) roots.push_back(x);
    }
  } else {
    const int cells = 40000; // 1e-3 scan resolution on [-20, 20]
    double a = -20.0;
    double ga = model.g(a);
    for (int i = 1; i <= cells; ++i) {
      const double b = -20.0 + 40.0 * double(i) / cells;
      const double gb = model.g(b);
      if (ga == 0.0) roots.push_back(a);
      if (ga * gb < 0.0) {
        double lo = a, hi = b;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (model.g(lo) * model.g(mid) <= 0.0)
            hi = mid;
          else
            lo = mid;
        }
        roots.push_back(0.5 * (lo + hi));
      }
      a = b;
      ga = gb;
    }
    if (ga == 0.0) roots.push_back(a);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double u, double v) {
                            return std::abs(u - v) < 1e-6;
                          }),
              roots.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(roots.size());
  for (double x : roots) out.emplace_back(x, 0.0);
  return out;
}

std::pair<std::complex<double>, std::complex<double>>
jacobian_eigenvalues(const AutonomousModel& model, double x, double /*y*/) {
  // Linearization [[0,1],[g'(x),-1]]: lambda^2 + lambda - g'(x) = 0.
  const std::complex<double> disc(1.0 + 4.0 * model.dg(x), 0.0);
  const std::complex<double> root = std::sqrt(disc);
  std::complex<double> lp = 0.5 * (-1.0 + root);
  std::complex<double> lm = 0.5 * (-1.0 - root);
  if (lp.real() < lm.real() ||
      (lp.real() == lm.real() && lp.imag() < lm.imag()))
    std::swap(lp, lm);
  return {lp, lm};
}

namespace {

struct BackwardOde {
  const AutonomousModel* model;
  // 0: none, 1: accumulate x'^2, 2: accumulate |x|^5
  int augment;
};

// Backward flow in tau = s_seed - s: x' = -y, y' = y - g(x), plus one
// optional running integral (both integrands are positive measures in tau,
// matching integrals over decreasing s).
int backward_rhs(double /*tau*/, const double z[], double dz[], void* params) {
  const auto& ode = *static_cast<const BackwardOde*>(params);
  const double x = z[0];
  const double y = z[1];
  dz[0] = -y;
  dz[1] = y - ode.model->g(x);
  if (ode.augment == 1)
    dz[2] = y * y;
  else if (ode.augment == 2)
    dz[2] = std::pow(std::abs(x), 5);
  if (!std::isfinite(dz[0]) || !std::isfinite(dz[1])) return GSL_EBADFUNC;
  return GSL_SUCCESS;
}

struct Seed {
  double s;     // seed location
  double a;     // e^{-6s} coefficient
  double x, y;  // state at the seed
};

// Two-term asymptotic seed on the stable manifold:
//   x(s) = ell e^{-2s} + a e^{-6s} + O(e^{-10s}),
// where matching the e^{-6s} terms of x'' + x' - g(x) = 0 against
// g(x) = g'(0) x + g'''(0) x^3/6 + ... gives a (30 - g'(0)) = g'''(0) ell^3/6.
// The seed point puts the leading term below 1e-6 so the truncation error
// O(ell^5 e^{-10s}) is negligible even after backward amplification.
Seed make_seed(const AutonomousModel& model, double ell) {
  Seed seed;
  seed.s = std::max(1.0, 0.5 * std::log(std::abs(ell) * 1e6) + 0.5);
  seed.a = model.g3_at_zero() * ell * ell * ell / (6.0 * (30.0 - model.dg(0.0)));
  const double e2 = std::exp(-2.0 * seed.s);
  const double e6 = std::exp(-6.0 * seed.s);
  seed.x = ell * e2 + seed.a * e6;
  seed.y = -2.0 * ell * e2 - 6.0 * seed.a * e6;
  return seed;
}

class BackwardDriver {
public:
  BackwardDriver(const AutonomousModel& model, int augment, double tail0)
      : m_ode{&model, augment} {
    quiet_gsl();
    m_dim = augment == 0 ? 2 : 3;
    m_sys = {backward_rhs, nullptr, m_dim, &m_ode};
    m_drv = gsl_odeiv2_driver_alloc_y_new(&m_sys, gsl_odeiv2_step_rk8pd, 1e-6,
                                          1e-14, 1e-12);
    gsl_odeiv2_driver_set_nmax(m_drv, 50000000);
    m_z[2] = tail0;
  }
  ~BackwardDriver() { gsl_odeiv2_driver_free(m_drv); }
  BackwardDriver(const BackwardDriver&) = delete;
  BackwardDriver& operator=(const BackwardDriver&) = delete;

  void start(const Seed& seed) {
    m_tau = 0.0;
    m_seed_s = seed.s;
    m_z[0] = seed.x;
    m_z[1] = seed.y;
  }

  //! Advance down to s (<= current), throwing on escape or stall.
  void advance_to(double s, double s_min) {
    const double tau_target = m_seed_s - s;
    const int status = gsl_odeiv2_driver_apply(m_drv, &m_tau, tau_target, m_z);
    const double here = m_seed_s - m_tau;
    if (status != GSL_SUCCESS) {
      char buf[160];
      if (std::abs(m_z[0]) > 1.0 || !std::isfinite(m_z[0]))
        std::snprintf(buf, sizeof buf,
                      "stable manifold escaped: integration stalled at "
                      "s=%.4f (|x| grows without bound) before s_min=%.4f",
                      here, s_min);
      else
        std::snprintf(buf, sizeof buf,
                      "stable manifold: ODE step failure (%s) at s=%.4f",
                      gsl_strerror(status), here);
      throw std::runtime_error(buf);
    }
    if (std::abs(m_z[0]) > 50.0) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "stable manifold escaped |x| > 50 at s=%.4f before "
                    "reaching s_min=%.4f",
                    here, s_min);
      throw std::runtime_error(buf);
    }
  }

  double x() const { return m_z[0]; }
  double y() const { return m_z[1]; }
  double aug() const { return m_z[2]; }

private:
  BackwardOde m_ode;
  std::size_t m_dim;
  gsl_odeiv2_system m_sys;
  gsl_odeiv2_driver* m_drv;
  double m_tau = 0.0;
  double m_seed_s = 0.0;
  double m_z[3] = {0.0, 0.0, 0.0};
};

} // namespace

ManifoldProfile stable_manifold(const AutonomousModel& model, double ell,
                                double s_min, double ds) {
  if (!std::isfinite(ell)) throw std::invalid_argument("ell must be finite");
  if (!(ds > 0.0)) throw std::invalid_argument("ds must be positive");
  if (!(s_min <= 0.0))
    throw std::invalid_argument("s_min must satisfy s_min <= 0");

  ManifoldProfile prof;
  prof.kind = model.kind;
  prof.ell = ell;
  prof.ds = ds;

  if (ell == 0.0) {
    prof.s_seed = 1.0;
    prof.seed_a = 0.0;
  } else {
    const Seed seed = make_seed(model, ell);
    prof.s_seed = seed.s;
    prof.seed_a = seed.a;
  }

  // Uniform lattice at multiples of ds so that profiles related by a shift
  // s -> s + k*ds share nodes exactly.
  const long k_hi = static_cast<long>(std::floor(prof.s_seed / ds + 1e-9));
  const long k_lo = static_cast<long>(std::ceil(s_min / ds - 1e-9));
  if (k_lo > k_hi)
    throw std::invalid_argument("empty s-range in stable_manifold");
  const std::size_t count = static_cast<std::size_t>(k_hi - k_lo + 1);
  prof.s_grid.resize(count);
  prof.phi.resize(count);
  prof.phidot.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    prof.s_grid[i] = (k_lo + static_cast<long>(i)) * ds;

  if (ell == 0.0) {
    std::fill(prof.phi.begin(), prof.phi.end(), 0.0);
    std::fill(prof.phidot.begin(), prof.phidot.end(), 0.0);
    return prof;
  }

  const Seed seed = make_seed(model, ell);
  BackwardDriver drv(model, 0, 0.0);
  drv.start(seed);
  for (std::size_t j = count; j-- > 0;) {
    drv.advance_to(prof.s_grid[j], s_min);
    prof.phi[j] = drv.x();
    prof.phidot[j] = drv.y();
  }
  return prof;
}

RadialField physical_profile(const ManifoldProfile& profile,
                             const RadialGrid& grid) {
  RadialField out{&grid, Vec(static_cast<std::size_t>(grid.n), 0.0)};
  if (profile.ell == 0.0) return out;

  const double s_lo = profile.s_min() - 1e-12;
  const double s_hi = profile.s_max() + 1e-12;
  NodeInterpolant interp(profile.s_grid, profile.phi, 8,
                         /*even_at_zero=*/false);
  for (int i = 0; i < grid.n; ++i) {
    const double r = grid.nodes[static_cast<std::size_t>(i)];
    const double s = std::log(r);
    if (s < s_lo || s > s_hi) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "grid node r=%.6g (log r=%.4f) outside integrated "
                    "s-range [%.4f, %.4f]",
                    r, s, profile.s_min(), profile.s_max());
      throw std::invalid_argument(buf);
    }
    out.values[static_cast<std::size_t>(i)] = interp.value(s) / r;
  }
  return out;
}

L5Report l5_divergence(const ManifoldProfile& profile, const Vec& eps_list) {
  if (profile.ell == 0.0)
    throw std::invalid_argument(
        "l5_divergence: zero profile has no divergence to measure");
  if (eps_list.empty())
    throw std::invalid_argument("l5_divergence: empty eps list");
  for (double e : eps_list)
    if (!(e > 0.0 && e < 1.0))
      throw std::invalid_argument("l5_divergence: eps must lie in (0,1)");
  const double eps_min = *std::min_element(eps_list.begin(), eps_list.end());
  if (!(std::exp(profile.s_min()) < eps_min))
    throw std::invalid_argument(
        "l5_divergence: profile range too shallow (need e^{s_min} below "
        "every eps)");

  // Re-integrate with the running integral of |x|^5 carried by the adaptive
  // stepper itself; a fixed composite rule on the stored lattice would lose
  // accuracy once the backward oscillation grows fast and stiff.
  const AutonomousModel model = make_autonomous(profile.kind);
  const Seed seed = make_seed(model, profile.ell);
  BackwardDriver drv(model, 2, 0.0);
  drv.start(seed);

  // Descend through s = 0 first (I(eps) excludes (eps^..., r > 1)), then
  // through the requested log(eps) stops in decreasing order.
  std::vector<std::size_t> order(eps_list.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return eps_list[a] > eps_list[b];
  });

  drv.advance_to(0.0, profile.s_min());
  const double at_one = drv.aug();

  L5Report rep;
  rep.eps = eps_list;
  rep.integral.assign(eps_list.size(), 0.0);
  for (std::size_t idx : order) {
    drv.advance_to(std::log(eps_list[idx]), profile.s_min());
    rep.integral[idx] = drv.aug() - at_one;
  }

  Vec logs(eps_list.size());
  for (std::size_t i = 0; i < logs.size(); ++i)
    logs[i] = std::log(1.0 / eps_list[i]);
  const LineFit fit = fit_line(logs, rep.integral);
  rep.slope = fit.slope;
  rep.intercept = fit.intercept;
  rep.r_squared = fit.r2;
  return rep;
}

double ode_energy_identity(const AutonomousModel& model,
                           const ManifoldProfile& profile) {
  if (profile.ell == 0.0) return 0.0;

  // Tail of int_s^inf x'^2 beyond the seed, from the two-term expansion
  // x' = -2 ell e^{-2s} - 6 a e^{-6s}.
  const Seed seed = make_seed(model, profile.ell);
  const double e4 = std::exp(-4.0 * seed.s);
  const double e8 = std::exp(-8.0 * seed.s);
  const double e12 = std::exp(-12.0 * seed.s);
  const double tail = profile.ell * profile.ell * e4 +
                      3.0 * profile.ell * seed.a * e8 +
                      3.0 * seed.a * seed.a * e12;

  BackwardDriver drv(model, 1, tail);
  drv.start(seed);
  double worst = 0.0;
  for (std::size_t j = profile.s_grid.size(); j-- > 0;) {
    drv.advance_to(profile.s_grid[j], profile.s_min());
    const double x = drv.x();
    const double y = drv.y();
    const double lhs = drv.aug();
    const double rhs = 0.5 * y * y - model.potential_drop(x);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

} // namespace wavelab
