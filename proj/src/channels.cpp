//==============================================================================
// channels.cpp
//
// Exterior-energy functionals, the static-tail projection, and closed-form
// free propagation of analytic radial data in five space dimensions.
//
// Grid layer.  All exterior integrals run over node-aligned cells; on each
// cell the integrand is built from one fixed local Lagrange stencil, and the
// 12-point Gauss rule integrates every polynomial piece exactly.  Since
// adjacent stencils agree at the shared node, \int f' telescopes to exact
// boundary differences, which is what makes the projection split obey
// proj + perp = data at roundoff level rather than quadrature tolerance.
//
// Exact layer.  With h = 3 r u + r^2 u_r the radial wave equation reduces to
// h_tt = h_rr on the line (odd in r), so d'Alembert gives h and, after one
// integration, u itself:
//
//   r^3 u(t,r) = 1/2 [C1(r+t) + C1(r-t)] - t/2 [A(r+t) - A(r-t)]
//              + 1/2 [T(r+t) - T(r-t)] - t/2 [B(r+t) + B(r-t)],
//
// where, writing Mf1 = \int_0^x s f ds, Mg1 = \int_0^x s g ds and
// Mg3 = \int_0^x s^3 g ds, the building blocks reduce by parts to
//
//   C1(x) = \int_0^x s h0 ds   = x^3 f(x)                        (odd)
//   A(x)  = \int_0^x h0 ds     = x^2 f(x) + Mf1(x)               (even)
//   W(x)  = \int_0^x h1 ds     = x^2 g(x) + Mg1(x)               (even)
//   B(x)  = \int_0^x W ds      = x Mg1(x)                        (odd)
//   T(x)  = \int_0^x s W ds    = (Mg3(x) + x^2 Mg1(x)) / 2       (even)
//
// so the only quadratures are the three cumulative moments of the raw data.
// Data equal to gamma r^{-3} beyond their support have h0, h1 supported in
// [0, support]; the moments continue analytically, the first moment line is
// m(t) = plane_f + t plane_g, and the solution outside the light cone of the
// support is exactly m(t) r^{-3}.
//==============================================================================
#include "wavelab/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavelab {

namespace {

constexpr int kStencil = 10;   // grid-layer Lagrange stencil width
constexpr int kCellPts = 12;   // exact through polynomial degree 23

const QuadRule& unit_rule(int pts) {
  static const QuadRule r12 = gauss_legendre(12, 0.0, 1.0);
  static const QuadRule r16 = gauss_legendre(16, 0.0, 1.0);
  return pts == 12 ? r12 : r16;
}

//! Composite Gauss quadrature with panel edges aligned to a knot list.
double quad_knotted(const std::function<double(double)>& fn, double a,
                    double b, const Vec& knots, double h_target) {
  if (b <= a) return 0.0;
  Vec edges{a};
  for (double k : knots)
    if (k > a && k < b) edges.push_back(k);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  const QuadRule& base = unit_rule(16);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    double lo = edges[s], hi = edges[s + 1];
    int panels = std::max(2, int(std::ceil((hi - lo) / h_target)));
    double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      double p0 = lo + p * h;
      for (std::size_t q = 0; q < base.x.size(); ++q)
        total += h * base.w[q] * fn(p0 + h * base.x[q]);
    }
  }
  return total;
}

//------------------------------------------------------------------------------
// Grid layer: one-sided exterior slice with per-cell fixed stencils
//------------------------------------------------------------------------------

class ExteriorSlice {
public:
  ExteriorSlice(const RadialGrid& grid, const Vec& fv, const Vec& gv,
                double lo)
      : m_lo(lo), m_rmax(grid.r_max) {
    for (int i = 0; i < grid.n; ++i) {
      if (grid.nodes[i] >= lo) {
        m_r.push_back(grid.nodes[i]);
        m_f.push_back(fv[i]);
        m_g.push_back(gv[i]);
      }
    }
    if (int(m_r.size()) < kStencil)
      throw std::invalid_argument(
          "exterior region holds too few grid nodes for interpolation");
    int m = int(m_r.size());
    if (m_lo < m_r.front()) m_cells.push_back({m_lo, m_r.front(), 0});
    for (int k = 0; k + 1 < m; ++k)
      m_cells.push_back({m_r[k], m_r[k + 1],
                         std::clamp(k - kStencil / 2 + 1, 0, m - kStencil)});
    m_cells.push_back({m_r[m - 1], m_rmax, m - kStencil});

    m_f_lo = stencil_value(0, m_lo, m_f);
    m_gamma_f = stencil_value(m - kStencil, m_rmax, m_f) * cube(m_rmax);
    m_gamma_g = stencil_value(m - kStencil, m_rmax, m_g) * cube(m_rmax);
  }

  double f_at_lo() const { return m_f_lo; }
  double gamma_f() const { return m_gamma_f; }
  double gamma_g() const { return m_gamma_g; }

  //! \int_lo^inf [ (f' + 3 a r^{-4})^2 + (g - b r^{-3})^2 ] r^4 dr, with the
  //! static-tail model (gamma_f - a, gamma_g - b) beyond the outer edge.
  double norm2(double a, double b) const {
    double total = 0.0;
    const QuadRule& base = unit_rule(kCellPts);
    Vec w0(kStencil), w1(kStencil), xs(kStencil);
    for (const Cell& c : m_cells) {
      double h = c.hi - c.lo;
      if (h <= 0.0) continue;
      for (int i = 0; i < kStencil; ++i) xs[i] = m_r[c.s0 + i];
      for (std::size_t q = 0; q < base.x.size(); ++q) {
        double x = c.lo + h * base.x[q];
        Vec vw = fornberg_weights(x, xs, 0);
        Vec dw = fornberg_weights(x, xs, 1);
        double fp = 0.0, gv = 0.0;
        for (int i = 0; i < kStencil; ++i) {
          fp += dw[i] * m_f[c.s0 + i];
          gv += vw[i] * m_g[c.s0 + i];
        }
        double x2 = x * x, x4 = x2 * x2;
        double df = fp + 3.0 * a / x4;
        double dg = gv - b / (x * x2);
        total += h * base.w[q] * (df * df + dg * dg) * x4;
      }
    }
    double gf = m_gamma_f - a, gg = m_gamma_g - b;
    return total + 3.0 * gf * gf / cube(m_rmax) + gg * gg / m_rmax;
  }

  //! \int_lo^inf r g dr, with the r^{-3} tail model beyond the outer edge.
  double integral_rg() const {
    double total = 0.0;
    const QuadRule& base = unit_rule(kCellPts);
    Vec xs(kStencil);
    for (const Cell& c : m_cells) {
      double h = c.hi - c.lo;
      if (h <= 0.0) continue;
      for (int i = 0; i < kStencil; ++i) xs[i] = m_r[c.s0 + i];
      for (std::size_t q = 0; q < base.x.size(); ++q) {
        double x = c.lo + h * base.x[q];
        Vec vw = fornberg_weights(x, xs, 0);
        double gv = 0.0;
        for (int i = 0; i < kStencil; ++i) gv += vw[i] * m_g[c.s0 + i];
        total += h * base.w[q] * x * gv;
      }
    }
    return total + m_gamma_g / m_rmax;
  }

private:
  struct Cell {
    double lo, hi;
    int s0;
  };

  static double cube(double x) { return x * x * x; }

  double stencil_value(int s0, double x, const Vec& vals) const {
    Vec xs(kStencil);
    for (int i = 0; i < kStencil; ++i) xs[i] = m_r[s0 + i];
    Vec w = fornberg_weights(x, xs, 0);
    double v = 0.0;
    for (int i = 0; i < kStencil; ++i) v += w[i] * vals[s0 + i];
    return v;
  }

  double m_lo, m_rmax;
  Vec m_r, m_f, m_g;
  std::vector<Cell> m_cells;
  double m_f_lo = 0.0, m_gamma_f = 0.0, m_gamma_g = 0.0;
};

void check_pair(const RadialField& f, const RadialField& g) {
  if (!f.grid || !g.grid) throw std::invalid_argument("field has no grid");
  if (!f.grid->same_as(*g.grid))
    throw std::invalid_argument("fields must live on one grid");
}

} // namespace

//------------------------------------------------------------------------------
// exterior_norm2 / project_plane
//------------------------------------------------------------------------------

double exterior_norm2(const RadialField& f, const RadialField& g, double R,
                      double t_shift) {
  check_pair(f, g);
  if (!(R > 0.0))
    throw std::invalid_argument("exterior radius must be positive");
  double lo = R + std::abs(t_shift);
  if (!(lo < f.grid->r_max))
    throw std::invalid_argument("exterior region must stay inside the grid");
  ExteriorSlice slice(*f.grid, f.values, g.values, lo);
  return slice.norm2(0.0, 0.0);
}

double exterior_norm2(const State& s, double R, double t_shift) {
  return exterior_norm2(s.u, s.ut, R, t_shift);
}

PlaneSplit project_plane(const RadialField& f, const RadialField& g,
                         double R) {
  check_pair(f, g);
  if (!(R > 0.0))
    throw std::invalid_argument("exterior radius must be positive");
  if (!(R < f.grid->r_max))
    throw std::invalid_argument("exterior region must stay inside the grid");
  const RadialGrid& grid = *f.grid;
  ExteriorSlice slice(grid, f.values, g.values, R);

  PlaneSplit out;
  out.R = R;
  double fR = slice.f_at_lo();
  double Ig = slice.integral_rg();
  out.a = R * R * R * fR;
  out.b = R * Ig;
  out.proj_norm2 = 3.0 * R * R * R * fR * fR + R * Ig * Ig;
  out.data_norm2 = slice.norm2(0.0, 0.0);
  out.perp_norm2 = slice.norm2(out.a, out.b);

  out.pi_f = {&grid, Vec(grid.n, 0.0)};
  out.pi_g = {&grid, Vec(grid.n, 0.0)};
  out.perp_f = {&grid, Vec(grid.n, 0.0)};
  out.perp_g = {&grid, Vec(grid.n, 0.0)};
  for (int i = 0; i < grid.n; ++i) {
    double r = grid.nodes[i];
    if (r < R) continue;
    double r3 = r * r * r;
    out.pi_f.values[i] = out.a / r3;
    out.pi_g.values[i] = out.b / r3;
    out.perp_f.values[i] = f.values[i] - out.pi_f.values[i];
    out.perp_g.values[i] = g.values[i] - out.pi_g.values[i];
  }
  return out;
}

//------------------------------------------------------------------------------
// Analytic data
//------------------------------------------------------------------------------

ChannelDatum plane_datum(double R) {
  if (!(R > 0.0))
    throw std::invalid_argument("exterior radius must be positive");
  double lo = 0.5 * R, hi = R, width = hi - lo;
  ChannelDatum d;
  d.f = [lo, hi](double r) {
    return smooth_cut_up(r, lo, hi) / (r * r * r);
  };
  d.df = [lo, hi, width](double r) {
    double r3 = r * r * r;
    return -3.0 * smooth_cut_up(r, lo, hi) / (r3 * r) +
           smoothstep_d1((r - lo) / width) / (width * r3);
  };
  d.g = [](double) { return 0.0; };
  d.support = R;
  d.plane_f = 1.0;
  d.plane_g = 0.0;
  d.knots = {lo, hi};
  return d;
}

namespace {

//! Smooth window: 0 outside (R/2, 3R), identically 1 on [0.9R, 2.2R].
struct EnsembleWindow {
  double r1, r2, r3, r4;
  double value(double r) const {
    return smooth_cut_up(r, r1, r2) * smooth_cut_down(r, r3, r4);
  }
  double deriv(double r) const {
    double up = smooth_cut_up(r, r1, r2);
    double dn = smooth_cut_down(r, r3, r4);
    double dup = smoothstep_d1((r - r1) / (r2 - r1)) / (r2 - r1);
    double ddn = -smoothstep_d1((r4 - r) / (r4 - r3)) / (r4 - r3);
    return dup * dn + up * ddn;
  }
};

struct GaussianSum {
  Vec amp, center, sigma;
  double value(double r) const {
    double v = 0.0;
    for (std::size_t i = 0; i < amp.size(); ++i) {
      double z = (r - center[i]) / sigma[i];
      v += amp[i] * std::exp(-0.5 * z * z);
    }
    return v;
  }
  double deriv(double r) const {
    double v = 0.0;
    for (std::size_t i = 0; i < amp.size(); ++i) {
      double z = (r - center[i]) / sigma[i];
      v += amp[i] * std::exp(-0.5 * z * z) * (-z / sigma[i]);
    }
    return v;
  }
};

} // namespace

ChannelDatum ensemble_datum(double R, Rng& rng) {
  if (!(R > 0.0))
    throw std::invalid_argument("exterior radius must be positive");
  EnsembleWindow win{0.5 * R, 0.9 * R, 2.2 * R, 3.0 * R};
  auto draw = [&rng, R]() {
    GaussianSum s;
    for (int i = 0; i < 4; ++i) {
      s.center.push_back(rng.uniform(R, 2.5 * R));
      s.sigma.push_back(rng.uniform(R / 6.0, R / 2.0));
      s.amp.push_back(rng.gaussian());
    }
    return s;
  };
  GaussianSum fsum = draw();
  GaussianSum gsum = draw();

  auto f_raw = [win, fsum](double r) { return win.value(r) * fsum.value(r); };
  auto df_raw = [win, fsum](double r) {
    return win.deriv(r) * fsum.value(r) + win.value(r) * fsum.deriv(r);
  };
  auto g_raw = [win, gsum](double r) { return win.value(r) * gsum.value(r); };

  // Static-tail coefficients of the raw pair on r >= R, to be removed.
  double a = R * R * R * f_raw(R);
  Vec raw_knots{win.r1, win.r2, win.r3, win.r4};
  double Ig = quad_knotted([&](double r) { return r * g_raw(r); }, R, 3.0 * R,
                           raw_knots, R / 24.0);
  double b = R * Ig;

  double clo = 0.5 * R, chi = R, cw = chi - clo;
  auto cut = [clo, chi](double r) { return smooth_cut_up(r, clo, chi); };
  auto dcut = [clo, chi, cw](double r) {
    return smoothstep_d1((r - clo) / cw) / cw;
  };

  ChannelDatum d;
  d.f = [f_raw, cut, a](double r) {
    return f_raw(r) - a * cut(r) / (r * r * r);
  };
  d.df = [df_raw, cut, dcut, a](double r) {
    double r3 = r * r * r;
    return df_raw(r) - a * (dcut(r) / r3 - 3.0 * cut(r) / (r3 * r));
  };
  d.g = [g_raw, cut, b](double r) {
    return g_raw(r) - b * cut(r) / (r * r * r);
  };
  d.support = 3.0 * R;
  d.plane_f = -a;
  d.plane_g = -b;
  d.knots = {win.r1, win.r2, chi, win.r3, win.r4};
  return d;
}

//------------------------------------------------------------------------------
// FreeRadialWave
//------------------------------------------------------------------------------

double FreeRadialWave::MomentTable::eval(double x) const {
  if (x <= edges.front()) return 0.0;
  if (x >= edges.back()) return prefix.back();
  auto it = std::upper_bound(edges.begin(), edges.end(), x);
  std::size_t j = std::size_t(it - edges.begin()) - 1;
  const QuadRule& base = unit_rule(16);
  double h = x - edges[j], partial = 0.0;
  for (std::size_t q = 0; q < base.x.size(); ++q)
    partial += h * base.w[q] * integrand(edges[j] + h * base.x[q]);
  return prefix[j] + partial;
}

FreeRadialWave::FreeRadialWave(const ChannelDatum& data) : m_data(data) {
  if (!m_data.f || !m_data.df || !m_data.g)
    throw std::invalid_argument("datum closures must be set");
  if (!(m_data.support > 0.0))
    throw std::invalid_argument("datum support must be positive");

  Vec edges{0.0};
  for (double k : m_data.knots)
    if (k > 0.0 && k < m_data.support) edges.push_back(k);
  edges.push_back(m_data.support);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  double h_target = m_data.support / 192.0;
  Vec panels{edges.front()};
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    int np = std::max(2, int(std::ceil((edges[s + 1] - edges[s]) / h_target)));
    for (int p = 1; p <= np; ++p)
      panels.push_back(edges[s] + (edges[s + 1] - edges[s]) * p / np);
  }

  auto build = [&panels](MomentTable& table,
                         std::function<double(double)> fn) {
    table.edges = panels;
    table.integrand = std::move(fn);
    table.prefix.assign(panels.size(), 0.0);
    const QuadRule& base = unit_rule(16);
    for (std::size_t s = 0; s + 1 < panels.size(); ++s) {
      double h = panels[s + 1] - panels[s], acc = 0.0;
      for (std::size_t q = 0; q < base.x.size(); ++q)
        acc += h * base.w[q] * table.integrand(panels[s] + h * base.x[q]);
      table.prefix[s + 1] = table.prefix[s] + acc;
    }
  };
  auto f = m_data.f;
  auto g = m_data.g;
  build(m_mf1, [f](double s) { return s * f(s); });
  build(m_mg1, [g](double s) { return s * g(s); });
  build(m_mg3, [g](double s) { return s * s * s * g(s); });
  m_mf1_inf = m_mf1.prefix.back();
  m_mg1_inf = m_mg1.prefix.back();
  m_mg3_sup = m_mg3.prefix.back();
  m_m0 = m_data.plane_f;
  m_m1 = m_data.plane_g;
}

double FreeRadialWave::table_mf1(double x) const {
  double S = m_data.support;
  if (x <= S) return m_mf1.eval(x);
  return m_mf1_inf + m_data.plane_f * (1.0 / S - 1.0 / x);
}

double FreeRadialWave::table_mg1(double x) const {
  double S = m_data.support;
  if (x <= S) return m_mg1.eval(x);
  return m_mg1_inf + m_data.plane_g * (1.0 / S - 1.0 / x);
}

double FreeRadialWave::table_mg3(double x) const {
  double S = m_data.support;
  if (x <= S) return m_mg3.eval(x);
  return m_mg3_sup + m_data.plane_g * (x - S);
}

double FreeRadialWave::c1h0(double x) const {
  double y = std::abs(x);
  double v = y <= m_data.support ? y * y * y * m_data.f(y) : m_data.plane_f;
  return x < 0.0 ? -v : v;
}

double FreeRadialWave::c0h0(double x) const {
  double y = std::abs(x);
  double head =
      y <= m_data.support ? y * y * m_data.f(y) : m_data.plane_f / y;
  return head + table_mf1(y);
}

double FreeRadialWave::h0(double x) const {
  double y = std::abs(x);
  if (y > m_data.support || y == 0.0) return 0.0;
  double v = 3.0 * y * m_data.f(y) + y * y * m_data.df(y);
  return x < 0.0 ? -v : v;
}

double FreeRadialWave::wfun(double x) const {
  double y = std::abs(x);
  double head =
      y <= m_data.support ? y * y * m_data.g(y) : m_data.plane_g / y;
  return head + table_mg1(y);
}

double FreeRadialWave::c0w(double x) const {
  return x * table_mg1(std::abs(x));
}

double FreeRadialWave::c1w(double x) const {
  double y = std::abs(x);
  return 0.5 * (table_mg3(y) + y * y * table_mg1(y));
}

double FreeRadialWave::u(double t, double r) const {
  if (!(r > 0.0))
    throw std::invalid_argument("evaluation radius must be positive");
  if (r - std::abs(t) >= m_data.support)
    return (m_m0 + t * m_m1) / (r * r * r);
  double p = r + t, q = r - t;
  double r3u = 0.5 * (c1h0(p) + c1h0(q)) - 0.5 * t * (c0h0(p) - c0h0(q)) +
               0.5 * (c1w(p) - c1w(q)) - 0.5 * t * (c0w(p) + c0w(q));
  return r3u / (r * r * r);
}

double FreeRadialWave::ur(double t, double r) const {
  if (!(r > 0.0))
    throw std::invalid_argument("evaluation radius must be positive");
  if (r - std::abs(t) >= m_data.support)
    return -3.0 * (m_m0 + t * m_m1) / (r * r * r * r);
  double p = r + t, q = r - t;
  double h = 0.5 * (h0(p) + h0(q)) + 0.5 * (wfun(p) - wfun(q));
  return (h - 3.0 * r * u(t, r)) / (r * r);
}

double FreeRadialWave::ut(double t, double r) const {
  if (!(r > 0.0))
    throw std::invalid_argument("evaluation radius must be positive");
  if (r - std::abs(t) >= m_data.support) return m_m1 / (r * r * r);
  double p = r + t, q = r - t;
  double r3ut = 0.5 * r * (h0(p) - h0(q)) + 0.5 * r * (wfun(p) + wfun(q)) -
                0.5 * (c0h0(p) - c0h0(q)) - 0.5 * (c0w(p) + c0w(q));
  return r3ut / (r * r * r);
}

double FreeRadialWave::exterior_energy(double R, double t) const {
  if (!(R > 0.0))
    throw std::invalid_argument("exterior radius must be positive");
  double lo = R + std::abs(t);
  double far = std::max(lo, std::abs(t) + m_data.support);
  double total = 0.0;
  if (far > lo) {
    // Wave zone: panel edges where a characteristic r +- t meets a data knot.
    Vec breaks;
    Vec knots = m_data.knots;
    knots.push_back(0.0);
    knots.push_back(m_data.support);
    for (double k : knots) {
      breaks.push_back(k - t);
      breaks.push_back(k + t);
    }
    auto e = [this](double r, double tt) {
      double a = ut(tt, r), b = ur(tt, r);
      return (a * a + b * b) * r * r * r * r;
    };
    total += quad_knotted([&](double r) { return e(r, t); }, lo, far, breaks,
                          m_data.support / 96.0);
  }
  double m = m_m0 + t * m_m1;
  total += 3.0 * m * m / (far * far * far) + m_m1 * m_m1 / far;
  return total;
}

//------------------------------------------------------------------------------
// channel_experiment / channel_ensemble
//------------------------------------------------------------------------------

ChannelReport channel_experiment(const ChannelDatum& data, double R,
                                 double T_probe) {
  if (!(R > 0.0))
    throw std::invalid_argument("exterior radius must be positive");
  if (!(T_probe > 0.0))
    throw std::invalid_argument("probe horizon must be positive");
  if (!data.f || !data.df || !data.g)
    throw std::invalid_argument("datum closures must be set");

  double S = std::max(data.support, R);
  ChannelReport rep;
  rep.R = R;

  // Data-side functionals on r >= R (quadrature to the support edge plus the
  // closed-form static tail).
  double fR = data.f(R);
  double a = R * R * R * fR;
  double Ig = quad_knotted([&](double r) { return r * data.g(r); }, R, S,
                           data.knots, S / 48.0) +
              data.plane_g / S;
  double b = R * Ig;
  auto energy_density = [&](double asub, double bsub) {
    return [&data, asub, bsub](double r) {
      double x2 = r * r, x4 = x2 * x2;
      double df = data.df(r) + 3.0 * asub / x4;
      double dg = data.g(r) - bsub / (r * x2);
      return (df * df + dg * dg) * x4;
    };
  };
  double gf = data.plane_f, gg = data.plane_g;
  double h_target = S / 48.0;
  double data_norm2 =
      quad_knotted(energy_density(0.0, 0.0), R, S, data.knots, h_target) +
      3.0 * gf * gf / (S * S * S) + gg * gg / S;
  rep.proj_norm2 = 3.0 * R * R * R * fR * fR + R * Ig * Ig;
  rep.perp_norm2 =
      quad_knotted(energy_density(a, b), R, S, data.knots, h_target) +
      3.0 * (gf - a) * (gf - a) / (S * S * S) + (gg - b) * (gg - b) / S;

  FreeRadialWave wave(data);
  rep.probe_t = {T_probe, 2.0 * T_probe + R, 4.0 * T_probe + 3.0 * R};
  for (double t : rep.probe_t) {
    rep.probe_plus.push_back(wave.exterior_energy(R, t));
    rep.probe_minus.push_back(wave.exterior_energy(R, -t));
  }
  rep.ext_energy_plus =
      richardson(rep.probe_plus[0], rep.probe_plus[1], rep.probe_plus[2]).limit;
  rep.ext_energy_minus =
      richardson(rep.probe_minus[0], rep.probe_minus[1], rep.probe_minus[2])
          .limit;

  rep.c0_defined = rep.perp_norm2 > 1e-12 * data_norm2 && rep.perp_norm2 > 0.0;
  rep.c0_lower = rep.c0_defined ? std::max(rep.ext_energy_plus,
                                           rep.ext_energy_minus) /
                                      rep.perp_norm2
                                : 0.0;
  return rep;
}

std::vector<EnsembleMember> channel_ensemble(double R, int count,
                                             std::uint64_t seed,
                                             double T_probe) {
  if (count <= 0)
    throw std::invalid_argument("ensemble count must be positive");
  std::vector<EnsembleMember> out;
  out.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i) {
    std::uint64_t member_seed = derive_seed(seed, std::uint64_t(i));
    Rng rng(member_seed);
    ChannelDatum datum = ensemble_datum(R, rng);
    out.push_back({member_seed, channel_experiment(datum, R, T_probe)});
  }
  return out;
}

} // namespace wavelab
