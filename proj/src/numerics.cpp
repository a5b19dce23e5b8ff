//==============================================================================
// numerics.cpp -- implementation of the shared numerical kernels
//==============================================================================
#include "wavelab/numerics.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace wavelab {

//------------------------------------------------------------------------------
// Gauss-Legendre rules (nodes from GSL; affine map to [a,b])
//------------------------------------------------------------------------------
QuadRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  if (!(b > a)) throw std::invalid_argument("gauss_legendre: need b > a");
  gsl_integration_glfixed_table* tab =
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n));
  if (!tab) throw std::runtime_error("gauss_legendre: table allocation failed");
  QuadRule q;
  q.x.resize(n);
  q.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double xi, wi;
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &xi, &wi,
                                  tab);
    q.x[i] = xi;
    q.w[i] = wi;
  }
  gsl_integration_glfixed_table_free(tab);
  return q;
}

QuadRule composite_gauss(int pts, int panels, double a, double b) {
  if (panels < 1) throw std::invalid_argument("composite_gauss: panels >= 1");
  QuadRule unit = gauss_legendre(pts, 0.0, 1.0);
  QuadRule q;
  q.x.reserve(static_cast<std::size_t>(pts) * panels);
  q.w.reserve(static_cast<std::size_t>(pts) * panels);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < pts; ++i) {
      q.x.push_back(lo + h * unit.x[i]);
      q.w.push_back(h * unit.w[i]);
    }
  }
  return q;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int pts, int panels) {
  QuadRule q = composite_gauss(pts, panels, a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) s += q.w[i] * f(q.x[i]);
  return s;
}

double integrate_boole(const std::function<double(double)>& f, double a,
                       double b, int panels) {
  // Closed Newton-Cotes with 5 nodes per panel; O(h^6). Uniform nodes keep
  // this rule structurally independent of the Gauss-Legendre machinery.
  if (panels < 1) throw std::invalid_argument("integrate_boole: panels >= 1");
  const double H = (b - a) / panels;
  const double h = H / 4.0;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double x0 = a + p * H;
    const double s = 7.0 * f(x0) + 32.0 * f(x0 + h) + 12.0 * f(x0 + 2 * h) +
                     32.0 * f(x0 + 3 * h) + 7.0 * f(x0 + 4 * h);
    total += s * (2.0 * h / 45.0);
  }
  return total;
}

//------------------------------------------------------------------------------
// Fornberg weights (generation of FD/interpolation weights on arbitrary nodes)
//------------------------------------------------------------------------------
Vec fornberg_weights(double z, const Vec& xs, int m) {
  const int n = static_cast<int>(xs.size());
  if (n < m + 1) throw std::invalid_argument("fornberg_weights: too few nodes");
  // c[i][k]: weight of f(xs[i]) in the k-th derivative at z.
  std::vector<Vec> c(n, Vec(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  Vec w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

//------------------------------------------------------------------------------
// Local Lagrange interpolation with optional even reflection at r=0
//------------------------------------------------------------------------------
NodeInterpolant::NodeInterpolant(const Vec& nodes, const Vec& values, int width,
                                 bool even_at_zero)
    : m_x(nodes), m_f(values), m_width(width), m_even(even_at_zero) {
  if (nodes.size() != values.size())
    throw std::invalid_argument("NodeInterpolant: size mismatch");
  if (static_cast<int>(nodes.size()) < width)
    m_width = static_cast<int>(nodes.size());
}

void NodeInterpolant::stencil(double x, Vec& xs, Vec& fs) const {
  const int n = static_cast<int>(m_x.size());
  const int w = m_width;
  // index of first node >= x
  int hi = static_cast<int>(std::lower_bound(m_x.begin(), m_x.end(), x) -
                            m_x.begin());
  int lo = hi - w / 2;
  xs.clear();
  fs.clear();
  if (m_even && lo < 0) {
    // borrow mirrored nodes (-r_k, f_k): the field is even in r
    const int nm = -lo; // number of mirrored nodes
    for (int k = nm - 1; k >= 0; --k) {
      xs.push_back(-m_x[k]);
      fs.push_back(m_f[k]);
    }
    for (int k = 0; k < w - nm && k < n; ++k) {
      xs.push_back(m_x[k]);
      fs.push_back(m_f[k]);
    }
    return;
  }
  lo = std::max(0, std::min(lo, n - w));
  for (int k = lo; k < lo + w; ++k) {
    xs.push_back(m_x[k]);
    fs.push_back(m_f[k]);
  }
}

double NodeInterpolant::value(double x) const {
  Vec xs, fs;
  stencil(x, xs, fs);
  Vec w = fornberg_weights(x, xs, 0);
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += w[i] * fs[i];
  return s;
}

double NodeInterpolant::derivative(double x) const {
  Vec xs, fs;
  stencil(x, xs, fs);
  Vec w = fornberg_weights(x, xs, 1);
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += w[i] * fs[i];
  return s;
}

double NodeInterpolant::second_derivative(double x) const {
  Vec xs, fs;
  stencil(x, xs, fs);
  Vec w = fornberg_weights(x, xs, 2);
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += w[i] * fs[i];
  return s;
}

Vec derivative_at_nodes(const Vec& nodes, const Vec& values, int width,
                        bool even_at_zero) {
  NodeInterpolant itp(nodes, values, width, even_at_zero);
  Vec d(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    d[i] = itp.derivative(nodes[i]);
  return d;
}

double value_at_zero(const Vec& nodes, const Vec& values) {
  // Even cubic model f(r) = a + b r^2 + c r^4 (+ d r^6) through the first
  // nodes; interpolation in the variable u = r^2.
  const int m = std::min<std::size_t>(4, nodes.size());
  Vec u(m), f(m);
  for (int i = 0; i < m; ++i) {
    u[i] = nodes[i] * nodes[i];
    f[i] = values[i];
  }
  Vec w = fornberg_weights(0.0, u, 0);
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += w[i] * f[i];
  return s;
}

//------------------------------------------------------------------------------
// Smooth cutoffs
//------------------------------------------------------------------------------
namespace {
inline double expm(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
inline double expm_d1(double x) {
  return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0;
}
inline double expm_d2(double x) {
  if (x <= 0.0) return 0.0;
  const double e = std::exp(-1.0 / x);
  return e * (1.0 - 2.0 * x) / (x * x * x * x);
}
} // namespace

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = expm(x);
  const double b = expm(1.0 - x);
  return a / (a + b);
}

double smoothstep_d1(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double a = expm(x), b = expm(1.0 - x);
  const double da = expm_d1(x), db = -expm_d1(1.0 - x);
  const double s = a + b;
  return (da * s - a * (da + db)) / (s * s);
}

double smoothstep_d2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double a = expm(x), b = expm(1.0 - x);
  const double da = expm_d1(x), db = -expm_d1(1.0 - x);
  const double dda = expm_d2(x), ddb = expm_d2(1.0 - x);
  const double s = a + b, ds = da + db, dds = dda + ddb;
  // d2/dx2 of a/s
  return (dda * s * s - 2.0 * da * ds * s - a * dds * s + 2.0 * a * ds * ds) /
         (s * s * s);
}

double dyadic_bump(double x) {
  if (x <= 0.5 || x >= 2.0) return 0.0;
  return std::exp(-1.0 / ((x - 0.5) * (2.0 - x)));
}

//------------------------------------------------------------------------------
// Oscillatory radial kernel j and its derivative
//------------------------------------------------------------------------------
double wave_kernel_j(double z) {
  static const double pref = std::sqrt(2.0 / consts::pi);
  const double az = std::fabs(z);
  if (az < 1.0) {
    // (sin z - z cos z)/z^3 = sum_{m>=1} (-1)^{m+1} 2m z^{2m-2}/(2m+1)!
    const double z2 = z * z;
    double term = 1.0 / 3.0; // m=1
    double sum = term;
    double fact = 6.0;       // (2m+1)! at m=1
    double zp = 1.0;
    for (int m = 2; m <= 10; ++m) {
      fact *= (2.0 * m) * (2.0 * m + 1.0);
      zp *= z2;
      term = ((m % 2 == 0) ? -1.0 : 1.0) * 2.0 * m * zp / fact;
      sum += term;
    }
    return pref * sum;
  }
  // even in z, so evaluate at |z|
  return pref * (std::sin(az) - az * std::cos(az)) / (az * az * az);
}

double wave_kernel_j_d1(double z) {
  static const double pref = std::sqrt(2.0 / consts::pi);
  const double az = std::fabs(z);
  if (az < 1.0) {
    // d/dz of the series above: sum_{m>=2} (-1)^{m+1} 2m (2m-2) z^{2m-3}/(2m+1)!
    const double z2 = z * z;
    double sum = 0.0;
    double fact = 6.0; // (2m+1)! at m=1
    double zp = z;     // z^{2m-3} at m=2
    for (int m = 2; m <= 10; ++m) {
      fact *= (2.0 * m) * (2.0 * m + 1.0);
      const double c = ((m % 2 == 0) ? -1.0 : 1.0) * 2.0 * m * (2.0 * m - 2.0);
      sum += c * zp / fact;
      zp *= z2;
    }
    return pref * sum;
  }
  // j'(z) = pref * [ sin z / z^2 - 3 (sin z - z cos z)/z^4 ]
  const double s = std::sin(z), c = std::cos(z);
  return pref * (s / (z * z) - 3.0 * (s - z * c) / (z * z * z * z));
}

//------------------------------------------------------------------------------
// Deterministic randomness
//------------------------------------------------------------------------------
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0xA0761D6478BD642Full * (stream + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

double Rng::gaussian() {
  if (m_have_spare) {
    m_have_spare = false;
    return m_spare;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  m_spare = mag * std::sin(consts::twopi * u2);
  m_have_spare = true;
  return mag * std::cos(consts::twopi * u2);
}

//------------------------------------------------------------------------------
// Richardson extrapolation with estimated order
//------------------------------------------------------------------------------
RichardsonResult richardson(double v1, double v2, double v3, double ratio) {
  const double d1 = v1 - v2;
  const double d2 = v2 - v3;
  RichardsonResult out{v3, std::numeric_limits<double>::quiet_NaN(), true};
  if (d1 == 0.0 || d2 == 0.0) return out;          // already converged
  const double q = d1 / d2;
  if (!(q > 1.05)) return out;                     // not contracting
  out.limit = v3 - d2 / (q - 1.0);
  out.order = std::log(q) / std::log(ratio);
  out.fallback = false;
  return out;
}

LineFit fit_line(const Vec& x, const Vec& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 matched points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit f{};
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

//------------------------------------------------------------------------------
// Deterministic parallel loop
//------------------------------------------------------------------------------
int sanitize_threads(int requested) {
  if (requested <= 0) {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }
  return requested;
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = sanitize_threads(threads);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t nt = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += nt) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

} // namespace wavelab
