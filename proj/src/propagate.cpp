//==============================================================================
// propagate.cpp -- exact free-wave propagation in spectral variables
//==============================================================================
#include "wavelab/propagate.hpp"

#include <cmath>

namespace wavelab {

SpectralState to_spectral(const RadialFourier& F, const State& s) {
  return SpectralState{F.forward(s.u), F.forward(s.ut)};
}

State from_spectral(const RadialFourier& F, const SpectralState& sh) {
  return State{0.0, F.inverse(sh.u), F.inverse(sh.ut)};
}

SpectralState free_propagate_spectral(const SpectralState& sh, double t) {
  const RadialGrid& g = *sh.u.grid;
  SpectralState out{SpectralField{sh.u.grid, Vec(g.freq_nodes.size())},
                    SpectralField{sh.u.grid, Vec(g.freq_nodes.size())}};
  for (std::size_t i = 0; i < g.freq_nodes.size(); ++i) {
    const double rho = g.freq_nodes[i];
    const double c = std::cos(t * rho);
    const double s = std::sin(t * rho);
    const double u0 = sh.u.values[i];
    const double u1 = sh.ut.values[i];
    out.u.values[i] = c * u0 + (s / rho) * u1;
    out.ut.values[i] = -rho * s * u0 + c * u1;
  }
  return out;
}

State free_propagate(const RadialFourier& F, const State& s, double t) {
  State out = from_spectral(F, free_propagate_spectral(to_spectral(F, s), t));
  out.t = s.t + t;
  return out;
}

HalfWaveField to_half_wave(const RadialFourier& F, const State& s) {
  SpectralState sh = to_spectral(F, s);
  HalfWaveField v{sh.u, sh.ut};
  for (std::size_t i = 0; i < v.im.values.size(); ++i)
    v.im.values[i] /= F.grid().freq_nodes[i];
  return v;
}

State from_half_wave(const RadialFourier& F, const HalfWaveField& v) {
  SpectralState sh{v.re, v.im};
  for (std::size_t i = 0; i < sh.ut.values.size(); ++i)
    sh.ut.values[i] *= F.grid().freq_nodes[i];
  return from_spectral(F, sh);
}

HalfWaveField half_wave_propagate(const HalfWaveField& v, double t) {
  const RadialGrid& g = *v.re.grid;
  HalfWaveField out{SpectralField{v.re.grid, Vec(v.re.values.size())},
                    SpectralField{v.re.grid, Vec(v.im.values.size())}};
  for (std::size_t i = 0; i < v.re.values.size(); ++i) {
    const double rho = g.freq_nodes[i];
    const double c = std::cos(t * rho);
    const double s = std::sin(t * rho);
    const double a = v.re.values[i];
    const double b = v.im.values[i];
    // e^{-i t rho} (a + i b) = (a c + b s) + i (b c - a s)
    out.re.values[i] = a * c + b * s;
    out.im.values[i] = b * c - a * s;
  }
  return out;
}

} // namespace wavelab
