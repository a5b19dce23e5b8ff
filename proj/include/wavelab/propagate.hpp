//==============================================================================
// propagate.hpp -- exact free-wave propagation in spectral variables
//
//  * free_propagate applies the exact multiplier solution of the linear wave
//    equation: uhat(t) = cos(t rho) uhat0 + sin(t rho)/rho uthat0.
//  * The half-wave form acts on v = u + i (-Lap)^{-1/2} u_t by the unitary
//    multiplier e^{-i t rho}.
//==============================================================================
#pragma once

#include "wavelab/transform.hpp"

namespace wavelab {

//! Spectral representation of a state: (uhat, uthat).
struct SpectralState {
  SpectralField u;
  SpectralField ut;
};

SpectralState to_spectral(const RadialFourier& F, const State& s);
State from_spectral(const RadialFourier& F, const SpectralState& sh);

//! Exact free evolution of spectral data by time t (in place of a PDE step).
SpectralState free_propagate_spectral(const SpectralState& sh, double t);

//! Exact free evolution of nodal data by time t.
State free_propagate(const RadialFourier& F, const State& s, double t);

//! Complex scalar reduction v = u + i (-Lap)^{-1/2} u_t in spectral samples.
struct HalfWaveField {
  SpectralField re;
  SpectralField im;
};

HalfWaveField to_half_wave(const RadialFourier& F, const State& s);
State from_half_wave(const RadialFourier& F, const HalfWaveField& v);

//! Multiply by e^{-i t rho}; preserves |vhat| pointwise.
HalfWaveField half_wave_propagate(const HalfWaveField& v, double t);

} // namespace wavelab
