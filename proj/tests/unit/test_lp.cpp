//==============================================================================
// test_lp.cpp -- dyadic frequency decomposition
//==============================================================================
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wavelab/littlewood_paley.hpp"

using namespace wavelab;

namespace {
const RadialGrid& grid512() {
  static RadialGrid g(1024, 16.0); // rho_max = 64
  return g;
}
const RadialFourier& fourier512() {
  static RadialFourier F(grid512());
  return F;
}

//! Random full-spectrum field built from a smooth random spectrum.
RadialField random_field(const RadialFourier& F, Rng& rng) {
  const RadialGrid& g = F.grid();
  struct Bump {
    double c, w, a;
  };
  std::vector<Bump> bumps;
  for (int b = 0; b < 8; ++b) {
    const double c = std::exp2(rng.uniform(-4.0, std::log2(g.rho_max) - 0.5));
    bumps.push_back({c, 0.4 * c, rng.uniform(-1.0, 1.0)});
  }
  SpectralField fh = sample_freq(g, [&](double rho) {
    double v = 0.0;
    for (const Bump& b : bumps) {
      const double z = (rho - b.c) / b.w;
      v += b.a * std::exp(-z * z);
    }
    return v * smooth_cut_down(rho, 0.7 * g.rho_max, 0.95 * g.rho_max);
  });
  return F.inverse(fh);
}
} // namespace

TEST_CASE("dyadic multipliers form an exact partition of unity") {
  const RadialGrid& g = grid512();
  const int klo =
      static_cast<int>(std::floor(std::log2(g.freq_nodes.front()))) - 1;
  const int khi = static_cast<int>(std::ceil(std::log2(g.rho_max))) + 1;
  Vec total(g.freq_nodes.size(), 0.0);
  for (int k = klo; k <= khi; ++k) {
    LPBand band = make_band(g, k);
    for (std::size_t i = 0; i < total.size(); ++i)
      total[i] += band.multiplier[i];
  }
  for (std::size_t i = 0; i < total.size(); ++i)
    CHECK(std::fabs(total[i] - 1.0) < 1e-10);
}

TEST_CASE("band multipliers are supported in [2^{k-1}, 2^{k+1}]") {
  const RadialGrid& g = grid512();
  LPBand band = make_band(g, 2);
  for (std::size_t i = 0; i < g.freq_nodes.size(); ++i) {
    const double rho = g.freq_nodes[i];
    if (rho <= 2.0 || rho >= 8.0) CHECK(band.multiplier[i] == 0.0);
    CHECK(band.multiplier[i] >= 0.0);
    CHECK(band.multiplier[i] <= 1.0);
  }
}

TEST_CASE("three adjacent projections reassemble a band-limited field") {
  const RadialFourier& F = fourier512();
  const RadialGrid& g = grid512();
  const int k = 1;
  // spectrum exactly supported in (2^{k-1}, 2^{k+1})
  SpectralField fh = sample_freq(g, [&](double rho) {
    return dyadic_bump(rho / std::exp2(static_cast<double>(k)));
  });

  // multiplier identity: the three adjacent multipliers sum to one on the
  // support, so the reassembly is exact in spectral space
  Vec spectral_sum(g.freq_nodes.size(), 0.0);
  for (int j = k - 1; j <= k + 1; ++j) {
    LPBand band = make_band(g, j);
    for (std::size_t i = 0; i < spectral_sum.size(); ++i)
      spectral_sum[i] += band.multiplier[i] * fh.values[i];
  }
  CHECK(max_abs_diff(spectral_sum, fh.values) < 1e-14 * max_abs(fh.values));

  // physical-space reassembly goes through forward/inverse round trips; an
  // octave-limited field cannot decay before r_max (uncertainty principle),
  // so the grid truncation sets a floor around 1e-4 here
  RadialField f = F.inverse(fh);
  RadialField sum = project_band(F, f, k - 1) + project_band(F, f, k) +
                    project_band(F, f, k + 1);
  CHECK(F.l2_norm(sum - f) / F.l2_norm(f) < 1e-3);
}

TEST_CASE("projection outside the resolved range is rejected") {
  const RadialFourier& F = fourier512();
  RadialField f = sample(F.grid(), [](double r) { return std::exp(-r * r); });
  CHECK_THROWS_AS(project_band(F, f, 40), std::domain_error);
  CHECK_THROWS_AS(project_band(F, f, -40), std::domain_error);
}

TEST_CASE("band projections obey the L10-L2 growth bound uniformly in k") {
  const RadialFourier& F = fourier512();
  Rng rng(314);
  const double C = 4.0; // frozen uniform constant
  for (int trial = 0; trial < 3; ++trial) {
    RadialField f = random_field(F, rng);
    const double f_scale = F.l2_norm(f);
    for (int k = -3; k <= 5; ++k) {
      RadialField pk = project_band(F, f, k);
      const double l2 = F.l2_norm(pk);
      if (l2 < 1e-6 * f_scale) continue; // band essentially empty
      const double l10 = F.lebesgue_norm(pk, 10.0);
      CHECK(l10 <= C * std::exp2(2.0 * k) * l2);
    }
  }
}

TEST_CASE("fractional powers scale like the band center on projections") {
  const RadialFourier& F = fourier512();
  const RadialGrid& g = grid512();
  Rng rng(2718);
  RadialField f = random_field(F, rng);
  SpectralField fh = F.forward(f);
  for (int k : {-2, 0, 3}) {
    SpectralField pkh = apply_band(make_band(g, k), fh);
    const double l2 = F.sobolev_norm_spectral(pkh, 0.0);
    if (l2 < 1e-6 * F.sobolev_norm_spectral(fh, 0.0)) continue;
    for (double s : {1.5, -1.5}) {
      // Plancherel: the fractional power is a clean multiplier on the band
      const double num = F.sobolev_norm_spectral(pkh, s);
      const double ratio = num / (std::pow(2.0, s * k) * l2);
      CHECK(ratio > 1.0 / 8.0);
      CHECK(ratio < 8.0);
    }
  }
  // the physical-space operator accepts negative powers on banded data
  RadialField p3 = project_band(F, f, 3);
  RadialField out = F.fractional_derivative(p3, -1.5);
  CHECK(F.l2_norm(out) > 0.0);
}

TEST_CASE("low-frequency projection complements the dyadic sum") {
  const RadialFourier& F = fourier512();
  const RadialGrid& g = grid512();
  Rng rng(55);
  RadialField f = random_field(F, rng);
  // P_{<=k} + sum_{j>k} P_j reassembles f on resolved bands
  const int k = 0;
  RadialField low = project_low(F, f, k);
  RadialField acc = low;
  const int khi = static_cast<int>(std::ceil(std::log2(g.rho_max))) + 1;
  for (int j = k + 1; j <= khi; ++j) {
    SpectralField fh = F.forward(f);
    LPBand band = make_band(g, j);
    acc = acc + F.inverse(apply_band(band, fh));
  }
  // reconstruction runs through two transforms per band; quadrature error
  // accumulates across ~10 bands
  CHECK(F.l2_norm(acc - f) / F.l2_norm(f) < 1e-6);
}
