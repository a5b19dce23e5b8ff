//==============================================================================
// littlewood_paley.cpp -- dyadic frequency decomposition
//==============================================================================
#include "wavelab/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>

namespace wavelab {

namespace {
//! Sum of phi(rho/2^j) over all integers j; at most two terms are nonzero.
double dyadic_sum(double rho) {
  const int jc = static_cast<int>(std::floor(std::log2(rho)));
  double s = 0.0;
  for (int j = jc - 2; j <= jc + 2; ++j)
    s += dyadic_bump(rho * std::exp2(-static_cast<double>(j)));
  return s;
}
} // namespace

double lp_multiplier(int k, double rho) {
  if (!(rho > 0.0)) return 0.0;
  const double b = dyadic_bump(rho * std::exp2(-static_cast<double>(k)));
  if (b == 0.0) return 0.0;
  return b / dyadic_sum(rho);
}

int band_min(const RadialGrid& g) {
  return static_cast<int>(std::ceil(std::log2(g.freq_nodes.front())));
}

int band_max(const RadialGrid& g) {
  return static_cast<int>(std::floor(std::log2(g.rho_max)));
}

LPBand make_band(const RadialGrid& g, int k) {
  LPBand band{k, Vec(g.freq_nodes.size())};
  for (std::size_t i = 0; i < g.freq_nodes.size(); ++i)
    band.multiplier[i] = lp_multiplier(k, g.freq_nodes[i]);
  return band;
}

SpectralField apply_band(const LPBand& band, const SpectralField& fh) {
  if (band.multiplier.size() != fh.values.size())
    throw std::invalid_argument("apply_band: size mismatch");
  SpectralField out{fh.grid, Vec(fh.values.size())};
  for (std::size_t i = 0; i < fh.values.size(); ++i)
    out.values[i] = band.multiplier[i] * fh.values[i];
  return out;
}

RadialField project_band(const RadialFourier& F, const RadialField& f, int k) {
  const RadialGrid& g = F.grid();
  const double center = std::exp2(static_cast<double>(k));
  if (center < g.freq_nodes.front() || center > g.rho_max)
    throw std::domain_error("project_band: band outside resolved range");
  return F.inverse(apply_band(make_band(g, k), F.forward(f)));
}

RadialField project_low(const RadialFourier& F, const RadialField& f, int k) {
  const RadialGrid& g = F.grid();
  SpectralField fh = F.forward(f);
  for (std::size_t i = 0; i < fh.values.size(); ++i) {
    const double rho = g.freq_nodes[i];
    double m = 0.0;
    const int jc = static_cast<int>(std::floor(std::log2(rho)));
    for (int j = jc - 2; j <= std::min(jc + 2, k); ++j)
      if (j <= k) m += lp_multiplier(j, rho);
    fh.values[i] *= m;
  }
  return F.inverse(fh);
}

} // namespace wavelab
