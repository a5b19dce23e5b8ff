//==============================================================================
// littlewood_paley.hpp -- dyadic frequency decomposition
//
//  * The mother bump phi is the standard mollifier-style bump supported on
//    (1/2, 2); band k uses phi(rho / 2^k).
//  * Multipliers are normalized by the full dyadic sum, so the partition of
//    unity sum_k m_k(rho) = 1 holds exactly for every rho > 0 (at most two
//    dyadic translates overlap any point).
//==============================================================================
#pragma once

#include "wavelab/transform.hpp"

namespace wavelab {

//! One dyadic band: index k and its normalized multiplier sampled on the
//! frequency grid.
struct LPBand {
  int k = 0;
  Vec multiplier;
};

//! Normalized dyadic multiplier m_k(rho) = phi(rho/2^k) / sum_j phi(rho/2^j),
//! evaluated at a single frequency.
double lp_multiplier(int k, double rho);

//! Lowest / highest band index whose center 2^k lies inside the resolved
//! frequency range [rho_min, rho_max] of the grid.
int band_min(const RadialGrid& g);
int band_max(const RadialGrid& g);

//! Sample band k's multiplier on the grid (no range restriction; useful for
//! partition-of-unity checks).
LPBand make_band(const RadialGrid& g, int k);

//! Multiply spectral samples by the band multiplier.
SpectralField apply_band(const LPBand& band, const SpectralField& fh);

//! P_k f: inverse transform of m_k(rho) fhat(rho).  The band center 2^k must
//! lie inside the grid's resolved range, else std::domain_error.
RadialField project_band(const RadialFourier& F, const RadialField& f, int k);

//! P_{<=k} f: inverse transform of (sum_{j<=k} m_j) fhat.
RadialField project_low(const RadialFourier& F, const RadialField& f, int k);

} // namespace wavelab
