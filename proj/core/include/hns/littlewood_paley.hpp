/// @file littlewood_paley.hpp
/// @brief Sharp dyadic blocks, Besov norms and Bony paraproducts

#pragma once

#include "hns/spectral.hpp"

#include <limits>
#include <vector>

namespace hns::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Block p holds modes with 2^p <= |k| L / 2pi < 2^{p+1}; the mean has no block.
int block_index(std::int64_t m2);
int max_block(const GridSpec& grid);

SpectralField block(const SpectralField& F, int p);
/// Delta_0 .. Delta_pmax
std::vector<SpectralField> blocks(const SpectralField& F);
/// S_p = sum_{q<p} Delta_q, mean excluded
SpectralField partial_sum(const SpectralField& F, int p);

/// (sum_p 2^{2 p sigma} (2pi/L)^{2 sigma} ||Delta_p F||^2)^{1/2}
double lp_sobolev_norm(const SpectralField& F, double sigma);

/// Homogeneous Besov norm; p in {2, 3, 4, 6, inf}, r in {1, 2, inf}
double besov_norm(const SpectralField& F, double s, double p, double r);

struct Paraproduct {
    SpectralField first;  // sum_p Delta_p u S_{p+1} v
    SpectralField second; // sum_q Delta_q v S_q u
};

/// Means count as the lowest frequency: u_mean v' goes to `second`,
/// u' v_mean and u_mean v_mean go to `first`.
Paraproduct paraproduct_split(const SpectralField& u, const SpectralField& v);

} // namespace hns::lp
