/// @file inequalities.hpp
/// @brief Randomized estimation of functional-inequality constants

#pragma once

#include "hns/spectral.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace hns::lp {

/// Names: div_lp, ladyzhenskaya, besov_interp, tame, bernstein, l3_embedding
const std::vector<std::string>& inequality_names();

struct InequalityParams {
    double delta = 0.5;
    /// Regularity index for tame; NaN selects dim/2 + delta
    double sigma = std::numeric_limits<double>::quiet_NaN();
    /// Derivative order for bernstein
    int order = 1;
    bool divergence_free = false;
    /// Refinement factor for non-polynomial L^p quadrature
    int refine = 2;
};

struct Ratio {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Evaluate both sides for given fields; `v` is used only by tame and
/// `block` only by bernstein.
Ratio evaluate_inequality(const std::string& name, const SpectralField& u, const SpectralField& v,
                          const InequalityParams& params, int block = 0);

struct InequalityReport {
    std::string name;
    int trials = 0;
    int used = 0;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    std::uint64_t seed = 0;
    GridSpec grid;
    std::vector<double> ratios;
};

InequalityReport verify_inequality(const std::string& name, const GridSpec& grid, int trials,
                                   std::uint64_t seed, const InequalityParams& params = {});

/// Aggregate samples, skipping those with a vanishing right-hand side
InequalityReport summarize_ratios(const std::string& name, const GridSpec& grid, std::uint64_t seed,
                                  const std::vector<Ratio>& samples);

std::string inequality_csv_header();
std::string inequality_csv_row(const InequalityReport& r);

/// Measured constants keyed by name (K, K2, C2, C3, C_tame, C_div_lp,
/// C0_bernstein, C2_3d, C_delta, self_embedding)
std::map<std::string, double> estimate_constants(std::uint64_t seed, int trials, double delta = 0.5);

/// Deterministic per-(seed, stream, trial) generator
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

} // namespace hns::lp
