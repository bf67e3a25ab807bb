/// @file experiments.hpp
/// @brief Parameter sweeps, rate fits and the finite-speed measurement

#pragma once

#include "hns/energies.hpp"
#include "hns/solvers.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hns::experiments {

// ============================================================================
// Initial data
// ============================================================================

enum class InitialDataKind { Random, TaylorGreen, Remark, File };

std::string to_string(InitialDataKind k);
InitialDataKind initial_data_from_string(const std::string& s);

struct InitialDataSpec {
    InitialDataKind kind = InitialDataKind::TaylorGreen;
    std::uint64_t seed = 0;
    double amplitude = 1.0;
    /// Random: shell range and power-law decay of the coefficients
    double kmin = 1.0;
    double kmax = 8.0;
    double decay = 1.0;
    /// TaylorGreen: amplitude of the seeded divergence-free perturbation
    double perturbation = 0.0;
    /// Remark: regularity above critical and the summability margin;
    /// coefficients decay like |k|^-(n/2 + s + eta) up to `kmax`
    /// (kmax <= 0 means the dealiased band)
    double s = 0.5;
    double eta = 0.1;
    /// File: snapshot path holding u0 (and optionally u1 as components d..2d-1)
    std::string path;
};

struct InitialData {
    SpectralField u0;
    SpectralField u1;
    SpectralField v0; // limit datum before any cutoff
};

/// Divergence-free, mean-zero u0; the Remark kind zeroes modes with
/// sqrt(eps)|k| >= 1 for hyperbolic models. u1 = 0 unless the file holds one.
InitialData build_initial_data(const InitialDataSpec& spec, const GridSpec& grid, const ModelParams& params);

// ============================================================================
// Rate fits
// ============================================================================

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points; // (log x, log y)
};

/// Least squares on (log x, log y); >= 3 points, all positive
RateFit fit_rate(const std::vector<std::pair<double, double>>& xy);

// ============================================================================
// Sweeps
// ============================================================================

enum class SweepVariable { Alpha, Epsilon };

std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& s);

const std::vector<double>& default_alpha_grid();
const std::vector<double>& default_epsilon_grid();

struct SweepConfig {
    SweepVariable variable = SweepVariable::Alpha;
    std::vector<double> values;
    ModelParams fixed;
    InitialDataSpec initial_data;
    double T_final = 1.0;
    GridSpec grid;
    std::uint64_t seed = 0;
    double dt = 2e-3;
    Scheme scheme = Scheme::EXP_LINEAR_RK2;
    int snapshot_every = 5;
    int workers = 1;
    /// Record wall time per point; off keeps the CSV byte-reproducible
    bool record_runtime = false;
    std::string run_id = "sweep";

    /// Values strictly decreasing, >= 3 points, spanning >= 2 decades
    void validate() const;
};

struct SweepPoint {
    double value = 0.0;
    double T_final = 0.0;
    double sup_modulated_energy = 0.0;
    double div_l2t_l2 = 0.0;
    double sup_sobolev_diff_sq = 0.0;
    double runtime_seconds = 0.0;
    double wall_seconds = 0.0; // always measured, never written to the CSV
    std::string run_id;
};

struct SweepResult {
    SweepVariable variable = SweepVariable::Alpha;
    std::vector<SweepPoint> points; // completed points in sweep order
    bool aborted = false;
    std::string error;
    double blowup_value = 0.0;
    std::optional<RateFit> modulated_fit;  // alpha sweeps
    std::optional<RateFit> div_fit;        // alpha sweeps
    std::optional<RateFit> sobolev_fit;    // epsilon sweeps
};

/// HNS^{eps,alpha} against HNS^eps in lockstep for every alpha
SweepResult sweep_alpha(const SweepConfig& cfg);
/// HNS^eps (fixed.model) against NS from v0 in lockstep for every epsilon
SweepResult sweep_epsilon(const SweepConfig& cfg);
SweepResult run_sweep(const SweepConfig& cfg);

/// One point of a sweep; exposed for tests
SweepPoint run_sweep_point(const SweepConfig& cfg, std::size_t index);

std::string sweep_csv_header();
std::string sweep_csv(const SweepResult& r);
std::string rate_fit_csv(const SweepResult& r);

// ============================================================================
// Finite propagation speed
// ============================================================================

enum class BumpShape { Gradient, Rotational, Mixed };

std::string to_string(BumpShape b);
BumpShape bump_shape_from_string(const std::string& s);

struct BumpSpec {
    BumpShape shape = BumpShape::Gradient;
    double sigma = 0.0;     // Gaussian width; 0 means L/40
    double amplitude = 1.0;
    double threshold = 1e-8; // relative to the initial maximum
    int samples = 40;
    double t_end = 0.0;      // 0 means 90% of the wrap-around window
};

struct FrontReport {
    std::vector<double> times;
    std::vector<double> support_radius;
    std::vector<double> bound_radius;
    std::vector<double> q_radius; // front of div u
    std::vector<double> p_radius; // front of curl u
    double R = 0.0;               // initial support radius
    double c1 = 0.0;
    double c2 = 0.0;
    double h = 0.0;
    double q_speed = 0.0; // fitted slope of q_radius
    double p_speed = 0.0; // fitted slope of p_radius
    bool slope_bound_satisfied = false;
};

/// Evolves Gaussian bump data centred in the box and records the
/// thresholded support; throws InvalidWindow when the run would or did wrap.
FrontReport finite_speed_experiment(const ModelParams& params, const GridSpec& grid, const BumpSpec& bump);

std::string front_csv_header();
std::string front_csv(const FrontReport& r);

// ============================================================================
// Gate ratio table
// ============================================================================

struct GateTable {
    std::vector<energies::GateReport> reports; // one per epsilon
    /// Per Rate gate: max ratio over the grid divided by the ratio at the
    /// largest epsilon stays below kGateBoundFactor
    std::vector<std::pair<std::string, bool>> bounded;
    std::string table() const;
    std::string csv() const;
};

inline constexpr double kGateBoundFactor = 10.0;

GateTable gate_ratio_table(const InitialDataSpec& spec, const GridSpec& grid, const ModelParams& params,
                           const energies::Constants& constants, const std::vector<double>& eps_values,
                           double delta);

// ============================================================================
// Plot files
// ============================================================================

/// Two-column whitespace-separated (x, y) file plus `path + ".caption"`
void write_plot(const std::string& path, const std::vector<double>& x, const std::vector<double>& y,
                const std::string& caption);

} // namespace hns::experiments
