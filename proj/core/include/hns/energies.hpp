/// @file energies.hpp
/// @brief Energy functionals, modulated energy and smallness gates

#pragma once

#include "hns/solvers.hpp"

#include <map>
#include <string>
#include <vector>

namespace hns::energies {

using Constants = std::map<std::string, double>;

struct EnergyComponents {
    double kinetic = 0.0;         // 1/2 |u + eps u_t|^2
    double time_derivative = 0.0; // eps^2 / 2 |u_t|^2
    double gradient = 0.0;        // eps |grad u|^2
    double penalty = 0.0;         // eps / alpha |div u|^2
    double total() const { return kinetic + time_derivative + gradient + penalty; }
};

/// Components of E at regularity sigma (each term measured in H^sigma).
/// NS states reduce to 1/2 |u|^2.
EnergyComponents energy_components(const SolverState& s, const ModelParams& p, double sigma);
double energy(const SolverState& s, const ModelParams& p, double sigma);

struct EnergyReport {
    std::string run_id;
    double time = 0.0;
    int dim = 2;
    int N = 0;
    double E0 = 0.0;
    double E_delta = 0.0;
    double E_half = 0.0;       // 3D only
    double E_half_delta = 0.0; // 3D only
    double div_l2 = 0.0;
    double script_E = 0.0;
    EnergyComponents delta_components; // components of E_delta
};

EnergyReport energy_report(const SolverState& s, const ModelParams& p, double delta, int N,
                           const std::string& run_id = "");

/// E_delta (1 + E0)^N in 2D, E_{1/2+delta} (1 + E_{1/2})^N in 3D; N = 0 leaves E unchanged
double script_E(const EnergyReport& r, int N);

/// Smallest admissible exponent: ceil(4 C |u0|^{2(1-delta)/delta} (1 + 2 |u0|^2)) + 1
int compute_N(double u0_norm, double delta, double C_delta);
/// Uses |u0|_{L2} in 2D and |u0|_{H^1/2} in 3D with constants["C_delta"]
int compute_N(const SpectralField& u0, double delta, const Constants& constants);

std::string energy_csv_header();
std::string energy_csv_row(const EnergyReport& r);

struct ModulatedEnergyReport {
    std::string run_id;
    double time = 0.0;
    double value = 0.0;
    double kinetic = 0.0;
    double time_derivative = 0.0;
    double gradient = 0.0;
    double penalty = 0.0;
    double sobolev_diff_sq = 0.0; // |u - u_ref|^2 in H^{n/2 - 1}
};

/// Energy of d = u - u_ref measured in L2 / H1 (2D) or H^1/2 / H^3/2 (3D),
/// plus the penalty on div u. A reference state without u_t is treated as
/// an NS solution and its time derivative is taken from the NS equation.
ModulatedEnergyReport modulated_energy(const SolverState& s, const SolverState& ref, const ModelParams& p);

std::string modulated_csv_header();
std::string modulated_csv_row(const ModulatedEnergyReport& r);

/// d/dt E0 + eps |u_t + div(u x u)|^2 + |grad u|^2 - eps X with d/dt E0
/// evaluated exactly from the equation. `literal` takes X = |grad(u x u)|^2;
/// otherwise X = |(u . grad) u|^2, which closes the balance for
/// divergence-free HNS_EPS states. Reported, not asserted.
double energy_identity_residual(const SolverState& s, const ModelParams& p, bool literal = true);

// ============================================================================
// Gates
// ============================================================================

enum class GateKind { Threshold, Rate, Small };

struct Gate {
    std::string name;
    GateKind kind = GateKind::Threshold;
    double value = 0.0;
    double threshold = 0.0; // bound for Threshold and Small, eps^{s/2} for Rate
    double ratio = 0.0;     // value / threshold
    bool pass = false;
};

struct GateReport {
    double epsilon = 0.0;
    std::vector<Gate> gates;
    bool all_pass() const;
    const Gate& find(const std::string& name) const;
    std::string table() const;
    std::string csv() const;
};

/// v0 is the limit datum for the distance term; null means v0 = u0
GateReport smallness_gates(const SpectralField& u0, const SpectralField& u1, const ModelParams& p,
                           const Constants& constants, double s, double delta, const SpectralField* v0 = nullptr);

/// Probe by name: E0, E_delta, E_half, E_half_delta, script_E, div_l2,
/// l2_norm, max_abs, energy_identity_residual
Probe make_probe(const std::string& name, const ModelParams& p, double delta, int N);
const std::vector<std::string>& probe_names();

} // namespace hns::energies
