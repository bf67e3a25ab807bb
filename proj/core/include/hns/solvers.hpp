/// @file solvers.hpp
/// @brief Navier-Stokes and damped-wave (hyperbolic) Navier-Stokes integrators

#pragma once

#include "hns/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hns {

enum class Model { NS, HNS_EPS, HNS_EPS_ALPHA };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

/// Unit viscosity throughout. alpha = +inf removes the penalty term.
struct ModelParams {
    Model model = Model::HNS_EPS_ALPHA;
    double epsilon = 1e-2;
    double alpha = std::numeric_limits<double>::infinity();
    bool nonlinear = true;
    bool damping = true;

    void validate() const;
    bool hyperbolic() const { return model != Model::NS; }
    bool has_penalty() const { return model == Model::HNS_EPS_ALPHA && std::isfinite(alpha); }
    /// Wave speed of the gradient part, sqrt((alpha + 1) / (alpha eps))
    double c1() const;
    /// Wave speed of the solenoidal part, 1 / sqrt(eps)
    double c2() const;
};

struct SolverState {
    SpectralField u;
    std::optional<SpectralField> ut;
    double t = 0.0;
    std::int64_t step = 0;
};

/// Projects onto divergence-free fields for NS and HNS_EPS; u1 is ignored for NS.
SolverState make_state(const SpectralField& u0, const std::optional<SpectralField>& u1, const ModelParams& p);

enum class Scheme { EXP_LINEAR_RK2, RK4_FULL };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct StepperConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::EXP_LINEAR_RK2;
    int snapshot_every = 1;
    double t_end = 1.0;
};

/// Throws InvalidInput when the configuration is unusable for this grid and model
void validate_stepper(const StepperConfig& cfg, const ModelParams& p, const GridSpec& grid);

/// -(u . grad) u, pseudo-spectral with 2/3 dealiasing, via
/// (u . grad) u = sum_j d_j (u_j u) - (div u) u
SpectralField nonlinear_term(const SpectralField& u);

/// Pressure with grad p equal to the gradient part of (u . grad) u
SpectralField pressure(const SpectralField& u);

/// Forcing seen by the model: the Leray-projected nonlinearity for NS and
/// HNS_EPS, the full one for HNS_EPS_ALPHA, zero when switched off
SpectralField model_forcing(const SpectralField& u, const ModelParams& p);

/// Exact per-mode solution operator over a fixed interval h for
/// eps y'' + g y' + w^2 y = a + b s (hyperbolic) or y' + k^2 y = a + b s (NS),
/// split into the P and Q branches.
class LinearPropagator {
public:
    LinearPropagator(const GridSpec& grid, const ModelParams& p, double h);

    double h() const { return h_; }
    /// Advance (u, ut) with forcing a + b s on [0, h]; a and b may be null.
    void apply(const SpectralField& u, const SpectralField* ut, const SpectralField* a, const SpectralField* b,
               SpectralField& u_out, SpectralField* ut_out) const;

    struct Coeffs {
        double yy, yv, vy, vv; // homogeneous
        double ya, yb, va, vb; // forcing response
    };
    /// Coefficients for one branch with stiffness w2 (exposed for testing)
    static Coeffs mode_coeffs(double eps, double g, double w2, double h);
    static Coeffs heat_coeffs(double k2, double h);

private:
    GridSpec grid_;
    ModelParams p_;
    double h_;
    std::vector<Coeffs> cp_, cq_;
};

/// Free evolution (nonlinearity ignored) for a time span t
SolverState linear_propagate(const SolverState& s, const ModelParams& p, double t);

class Stepper {
public:
    Stepper(const GridSpec& grid, const ModelParams& p, const StepperConfig& cfg);
    SolverState step(const SolverState& s) const;
    double dt() const { return dt_; }
    std::int64_t steps() const { return nsteps_; }

private:
    SolverState step_exp(const SolverState& s) const;
    SolverState step_rk4(const SolverState& s) const;

    GridSpec grid_;
    ModelParams p_;
    StepperConfig cfg_;
    double dt_;
    std::int64_t nsteps_;
    std::unique_ptr<LinearPropagator> prop_;
};

SolverState step(const SolverState& s, const ModelParams& p, const StepperConfig& cfg);

/// Coefficient magnitude over this multiple of the initial maximum counts as blow-up
inline constexpr double kBlowUpFactor = 1e12;

struct ProbeSample {
    double time;
    std::string name;
    double value;
};

using ProbeFn = std::function<double(const SolverState&)>;
struct Probe {
    std::string name;
    ProbeFn fn;
};

struct SimulationResult {
    SolverState final_state;
    std::vector<ProbeSample> samples;
    std::vector<double> snapshot_times;
};

/// Probes run at t = 0 and every snapshot_every steps; `on_snapshot` likewise.
SimulationResult run_simulation(const SpectralField& u0, const std::optional<SpectralField>& u1,
                                const ModelParams& p, const StepperConfig& cfg, const std::vector<Probe>& probes,
                                const std::function<void(const SolverState&)>& on_snapshot = {});

/// L2 norm of the centered-difference residual of the model equation at the
/// middle of three equally spaced states; used for dt-convergence checks
double discrete_residual(const SolverState& prev, const SolverState& cur, const SolverState& next,
                         const ModelParams& p);

// ============================================================================
// Picard iteration for the local theory
// ============================================================================

struct PicardConfig {
    int nodes = 64;
    int max_iter = 50;
    double tol = 1e-12;
    double delta = 0.5;
    /// Constant in the local existence time bound
    double bound_constant = 1.0;
};

struct PicardResult {
    std::vector<double> times;
    std::vector<SpectralField> u;
    std::vector<SpectralField> ut;
    std::vector<double> distances; // X_T distance between successive iterates
    int iterations = 0;
};

/// Existence time T = min(1, eps/4) / (1 + C D) with D the data-size bracket
double local_time_bound(const SpectralField& u0, const SpectralField& u1, const ModelParams& p, double C,
                        double delta);

double xt_norm(const std::vector<SpectralField>& u, const std::vector<SpectralField>& ut, double delta);

PicardResult picard_solve(const SpectralField& u0, const SpectralField& u1, const ModelParams& p, double T,
                          const PicardConfig& cfg);

} // namespace hns
