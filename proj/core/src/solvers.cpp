/// @file solvers.cpp
/// @brief Nonlinear term, time stepping and simulation driver

#include "hns/solvers.hpp"
#include "hns/error.hpp"

#include <algorithm>
#include <cmath>

namespace hns {

// ============================================================================
// Parameters
// ============================================================================

std::string to_string(Model m) {
    switch (m) {
    case Model::NS: return "NS";
    case Model::HNS_EPS: return "HNS_EPS";
    case Model::HNS_EPS_ALPHA: return "HNS_EPS_ALPHA";
    }
    return "?";
}

Model model_from_string(const std::string& s) {
    if (s == "NS") return Model::NS;
    if (s == "HNS_EPS") return Model::HNS_EPS;
    if (s == "HNS_EPS_ALPHA") return Model::HNS_EPS_ALPHA;
    throw InvalidInput("unknown model: " + s);
}

std::string to_string(Scheme s) { return s == Scheme::RK4_FULL ? "RK4_FULL" : "EXP_LINEAR_RK2"; }

Scheme scheme_from_string(const std::string& s) {
    if (s == "EXP_LINEAR_RK2") return Scheme::EXP_LINEAR_RK2;
    if (s == "RK4_FULL") return Scheme::RK4_FULL;
    throw InvalidInput("unknown scheme: " + s);
}

void ModelParams::validate() const {
    if (model != Model::NS) {
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidInput("epsilon must be positive and finite");
    }
    if (model == Model::HNS_EPS_ALPHA && !(alpha > 0.0)) throw InvalidInput("alpha must be positive (inf allowed)");
    if (model == Model::NS && !damping) throw InvalidInput("damping cannot be disabled for NS");
}

double ModelParams::c1() const {
    if (!has_penalty()) return c2();
    return std::sqrt((alpha + 1.0) / (alpha * epsilon));
}

double ModelParams::c2() const { return 1.0 / std::sqrt(epsilon); }

SolverState make_state(const SpectralField& u0, const std::optional<SpectralField>& u1, const ModelParams& p) {
    p.validate();
    if (u0.ncomp() != u0.grid.dim) throw InvalidInput("initial velocity must be a vector field");
    SolverState s;
    const bool project = p.model != Model::HNS_EPS_ALPHA;
    s.u = project ? project_P(u0) : u0;
    if (p.hyperbolic()) {
        if (u1) {
            if (!same_grid(*u1, u0)) throw InvalidInput("initial velocity and time derivative differ in shape");
            s.ut = project ? project_P(*u1) : *u1;
        } else {
            s.ut = SpectralField::zeros(u0.grid, u0.ncomp());
        }
    }
    return s;
}

void validate_stepper(const StepperConfig& cfg, const ModelParams& p, const GridSpec& grid) {
    p.validate();
    grid.validate();
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw InvalidInput("dt must be positive");
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) throw InvalidInput("t_end must be >= 0");
    if (cfg.snapshot_every < 1) throw InvalidInput("snapshot_every must be >= 1");
    if (cfg.scheme == Scheme::RK4_FULL) {
        // explicit RK4 on the stiff linear part: |dt lambda| inside the stability region
        const double k2max = grid.dim * std::pow(grid.k_max(), 2);
        double lam;
        if (p.model == Model::NS) {
            lam = k2max;
        } else {
            const double g = p.damping ? 1.0 : 0.0;
            const double w2 = k2max * (p.has_penalty() ? 1.0 + 1.0 / p.alpha : 1.0);
            const double disc = g * g - 4.0 * p.epsilon * w2;
            const double big = disc >= 0.0 ? (g + std::sqrt(disc)) / (2.0 * p.epsilon) : std::sqrt(w2 / p.epsilon);
            lam = std::max(big, g / p.epsilon);
        }
        if (cfg.dt * lam > 2.5)
            throw InvalidInput("dt exceeds the RK4 stability bound (dt * |lambda|max = " + std::to_string(cfg.dt * lam) +
                               " > 2.5)");
    }
}

// ============================================================================
// Nonlinearity
// ============================================================================

static SpectralField convective(const SpectralField& u) {
    const GridSpec& g = u.grid;
    const int d = g.dim;
    if (u.ncomp() != d) throw InvalidInput("nonlinear_term: vector field required");
    auto w = wavenumbers(g);
    const SpectralField U = dealias(u);
    const PhysicalField pu = to_physical(U);
    const PhysicalField pd = to_physical(divergence(U));
    const std::size_t N = g.size();

    SpectralField out = SpectralField::zeros(g, d);
    PhysicalField prod = PhysicalField::zeros(g, 1);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            for (std::size_t x = 0; x < N; ++x) prod.components[0][x] = pu.components[i][x] * pu.components[j][x];
            const SpectralField P = to_spectral(prod);
            const auto& pc = P.components[0];
            for (std::size_t m = 0; m < N; ++m) {
                out.components[i][m] += Complex(0.0, w->kd[j][m]) * pc[m];
                if (j != i) out.components[j][m] += Complex(0.0, w->kd[i][m]) * pc[m];
            }
        }
    for (int i = 0; i < d; ++i) {
        for (std::size_t x = 0; x < N; ++x) prod.components[0][x] = pd.components[0][x] * pu.components[i][x];
        const SpectralField P = to_spectral(prod);
        for (std::size_t m = 0; m < N; ++m) out.components[i][m] -= P.components[0][m];
    }
    return dealias(out);
}

SpectralField nonlinear_term(const SpectralField& u) {
    SpectralField n = convective(u);
    n *= -1.0;
    return n;
}

SpectralField pressure(const SpectralField& u) {
    const SpectralField c = convective(u);
    auto w = wavenumbers(u.grid);
    SpectralField p = SpectralField::zeros(u.grid, 1);
    const std::size_t N = u.grid.size();
    for (std::size_t m = 0; m < N; ++m) {
        const double kk = w->kd2[m];
        if (kk == 0.0) continue;
        Complex dot = 0.0;
        for (int a = 0; a < u.grid.dim; ++a) dot += w->kd[a][m] * c.components[a][m];
        p.components[0][m] = Complex(0.0, -1.0) * dot / kk;
    }
    return p;
}

SpectralField model_forcing(const SpectralField& u, const ModelParams& p) {
    if (!p.nonlinear) return SpectralField::zeros(u.grid, u.ncomp());
    SpectralField f = nonlinear_term(u);
    if (p.model != Model::HNS_EPS_ALPHA) f = project_P(f);
    return f;
}

// ============================================================================
// Stepping
// ============================================================================

Stepper::Stepper(const GridSpec& grid, const ModelParams& p, const StepperConfig& cfg)
    : grid_(grid), p_(p), cfg_(cfg) {
    validate_stepper(cfg, p, grid);
    if (cfg.t_end > 0.0) {
        nsteps_ = static_cast<std::int64_t>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
        dt_ = cfg.t_end / static_cast<double>(nsteps_);
    } else {
        nsteps_ = 0;
        dt_ = cfg.dt;
    }
    if (cfg.scheme == Scheme::EXP_LINEAR_RK2) prop_ = std::make_unique<LinearPropagator>(grid, p, dt_);
}

SolverState Stepper::step(const SolverState& s) const {
    if (s.u.grid != grid_) throw InvalidInput("step: grid mismatch");
    if (p_.hyperbolic() && !s.ut) throw MissingState("step: hyperbolic model requires u_t");
    return cfg_.scheme == Scheme::EXP_LINEAR_RK2 ? step_exp(s) : step_rk4(s);
}

SolverState Stepper::step_exp(const SolverState& s) const {
    const bool hyp = p_.hyperbolic();
    SolverState out;
    out.t = s.t + dt_;
    out.step = s.step + 1;
    if (hyp) out.ut = SpectralField::zeros(grid_, s.u.ncomp());
    if (!p_.nonlinear) {
        prop_->apply(s.u, hyp ? &*s.ut : nullptr, nullptr, nullptr, out.u, hyp ? &*out.ut : nullptr);
        return out;
    }
    const SpectralField fn = model_forcing(s.u, p_);
    SpectralField ustar = SpectralField::zeros(grid_, s.u.ncomp());
    prop_->apply(s.u, hyp ? &*s.ut : nullptr, &fn, nullptr, ustar, nullptr);
    SpectralField slope = model_forcing(ustar, p_);
    slope -= fn;
    slope *= 1.0 / dt_;
    prop_->apply(s.u, hyp ? &*s.ut : nullptr, &fn, &slope, out.u, hyp ? &*out.ut : nullptr);
    return out;
}

SolverState Stepper::step_rk4(const SolverState& s) const {
    const bool hyp = p_.hyperbolic();
    const double g = p_.damping ? 1.0 : 0.0;
    auto accel = [&](const SpectralField& u, const SpectralField& v) {
        SpectralField a = model_forcing(u, p_);
        a += laplacian(u);
        if (p_.has_penalty()) a.axpy(1.0 / p_.alpha, gradient(divergence(u)));
        a.axpy(-g, v);
        a *= 1.0 / p_.epsilon;
        return a;
    };
    auto heat = [&](const SpectralField& u) {
        SpectralField a = model_forcing(u, p_);
        a += laplacian(u);
        return a;
    };
    const double h = dt_;
    SolverState out;
    out.t = s.t + h;
    out.step = s.step + 1;
    if (!hyp) {
        const SpectralField k1 = heat(s.u);
        const SpectralField k2 = heat(s.u + (0.5 * h) * k1);
        const SpectralField k3 = heat(s.u + (0.5 * h) * k2);
        const SpectralField k4 = heat(s.u + h * k3);
        out.u = s.u;
        out.u.axpy(h / 6.0, k1).axpy(h / 3.0, k2).axpy(h / 3.0, k3).axpy(h / 6.0, k4);
        return out;
    }
    const SpectralField& u = s.u;
    const SpectralField& v = *s.ut;
    const SpectralField a1 = accel(u, v);
    const SpectralField u2 = u + (0.5 * h) * v, v2 = v + (0.5 * h) * a1;
    const SpectralField a2 = accel(u2, v2);
    const SpectralField u3 = u + (0.5 * h) * v2, v3 = v + (0.5 * h) * a2;
    const SpectralField a3 = accel(u3, v3);
    const SpectralField u4 = u + h * v3, v4 = v + h * a3;
    const SpectralField a4 = accel(u4, v4);
    out.u = u;
    out.u.axpy(h / 6.0, v).axpy(h / 3.0, v2).axpy(h / 3.0, v3).axpy(h / 6.0, v4);
    out.ut = v;
    out.ut->axpy(h / 6.0, a1).axpy(h / 3.0, a2).axpy(h / 3.0, a3).axpy(h / 6.0, a4);
    return out;
}

SolverState step(const SolverState& s, const ModelParams& p, const StepperConfig& cfg) {
    StepperConfig one = cfg;
    one.t_end = cfg.dt;
    return Stepper(s.u.grid, p, one).step(s);
}

// ============================================================================
// Driver
// ============================================================================

static double state_max(const SolverState& s) {
    double m = s.u.max_abs();
    if (s.ut) m = std::max(m, s.ut->max_abs());
    return m;
}

SimulationResult run_simulation(const SpectralField& u0, const std::optional<SpectralField>& u1,
                                const ModelParams& p, const StepperConfig& cfg, const std::vector<Probe>& probes,
                                const std::function<void(const SolverState&)>& on_snapshot) {
    Stepper stepper(u0.grid, p, cfg);
    SimulationResult res;
    SolverState s = make_state(u0, u1, p);
    const double initial = std::max(state_max(s), 1e-300);

    auto record = [&](const SolverState& st) {
        res.snapshot_times.push_back(st.t);
        for (const auto& pr : probes) res.samples.push_back({st.t, pr.name, pr.fn(st)});
        if (on_snapshot) on_snapshot(st);
    };
    record(s);
    for (std::int64_t n = 0; n < stepper.steps(); ++n) {
        s = stepper.step(s);
        const double m = state_max(s);
        if (!std::isfinite(m) || m > kBlowUpFactor * initial)
            throw BlowUp("solution blew up at t = " + std::to_string(s.t), s.t);
        if ((n + 1) % cfg.snapshot_every == 0 || n + 1 == stepper.steps()) record(s);
    }
    res.final_state = std::move(s);
    return res;
}

double discrete_residual(const SolverState& prev, const SolverState& cur, const SolverState& next,
                         const ModelParams& p) {
    const double h = cur.t - prev.t;
    if (!(h > 0.0) || std::abs((next.t - cur.t) - h) > 1e-9 * h) throw Misalignment("residual: states not equally spaced");
    SpectralField r = SpectralField::zeros(cur.u.grid, cur.u.ncomp());
    if (p.hyperbolic()) {
        const double g = p.damping ? 1.0 : 0.0;
        r.axpy(p.epsilon / (h * h), next.u).axpy(-2.0 * p.epsilon / (h * h), cur.u).axpy(p.epsilon / (h * h), prev.u);
        r.axpy(g / (2.0 * h), next.u).axpy(-g / (2.0 * h), prev.u);
        r -= laplacian(cur.u);
        if (p.has_penalty()) r.axpy(-1.0 / p.alpha, gradient(divergence(cur.u)));
    } else {
        r.axpy(1.0 / (2.0 * h), next.u).axpy(-1.0 / (2.0 * h), prev.u);
        r -= laplacian(cur.u);
    }
    r -= model_forcing(cur.u, p);
    return sobolev_norm(r, 0.0);
}

} // namespace hns
