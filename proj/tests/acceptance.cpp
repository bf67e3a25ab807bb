/// @file acceptance.cpp
/// @brief Acceptance suite: one PASS/FAIL line per criterion
///
/// Usage: acceptance [criterion numbers...]   (default: all)

#include "oracles.hpp"

#include "hns/energies.hpp"
#include "hns/experiments.hpp"
#include "hns/inequalities.hpp"
#include "hns/littlewood_paley.hpp"
#include "hns/solvers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace hns;

namespace {

// ----------------------------------------------------------------------------
// Pinned tolerances and budgets
// ----------------------------------------------------------------------------

constexpr double kSpectralTol = 1e-13;     // projector algebra, NS divergence
constexpr double kParsevalTol = 1e-12;
constexpr double kSemigroupTol = 1e-12;
constexpr double kLpExactTol = 1e-12;      // reconstruction, orthogonality
constexpr double kParaproductTol = 1e-10;
constexpr int kLpFields = 200;
constexpr int kInequalitySamples = 500;
constexpr double kConstantStability = 0.05;
constexpr double kLinearOracleTol = 1e-8;
constexpr double kOrderLo = 3.5, kOrderHi = 4.5;
constexpr double kDivSlopeMin = 0.90, kDivR2Min = 0.95;
constexpr double kModSlopeMin = 0.45, kModR2Min = 0.90;
constexpr double kSobSlopeMin = 0.5 / 2.0 - 0.1, kSobR2Min = 0.90;
constexpr double kSpeedTol = 0.05;
constexpr double kMonotoneTol = 1e-6; // relative, per unit time
constexpr double kPicardLinearTol = 1e-6;

// seconds
constexpr double kBudget[12] = {0, 60, 120, 300, 60, 1800, 2700, 1800, 600, 1200, 300, 1800};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double max_diff(const SpectralField& a, const SpectralField& b) { return oracle::max_diff(a, b); }

SpectralField rand_vec(const GridSpec& g, std::uint64_t seed, double kmax, bool div_free, double decay = 1.0) {
    std::mt19937_64 rng(seed);
    RandomFieldSpec spec;
    spec.kmax = kmax;
    spec.decay = decay;
    spec.divergence_free = div_free;
    return random_field(g, g.dim, spec, rng);
}

GridSpec grid(int dim, int n) {
    GridSpec g;
    g.dim = dim;
    g.n = n;
    return g;
}

std::string sci(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", x);
    return b;
}

// ============================================================================
// 1. Spectral identities
// ============================================================================

void spectral_identities(Outcome& o) {
    double proj = 0.0, pars = 0.0, semi = 0.0, divns = 0.0;
    for (const GridSpec g : {grid(2, 128), grid(3, 32)}) {
        const SpectralField F = rand_vec(g, 7, g.n / 2.0, false, 0.5);
        const double nF = F.max_abs();
        const SpectralField P = project_P(F), Q = project_Q(F);
        proj = std::max({proj, max_diff(project_P(P), P) / nF, max_diff(project_Q(Q), Q) / nF,
                         project_Q(P).max_abs() / nF, max_diff(P + Q, F) / nF,
                         divergence(P).max_abs() / (nF * g.k_max()),
                         std::abs(inner_product(P, Q)) / sobolev_norm_sq(F, 0.0)});

        const PhysicalField f = to_physical(F);
        double quad = 0.0;
        for (const auto& c : f.components)
            for (double v : c) quad += v * v;
        quad *= std::pow(g.h(), g.dim);
        pars = std::max(pars, std::abs(sobolev_norm_sq(F, 0.0) - quad) / quad);

        SpectralField G = F;
        remove_mean(G);
        const SpectralField a = lambda_pow(lambda_pow(G, 0.7), -1.2), b = lambda_pow(G, -0.5);
        SpectralField lap = laplacian(G);
        lap *= -1.0;
        semi = std::max({semi, max_diff(a, b) / b.max_abs(), max_diff(lambda_pow(G, 2.0), lap) / lap.max_abs(),
                         max_diff(lambda_pow(lambda_pow(G, 1.5), -1.5), G) / G.max_abs()});

        ModelParams p;
        p.model = Model::NS;
        StepperConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 0.02;
        const SpectralField u0 = rand_vec(g, 8, g.n / 3.0, true);
        const auto r = run_simulation(u0, std::nullopt, p, cfg, {});
        divns = std::max(divns, sobolev_norm(divergence(r.final_state.u), 0.0) / sobolev_norm(r.final_state.u, 1.0));
    }
    o.detail << "projector " << sci(proj) << ", parseval " << sci(pars) << ", lambda " << sci(semi)
             << ", NS div " << sci(divns);
    o.require(proj <= kSpectralTol, "projector algebra");
    o.require(pars <= kParsevalTol, "Parseval");
    o.require(semi <= kSemigroupTol, "Lambda semigroup");
    o.require(divns <= kSpectralTol, "NS divergence");
}

// ============================================================================
// 2. Littlewood-Paley suite
// ============================================================================

void lp_suite(Outcome& o) {
    double recon = 0.0, orth = 0.0, para = 0.0;
    for (const GridSpec g : {grid(2, 64), grid(3, 16)}) {
        const SpectralField F = rand_vec(g, 5, g.n / 2.0, false, 0.5);
        const auto bs = lp::blocks(F);
        SpectralField sum = SpectralField::zeros(g, g.dim);
        for (const auto& b : bs) sum += b;
        recon = std::max(recon, max_diff(sum, F) / F.max_abs());
        const double scale = sobolev_norm_sq(F, 0.0);
        for (std::size_t p = 0; p < bs.size(); ++p)
            for (std::size_t q = p + 1; q < bs.size(); ++q)
                orth = std::max(orth, std::abs(inner_product(bs[p], bs[q])) / scale);

        const SpectralField u = rand_vec(g, 11, g.n / 2.0, false, 0.5), v = rand_vec(g, 12, g.n / 2.0, false, 0.5);
        const lp::Paraproduct pp = lp::paraproduct_split(u, v);
        const SpectralField uv = padded_product(u, v);
        para = std::max(para, max_diff(pp.first + pp.second, uv) / uv.max_abs());
    }
    int outside = 0;
    double worst = 0.0;
    const GridSpec g = grid(2, 32);
    for (int s = 0; s < kLpFields; ++s) {
        std::mt19937_64 rng(100 + s);
        RandomFieldSpec spec;
        spec.kmax = 2.0 + s % 14;
        spec.decay = (s % 5) * 0.6;
        const SpectralField F = random_field(g, 1, spec, rng);
        for (double sigma : {-1.0, 0.5, 1.0, 1.5}) {
            const double r = lp::lp_sobolev_norm(F, sigma) / sobolev_norm(F, sigma);
            const double bound = std::pow(2.0, std::abs(sigma));
            worst = std::max({worst, r / bound, 1.0 / (r * bound)});
            if (r < (1.0 - 1e-12) / bound || r > bound * (1.0 + 1e-12)) ++outside;
        }
    }
    o.detail << "reconstruction " << sci(recon) << ", orthogonality " << sci(orth) << ", paraproduct " << sci(para)
             << ", norm ratio worst/bound " << sci(worst) << " over " << kLpFields << " fields";
    o.require(recon <= kLpExactTol, "reconstruction");
    o.require(orth <= kLpExactTol, "orthogonality");
    o.require(para <= kParaproductTol, "paraproduct");
    o.require(outside == 0, std::to_string(outside) + " norm ratios outside the dyadic bracket");
}

// ============================================================================
// 3. Inequality boundedness
// ============================================================================

void inequality_bounds(Outcome& o) {
    for (const auto& name : lp::inequality_names()) {
        const auto r = lp::verify_inequality(name, grid(2, 32), kInequalitySamples, 1);
        o.detail << name << " " << sci(r.max_ratio) << ", ";
        o.require(std::isfinite(r.max_ratio) && r.used > 0, name + " max_ratio finite");
    }
    const auto k1 = lp::estimate_constants(1, kInequalitySamples);
    const auto k2 = lp::estimate_constants(2, kInequalitySamples);
    const double dK = std::abs(k1.at("K") - k2.at("K")) / k1.at("K");
    const double dK2 = std::abs(k1.at("K2") - k2.at("K2")) / k1.at("K2");
    o.detail << "K " << sci(k1.at("K")) << "/" << sci(k2.at("K")) << ", K2 " << sci(k1.at("K2")) << "/"
             << sci(k2.at("K2"));
    o.require(dK <= kConstantStability, "K stable across seeds");
    o.require(dK2 <= kConstantStability, "K2 stable across seeds");
}

// ============================================================================
// 4. Linear solver exactness
// ============================================================================

void linear_exactness(Outcome& o) {
    const GridSpec g = grid(2, 64);
    const SpectralField u0 = rand_vec(g, 11, 30, false);
    const SpectralField u1 = rand_vec(g, 12, 30, false);
    double worst = 0.0;
    for (double eps : {1e-1, 1e-2})
        for (double alpha : {1e-1, 1e-3}) {
            ModelParams p;
            p.epsilon = eps;
            p.alpha = alpha;
            p.nonlinear = false;
            StepperConfig cfg;
            cfg.dt = 1e-3;
            cfg.t_end = 0.1;
            const auto res = run_simulation(u0, u1, p, cfg, {});
            o.require(res.final_state.step == 100, "100 steps");
            const auto ex = oracle::linear_hyperbolic_2d(u0, u1, p, res.final_state.t);
            worst = std::max({worst, max_diff(res.final_state.u, ex.first) / ex.first.max_abs(),
                              max_diff(*res.final_state.ut, ex.second) / ex.second.max_abs()});
        }
    ModelParams p;
    p.epsilon = 1e-1;
    p.alpha = 1e-1;
    const SpectralField d = rand_vec(grid(2, 32), 41, 4, false, 1.5);
    auto res = [&](double dt) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.1;
        const SolverState s = run_simulation(d, std::nullopt, p, cfg, {}).final_state;
        const Stepper st(d.grid, p, cfg);
        const SolverState s1 = st.step(s);
        return discrete_residual(s, s1, st.step(s1), p);
    };
    const double ratio = res(4e-3) / res(2e-3);
    o.detail << "oracle error " << sci(worst) << ", residual ratio " << sci(ratio);
    o.require(worst <= kLinearOracleTol, "per-mode oracle");
    o.require(ratio >= kOrderLo && ratio <= kOrderHi, "order-2 residual decay");
}

// ============================================================================
// 5, 6, 11. Alpha sweep
// ============================================================================

experiments::SweepConfig alpha_sweep_config() {
    experiments::SweepConfig c;
    c.variable = experiments::SweepVariable::Alpha;
    c.values = experiments::default_alpha_grid();
    c.fixed.model = Model::HNS_EPS_ALPHA;
    c.fixed.epsilon = 1e-2;
    c.grid = grid(2, 128);
    c.initial_data.kind = experiments::InitialDataKind::TaylorGreen;
    c.initial_data.perturbation = 0.3;
    c.initial_data.seed = 1;
    c.seed = 1;
    c.T_final = 1.0;
    c.dt = 2e-3;
    c.snapshot_every = 1;
    return c;
}

struct AlphaSweepCache {
    bool done = false;
    experiments::SweepResult result;
    double seconds = 0.0;
};

AlphaSweepCache& alpha_sweep() {
    static AlphaSweepCache cache;
    if (!cache.done) {
        const auto t0 = std::chrono::steady_clock::now();
        cache.result = experiments::run_sweep(alpha_sweep_config());
        cache.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        cache.done = true;
    }
    return cache;
}

void fit_check(Outcome& o, const std::optional<experiments::RateFit>& f, const char* what, double slope_min,
               double r2_min) {
    if (!f) {
        o.require(false, std::string(what) + " fit available");
        return;
    }
    o.detail << what << " slope " << sci(f->slope) << " (>= " << slope_min << "), r^2 " << sci(f->r_squared)
             << " (>= " << r2_min << ")";
    o.require(f->slope >= slope_min, std::string(what) + " slope");
    o.require(f->r_squared >= r2_min, std::string(what) + " r^2");
}

void weak_compressibility(Outcome& o) {
    const auto& s = alpha_sweep();
    o.require(!s.result.aborted && s.result.points.size() == experiments::default_alpha_grid().size(),
              "sweep completed");
    fit_check(o, s.result.div_fit, "div_l2t_l2", kDivSlopeMin, kDivR2Min);
}

void modulated_convergence(Outcome& o) {
    const auto& s = alpha_sweep();
    o.require(!s.result.aborted, "sweep completed");
    fit_check(o, s.result.modulated_fit, "sup modulated energy", kModSlopeMin, kModR2Min);
}

void determinism(Outcome& o) {
    const std::string first = experiments::sweep_csv(alpha_sweep().result);
    const std::string second = experiments::sweep_csv(experiments::run_sweep(alpha_sweep_config()));
    o.detail << first.size() << " bytes per sweep CSV";
    o.require(first == second, "byte-identical sweep CSVs");
}

// ============================================================================
// 7. Epsilon convergence
// ============================================================================

void epsilon_convergence(Outcome& o) {
    experiments::SweepConfig c;
    c.variable = experiments::SweepVariable::Epsilon;
    c.values = experiments::default_epsilon_grid();
    c.fixed.model = Model::HNS_EPS;
    c.grid = grid(2, 128);
    c.initial_data.kind = experiments::InitialDataKind::Remark;
    c.initial_data.s = 0.5;
    c.initial_data.kmax = 0.0;
    c.initial_data.seed = 1;
    c.seed = 1;
    c.T_final = 1.0;
    c.dt = 2e-3;
    c.snapshot_every = 5;
    const auto r = experiments::run_sweep(c);
    o.require(!r.aborted && r.points.size() == c.values.size(), "sweep completed");
    fit_check(o, r.sobolev_fit, "sup sobolev distance", kSobSlopeMin, kSobR2Min);
}

// ============================================================================
// 8. Finite propagation speed
// ============================================================================

void finite_speed(Outcome& o) {
    ModelParams p;
    p.epsilon = 1e-2;
    p.alpha = 1e-2;
    p.nonlinear = false;
    p.damping = false;
    const GridSpec g = grid(2, 512);
    experiments::BumpSpec b;
    b.shape = experiments::BumpShape::Gradient;
    const auto q = experiments::finite_speed_experiment(p, g, b);
    b.shape = experiments::BumpShape::Rotational;
    const auto r = experiments::finite_speed_experiment(p, g, b);
    const double eq = std::abs(q.q_speed - q.c1) / q.c1, ep = std::abs(r.p_speed - r.c2) / r.c2;
    o.detail << "c1 " << sci(q.c1) << ", Q speed " << sci(q.q_speed) << ", c2 " << sci(r.c2) << ", P speed "
             << sci(r.p_speed);
    o.require(q.slope_bound_satisfied && r.slope_bound_satisfied, "support within R + c1 t + 2h");
    o.require(std::abs(q.c1 - 100.4988) < 1e-3, "c1 value");
    o.require(eq <= kSpeedTol, "Q front speed");
    o.require(ep <= kSpeedTol, "P front speed");
}

// ============================================================================
// 9. Energy monotonicity
// ============================================================================

// max over samples of the relative increase per unit time
double worst_increase(const std::vector<ProbeSample>& s, const std::string& name) {
    double worst = -1e300, prev_t = 0.0, prev_v = 0.0;
    bool first = true;
    for (const auto& x : s) {
        if (x.name != name) continue;
        if (!first) worst = std::max(worst, (x.value - prev_v) / (std::abs(prev_v) * (x.time - prev_t)));
        prev_t = x.time;
        prev_v = x.value;
        first = false;
    }
    return worst;
}

void energy_monotonicity(Outcome& o) {
    const double delta = 0.5;
    const auto k = lp::estimate_constants(1, kInequalitySamples, delta);

    // 2D
    {
        const GridSpec g = grid(2, 64);
        SpectralField u0 = rand_vec(g, 21, 10, false);
        u0 *= 0.5 / sobolev_norm(u0, 0.0);
        ModelParams p;
        p.epsilon = 1e-2;
        const double l2 = sobolev_norm(u0, 0.0);
        p.alpha = std::min(1e-2, 2.0 / (k.at("K") * k.at("K") * l2 * l2));
        const auto gates = energies::smallness_gates(u0, SpectralField::zeros(g, 2), p, k, 0.5, delta);
        o.require(gates.find("alpha_gate").pass && gates.find("linf_gate").pass, "2D gates pass");
        const int N = energies::compute_N(u0, delta, k);
        StepperConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 1.0;
        cfg.snapshot_every = 10;
        const auto r = run_simulation(u0, std::nullopt, p, cfg,
                                      {energies::make_probe("E0", p, delta, N),
                                       energies::make_probe("script_E", p, delta, N)});
        const double e0 = worst_increase(r.samples, "E0"), se = worst_increase(r.samples, "script_E");
        o.detail << "2D N " << N << ", E0 " << sci(e0) << ", script_E " << sci(se) << "; ";
        o.require(e0 <= kMonotoneTol, "2D E0 non-increasing");
        o.require(se <= kMonotoneTol, "2D script_E non-increasing");
    }
    // 3D
    {
        const GridSpec g = grid(3, 32);
        const double threshold = 1.0 / (36.0 * std::pow(k.at("K2"), 3));
        SpectralField u0 = rand_vec(g, 22, 8, false);
        u0 *= 0.5 * threshold / sobolev_norm(u0, 0.5);
        ModelParams p;
        p.epsilon = 1e-2;
        p.alpha = 1e-2;
        const auto gates = energies::smallness_gates(u0, SpectralField::zeros(g, 3), p, k, 0.5, delta);
        o.require(gates.find("h_half_gate").pass && gates.find("linf_gate").pass, "3D gates pass");
        const int N = energies::compute_N(u0, delta, k);
        StepperConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 0.5;
        cfg.snapshot_every = 10;
        const auto r = run_simulation(u0, std::nullopt, p, cfg,
                                      {energies::make_probe("E_half", p, delta, N),
                                       energies::make_probe("script_E", p, delta, N)});
        const double eh = worst_increase(r.samples, "E_half"), se = worst_increase(r.samples, "script_E");
        o.detail << "3D N " << N << ", E_half " << sci(eh) << ", script_E " << sci(se);
        o.require(eh <= kMonotoneTol, "3D E_half non-increasing");
        o.require(se <= kMonotoneTol, "3D script_E non-increasing");
    }
}

// ============================================================================
// 10. Picard local solver
// ============================================================================

void picard(Outcome& o) {
    const GridSpec g = grid(2, 16);
    ModelParams p;
    p.epsilon = 1e-1;
    p.alpha = 1e-1;
    p.nonlinear = false;
    const SpectralField u0 = 0.05 * rand_vec(g, 51, 4, false, 2.0);
    const SpectralField u1 = 0.05 * rand_vec(g, 52, 4, false, 2.0);
    PicardConfig cfg;
    cfg.nodes = 128;
    const double T = local_time_bound(u0, u1, p, 1.0, cfg.delta);
    const PicardResult lin = picard_solve(u0, u1, p, T, cfg);
    const auto ex = oracle::linear_hyperbolic_2d(u0, u1, p, T);
    const double err = max_diff(lin.u.back(), ex.first) / ex.first.max_abs();

    p.nonlinear = true;
    cfg.nodes = 32;
    const PicardResult nl = picard_solve(u0, u1, p, T, cfg);
    double worst_ratio = 0.0;
    for (std::size_t i = 2; i < nl.distances.size(); ++i)
        worst_ratio = std::max(worst_ratio, nl.distances[i] / nl.distances[i - 1]);
    o.detail << "linear error " << sci(err) << ", " << nl.iterations << " iterations, worst ratio after 2 "
             << sci(worst_ratio);
    o.require(err <= kPicardLinearTol, "linear agreement");
    o.require(nl.distances.size() >= 3, "at least 3 iterations");
    o.require(worst_ratio < 1.0, "geometric contraction");
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "spectral identities", spectral_identities},
        {2, "Littlewood-Paley suite", lp_suite},
        {3, "inequality boundedness", inequality_bounds},
        {4, "linear solver exactness", linear_exactness},
        {5, "weak compressibility rate", weak_compressibility},
        {6, "modulated energy rate", modulated_convergence},
        {7, "epsilon convergence rate", epsilon_convergence},
        {8, "finite propagation speed", finite_speed},
        {9, "energy monotonicity", energy_monotonicity},
        {10, "Picard local solver", picard},
        {11, "sweep determinism", determinism},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    int failed = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs <= kBudget[c.id], "runtime budget " + sci(kBudget[c.id]) + " s");
        std::printf("%s criterion %2d %-28s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
