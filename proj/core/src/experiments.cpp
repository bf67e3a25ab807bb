/// @file experiments.cpp
/// @brief Sweeps, rate fits, front measurement and gate tables

#include "hns/experiments.hpp"
#include "hns/error.hpp"
#include "hns/field_io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace hns::experiments {

// ============================================================================
// Initial data
// ============================================================================

std::string to_string(InitialDataKind k) {
    switch (k) {
    case InitialDataKind::Random: return "random";
    case InitialDataKind::TaylorGreen: return "taylor_green";
    case InitialDataKind::Remark: return "remark";
    case InitialDataKind::File: return "file";
    }
    return "?";
}

InitialDataKind initial_data_from_string(const std::string& s) {
    if (s == "random") return InitialDataKind::Random;
    if (s == "taylor_green") return InitialDataKind::TaylorGreen;
    if (s == "remark") return InitialDataKind::Remark;
    if (s == "file") return InitialDataKind::File;
    throw InvalidInput("unknown initial data kind: " + s);
}

static SpectralField taylor_green(const GridSpec& g) {
    PhysicalField f = PhysicalField::zeros(g, g.dim);
    const double k = g.k0();
    const int n = g.n;
    const std::size_t N = g.size();
    for (std::size_t idx = 0; idx < N; ++idx) {
        const double x = coordinate(g, static_cast<int>(idx / (g.dim == 3 ? n * n : n)));
        const double y = coordinate(g, static_cast<int>((idx / (g.dim == 3 ? n : 1)) % n));
        const double z = g.dim == 3 ? coordinate(g, static_cast<int>(idx % n)) : 0.0;
        const double cz = std::cos(k * z);
        f.components[0][idx] = std::sin(k * x) * std::cos(k * y) * cz;
        f.components[1][idx] = -std::cos(k * x) * std::sin(k * y) * cz;
    }
    return to_spectral(f);
}

static SpectralField normalized(SpectralField F, double l2) {
    const double nrm = sobolev_norm(F, 0.0);
    if (nrm > 0.0) F *= l2 / nrm;
    return F;
}

InitialData build_initial_data(const InitialDataSpec& spec, const GridSpec& grid, const ModelParams& params) {
    grid.validate();
    params.validate();
    InitialData d;
    d.u1 = SpectralField::zeros(grid, grid.dim);
    std::mt19937_64 rng(spec.seed);
    const double band = spec.kmax > 0.0 ? spec.kmax : std::floor(grid.dealias_fraction * (grid.n / 2));

    switch (spec.kind) {
    case InitialDataKind::Random: {
        RandomFieldSpec rs{spec.kmin, spec.kmax, spec.decay, true};
        d.v0 = normalized(random_field(grid, grid.dim, rs, rng), spec.amplitude);
        break;
    }
    case InitialDataKind::TaylorGreen: {
        d.v0 = taylor_green(grid);
        d.v0 *= spec.amplitude;
        if (spec.perturbation != 0.0) {
            RandomFieldSpec rs{spec.kmin, spec.kmax, spec.decay, true};
            d.v0.axpy(spec.perturbation, normalized(random_field(grid, grid.dim, rs, rng), 1.0));
        }
        break;
    }
    case InitialDataKind::Remark: {
        RandomFieldSpec rs{1.0, band, 0.5 * grid.dim + spec.s + spec.eta, true};
        d.v0 = normalized(random_field(grid, grid.dim, rs, rng), spec.amplitude);
        break;
    }
    case InitialDataKind::File: {
        const Snapshot snap = read_snapshot(spec.path);
        SpectralField F = std::holds_alternative<SpectralField>(snap.field)
                              ? std::get<SpectralField>(snap.field)
                              : to_spectral(std::get<PhysicalField>(snap.field));
        if (F.grid.dim != grid.dim || F.grid.n != grid.n || std::abs(F.grid.L - grid.L) > 1e-12 * grid.L)
            throw InvalidInput("initial data file does not match the grid");
        F.grid = grid;
        if (F.ncomp() != grid.dim && F.ncomp() != 2 * grid.dim)
            throw InvalidInput("initial data file must hold d or 2d components");
        d.v0 = SpectralField::zeros(grid, grid.dim);
        for (int c = 0; c < grid.dim; ++c) d.v0.components[c] = F.components[c];
        if (F.ncomp() == 2 * grid.dim) {
            for (int c = 0; c < grid.dim; ++c) d.u1.components[c] = F.components[grid.dim + c];
            d.u1 = project_P(d.u1);
            remove_mean(d.u1);
        }
        break;
    }
    }
    d.v0 = project_P(d.v0);
    remove_mean(d.v0);
    d.u0 = d.v0;
    if (spec.kind == InitialDataKind::Remark && params.hyperbolic()) {
        auto w = wavenumbers(grid);
        const double se = std::sqrt(params.epsilon);
        for (auto& c : d.u0.components)
            for (std::size_t i = 0; i < c.size(); ++i)
                if (se * std::sqrt(w->k2[i]) >= 1.0) c[i] = 0.0;
    }
    return d;
}

// ============================================================================
// Rate fits
// ============================================================================

RateFit fit_rate(const std::vector<std::pair<double, double>>& xy) {
    if (xy.size() < 3) throw InvalidInput("fit_rate: need at least 3 points");
    RateFit f;
    for (const auto& [x, y] : xy) {
        if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
            throw DomainError("fit_rate: values must be positive and finite");
        f.points.emplace_back(std::log(x), std::log(y));
    }
    const double n = static_cast<double>(f.points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [lx, ly] : f.points) {
        mx += lx;
        my += ly;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [lx, ly] : f.points) {
        sxx += (lx - mx) * (lx - mx);
        sxy += (lx - mx) * (ly - my);
        syy += (ly - my) * (ly - my);
    }
    if (sxx == 0.0) throw DomainError("fit_rate: x values are all equal");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    return f;
}

// ============================================================================
// Sweeps
// ============================================================================

std::string to_string(SweepVariable v) { return v == SweepVariable::Alpha ? "alpha" : "epsilon"; }

SweepVariable sweep_variable_from_string(const std::string& s) {
    if (s == "alpha") return SweepVariable::Alpha;
    if (s == "epsilon") return SweepVariable::Epsilon;
    throw InvalidInput("unknown sweep variable: " + s);
}

const std::vector<double>& default_alpha_grid() {
    static const std::vector<double> v = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
    return v;
}

const std::vector<double>& default_epsilon_grid() {
    static const std::vector<double> v = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    return v;
}

void SweepConfig::validate() const {
    if (values.size() < 3) throw InvalidInput("sweep: need at least 3 values");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) throw InvalidInput("sweep: values must be positive");
        if (i > 0 && !(values[i] < values[i - 1])) throw InvalidInput("sweep: values must be strictly decreasing");
    }
    if (values.front() / values.back() < 100.0 * (1.0 - 1e-12))
        throw InvalidInput("sweep: values must span at least two decades");
    if (!(T_final > 0.0)) throw InvalidInput("sweep: T_final must be positive");
    if (workers < 1) throw InvalidInput("sweep: workers must be >= 1");
    grid.validate();
    ModelParams p = fixed;
    if (variable == SweepVariable::Alpha) {
        p.model = Model::HNS_EPS_ALPHA;
        p.alpha = values.front();
    } else {
        if (!p.hyperbolic()) throw InvalidInput("sweep: epsilon sweeps need a hyperbolic model");
        p.epsilon = values.front();
    }
    StepperConfig sc{dt, scheme, snapshot_every, T_final};
    validate_stepper(sc, p, grid);
}

namespace {

double state_max(const SolverState& s) {
    double m = s.u.max_abs();
    if (s.ut) m = std::max(m, s.ut->max_abs());
    return m;
}

void check_blowup(const SolverState& s, double initial) {
    const double m = state_max(s);
    if (!std::isfinite(m) || m > kBlowUpFactor * initial)
        throw BlowUp("solution blew up at t = " + std::to_string(s.t), s.t);
}

} // namespace

SweepPoint run_sweep_point(const SweepConfig& cfg, std::size_t index) {
    if (index >= cfg.values.size()) throw InvalidInput("sweep point out of range");
    const auto start = std::chrono::steady_clock::now();
    const double value = cfg.values[index];
    ModelParams p = cfg.fixed, ref = cfg.fixed;
    SolverState s, r;
    if (cfg.variable == SweepVariable::Alpha) {
        p.model = Model::HNS_EPS_ALPHA;
        p.alpha = value;
        ref.model = Model::HNS_EPS;
        const InitialData d = build_initial_data(cfg.initial_data, cfg.grid, p);
        s = make_state(d.u0, d.u1, p);
        r = make_state(d.u0, d.u1, ref);
    } else {
        p.epsilon = value;
        ref.model = Model::NS;
        ref.damping = true;
        const InitialData d = build_initial_data(cfg.initial_data, cfg.grid, p);
        s = make_state(d.u0, d.u1, p);
        r = make_state(d.v0, std::nullopt, ref);
    }
    StepperConfig sc{cfg.dt, cfg.scheme, cfg.snapshot_every, cfg.T_final};
    const Stepper a(cfg.grid, p, sc), b(cfg.grid, ref, sc);
    const double init_a = std::max(state_max(s), 1e-300), init_b = std::max(state_max(r), 1e-300);

    SweepPoint pt;
    pt.value = value;
    pt.T_final = cfg.T_final;
    pt.run_id = cfg.run_id + "-" + std::to_string(index);
    auto record = [&]() {
        const auto m = energies::modulated_energy(s, r, p);
        pt.sup_modulated_energy = std::max(pt.sup_modulated_energy, m.value);
        pt.sup_sobolev_diff_sq = std::max(pt.sup_sobolev_diff_sq, m.sobolev_diff_sq);
    };
    record();
    double div_prev = sobolev_norm_sq(divergence(s.u), 0.0);
    const double h = a.dt();
    for (std::int64_t n = 0; n < a.steps(); ++n) {
        s = a.step(s);
        r = b.step(r);
        check_blowup(s, init_a);
        check_blowup(r, init_b);
        const double div_now = sobolev_norm_sq(divergence(s.u), 0.0);
        pt.div_l2t_l2 += 0.5 * h * (div_prev + div_now);
        div_prev = div_now;
        if ((n + 1) % cfg.snapshot_every == 0 || n + 1 == a.steps()) record();
    }
    pt.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cfg.record_runtime) pt.runtime_seconds = pt.wall_seconds;
    return pt;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::size_t M = cfg.values.size();
    std::vector<std::optional<SweepPoint>> slots(M);
    std::vector<std::string> errors(M);
    std::vector<double> blow(M, std::numeric_limits<double>::quiet_NaN());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= M || stop.load()) return;
            try {
                slots[i] = run_sweep_point(cfg, i);
            } catch (const BlowUp& e) {
                errors[i] = e.what();
                blow[i] = cfg.values[i];
                stop = true;
            } catch (const std::exception& e) {
                errors[i] = e.what();
                stop = true;
            }
        }
    };
    const int nw = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), M));
    if (nw <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepResult res;
    res.variable = cfg.variable;
    for (std::size_t i = 0; i < M; ++i) {
        if (slots[i]) res.points.push_back(*slots[i]);
        if (!errors[i].empty() && !res.aborted) {
            res.aborted = true;
            res.error = errors[i];
            if (std::isfinite(blow[i])) res.blowup_value = blow[i];
        }
    }
    if (!res.aborted && stop) {
        res.aborted = true;
        res.error = "sweep stopped";
    }
    if (res.aborted) return res;

    auto fit = [&](auto member) -> std::optional<RateFit> {
        std::vector<std::pair<double, double>> xy;
        for (const auto& p : res.points) xy.emplace_back(p.value, p.*member);
        try {
            return fit_rate(xy);
        } catch (const DomainError&) {
            return std::nullopt;
        }
    };
    if (cfg.variable == SweepVariable::Alpha) {
        res.modulated_fit = fit(&SweepPoint::sup_modulated_energy);
        res.div_fit = fit(&SweepPoint::div_l2t_l2);
    } else {
        res.sobolev_fit = fit(&SweepPoint::sup_sobolev_diff_sq);
    }
    return res;
}

SweepResult sweep_alpha(const SweepConfig& cfg) {
    if (cfg.variable != SweepVariable::Alpha) throw InvalidInput("sweep_alpha: variable must be alpha");
    return run_sweep(cfg);
}

SweepResult sweep_epsilon(const SweepConfig& cfg) {
    if (cfg.variable != SweepVariable::Epsilon) throw InvalidInput("sweep_epsilon: variable must be epsilon");
    return run_sweep(cfg);
}

std::string sweep_csv_header() {
    return "sweep_var,value,T_final,sup_modulated_energy,div_l2t_l2,sup_sobolev_diff_sq,runtime_seconds,run_id";
}

std::string sweep_csv(const SweepResult& r) {
    std::ostringstream os;
    os << sweep_csv_header() << '\n';
    for (const auto& p : r.points)
        os << to_string(r.variable) << ',' << fmt_double(p.value) << ',' << fmt_double(p.T_final) << ','
           << fmt_double(p.sup_modulated_energy) << ',' << fmt_double(p.div_l2t_l2) << ','
           << fmt_double(p.sup_sobolev_diff_sq) << ',' << fmt_double(p.runtime_seconds) << ',' << p.run_id << '\n';
    return os.str();
}

std::string rate_fit_csv(const SweepResult& r) {
    std::ostringstream os;
    os << "quantity,slope,intercept,r_squared,points\n";
    auto row = [&](const char* name, const std::optional<RateFit>& f) {
        if (!f) return;
        os << name << ',' << fmt_double(f->slope) << ',' << fmt_double(f->intercept) << ','
           << fmt_double(f->r_squared) << ',' << f->points.size() << '\n';
    };
    row("sup_modulated_energy", r.modulated_fit);
    row("div_l2t_l2", r.div_fit);
    row("sup_sobolev_diff_sq", r.sobolev_fit);
    return os.str();
}

// ============================================================================
// Finite propagation speed
// ============================================================================

std::string to_string(BumpShape b) {
    switch (b) {
    case BumpShape::Gradient: return "gradient";
    case BumpShape::Rotational: return "rotational";
    case BumpShape::Mixed: return "mixed";
    }
    return "?";
}

BumpShape bump_shape_from_string(const std::string& s) {
    if (s == "gradient") return BumpShape::Gradient;
    if (s == "rotational") return BumpShape::Rotational;
    if (s == "mixed") return BumpShape::Mixed;
    throw InvalidInput("unknown bump shape: " + s);
}

namespace {

// Largest torus distance from the centre with |f| above the threshold
double support(const GridSpec& g, const PhysicalField& f, double theta) {
    const int n = g.n;
    const double L = g.L, c = 0.5 * L;
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = std::abs(coordinate(g, i) - c);
        const double ex = std::min(dx, L - dx);
        for (int j = 0; j < n; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * n + j;
            bool hit = false;
            for (const auto& comp : f.components)
                if (std::abs(comp[idx]) > theta) hit = true;
            if (!hit) continue;
            const double dy = std::abs(coordinate(g, j) - c);
            const double ey = std::min(dy, L - dy);
            r = std::max(r, std::sqrt(ex * ex + ey * ey));
        }
    }
    return r;
}

double field_max(const PhysicalField& f) {
    double m = 0.0;
    for (const auto& comp : f.components)
        for (double v : comp) m = std::max(m, std::abs(v));
    return m;
}

double fit_speed(const std::vector<double>& t, const std::vector<double>& r) {
    double mt = 0.0, mr = 0.0;
    const double n = static_cast<double>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        mt += t[i];
        mr += r[i];
    }
    mt /= n;
    mr /= n;
    double stt = 0.0, str = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        stt += (t[i] - mt) * (t[i] - mt);
        str += (t[i] - mt) * (r[i] - mr);
    }
    return stt > 0.0 ? str / stt : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

FrontReport finite_speed_experiment(const ModelParams& params, const GridSpec& grid, const BumpSpec& bump) {
    params.validate();
    grid.validate();
    if (grid.dim != 2) throw InvalidInput("finite_speed_experiment: 2D grid required");
    if (!params.hyperbolic()) throw InvalidInput("finite_speed_experiment: hyperbolic model required");
    if (bump.samples < 2) throw InvalidInput("finite_speed_experiment: need >= 2 samples");
    if (!(bump.threshold > 0.0)) throw InvalidInput("finite_speed_experiment: threshold must be positive");
    const double L = grid.L, c = 0.5 * L;
    const double sigma = bump.sigma > 0.0 ? bump.sigma : L / 40.0;
    const int n = grid.n;

    PhysicalField f = PhysicalField::zeros(grid, 2);
    const bool grad = bump.shape != BumpShape::Rotational, rot = bump.shape != BumpShape::Gradient;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = coordinate(grid, i) - c, y = coordinate(grid, j) - c;
            const double gv = bump.amplitude * std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
            const double gx = -x / (sigma * sigma) * gv, gy = -y / (sigma * sigma) * gv;
            const std::size_t idx = static_cast<std::size_t>(i) * n + j;
            f.components[0][idx] = (grad ? gx : 0.0) + (rot ? -gy : 0.0);
            f.components[1][idx] = (grad ? gy : 0.0) + (rot ? gx : 0.0);
        }
    const SpectralField u0 = to_spectral(f);

    FrontReport rep;
    rep.c1 = params.c1();
    rep.c2 = params.c2();
    rep.h = grid.h();
    SolverState s = make_state(u0, std::nullopt, params);
    const PhysicalField p0 = to_physical(s.u);
    const double umax = field_max(p0);
    if (umax == 0.0) {
        rep.times = {0.0};
        rep.support_radius = {0.0};
        rep.bound_radius = {2.0 * rep.h};
        rep.q_radius = {0.0};
        rep.p_radius = {0.0};
        rep.q_speed = rep.p_speed = std::numeric_limits<double>::quiet_NaN();
        rep.slope_bound_satisfied = true;
        return rep;
    }
    const double theta = bump.threshold * umax;
    rep.R = support(grid, p0, theta);
    const bool has_q = grad && params.model == Model::HNS_EPS_ALPHA;
    const double c_fast = has_q ? rep.c1 : rep.c2;
    const double window = (0.5 * L - rep.R) / c_fast;
    if (!(window > 0.0)) throw InvalidWindow("finite_speed_experiment: bump does not fit in the box");
    const double t_end = bump.t_end > 0.0 ? bump.t_end : 0.9 * window;
    if (t_end >= window)
        throw InvalidWindow("finite_speed_experiment: t_end " + std::to_string(t_end) + " reaches the wrap-around time " +
                            std::to_string(window));

    const PhysicalField d0 = to_physical(divergence(s.u)), w0 = to_physical(curl(s.u));
    const double theta_q = bump.threshold * field_max(d0), theta_p = bump.threshold * field_max(w0);
    const bool meas_q = grad, meas_p = rot;

    const double sample_dt = t_end / bump.samples;
    const int sub = params.nonlinear ? std::max(1, static_cast<int>(std::ceil(sample_dt / 1e-4))) : 1;
    StepperConfig sc;
    sc.dt = sample_dt / sub;
    sc.t_end = t_end;
    const Stepper stepper(grid, params, sc);
    const std::size_t antipodes[3] = {static_cast<std::size_t>(n / 2) * n + 0, static_cast<std::size_t>(n / 2),
                                      0};
    auto measure = [&](const SolverState& st) {
        const PhysicalField pu = to_physical(st.u);
        for (std::size_t a : antipodes)
            for (const auto& comp : pu.components)
                if (std::abs(comp[a]) > theta)
                    throw InvalidWindow("finite_speed_experiment: wrap-around detected at t = " + std::to_string(st.t));
        rep.times.push_back(st.t);
        rep.support_radius.push_back(support(grid, pu, theta));
        rep.bound_radius.push_back(rep.R + rep.c1 * st.t + 2.0 * rep.h);
        rep.q_radius.push_back(meas_q ? support(grid, to_physical(divergence(st.u)), theta_q) : 0.0);
        rep.p_radius.push_back(meas_p ? support(grid, to_physical(curl(st.u)), theta_p) : 0.0);
    };
    measure(s);
    for (int k = 0; k < bump.samples; ++k) {
        for (int q = 0; q < sub; ++q) s = stepper.step(s);
        measure(s);
    }
    rep.slope_bound_satisfied = true;
    for (std::size_t i = 0; i < rep.times.size(); ++i)
        if (rep.support_radius[i] > rep.bound_radius[i]) rep.slope_bound_satisfied = false;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rep.q_speed = meas_q ? fit_speed(rep.times, rep.q_radius) : nan;
    rep.p_speed = meas_p ? fit_speed(rep.times, rep.p_radius) : nan;
    return rep;
}

std::string front_csv_header() { return "time,support_radius,bound_radius"; }

std::string front_csv(const FrontReport& r) {
    std::ostringstream os;
    os << front_csv_header() << '\n';
    for (std::size_t i = 0; i < r.times.size(); ++i)
        os << fmt_double(r.times[i]) << ',' << fmt_double(r.support_radius[i]) << ',' << fmt_double(r.bound_radius[i])
           << '\n';
    return os.str();
}

// ============================================================================
// Gate ratio table
// ============================================================================

GateTable gate_ratio_table(const InitialDataSpec& spec, const GridSpec& grid, const ModelParams& params,
                           const energies::Constants& constants, const std::vector<double>& eps_values,
                           double delta) {
    if (eps_values.empty()) throw InvalidInput("gate_ratio_table: empty epsilon grid");
    std::vector<double> eps = eps_values;
    std::sort(eps.begin(), eps.end(), std::greater<>());
    GateTable t;
    for (double e : eps) {
        ModelParams p = params;
        p.epsilon = e;
        const InitialData d = build_initial_data(spec, grid, p);
        t.reports.push_back(energies::smallness_gates(d.u0, d.u1, p, constants, spec.s, delta, &d.v0));
    }
    for (const auto& g : t.reports.front().gates) {
        if (g.kind != energies::GateKind::Rate) continue;
        const double first = g.ratio;
        double mx = 0.0;
        bool finite = true;
        for (const auto& r : t.reports) {
            const double v = r.find(g.name).ratio;
            finite = finite && std::isfinite(v);
            mx = std::max(mx, v);
        }
        t.bounded.emplace_back(g.name, finite && mx <= kGateBoundFactor * std::max(first, 1e-300));
    }
    return t;
}

std::string GateTable::table() const {
    std::ostringstream os;
    for (const auto& r : reports) os << r.table() << '\n';
    for (const auto& [name, ok] : bounded) os << name << " bounded over the epsilon grid: " << (ok ? "yes" : "NO") << '\n';
    return os.str();
}

std::string GateTable::csv() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& r : reports) {
        std::string c = r.csv();
        if (!first) c = c.substr(c.find('\n') + 1);
        os << c;
        first = false;
    }
    return os.str();
}

// ============================================================================
// Plot files
// ============================================================================

void write_plot(const std::string& path, const std::vector<double>& x, const std::vector<double>& y,
                const std::string& caption) {
    if (x.size() != y.size()) throw InvalidInput("write_plot: series lengths differ");
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    for (std::size_t i = 0; i < x.size(); ++i) os << fmt_double(x[i]) << ' ' << fmt_double(y[i]) << '\n';
    std::ofstream cap(path + ".caption");
    if (!cap) throw Error("cannot write " + path + ".caption");
    cap << caption << '\n';
}

} // namespace hns::experiments
