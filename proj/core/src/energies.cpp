/// @file energies.cpp
/// @brief Energy functionals and gate evaluation

#include "hns/energies.hpp"
#include "hns/error.hpp"
#include "hns/field_io.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace hns::energies {

static const SpectralField& need_ut(const SolverState& s) {
    if (!s.ut) throw MissingState("hyperbolic energy requires u_t");
    return *s.ut;
}

EnergyComponents energy_components(const SolverState& s, const ModelParams& p, double sigma) {
    EnergyComponents e;
    if (!p.hyperbolic()) {
        e.kinetic = 0.5 * sobolev_norm_sq(s.u, sigma);
        return e;
    }
    const SpectralField& ut = need_ut(s);
    const double eps = p.epsilon;
    SpectralField w = s.u;
    w.axpy(eps, ut);
    e.kinetic = 0.5 * sobolev_norm_sq(w, sigma);
    e.time_derivative = 0.5 * eps * eps * sobolev_norm_sq(ut, sigma);
    e.gradient = eps * sobolev_norm_sq(s.u, sigma + 1.0);
    if (p.has_penalty()) e.penalty = eps / p.alpha * sobolev_norm_sq(divergence(s.u), sigma);
    return e;
}

double energy(const SolverState& s, const ModelParams& p, double sigma) {
    return energy_components(s, p, sigma).total();
}

EnergyReport energy_report(const SolverState& s, const ModelParams& p, double delta, int N, const std::string& run_id) {
    if (N < 0) throw InvalidInput("energy_report: N must be >= 0");
    EnergyReport r;
    r.run_id = run_id;
    r.time = s.t;
    r.dim = s.u.grid.dim;
    r.N = N;
    r.E0 = energy(s, p, 0.0);
    r.delta_components = energy_components(s, p, delta);
    r.E_delta = r.delta_components.total();
    if (r.dim == 3) {
        r.E_half = energy(s, p, 0.5);
        r.E_half_delta = energy(s, p, 0.5 + delta);
    }
    r.div_l2 = sobolev_norm(divergence(s.u), 0.0);
    r.script_E = script_E(r, N);
    return r;
}

double script_E(const EnergyReport& r, int N) {
    if (N < 0) throw InvalidInput("script_E: N must be >= 0");
    if (r.dim == 3) return r.E_half_delta * std::pow(1.0 + r.E_half, N);
    return r.E_delta * std::pow(1.0 + r.E0, N);
}

int compute_N(double u0_norm, double delta, double C_delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("compute_N: delta must lie in (0, 1]");
    if (!(u0_norm >= 0.0) || !(C_delta >= 0.0)) throw DomainError("compute_N: negative input");
    const double prod = C_delta * std::pow(u0_norm, 2.0 * (1.0 - delta) / delta) * (1.0 + 2.0 * u0_norm * u0_norm);
    return static_cast<int>(std::ceil(4.0 * prod)) + 1;
}

int compute_N(const SpectralField& u0, double delta, const Constants& constants) {
    auto it = constants.find("C_delta");
    if (it == constants.end()) throw InvalidInput("compute_N: constant C_delta missing");
    const double nrm = u0.grid.dim == 3 ? sobolev_norm(u0, 0.5) : sobolev_norm(u0, 0.0);
    return compute_N(nrm, delta, it->second);
}

std::string energy_csv_header() {
    return "run_id,time,E0,E_delta,E_half,E_half_delta,div_l2,script_E,N,kinetic,time_derivative,gradient,penalty";
}

std::string energy_csv_row(const EnergyReport& r) {
    std::ostringstream os;
    os << r.run_id << ',' << fmt_double(r.time) << ',' << fmt_double(r.E0) << ',' << fmt_double(r.E_delta) << ','
       << fmt_double(r.E_half) << ',' << fmt_double(r.E_half_delta) << ',' << fmt_double(r.div_l2) << ','
       << fmt_double(r.script_E) << ',' << r.N << ',' << fmt_double(r.delta_components.kinetic) << ','
       << fmt_double(r.delta_components.time_derivative) << ',' << fmt_double(r.delta_components.gradient) << ','
       << fmt_double(r.delta_components.penalty);
    return os.str();
}

// ============================================================================
// Modulated energy
// ============================================================================

ModulatedEnergyReport modulated_energy(const SolverState& s, const SolverState& ref, const ModelParams& p) {
    if (!p.hyperbolic()) throw InvalidInput("modulated_energy: hyperbolic model required");
    if (!same_grid(s.u, ref.u)) throw InvalidInput("modulated_energy: grids differ");
    if (std::abs(s.t - ref.t) > 1e-9 * std::max(1.0, std::abs(s.t)))
        throw Misalignment("modulated_energy: states at different times");
    const SpectralField& ut = need_ut(s);
    SpectralField ref_ut;
    if (ref.ut) {
        ref_ut = *ref.ut;
    } else {
        ModelParams ns = p;
        ns.model = Model::NS;
        ns.damping = true;
        ref_ut = laplacian(ref.u) + model_forcing(ref.u, ns);
    }
    const double eps = p.epsilon;
    const double sigma = s.u.grid.dim == 3 ? 0.5 : 0.0;
    const SpectralField d = s.u - ref.u;
    const SpectralField dt = ut - ref_ut;
    ModulatedEnergyReport r;
    r.time = s.t;
    SpectralField w = d;
    w.axpy(eps, dt);
    r.kinetic = 0.5 * sobolev_norm_sq(w, sigma);
    r.time_derivative = 0.5 * eps * eps * sobolev_norm_sq(dt, sigma);
    r.gradient = eps * sobolev_norm_sq(d, sigma + 1.0);
    if (p.has_penalty()) r.penalty = eps / p.alpha * sobolev_norm_sq(divergence(s.u), sigma);
    r.value = r.kinetic + r.time_derivative + r.gradient + r.penalty;
    r.sobolev_diff_sq = sobolev_norm_sq(d, 0.5 * s.u.grid.dim - 1.0);
    return r;
}

std::string modulated_csv_header() {
    return "run_id,time,modulated_energy,kinetic,time_derivative,gradient,penalty,sobolev_diff_sq";
}

std::string modulated_csv_row(const ModulatedEnergyReport& r) {
    std::ostringstream os;
    os << r.run_id << ',' << fmt_double(r.time) << ',' << fmt_double(r.value) << ',' << fmt_double(r.kinetic) << ','
       << fmt_double(r.time_derivative) << ',' << fmt_double(r.gradient) << ',' << fmt_double(r.penalty) << ','
       << fmt_double(r.sobolev_diff_sq);
    return os.str();
}

double energy_identity_residual(const SolverState& s, const ModelParams& p, bool literal) {
    if (!p.hyperbolic()) throw InvalidInput("energy_identity_residual: hyperbolic model required");
    const SpectralField& u = s.u;
    const SpectralField& ut = need_ut(s);
    const double eps = p.epsilon;
    const double g = p.damping ? 1.0 : 0.0;

    // eps u_tt from the equation
    SpectralField eutt = laplacian(u) + model_forcing(u, p);
    eutt.axpy(-g, ut);
    if (p.has_penalty()) eutt.axpy(1.0 / p.alpha, gradient(divergence(u)));
    const SpectralField utt = (1.0 / eps) * eutt;

    SpectralField a = u;
    a.axpy(eps, ut);
    SpectralField b = ut;
    b += eutt;
    double dE = inner_product(a, b) + eps * eps * inner_product(ut, utt) + 2.0 * eps * inner_product(u, ut, 1.0);
    if (p.has_penalty()) dE += 2.0 * eps / p.alpha * inner_product(divergence(u), divergence(ut));

    SpectralField conv = p.nonlinear ? nonlinear_term(u) : SpectralField::zeros(u.grid, u.ncomp());
    conv *= -1.0;
    const double first = eps * sobolev_norm_sq(ut + conv, 0.0);
    const double visc = sobolev_norm_sq(u, 1.0);
    double x;
    if (!p.nonlinear) {
        x = 0.0;
    } else if (literal) {
        x = 0.0;
        const int d = u.grid.dim;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                SpectralField ui = SpectralField::zeros(u.grid, 1), uj = ui;
                ui.components[0] = u.components[i];
                uj.components[0] = u.components[j];
                x += sobolev_norm_sq(dealias(padded_product(ui, uj)), 1.0);
            }
    } else {
        x = sobolev_norm_sq(conv, 0.0);
    }
    return dE + first + visc - eps * x;
}

// ============================================================================
// Gates
// ============================================================================

bool GateReport::all_pass() const {
    for (const auto& g : gates)
        if (!g.pass) return false;
    return true;
}

const Gate& GateReport::find(const std::string& name) const {
    for (const auto& g : gates)
        if (g.name == name) return g;
    throw InvalidInput("gate not found: " + name);
}

static const char* kind_name(GateKind k) {
    switch (k) {
    case GateKind::Threshold: return "threshold";
    case GateKind::Rate: return "rate";
    case GateKind::Small: return "small";
    }
    return "?";
}

std::string GateReport::table() const {
    std::ostringstream os;
    os << "epsilon = " << epsilon << "\n";
    os << std::left << std::setw(20) << "gate" << std::setw(11) << "kind" << std::setw(15) << "value" << std::setw(15)
       << "threshold" << std::setw(15) << "ratio"
       << "pass\n";
    for (const auto& g : gates) {
        os << std::left << std::setw(20) << g.name << std::setw(11) << kind_name(g.kind) << std::setw(15)
           << std::setprecision(6) << g.value << std::setw(15) << g.threshold << std::setw(15) << g.ratio
           << (g.pass ? "yes" : "NO") << "\n";
    }
    return os.str();
}

std::string GateReport::csv() const {
    std::ostringstream os;
    os << "epsilon,gate,kind,value,threshold,ratio,pass\n";
    for (const auto& g : gates)
        os << fmt_double(epsilon) << ',' << g.name << ',' << kind_name(g.kind) << ',' << fmt_double(g.value) << ','
           << fmt_double(g.threshold) << ',' << fmt_double(g.ratio) << ',' << (g.pass ? 1 : 0) << '\n';
    return os.str();
}

static double constant(const Constants& c, const std::string& key) {
    auto it = c.find(key);
    if (it == c.end()) throw InvalidInput("gates: constant " + key + " missing");
    return it->second;
}

static Gate threshold_gate(const std::string& name, double value, double threshold, bool strict) {
    Gate g;
    g.name = name;
    g.kind = GateKind::Threshold;
    g.value = value;
    g.threshold = threshold;
    g.ratio = std::isfinite(threshold) ? value / threshold : 0.0;
    g.pass = strict ? value < threshold : value <= threshold;
    return g;
}

GateReport smallness_gates(const SpectralField& u0, const SpectralField& u1, const ModelParams& p,
                           const Constants& constants, double s, double delta, const SpectralField* v0) {
    p.validate();
    if (!p.hyperbolic()) throw InvalidInput("smallness_gates: hyperbolic model required");
    if (!same_grid(u0, u1)) throw InvalidInput("smallness_gates: data shapes differ");
    const int n = u0.grid.dim;
    const double nh = 0.5 * n;
    const double eps = p.epsilon;
    const double inf = std::numeric_limits<double>::infinity();
    GateReport rep;
    rep.epsilon = eps;

    const double linf = sup_norm(u0);
    if (n == 2) {
        if (p.has_penalty()) {
            const double K = constant(constants, "K");
            const double l2 = sobolev_norm(u0, 0.0);
            const double thr = l2 > 0.0 ? 2.0 / (K * K * l2 * l2) : inf;
            rep.gates.push_back(threshold_gate("alpha_gate", p.alpha, thr, false));
        }
        const double C3 = constant(constants, "C3");
        rep.gates.push_back(threshold_gate("linf_gate", linf, 1.0 / (2.0 * C3 * std::sqrt(eps)), false));
    } else {
        const double K2 = constant(constants, "K2");
        const double h12 = sobolev_norm(u0, 0.5);
        rep.gates.push_back(threshold_gate("h_half_gate", h12, 1.0 / (36.0 * K2 * K2 * K2), true));
        rep.gates.push_back(threshold_gate("h_half_global", h12, 1.0 / 16.0, true));
        const double K1 = constant(constants, "C2_3d");
        rep.gates.push_back(threshold_gate("linf_gate", linf, 1.0 / (2.0 * K1 * std::sqrt(eps)), false));
    }

    const double target = std::pow(eps, 0.5 * s);
    auto rate = [&](const std::string& name, double value) {
        Gate g;
        g.name = name;
        g.kind = GateKind::Rate;
        g.value = value;
        g.threshold = target;
        g.ratio = value / target;
        g.pass = std::isfinite(g.ratio);
        rep.gates.push_back(g);
    };
    const SpectralField diff = v0 ? u0 - *v0 : SpectralField::zeros(u0.grid, u0.ncomp());
    rate("size_distance", sobolev_norm(diff, nh - 1.0) + eps * sobolev_norm(u1, nh - 1.0) +
                              std::sqrt(eps) * sobolev_norm(u0, nh));
    rate("size_delta", std::pow(eps, 0.5 * (1.0 + delta)) * sobolev_norm(u0, nh + delta) +
                           std::pow(eps, 0.5 * delta) * sobolev_norm(u0, nh - 1.0 + delta));

    Gate small;
    small.name = "u1_small";
    small.kind = GateKind::Small;
    small.value = std::pow(eps, 1.0 + 0.5 * delta) * sobolev_norm(u1, nh - 1.0 + delta);
    small.threshold = 1.0;
    small.ratio = small.value;
    small.pass = small.value <= small.threshold;
    rep.gates.push_back(small);
    return rep;
}

// ============================================================================
// Probes
// ============================================================================

const std::vector<std::string>& probe_names() {
    static const std::vector<std::string> names = {"E0",     "E_delta", "E_half",  "E_half_delta",
                                                   "script_E", "div_l2", "l2_norm", "max_abs",
                                                   "energy_identity_residual"};
    return names;
}

Probe make_probe(const std::string& name, const ModelParams& p, double delta, int N) {
    if (name == "E0") return {name, [p](const SolverState& s) { return energy(s, p, 0.0); }};
    if (name == "E_delta") return {name, [p, delta](const SolverState& s) { return energy(s, p, delta); }};
    if (name == "E_half") return {name, [p](const SolverState& s) { return energy(s, p, 0.5); }};
    if (name == "E_half_delta")
        return {name, [p, delta](const SolverState& s) { return energy(s, p, 0.5 + delta); }};
    if (name == "script_E")
        return {name, [p, delta, N](const SolverState& s) { return energy_report(s, p, delta, N).script_E; }};
    if (name == "div_l2") return {name, [](const SolverState& s) { return sobolev_norm(divergence(s.u), 0.0); }};
    if (name == "l2_norm") return {name, [](const SolverState& s) { return sobolev_norm(s.u, 0.0); }};
    if (name == "max_abs") return {name, [](const SolverState& s) { return sup_norm(s.u); }};
    if (name == "energy_identity_residual")
        return {name, [p](const SolverState& s) { return energy_identity_residual(s, p, true); }};
    throw InvalidInput("unknown probe: " + name);
}

} // namespace hns::energies
