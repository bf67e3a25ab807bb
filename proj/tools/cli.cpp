/// @file cli.cpp
/// @brief Subcommand dispatch, run directories and manifests

#include "cli.hpp"

#include "hns/config.hpp"
#include "hns/energies.hpp"
#include "hns/error.hpp"
#include "hns/experiments.hpp"
#include "hns/field_io.hpp"
#include "hns/inequalities.hpp"
#include "hns/solvers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace hns::cli {

namespace {

const std::set<std::string> kGridKeys = {"grid.dim", "grid.n", "grid.L", "grid.dealias"};
const std::set<std::string> kModelKeys = {"model.name", "model.epsilon", "model.alpha", "model.nonlinear",
                                          "model.damping"};
const std::set<std::string> kTimeKeys = {"time.dt", "time.t_end", "time.scheme", "time.snapshot_every"};
const std::set<std::string> kDataKeys = {"data.kind",  "data.amplitude", "data.perturbation", "data.kmin", "data.kmax",
                                         "data.decay", "data.s",         "data.eta",          "data.path"};

std::set<std::string> keys_for(const std::string& cmd) {
    std::set<std::string> k = {"seed", "workers"};
    auto add = [&](const std::set<std::string>& s) { k.insert(s.begin(), s.end()); };
    add(kGridKeys);
    if (cmd == "simulate") {
        add(kModelKeys);
        add(kTimeKeys);
        add(kDataKeys);
        add({"energy.delta", "energy.N", "energy.constant_trials", "output.snapshots", "output.probes"});
    } else if (cmd == "sweep") {
        add(kModelKeys);
        add(kTimeKeys);
        add(kDataKeys);
        add({"sweep.variable", "sweep.values", "sweep.record_runtime"});
    } else if (cmd == "lp-check") {
        add({"lp.names", "lp.trials", "lp.delta", "lp.sigma", "lp.order", "lp.divergence_free", "lp.refine",
             "lp.constants", "lp.constant_trials"});
    } else if (cmd == "speed-test") {
        add(kModelKeys);
        add({"bump.shape", "bump.sigma", "bump.amplitude", "bump.threshold", "bump.samples", "bump.t_end"});
    } else if (cmd == "gates") {
        add(kModelKeys);
        add(kDataKeys);
        add({"gates.eps_values", "gates.delta", "gates.constant_trials"});
    }
    return k;
}

GridSpec grid_from(const Config& c) {
    GridSpec g;
    g.dim = c.get_int("grid.dim", 2);
    g.n = c.get_int("grid.n", 64);
    g.L = c.get_double("grid.L", 2.0 * kPi);
    g.dealias_fraction = c.get_double("grid.dealias", 2.0 / 3.0);
    g.validate();
    return g;
}

ModelParams model_from(const Config& c, bool nonlinear_default = true,
                       double alpha_default = std::numeric_limits<double>::infinity()) {
    ModelParams p;
    p.model = model_from_string(c.get_string("model.name", "HNS_EPS_ALPHA"));
    p.epsilon = c.get_double("model.epsilon", 1e-2);
    p.alpha = c.get_double("model.alpha", alpha_default);
    p.nonlinear = c.get_bool("model.nonlinear", nonlinear_default);
    p.damping = c.get_bool("model.damping", true);
    p.validate();
    return p;
}

StepperConfig stepper_from(const Config& c, double t_end_default, int snapshot_default) {
    StepperConfig s;
    s.dt = c.get_double("time.dt", 1e-3);
    s.t_end = c.get_double("time.t_end", t_end_default);
    s.scheme = scheme_from_string(c.get_string("time.scheme", "EXP_LINEAR_RK2"));
    s.snapshot_every = c.get_int("time.snapshot_every", snapshot_default);
    return s;
}

experiments::InitialDataSpec data_from(const Config& c, std::uint64_t seed, const std::string& kind_default) {
    experiments::InitialDataSpec d;
    d.kind = experiments::initial_data_from_string(c.get_string("data.kind", kind_default));
    d.seed = seed;
    d.amplitude = c.get_double("data.amplitude", 1.0);
    d.perturbation = c.get_double("data.perturbation", d.kind == experiments::InitialDataKind::TaylorGreen ? 0.3 : 0.0);
    d.kmin = c.get_double("data.kmin", 1.0);
    d.kmax = c.get_double("data.kmax", d.kind == experiments::InitialDataKind::Remark ? 0.0 : 8.0);
    d.decay = c.get_double("data.decay", 1.0);
    d.s = c.get_double("data.s", 0.5);
    d.eta = c.get_double("data.eta", 0.1);
    d.path = c.get_string("data.path", "");
    if (d.kind == experiments::InitialDataKind::File && d.path.empty())
        throw ValidationError("data.kind=file requires data.path");
    return d;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

class Run {
public:
    Run(std::string command, fs::path dir, std::string run_id, std::string config_path, const Config& cfg)
        : command_(std::move(command)), dir_(std::move(dir)), run_id_(std::move(run_id)),
          config_path_(std::move(config_path)), cfg_(cfg), started_(timestamp()) {}

    const std::string& id() const { return run_id_; }
    fs::path path(const std::string& name) {
        outputs_.push_back(name);
        return dir_ / name;
    }
    void write(const std::string& name, const std::string& content) {
        std::ofstream os(path(name), std::ios::binary);
        if (!os) throw Error("cannot write " + (dir_ / name).string());
        os << content;
    }
    void plot(const std::string& name, const std::vector<double>& x, const std::vector<double>& y,
              const std::string& caption) {
        experiments::write_plot(path(name).string(), x, y, caption);
        outputs_.push_back(name + ".caption");
    }
    void finish(const std::string& status, const std::string& message) {
        json m;
        m["run_id"] = run_id_;
        m["command"] = command_;
        m["version"] = HNS_VERSION;
        m["config_path"] = config_path_;
        json c = json::object();
        for (const auto& [k, v] : cfg_.entries()) c[k] = v;
        m["config"] = c;
        m["outputs"] = outputs_;
        m["started"] = started_;
        m["finished"] = timestamp();
        m["status"] = status;
        if (!message.empty()) m["message"] = message;
        if (!extra_.empty()) m["details"] = extra_;
        std::ofstream os(dir_ / "manifest.json");
        os << m.dump(2) << '\n';
    }
    json& details() { return extra_; }

private:
    std::string command_;
    fs::path dir_;
    std::string run_id_;
    std::string config_path_;
    Config cfg_;
    std::string started_;
    std::vector<std::string> outputs_;
    json extra_ = json::object();
};

std::string col(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

// ============================================================================
// Subcommands
// ============================================================================

void cmd_simulate(const Config& c, Run& run, std::ostream& out) {
    const std::uint64_t seed = c.get_u64("seed");
    const GridSpec g = grid_from(c);
    const ModelParams p = model_from(c);
    const StepperConfig sc = stepper_from(c, 1.0, 10);
    validate_stepper(sc, p, g);
    const auto data = experiments::build_initial_data(data_from(c, seed, "random"), g, p);
    const double delta = c.get_double("energy.delta", 0.5);
    int N;
    if (c.has("energy.N")) {
        N = c.get_int("energy.N", 0);
    } else {
        const auto constants = lp::estimate_constants(seed, c.get_int("energy.constant_trials", 100), delta);
        N = energies::compute_N(data.u0, delta, constants);
    }
    run.details()["N"] = N;
    const auto names = c.get_strings("output.probes", {"E0", "E_delta", "div_l2", "l2_norm", "max_abs"});
    std::vector<Probe> probes;
    for (const auto& n : names) probes.push_back(energies::make_probe(n, p, delta, N));
    const bool snaps = c.get_bool("output.snapshots", false);

    std::ofstream probe_csv(run.path("probes.csv"));
    std::ofstream energy_csv(run.path("energy.csv"));
    probe_csv << "run_id,time,probe,value\n";
    energy_csv << energies::energy_csv_header() << '\n';
    std::size_t written = 0;
    std::vector<ProbeSample> samples;
    auto on_snapshot = [&](const SolverState& s) {
        energy_csv << energies::energy_csv_row(energies::energy_report(s, p, delta, N, run.id())) << '\n';
        if (snaps) {
            std::ostringstream name;
            name << "snapshot_" << std::setw(6) << std::setfill('0') << s.step << ".hnsf";
            write_snapshot(run.path(name.str()).string(), s.u, s.t, true);
        }
    };
    // probes are emitted through a wrapper so partial output survives a blow-up
    std::vector<Probe> wrapped;
    for (const auto& pr : probes)
        wrapped.push_back({pr.name, [&, pr](const SolverState& s) {
                               const double v = pr.fn(s);
                               probe_csv << run.id() << ',' << fmt_double(s.t) << ',' << pr.name << ',' << fmt_double(v)
                                         << '\n';
                               ++written;
                               return v;
                           }});
    const auto res = run_simulation(data.u0, data.u1, p, sc, wrapped, on_snapshot);
    out << "simulate: " << res.snapshot_times.size() << " snapshots to t = " << res.final_state.t << ", " << written
        << " probe samples\n";
}

void cmd_sweep(const Config& c, Run& run, int workers, std::ostream& out) {
    using namespace experiments;
    SweepConfig sc;
    sc.seed = c.get_u64("seed");
    sc.variable = sweep_variable_from_string(c.get_string("sweep.variable", "alpha"));
    const bool alpha = sc.variable == SweepVariable::Alpha;
    sc.values = c.get_doubles("sweep.values", alpha ? default_alpha_grid() : default_epsilon_grid());
    sc.grid = grid_from(c);
    sc.fixed = model_from(c);
    if (!c.has("model.name")) sc.fixed.model = alpha ? Model::HNS_EPS_ALPHA : Model::HNS_EPS;
    sc.initial_data = data_from(c, sc.seed, alpha ? "taylor_green" : "remark");
    const StepperConfig st = stepper_from(c, 1.0, 1);
    sc.dt = c.get_double("time.dt", 2e-3);
    sc.T_final = st.t_end;
    sc.scheme = st.scheme;
    sc.snapshot_every = st.snapshot_every;
    sc.workers = workers;
    sc.record_runtime = c.get_bool("sweep.record_runtime", false);
    sc.run_id = run.id();
    sc.validate();

    const SweepResult r = run_sweep(sc);
    run.write("sweep.csv", sweep_csv(r));
    run.write("rate_fit.csv", rate_fit_csv(r));
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back({{"value", p.value}, {"wall_seconds", p.wall_seconds}});
    run.details()["points"] = pts;
    std::vector<double> x, y1, y2, y3;
    for (const auto& p : r.points) {
        x.push_back(p.value);
        y1.push_back(p.sup_modulated_energy);
        y2.push_back(p.div_l2t_l2);
        y3.push_back(p.sup_sobolev_diff_sq);
    }
    const std::string var = to_string(sc.variable);
    run.plot("sweep_modulated.dat", x, y1, "sup over t of the modulated energy against " + var);
    run.plot("sweep_div.dat", x, y2, "time-integrated squared L2 norm of div u against " + var);
    run.plot("sweep_sobolev.dat", x, y3, "sup over t of the squared critical Sobolev distance against " + var);
    out << sweep_csv(r);
    auto summary = [&](const char* name, const std::optional<RateFit>& f) {
        if (f)
            out << "fit," << name << ",slope=" << fmt_double(f->slope) << ",r_squared=" << fmt_double(f->r_squared)
                << '\n';
    };
    summary("sup_modulated_energy", r.modulated_fit);
    summary("div_l2t_l2", r.div_fit);
    summary("sup_sobolev_diff_sq", r.sobolev_fit);
    if (r.aborted) {
        if (r.blowup_value > 0.0) throw BlowUp("sweep aborted: " + r.error, 0.0);
        throw Error("sweep aborted: " + r.error);
    }
}

void cmd_lp_check(const Config& c, Run& run, std::ostream& out) {
    const std::uint64_t seed = c.get_u64("seed");
    const GridSpec g = grid_from(c);
    lp::InequalityParams ip;
    ip.delta = c.get_double("lp.delta", 0.5);
    ip.sigma = c.get_double("lp.sigma", std::numeric_limits<double>::quiet_NaN());
    ip.order = c.get_int("lp.order", 1);
    ip.divergence_free = c.get_bool("lp.divergence_free", false);
    ip.refine = c.get_int("lp.refine", 2);
    const int trials = c.get_int("lp.trials", 100);
    std::ostringstream csv;
    csv << lp::inequality_csv_header() << '\n';
    for (const auto& name : c.get_strings("lp.names", lp::inequality_names())) {
        const auto rep = lp::verify_inequality(name, g, trials, seed, ip);
        csv << lp::inequality_csv_row(rep) << '\n';
        out << col(name, 14) << "max_ratio " << fmt_double(rep.max_ratio) << "  mean_ratio " << fmt_double(rep.mean_ratio)
            << '\n';
    }
    run.write("inequalities.csv", csv.str());
    if (c.get_bool("lp.constants", false)) {
        const auto k = lp::estimate_constants(seed, c.get_int("lp.constant_trials", 500), ip.delta);
        std::ostringstream kc;
        kc << "name,value\n";
        for (const auto& [name, v] : k) {
            kc << name << ',' << fmt_double(v) << '\n';
            out << col(name, 14) << fmt_double(v) << '\n';
        }
        run.write("constants.csv", kc.str());
    }
}

void cmd_speed_test(const Config& c, Run& run, std::ostream& out) {
    using namespace experiments;
    c.get_u64("seed");
    GridSpec g = grid_from(c);
    ModelParams p = model_from(c, false, 1e-2);
    BumpSpec b;
    b.shape = bump_shape_from_string(c.get_string("bump.shape", "gradient"));
    b.sigma = c.get_double("bump.sigma", 0.0);
    b.amplitude = c.get_double("bump.amplitude", 1.0);
    b.threshold = c.get_double("bump.threshold", 1e-8);
    b.samples = c.get_int("bump.samples", 40);
    b.t_end = c.get_double("bump.t_end", 0.0);
    const FrontReport r = finite_speed_experiment(p, g, b);
    run.write("front.csv", front_csv(r));
    std::ostringstream s;
    s << "R,c1,c2,h,q_speed,p_speed,slope_bound_satisfied\n"
      << fmt_double(r.R) << ',' << fmt_double(r.c1) << ',' << fmt_double(r.c2) << ',' << fmt_double(r.h) << ','
      << fmt_double(r.q_speed) << ',' << fmt_double(r.p_speed) << ',' << (r.slope_bound_satisfied ? 1 : 0) << '\n';
    run.write("front_summary.csv", s.str());
    run.plot("front_support.dat", r.times, r.support_radius, "thresholded support radius against time");
    run.plot("front_bound.dat", r.times, r.bound_radius, "cone bound R + c1 t + 2h against time");
    out << s.str();
}

void cmd_gates(const Config& c, Run& run, std::ostream& out) {
    const std::uint64_t seed = c.get_u64("seed");
    const GridSpec g = grid_from(c);
    const ModelParams p = model_from(c);
    const double delta = c.get_double("gates.delta", 0.5);
    const auto spec = data_from(c, seed, "remark");
    const auto constants = lp::estimate_constants(seed, c.get_int("gates.constant_trials", 100), delta);
    const auto eps = c.get_doubles("gates.eps_values", {1e-1, 1e-2, 1e-3, 1e-4});
    const auto t = experiments::gate_ratio_table(spec, g, p, constants, eps, delta);
    run.write("gates.csv", t.csv());
    run.write("gates.txt", t.table());
    std::ostringstream b;
    b << "gate,bounded\n";
    for (const auto& [name, ok] : t.bounded) b << name << ',' << (ok ? 1 : 0) << '\n';
    run.write("gates_bounded.csv", b.str());
    out << t.table();
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperbolic Navier-Stokes experiments", "hns"};
    app.require_subcommand(1);
    std::string config_path, out_dir, variable;
    bool force = false;
    int workers = 0;
    std::vector<std::string> overrides;
    const std::vector<std::string> cmds = {"simulate", "sweep", "lp-check", "speed-test", "gates"};
    for (const auto& name : cmds) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--out", out_dir, "output root (default $HNS_OUT_DIR or ./hns_out)");
        sub->add_flag("--force", force, "replace an existing run directory");
        sub->add_option("--workers", workers, "worker threads for sweeps")->check(CLI::PositiveNumber);
        if (name == "sweep") sub->add_option("--variable", variable, "alpha or epsilon");
        sub->add_option("overrides", overrides, "key=value overrides");
    }
    app.add_subcommand("version", "print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "version") {
        out << HNS_VERSION << '\n';
        return kOk;
    }

    Config cfg;
    std::unique_ptr<Run> run;
    try {
        if (!config_path.empty()) cfg = Config::parse_file(config_path);
        for (const auto& o : overrides) cfg.apply_override(o);
        if (!variable.empty()) cfg.set("sweep.variable", variable);
        if (workers > 0) cfg.set("workers", std::to_string(workers));
        cfg.require_known(keys_for(cmd));
        cfg.require_present({"seed"});
        cfg.get_u64("seed");
        const int nworkers =
            cfg.get_int("workers", static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
        if (nworkers < 1) throw ValidationError("workers must be >= 1");

        Config hashed = cfg;
        Config without_workers;
        for (const auto& [k, v] : hashed.entries())
            if (k != "workers") without_workers.set(k, v);
        const std::string id = make_run_id(cmd, without_workers, HNS_VERSION);
        fs::path root = out_dir;
        if (root.empty()) {
            const char* env = std::getenv("HNS_OUT_DIR");
            root = env && *env ? fs::path(env) : fs::path("hns_out");
        }
        const fs::path dir = root / (cmd + "-" + id);
        if (fs::exists(dir)) {
            if (!force) {
                err << "error: output directory " << dir.string() << " already exists (use --force to replace it)\n";
                return kValidation;
            }
            fs::remove_all(dir);
        }
        fs::create_directories(dir);
        run = std::make_unique<Run>(cmd, dir, id, config_path, cfg);
        out << "run_id " << id << " -> " << dir.string() << '\n';

        if (cmd == "simulate") cmd_simulate(cfg, *run, out);
        else if (cmd == "sweep") cmd_sweep(cfg, *run, nworkers, out);
        else if (cmd == "lp-check") cmd_lp_check(cfg, *run, out);
        else if (cmd == "speed-test") cmd_speed_test(cfg, *run, out);
        else if (cmd == "gates") cmd_gates(cfg, *run, out);
        run->finish("ok", "");
        return kOk;
    } catch (const BlowUp& e) {
        err << "blow-up: " << e.what() << '\n';
        if (run) run->finish("blowup", e.what());
        return kBlowUp;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        if (run) run->finish("error", e.what());
        return kValidation;
    } catch (const InvalidInput& e) {
        err << "validation error: " << e.what() << '\n';
        if (run) run->finish("error", e.what());
        return kValidation;
    } catch (const InvalidWindow& e) {
        err << "validation error: " << e.what() << '\n';
        if (run) run->finish("error", e.what());
        return kValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        if (run) run->finish("error", e.what());
        return kInternal;
    }
}

} // namespace hns::cli
