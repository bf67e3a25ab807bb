/// @file test_cli.cpp
/// @brief Subcommands, exit codes, run directories and manifests

#include "doctest.h"

#include "cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result hns_run(std::vector<std::string> args) {
    args.insert(args.begin(), "hns");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = hns::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

fs::path only_run_dir(const fs::path& root) {
    std::vector<fs::path> dirs;
    for (const auto& e : fs::directory_iterator(root))
        if (e.is_directory()) dirs.push_back(e.path());
    REQUIRE(dirs.size() == 1);
    return dirs.front();
}

json manifest(const fs::path& dir) {
    std::ifstream is(dir / "manifest.json");
    return json::parse(is);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("version and usage errors") {
    const Result v = hns_run({"version"});
    CHECK(v.code == 0);
    CHECK(v.out == "0.1.0\n");
    CHECK(hns_run({}).code == hns::cli::kValidation);
    CHECK(hns_run({"frobnicate"}).code == hns::cli::kValidation);
    CHECK(hns_run({"simulate", "--workers", "0", "seed=1"}).code == hns::cli::kValidation);
    CHECK(hns_run({"--help"}).code == 0);
}

TEST_CASE("simulate writes probes, energy and manifest") {
    TempDir tmp("hns_test_cli_sim");
    const Result r = hns_run({"simulate", "--out", tmp.str(), "seed=3", "grid.n=16", "time.t_end=0.02", "time.dt=1e-3",
                              "time.snapshot_every=5", "energy.N=4", "output.snapshots=true"});
    REQUIRE(r.code == 0);
    const fs::path dir = only_run_dir(tmp.path);
    const json m = manifest(dir);
    CHECK(m["status"] == "ok");
    CHECK(m["command"] == "simulate");
    CHECK(m["version"] == "0.1.0");
    CHECK(dir.filename().string() == "simulate-" + m["run_id"].get<std::string>());
    CHECK(m["config"]["seed"] == "3");
    for (const auto& key : {"started", "finished", "outputs", "config_path"}) CHECK(m.contains(key));
    for (const auto& o : m["outputs"]) CHECK(fs::exists(dir / o.get<std::string>()));
    const std::string probes = slurp(dir / "probes.csv");
    CHECK(probes.rfind("run_id,time,probe,value\n", 0) == 0);
    CHECK(probes.find(",E0,") != std::string::npos);
    CHECK(fs::exists(dir / "energy.csv"));
    CHECK(fs::exists(dir / "snapshot_000000.hnsf"));
}

TEST_CASE("run directory collision and --force") {
    TempDir tmp("hns_test_cli_force");
    const std::vector<std::string> base = {"simulate", "--out", tmp.str(), "seed=1", "grid.n=16", "time.t_end=0.01",
                                           "energy.N=4"};
    REQUIRE(hns_run(base).code == 0);
    const Result again = hns_run(base);
    CHECK(again.code == hns::cli::kValidation);
    CHECK(again.err.find("--force") != std::string::npos);
    auto forced = base;
    forced.push_back("--force");
    CHECK(hns_run(forced).code == 0);
}

TEST_CASE("run id ignores workers and follows the config") {
    TempDir tmp("hns_test_cli_id");
    const std::vector<std::string> base = {"lp-check", "--out", tmp.str(), "seed=1", "grid.n=16", "lp.trials=3",
                                           "lp.names=bernstein"};
    auto w1 = base, w2 = base;
    w1.push_back("--workers=1");
    w2.push_back("--workers=2");
    REQUIRE(hns_run(w1).code == 0);
    CHECK(hns_run(w2).code == hns::cli::kValidation); // same run directory
    auto other = base;
    other.push_back("seed=2");
    CHECK(hns_run(other).code == 0);
    int n = 0;
    for (const auto& e : fs::directory_iterator(tmp.path)) n += e.is_directory();
    CHECK(n == 2);
}

TEST_CASE("config file plus overrides") {
    TempDir tmp("hns_test_cli_cfg");
    const fs::path cfg = tmp.path / "run.cfg";
    std::ofstream(cfg) << "# lp check\nseed = 5\ngrid.n = 16\nlp.trials = 3\nlp.names = bernstein, tame\n";
    const Result r = hns_run({"lp-check", "--config", cfg.string(), "--out", (tmp.path / "out").string(), "lp.trials=4"});
    REQUIRE(r.code == 0);
    const fs::path dir = only_run_dir(tmp.path / "out");
    const json m = manifest(dir);
    CHECK(m["config_path"] == cfg.string());
    CHECK(m["config"]["lp.trials"] == "4");
    const std::string csv = slurp(dir / "inequalities.csv");
    CHECK(csv.find("bernstein") != std::string::npos);
    CHECK(csv.find("tame") != std::string::npos);
}

TEST_CASE("validation failures exit with code 2") {
    TempDir tmp("hns_test_cli_val");
    const std::string out = tmp.str();
    CHECK(hns_run({"simulate", "--out", out, "grid.n=16"}).code == hns::cli::kValidation);
    CHECK(hns_run({"simulate", "--out", out, "seed=1", "grid.bogus=1"}).code == hns::cli::kValidation);
    CHECK(hns_run({"simulate", "--out", out, "seed=x"}).code == hns::cli::kValidation);
    CHECK(hns_run({"simulate", "--out", out, "seed=1", "model.epsilon=-1"}).code == hns::cli::kValidation);
    CHECK(hns_run({"simulate", "--out", out, "seed=1", "time.scheme=RK4", "time.dt=0.5"}).code ==
          hns::cli::kValidation);
    CHECK(hns_run({"sweep", "--out", out, "seed=1", "sweep.values=1e-1,1e-2"}).code == hns::cli::kValidation);
    CHECK(hns_run({"speed-test", "--out", out, "seed=1", "grid.n=32", "bump.t_end=10"}).code ==
          hns::cli::kValidation);
    CHECK(hns_run({"simulate", "--out", out, "seed=1", "--config", out + "/missing.cfg"}).code ==
          hns::cli::kValidation);
    std::ofstream(tmp.path / "dup.cfg") << "seed=1\nseed=2\n";
    CHECK(hns_run({"simulate", "--out", out, "--config", (tmp.path / "dup.cfg").string()}).code ==
          hns::cli::kValidation);
}

TEST_CASE("blow-up exits with code 3 and is recorded") {
    TempDir tmp("hns_test_cli_blowup");
    const Result r = hns_run({"simulate", "--out", tmp.str(), "seed=1", "grid.n=16", "model.name=HNS_EPS_ALPHA",
                              "model.epsilon=1e-2", "model.alpha=1e-2", "model.damping=false", "data.amplitude=1e3",
                              "time.dt=0.05", "time.t_end=20", "energy.N=4"});
    CHECK(r.code == hns::cli::kBlowUp);
    const json m = manifest(only_run_dir(tmp.path));
    CHECK(m["status"] == "blowup");
}

TEST_CASE("sweep, speed-test and gates outputs") {
    TempDir tmp("hns_test_cli_outputs");
    const std::string out = tmp.str();
    const Result s = hns_run({"sweep", "--out", out, "--variable", "alpha", "seed=1", "grid.n=16", "time.t_end=0.05",
                              "sweep.values=1e-1,1e-2,1e-3"});
    REQUIRE(s.code == 0);
    CHECK(s.out.find("fit,sup_modulated_energy,slope=") != std::string::npos);
    const Result f = hns_run({"speed-test", "--out", out, "seed=1", "grid.n=64", "bump.samples=4"});
    REQUIRE(f.code == 0);
    const Result g = hns_run({"gates", "--out", out, "seed=1", "grid.n=16", "gates.eps_values=1e-1,1e-2"});
    REQUIRE(g.code == 0);
    for (const auto& e : fs::directory_iterator(tmp.path)) {
        const std::string name = e.path().filename().string();
        std::vector<std::string> expect;
        if (name.rfind("sweep-", 0) == 0)
            expect = {"sweep.csv", "rate_fit.csv", "sweep_modulated.dat", "sweep_modulated.dat.caption"};
        else if (name.rfind("speed-test-", 0) == 0)
            expect = {"front.csv", "front_summary.csv", "front_support.dat", "front_bound.dat.caption"};
        else
            expect = {"gates.csv", "gates.txt", "gates_bounded.csv"};
        for (const auto& x : expect) CHECK_MESSAGE(fs::exists(e.path() / x), name << "/" << x);
        CHECK(manifest(e.path())["status"] == "ok");
    }
}

TEST_CASE("HNS_OUT_DIR selects the output root") {
    TempDir tmp("hns_test_cli_env");
    setenv("HNS_OUT_DIR", tmp.str().c_str(), 1);
    const Result r = hns_run({"lp-check", "seed=1", "grid.n=16", "lp.trials=2", "lp.names=tame"});
    unsetenv("HNS_OUT_DIR");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(only_run_dir(tmp.path) / "inequalities.csv"));
}

TEST_CASE("simulate with t_end = 0 records only the initial probes") {
    TempDir tmp("hns_test_cli_t0");
    REQUIRE(hns_run({"simulate", "--out", tmp.str(), "seed=1", "grid.n=16", "time.t_end=0", "energy.N=2",
                     "output.probes=E0,l2_norm"})
                .code == 0);
    std::istringstream is(slurp(only_run_dir(tmp.path) / "probes.csv"));
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(is, line)) rows.push_back(line);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].find(",0,E0,") != std::string::npos);
    CHECK(rows[2].find(",0,l2_norm,") != std::string::npos);
}

TEST_CASE("default alpha sweep prints seven rows and the fit summary") {
    TempDir tmp("hns_test_cli_default_sweep");
    const Result r = hns_run({"sweep", "--out", tmp.str(), "--variable", "alpha", "seed=1", "grid.n=16",
                              "time.t_end=0.02"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    int rows = 0, fits = 0;
    while (std::getline(is, line)) {
        rows += line.rfind("alpha,", 0) == 0;
        fits += line.rfind("fit,", 0) == 0;
    }
    CHECK(rows == 7);
    CHECK(fits >= 1);
    const std::string csv = slurp(only_run_dir(tmp.path) / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
    CHECK(csv.rfind("sweep_var,value,T_final,sup_modulated_energy,div_l2t_l2,sup_sobolev_diff_sq,runtime_seconds,run_id\n",
                    0) == 0);
}
