/// @file inequalities.cpp
/// @brief Ratio maximization over seeded random field families

#include "hns/inequalities.hpp"
#include "hns/error.hpp"
#include "hns/field_io.hpp"
#include "hns/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hns::lp {

const std::vector<std::string>& inequality_names() {
    static const std::vector<std::string> names = {"div_lp", "ladyzhenskaya", "besov_interp",
                                                   "tame", "bernstein", "l3_embedding"};
    return names;
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
    // splitmix64 over the three words
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return std::mt19937_64(mix(mix(mix(seed) ^ stream) ^ trial));
}

static std::uint64_t name_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// ============================================================================
// Single-sample evaluation
// ============================================================================

static double l4_squared(const SpectralField& f) {
    SpectralField sq = product_full(f, f);
    if (sq.ncomp() > 1) {
        SpectralField s = SpectralField::zeros(sq.grid, 1);
        for (int c = 0; c < sq.ncomp(); ++c)
            for (std::size_t i = 0; i < s.components[0].size(); ++i) s.components[0][i] += sq.components[c][i];
        sq = std::move(s);
    }
    return sobolev_norm(sq, 0.0);
}

static double derivative_norm(const SpectralField& u, const std::vector<int>& alpha) {
    auto w = wavenumbers(u.grid);
    SpectralField D = u;
    const std::size_t N = u.grid.size();
    for (std::size_t i = 0; i < N; ++i) {
        Complex m(1.0, 0.0);
        for (int a = 0; a < u.grid.dim; ++a)
            for (int r = 0; r < alpha[a]; ++r) m *= Complex(0.0, w->k[a][i]);
        for (auto& c : D.components) c[i] *= m;
    }
    return sobolev_norm(D, 0.0);
}

static void multi_indices(int dim, int order, std::vector<int>& cur, int a, std::vector<std::vector<int>>& out) {
    if (a == dim - 1) {
        cur[a] = order;
        out.push_back(cur);
        return;
    }
    for (int k = 0; k <= order; ++k) {
        cur[a] = k;
        multi_indices(dim, order - k, cur, a + 1, out);
    }
}

Ratio evaluate_inequality(const std::string& name, const SpectralField& u, const SpectralField& v,
                          const InequalityParams& prm, int blk) {
    const int n = u.grid.dim;
    const double nh = 0.5 * n;
    const double delta = prm.delta;
    Ratio r;
    if (name == "div_lp") {
        if (u.ncomp() != n) throw InvalidInput("div_lp: vector field required");
        SpectralField prod = product_full(divergence(u), u);
        r.lhs = sobolev_norm(prod, nh + delta - 1.0);
        r.rhs = sobolev_norm(u, nh + delta) * sup_norm(u);
    } else if (name == "ladyzhenskaya") {
        const double l4 = std::sqrt(l4_squared(u));
        const double a = sobolev_norm(u, 0.0), b = sobolev_norm(u, 1.0);
        r.lhs = l4;
        r.rhs = n == 2 ? std::sqrt(a * b) : std::pow(a, 0.25) * std::pow(b, 0.75);
    } else if (name == "besov_interp") {
        r.lhs = sup_norm(u);
        r.rhs = std::pow(sobolev_norm(u, nh - 1.0 + delta), delta) * std::pow(sobolev_norm(u, nh + delta), 1.0 - delta);
    } else if (name == "tame") {
        const double s = std::isnan(prm.sigma) ? nh + delta : prm.sigma;
        r.lhs = sobolev_norm(product_full(u, v), s);
        r.rhs = sup_norm(u) * sobolev_norm(v, s) + sobolev_norm(u, s) * sup_norm(v);
    } else if (name == "bernstein") {
        std::vector<std::vector<int>> alphas;
        std::vector<int> cur(n, 0);
        multi_indices(n, prm.order, cur, 0, alphas);
        double best = 0.0;
        for (const auto& al : alphas) best = std::max(best, derivative_norm(u, al));
        r.lhs = best;
        r.rhs = std::pow(std::ldexp(u.grid.k0(), blk), prm.order) * sobolev_norm(u, 0.0);
    } else if (name == "l3_embedding") {
        const double p = 2.0 * n / (n - 1.0);
        r.lhs = (n == 2) ? std::sqrt(l4_squared(u)) : lebesgue_norm(u, p, prm.refine);
        r.rhs = sobolev_norm(u, 0.5);
    } else {
        throw InvalidInput("unknown inequality: " + name);
    }
    return r;
}

// ============================================================================
// Sample families
// ============================================================================

namespace {

int cutoff_shell(const GridSpec& g) { return static_cast<int>(std::floor(g.dealias_fraction * (g.n / 2))); }

SpectralField gaussian_bump(const GridSpec& g, int ncomp, double width, const double* center,
                            std::mt19937_64& rng) {
    auto w = wavenumbers(g);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> dir(ncomp);
    double nrm = 0.0;
    for (auto& d : dir) {
        d = gauss(rng);
        nrm += d * d;
    }
    nrm = std::sqrt(nrm);
    for (auto& d : dir) d /= nrm;
    const double cut = cutoff_shell(g);
    SpectralField F = SpectralField::zeros(g, ncomp);
    const std::size_t N = g.size();
    for (std::size_t i = 1; i < N; ++i) {
        if (std::sqrt(static_cast<double>(w->m2[i])) > cut) continue;
        double phase = 0.0;
        for (int a = 0; a < g.dim; ++a) phase -= w->k[a][i] * center[a];
        const Complex z = std::exp(-0.5 * width * width * w->k2[i]) * std::polar(1.0, phase);
        for (int c = 0; c < ncomp; ++c) F.components[c][i] = dir[c] * z;
    }
    enforce_hermitian(F);
    return F;
}

SpectralField few_modes(const GridSpec& g, int ncomp, std::mt19937_64& rng) {
    const int jmax = std::max(1, std::min(4, cutoff_shell(g)));
    std::uniform_int_distribution<int> pick(-jmax, jmax);
    std::uniform_int_distribution<int> count(1, 3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField F = SpectralField::zeros(g, ncomp);
    const int m = count(rng);
    const int n = g.n;
    for (int t = 0; t < m; ++t) {
        std::size_t idx = 0;
        bool zero = true;
        for (int a = 0; a < g.dim; ++a) {
            int j = pick(rng);
            if (j != 0) zero = false;
            idx = idx * n + static_cast<std::size_t>((j + n) % n);
        }
        for (int c = 0; c < ncomp; ++c) {
            Complex z(gauss(rng), gauss(rng));
            if (!zero) F.components[c][idx] += z;
        }
    }
    enforce_hermitian(F);
    return F;
}

SpectralField sample(const GridSpec& g, int ncomp, int family, std::mt19937_64& rng) {
    const int cut = cutoff_shell(g);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    SpectralField F;
    if (family == 0) {
        RandomFieldSpec spec;
        spec.kmin = 1.0;
        spec.kmax = 1.0 + uni(rng) * (cut - 1.0);
        spec.decay = 3.0 * uni(rng);
        F = random_field(g, ncomp, spec, rng);
    } else if (family == 1) {
        const double lo = std::log(2.0 * g.h()), hi = std::log(g.L / 6.0);
        const double width = std::exp(lo + uni(rng) * (hi - lo));
        double center[3];
        for (int a = 0; a < g.dim; ++a) center[a] = uni(rng) * g.L;
        F = gaussian_bump(g, ncomp, width, center, rng);
    } else {
        F = few_modes(g, ncomp, rng);
    }
    remove_mean(F);
    return F;
}

} // namespace

InequalityReport verify_inequality(const std::string& name, const GridSpec& grid, int trials,
                                   std::uint64_t seed, const InequalityParams& params) {
    grid.validate();
    if (trials < 1) throw InvalidInput("verify_inequality: trials must be positive");
    const auto& names = inequality_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw InvalidInput("unknown inequality: " + name);

    const std::uint64_t stream = name_hash(name);
    const int vec = grid.dim;
    std::vector<Ratio> samples;
    samples.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        auto rng = make_rng(seed, stream, static_cast<std::uint64_t>(t));
        const int family = t % 3;
        if (name == "div_lp") {
            SpectralField u = sample(grid, vec, family, rng);
            if (params.divergence_free) u = project_P(u);
            samples.push_back(evaluate_inequality(name, u, u, params));
        } else if (name == "tame") {
            SpectralField u = sample(grid, 1, family, rng);
            SpectralField v = sample(grid, 1, (family + 1) % 3, rng);
            samples.push_back(evaluate_inequality(name, u, v, params));
        } else if (name == "bernstein") {
            const int qmax = block_index(static_cast<std::int64_t>(cutoff_shell(grid)) * cutoff_shell(grid));
            std::uniform_int_distribution<int> pick(0, std::max(0, qmax));
            const int q = pick(rng);
            SpectralField u = block(sample(grid, 1, 0, rng), q);
            samples.push_back(evaluate_inequality(name, u, u, params, q));
        } else {
            SpectralField u = sample(grid, 1, family, rng);
            samples.push_back(evaluate_inequality(name, u, u, params));
        }
    }
    return summarize_ratios(name, grid, seed, samples);
}

InequalityReport summarize_ratios(const std::string& name, const GridSpec& grid, std::uint64_t seed,
                                  const std::vector<Ratio>& samples) {
    InequalityReport rep;
    rep.name = name;
    rep.trials = static_cast<int>(samples.size());
    rep.seed = seed;
    rep.grid = grid;
    double sum = 0.0;
    for (const auto& r : samples) {
        if (!(r.rhs > 0.0)) continue;
        const double ratio = r.lhs / r.rhs;
        rep.ratios.push_back(ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        sum += ratio;
        ++rep.used;
    }
    if (rep.used == 0) throw InconclusiveReport("every right-hand side vanished for " + name);
    rep.mean_ratio = sum / rep.used;
    return rep;
}

std::string inequality_csv_header() { return "name,trials,max_ratio,mean_ratio,seed,dim,n,L"; }

std::string inequality_csv_row(const InequalityReport& r) {
    std::ostringstream os;
    os << r.name << ',' << r.trials << ',' << fmt_double(r.max_ratio) << ',' << fmt_double(r.mean_ratio) << ','
       << r.seed << ',' << r.grid.dim << ',' << r.grid.n << ',' << fmt_double(r.grid.L);
    return os.str();
}

std::map<std::string, double> estimate_constants(std::uint64_t seed, int trials, double delta) {
    if (trials < 100) throw InvalidInput("estimate_constants: at least 100 trials required");
    GridSpec g2{2, 32, 2.0 * kPi, 2.0 / 3.0};
    GridSpec g3{3, 16, 2.0 * kPi, 2.0 / 3.0};
    InequalityParams prm;
    prm.delta = delta;
    std::map<std::string, double> c;
    c["self_embedding"] = 1.0;
    c["K"] = verify_inequality("ladyzhenskaya", g2, trials, seed, prm).max_ratio;
    c["K2"] = verify_inequality("l3_embedding", g3, trials, seed, prm).max_ratio;
    c["C2"] = verify_inequality("besov_interp", g2, trials, seed, prm).max_ratio;
    c["C2_3d"] = verify_inequality("besov_interp", g3, trials, seed, prm).max_ratio;
    c["C_tame"] = verify_inequality("tame", g2, trials, seed, prm).max_ratio;
    c["C_div_lp"] = verify_inequality("div_lp", g2, trials, seed, prm).max_ratio;
    c["C0_bernstein"] = verify_inequality("bernstein", g2, trials, seed, prm).max_ratio;
    c["C3"] = 2.0 * c["C_tame"] + c["C_div_lp"];
    c["C_delta"] = c["C3"] * c["C2"];
    return c;
}

} // namespace hns::lp
