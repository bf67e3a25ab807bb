/// @file littlewood_paley.cpp
/// @brief Dyadic decomposition on the torus

#include "hns/littlewood_paley.hpp"
#include "hns/error.hpp"

#include <cmath>

namespace hns::lp {

int block_index(std::int64_t m2) {
    if (m2 <= 0) return -1;
    int p = 0;
    std::int64_t lo = 1;
    while (lo * 4 <= m2) {
        lo *= 4;
        ++p;
    }
    return p;
}

int max_block(const GridSpec& grid) {
    const std::int64_t h = grid.n / 2;
    return block_index(grid.dim * h * h);
}

static SpectralField masked(const SpectralField& F, int lo, int hi) {
    auto w = wavenumbers(F.grid);
    SpectralField G = SpectralField::zeros(F.grid, F.ncomp());
    const std::size_t N = F.grid.size();
    for (std::size_t i = 0; i < N; ++i) {
        const int p = block_index(w->m2[i]);
        if (p < lo || p >= hi) continue;
        for (int c = 0; c < F.ncomp(); ++c) G.components[c][i] = F.components[c][i];
    }
    return G;
}

SpectralField block(const SpectralField& F, int p) { return masked(F, p, p + 1); }

std::vector<SpectralField> blocks(const SpectralField& F) {
    std::vector<SpectralField> out;
    const int pm = max_block(F.grid);
    for (int p = 0; p <= pm; ++p) out.push_back(block(F, p));
    return out;
}

SpectralField partial_sum(const SpectralField& F, int p) { return masked(F, 0, p); }

double lp_sobolev_norm(const SpectralField& F, double sigma) {
    auto w = wavenumbers(F.grid);
    const int pm = max_block(F.grid);
    std::vector<double> mass(pm + 1, 0.0);
    const std::size_t N = F.grid.size();
    for (std::size_t i = 1; i < N; ++i) {
        double a = 0.0;
        for (const auto& c : F.components) a += std::norm(c[i]);
        mass[block_index(w->m2[i])] += a;
    }
    const double k0s = std::pow(F.grid.k0(), 2.0 * sigma);
    double s = 0.0;
    for (int p = 0; p <= pm; ++p) s += std::pow(2.0, 2.0 * p * sigma) * k0s * mass[p];
    return std::sqrt(s * F.grid.volume());
}

double besov_norm(const SpectralField& F, double s, double p, double r) {
    const bool p_ok = p == 2.0 || p == 3.0 || p == 4.0 || p == 6.0 || p == kInf;
    const bool r_ok = r == 1.0 || r == 2.0 || r == kInf;
    if (!p_ok || !r_ok) throw UnsupportedNorm("besov_norm: unsupported (p, r) combination");
    const int pm = max_block(F.grid);
    const double k0s = std::pow(F.grid.k0(), s);
    double acc = 0.0;
    for (int j = 0; j <= pm; ++j) {
        SpectralField D = block(F, j);
        const double bn = (p == 2.0) ? sobolev_norm(D, 0.0) : lebesgue_norm(D, p == kInf ? 0.0 : p, 2);
        const double term = std::pow(2.0, j * s) * k0s * bn;
        if (r == kInf) acc = std::max(acc, term);
        else acc += std::pow(term, r);
    }
    return r == kInf ? acc : std::pow(acc, 1.0 / r);
}

static SpectralField mean_part(const SpectralField& F) {
    SpectralField G = SpectralField::zeros(F.grid, F.ncomp());
    for (int c = 0; c < F.ncomp(); ++c) G.components[c][0] = F.components[c][0];
    return G;
}

Paraproduct paraproduct_split(const SpectralField& u, const SpectralField& v) {
    if (u.grid != v.grid) throw InvalidInput("paraproduct_split: grids differ");
    const SpectralField ubar = mean_part(u), vbar = mean_part(v);
    const SpectralField up = u - ubar, vp = v - vbar;
    const int pm = max_block(u.grid);

    Paraproduct out{padded_product(up, vbar), padded_product(ubar, vp)};
    out.first += padded_product(ubar, vbar);
    for (int p = 0; p <= pm; ++p) {
        SpectralField du = block(up, p);
        if (du.max_abs() > 0.0) out.first += padded_product(du, partial_sum(vp, p + 1));
        SpectralField dv = block(vp, p);
        if (dv.max_abs() > 0.0) out.second += padded_product(dv, partial_sum(up, p));
    }
    return out;
}

} // namespace hns::lp
