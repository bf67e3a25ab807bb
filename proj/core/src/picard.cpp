/// @file picard.cpp
/// @brief Duhamel fixed-point iteration around the undamped wave group

#include "hns/error.hpp"
#include "hns/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace hns {

namespace {

// Undamped group for eps u'' - (Delta + alpha^{-1} grad div) u = source:
// per branch A = cos(w t), B = sin(w t) / w with w^2 = stiffness / eps.
struct Group {
    std::vector<double> A, B, dA; // dA = d/dt A; d/dt B = A
};

Group group_at(const std::vector<double>& w, double t) {
    Group g;
    const std::size_t N = w.size();
    g.A.resize(N);
    g.B.resize(N);
    g.dA.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double om = w[i];
        if (om == 0.0) {
            g.A[i] = 1.0;
            g.B[i] = t;
            g.dA[i] = 0.0;
        } else {
            g.A[i] = std::cos(om * t);
            g.B[i] = std::sin(om * t) / om;
            g.dA[i] = -om * std::sin(om * t);
        }
    }
    return g;
}

struct Branches {
    std::vector<double> wp, wq;
    bool has_q = false;
};

Branches frequencies(const GridSpec& grid, const ModelParams& p) {
    auto w = wavenumbers(grid);
    const std::size_t N = grid.size();
    Branches b;
    b.wp.resize(N);
    for (std::size_t i = 0; i < N; ++i) b.wp[i] = std::sqrt(w->k2[i] / p.epsilon);
    if (p.model == Model::HNS_EPS_ALPHA) {
        b.has_q = true;
        b.wq.resize(N);
        const double ia = std::isfinite(p.alpha) ? 1.0 / p.alpha : 0.0;
        for (std::size_t i = 0; i < N; ++i) b.wq[i] = std::sqrt((w->k2[i] + ia * w->kd2[i]) / p.epsilon);
    }
    return b;
}

// out += s * (mp on P part + mq on Q part) x
void accumulate(SpectralField& out, double s, const std::vector<double>& mp, const std::vector<double>* mq,
                const SpectralField& x) {
    const GridSpec& g = x.grid;
    const std::size_t N = g.size();
    const int d = x.ncomp();
    if (!mq) {
        for (int c = 0; c < d; ++c)
            for (std::size_t i = 0; i < N; ++i) out.components[c][i] += s * mp[i] * x.components[c][i];
        return;
    }
    auto w = wavenumbers(g);
    for (std::size_t i = 0; i < N; ++i) {
        const double kk = w->kd2[i];
        Complex q = 0.0;
        if (kk > 0.0) {
            for (int c = 0; c < d; ++c) q += w->kd[c][i] * x.components[c][i];
            q /= kk;
        }
        for (int c = 0; c < d; ++c) {
            const Complex qc = kk > 0.0 ? q * w->kd[c][i] : Complex(0.0);
            out.components[c][i] += s * (mp[i] * (x.components[c][i] - qc) + (*mq)[i] * qc);
        }
    }
}

double branch_size(const SpectralField& u0, const SpectralField& u1, const ModelParams& p, double delta) {
    const double nh = 0.5 * u0.grid.dim;
    const double eps = p.epsilon;
    const double c_top = p.has_penalty() ? p.c1() : p.c2();
    const double c_low = p.has_penalty() ? std::sqrt(p.alpha * eps / (p.alpha + 1.0)) : std::sqrt(eps);
    return (2.0 + 1.0 / std::sqrt(eps) + c_top) * sobolev_norm(u0, nh + delta) +
           2.0 * sobolev_norm(u0, nh + delta - 1.0) +
           (2.0 + std::sqrt(eps) + c_low) * sobolev_norm(u1, nh + delta - 1.0);
}

} // namespace

double local_time_bound(const SpectralField& u0, const SpectralField& u1, const ModelParams& p, double C,
                        double delta) {
    p.validate();
    if (!p.hyperbolic()) throw InvalidInput("local_time_bound: hyperbolic model required");
    return std::min(1.0, 0.25 * p.epsilon) / (1.0 + C * branch_size(u0, u1, p, delta));
}

double xt_norm(const std::vector<SpectralField>& u, const std::vector<SpectralField>& ut, double delta) {
    if (u.empty() || u.size() != ut.size()) throw InvalidInput("xt_norm: trajectory shapes differ");
    const double nh = 0.5 * u.front().grid.dim;
    double a = 0.0, b = 0.0, c = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        a = std::max(a, sobolev_norm(u[i], nh + delta));
        b = std::max(b, sobolev_norm(u[i], nh + delta - 1.0));
        c = std::max(c, sobolev_norm(ut[i], nh + delta - 1.0));
    }
    return a + b + c;
}

PicardResult picard_solve(const SpectralField& u0, const SpectralField& u1, const ModelParams& p, double T,
                          const PicardConfig& cfg) {
    p.validate();
    if (!p.hyperbolic()) throw InvalidInput("picard_solve: hyperbolic model required");
    if (!same_grid(u0, u1) || u0.ncomp() != u0.grid.dim) throw InvalidInput("picard_solve: data shapes differ");
    if (cfg.nodes < 2 || cfg.max_iter < 1) throw InvalidInput("picard_solve: need >= 2 nodes and >= 1 iteration");
    const double bound = local_time_bound(u0, u1, p, cfg.bound_constant, cfg.delta);
    if (!(T > 0.0) || T > bound)
        throw PreconditionError("picard_solve: T = " + std::to_string(T) + " outside (0, " + std::to_string(bound) + "]");

    const GridSpec& grid = u0.grid;
    const int M = cfg.nodes;
    const double h = T / M;
    const Branches br = frequencies(grid, p);
    std::vector<Group> gp(M + 1), gq(br.has_q ? M + 1 : 0);
    for (int l = 0; l <= M; ++l) {
        gp[l] = group_at(br.wp, l * h);
        if (br.has_q) gq[l] = group_at(br.wq, l * h);
    }
    const int nc = u0.ncomp();
    const double g = p.damping ? 1.0 : 0.0;

    PicardResult res;
    res.times.resize(M + 1);
    for (int i = 0; i <= M; ++i) res.times[i] = i * h;

    // free part A u0 + B u1 and its time derivative
    std::vector<SpectralField> free_u(M + 1, SpectralField::zeros(grid, nc)), free_ut = free_u;
    for (int i = 0; i <= M; ++i) {
        accumulate(free_u[i], 1.0, gp[i].A, br.has_q ? &gq[i].A : nullptr, u0);
        accumulate(free_u[i], 1.0, gp[i].B, br.has_q ? &gq[i].B : nullptr, u1);
        accumulate(free_ut[i], 1.0, gp[i].dA, br.has_q ? &gq[i].dA : nullptr, u0);
        accumulate(free_ut[i], 1.0, gp[i].A, br.has_q ? &gq[i].A : nullptr, u1);
    }
    std::vector<SpectralField> u = free_u, ut = free_ut;

    int increases = 0;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        std::vector<SpectralField> src(M + 1);
        for (int k = 0; k <= M; ++k) {
            src[k] = model_forcing(u[k], p);
            src[k].axpy(-g, ut[k]);
            src[k] *= 1.0 / p.epsilon;
        }
        std::vector<SpectralField> nu = free_u, nut = free_ut;
        for (int i = 1; i <= M; ++i)
            for (int k = 0; k <= i; ++k) {
                const double wgt = (k == 0 || k == i) ? 0.5 * h : h;
                const int lag = i - k;
                accumulate(nu[i], wgt, gp[lag].B, br.has_q ? &gq[lag].B : nullptr, src[k]);
                accumulate(nut[i], wgt, gp[lag].A, br.has_q ? &gq[lag].A : nullptr, src[k]);
            }
        std::vector<SpectralField> du(M + 1), dut(M + 1);
        for (int i = 0; i <= M; ++i) {
            du[i] = nu[i] - u[i];
            dut[i] = nut[i] - ut[i];
        }
        const double dist = xt_norm(du, dut, cfg.delta);
        const double size = xt_norm(nu, nut, cfg.delta);
        u = std::move(nu);
        ut = std::move(nut);
        if (!res.distances.empty() && dist > res.distances.back()) ++increases;
        else increases = 0;
        res.distances.push_back(dist);
        res.iterations = it;
        if (increases >= 3) throw ContractionFailure("picard_solve: distance grew three times in a row", res.distances);
        if (dist <= cfg.tol * std::max(size, 1e-300)) {
            res.u = std::move(u);
            res.ut = std::move(ut);
            return res;
        }
    }
    throw NoConvergence("picard_solve: no convergence within max_iter", res.distances);
}

} // namespace hns
