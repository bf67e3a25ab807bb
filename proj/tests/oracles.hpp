/// @file oracles.hpp
/// @brief Test-side reference solutions built without the library's propagator

#pragma once

#include "hns/solvers.hpp"

#include <cmath>
#include <complex>
#include <utility>

namespace oracle {

using C = std::complex<double>;

/// eps y'' + g y' + w2 y = 0 via the roots of eps r^2 + g r + w2.
/// Returns (y(t), y'(t)).
inline std::pair<C, C> damped_mode(double eps, double g, double w2, C y0, C v0, double t) {
    const C disc = std::sqrt(C(g * g - 4.0 * eps * w2, 0.0));
    const C r1 = (-g + disc) / (2.0 * eps);
    const C r2 = (-g - disc) / (2.0 * eps);
    if (std::abs(r1 - r2) < 1e-9 * (1.0 + std::abs(r1))) {
        // repeated root r: y = (a + b t) e^{rt}
        const C r = r1;
        const C a = y0, b = v0 - r * y0;
        const C e = std::exp(r * t);
        return {(a + b * t) * e, (b + r * (a + b * t)) * e};
    }
    const C c1 = (v0 - r2 * y0) / (r1 - r2);
    const C c2 = y0 - c1;
    const C e1 = std::exp(r1 * t), e2 = std::exp(r2 * t);
    return {c1 * e1 + c2 * e2, c1 * r1 * e1 + c2 * r2 * e2};
}

/// Integer index along one axis in [-n/2, n/2)
inline int signed_index(int i, int n) { return i < n / 2 ? i : i - n; }

/// Free evolution of the hyperbolic model on a 2D grid: each mode split into
/// its solenoidal and gradient parts, each advanced with its own stiffness.
/// Derivative wavenumbers vanish on the Nyquist index; the Laplacian does not.
inline std::pair<hns::SpectralField, hns::SpectralField> linear_hyperbolic_2d(const hns::SpectralField& u,
                                                                           const hns::SpectralField& ut,
                                                                           const hns::ModelParams& p, double t) {
    const hns::GridSpec& g = u.grid;
    const int n = g.n;
    const double k0 = g.k0();
    const double gam = p.damping ? 1.0 : 0.0;
    const double ia = p.has_penalty() ? 1.0 / p.alpha : 0.0;
    hns::SpectralField U = hns::SpectralField::zeros(g, 2), V = U;
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1) {
            const std::size_t m = static_cast<std::size_t>(i0) * n + i1;
            const int j0 = signed_index(i0, n), j1 = signed_index(i1, n);
            const double k2 = k0 * k0 * (j0 * j0 + j1 * j1);
            const double d0 = j0 == -n / 2 ? 0.0 : k0 * j0;
            const double d1 = j1 == -n / 2 ? 0.0 : k0 * j1;
            const double dd = d0 * d0 + d1 * d1;
            C qy = 0.0, qv = 0.0;
            if (p.model == hns::Model::HNS_EPS_ALPHA && dd > 0.0) {
                qy = (d0 * u.components[0][m] + d1 * u.components[1][m]) / dd;
                qv = (d0 * ut.components[0][m] + d1 * ut.components[1][m]) / dd;
            }
            const double dk[2] = {d0, d1};
            for (int c = 0; c < 2; ++c) {
                const C yq = dk[c] * qy, vq = dk[c] * qv;
                const auto P = damped_mode(p.epsilon, gam, k2, u.components[c][m] - yq, ut.components[c][m] - vq, t);
                const auto Q = damped_mode(p.epsilon, gam, k2 + ia * dd, yq, vq, t);
                U.components[c][m] = P.first + Q.first;
                V.components[c][m] = P.second + Q.second;
            }
        }
    return {U, V};
}

inline double max_diff(const hns::SpectralField& a, const hns::SpectralField& b) {
    double m = 0.0;
    for (int c = 0; c < a.ncomp(); ++c)
        for (std::size_t i = 0; i < a.components[c].size(); ++i)
            m = std::max(m, std::abs(a.components[c][i] - b.components[c][i]));
    return m;
}

/// Taylor-Green field (sin x cos y, -cos x sin y) times amp
inline hns::SpectralField taylor_green(const hns::GridSpec& g, double amp = 1.0) {
    hns::PhysicalField f = hns::PhysicalField::zeros(g, 2);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            const double x = hns::coordinate(g, i), y = hns::coordinate(g, j);
            f.components[0][i * g.n + j] = amp * std::sin(x) * std::cos(y);
            f.components[1][i * g.n + j] = -amp * std::cos(x) * std::sin(y);
        }
    return hns::to_spectral(f);
}

} // namespace oracle
