/// @file propagator.cpp
/// @brief Exact per-mode integration of the linear part

#include "hns/error.hpp"
#include "hns/solvers.hpp"

#include <cmath>

namespace hns {

namespace {

// (e^z - 1) / z and (e^z - 1 - z) / z^2
Complex phi1(Complex z) {
    if (std::abs(z) >= 1.0) return (std::exp(z) - 1.0) / z;
    Complex term = 1.0, sum = 1.0;
    for (int j = 2; j < 30; ++j) {
        term *= z / static_cast<double>(j);
        sum += term;
    }
    return sum;
}

Complex phi2(Complex z) {
    if (std::abs(z) >= 1.0) return (std::exp(z) - 1.0 - z) / (z * z);
    Complex term = 0.5, sum = 0.5;
    for (int j = 3; j < 32; ++j) {
        term *= z / static_cast<double>(j);
        sum += term;
    }
    return sum;
}

// Taylor series of y(h) for eps y'' + g y' + w2 y = f0 + f1 s from rest
double series_response(double eps, double g, double w2, double h, double f0, double f1) {
    double d0 = 0.0, d1 = 0.0, sum = 0.0;
    for (int j = 0; j < 80; ++j) {
        const double fj = j == 0 ? f0 * h * h : (j == 1 ? f1 * h * h * h : 0.0);
        const double d2 = (fj - g * (j + 1) * d1 * h - w2 * d0 * h * h) / (eps * (j + 2) * (j + 1));
        sum += d2;
        d0 = d1;
        d1 = d2;
        if (j > 4 && std::abs(d2) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

} // namespace

// The homogeneous flow of eps y'' + g y' + w2 y = 0 over h is
// e^{mh} [(C - m S) I + S M] with m = -g / (2 eps), C and S the cosh/cos and
// sinh/sin pieces of the discriminant. With G the impulse response, the
// forcing a + b s gives ya = int G, yb = int (h - t) G, va = G(h), vb = ya.
LinearPropagator::Coeffs LinearPropagator::mode_coeffs(double eps, double g, double w2, double h) {
    Coeffs c{};
    const double m = -g / (2.0 * eps);
    const double disc = g * g - 4.0 * eps * w2;
    if (w2 == 0.0) {
        const double r = -g / eps;
        c.yy = 1.0;
        c.yv = g == 0.0 ? h : std::expm1(r * h) / r;
        c.vy = 0.0;
        c.vv = g == 0.0 ? 1.0 : std::exp(r * h);
    } else {
        double C, S;
        if (disc > 0.0) {
            const double d = std::sqrt(disc) / (2.0 * eps);
            const double e1 = std::exp((m + d) * h), e2 = std::exp((m - d) * h);
            C = 0.5 * (e1 + e2);
            S = e2 * std::expm1(2.0 * d * h) / (2.0 * d);
        } else if (disc < 0.0) {
            const double om = std::sqrt(-disc) / (2.0 * eps);
            const double e = std::exp(m * h);
            C = e * std::cos(om * h);
            S = e * std::sin(om * h) / om;
        } else {
            const double e = std::exp(m * h);
            C = e;
            S = e * h;
        }
        c.yy = C - m * S;
        c.yv = S;
        c.vy = -S * w2 / eps;
        c.vv = C + m * S;
    }
    c.va = c.yv / eps;

    const Complex sq = std::sqrt(Complex(disc, 0.0));
    const Complex r1 = (-g + sq) / (2.0 * eps), r2 = (-g - sq) / (2.0 * eps);
    const double rmax = std::max(std::abs(r1), std::abs(r2)) * h;
    if (w2 > 0.0 && std::abs(1.0 - c.yy) >= 0.1) {
        c.ya = (1.0 - c.yy) / w2;
        c.yb = (h - c.yv - g * c.ya) / w2;
    } else if (rmax <= 1.0) {
        c.ya = series_response(eps, g, w2, h, 1.0, 0.0);
        c.yb = series_response(eps, g, w2, h, 0.0, 1.0);
    } else {
        const Complex dr = eps * (r1 - r2);
        c.ya = (h * (phi1(r1 * h) - phi1(r2 * h)) / dr).real();
        c.yb = (h * h * (phi2(r1 * h) - phi2(r2 * h)) / dr).real();
    }
    c.vb = c.ya;
    return c;
}

LinearPropagator::Coeffs LinearPropagator::heat_coeffs(double k2, double h) {
    Coeffs c{};
    if (k2 == 0.0) {
        c.yy = 1.0;
        c.ya = h;
        c.yb = 0.5 * h * h;
        return c;
    }
    const double one_minus = -std::expm1(-k2 * h);
    c.yy = 1.0 - one_minus;
    c.ya = one_minus / k2;
    c.yb = (h - one_minus / k2) / k2;
    return c;
}

LinearPropagator::LinearPropagator(const GridSpec& grid, const ModelParams& p, double h)
    : grid_(grid), p_(p), h_(h) {
    p.validate();
    if (!(h >= 0.0) || !std::isfinite(h)) throw InvalidInput("propagator: interval must be finite and >= 0");
    auto w = wavenumbers(grid);
    const std::size_t N = grid.size();
    cp_.resize(N);
    const double g = p.damping ? 1.0 : 0.0;
    if (p.model == Model::NS) {
        for (std::size_t i = 0; i < N; ++i) cp_[i] = heat_coeffs(w->k2[i], h);
        return;
    }
    for (std::size_t i = 0; i < N; ++i) cp_[i] = mode_coeffs(p.epsilon, g, w->k2[i], h);
    if (p.model == Model::HNS_EPS_ALPHA) {
        cq_.resize(N);
        const double ia = std::isfinite(p.alpha) ? 1.0 / p.alpha : 0.0;
        for (std::size_t i = 0; i < N; ++i) cq_[i] = mode_coeffs(p.epsilon, g, w->k2[i] + ia * w->kd2[i], h);
    }
}

void LinearPropagator::apply(const SpectralField& u, const SpectralField* ut, const SpectralField* a,
                             const SpectralField* b, SpectralField& u_out, SpectralField* ut_out) const {
    if (u.grid != grid_) throw InvalidInput("propagator: grid mismatch");
    const int nc = u.ncomp();
    const std::size_t N = grid_.size();
    if (u_out.grid != grid_ || u_out.ncomp() != nc) u_out = SpectralField::zeros(grid_, nc);
    const bool hyp = p_.model != Model::NS;
    if (hyp && !ut) throw MissingState("propagator: hyperbolic model requires u_t");
    if (hyp && ut_out && (ut_out->grid != grid_ || ut_out->ncomp() != nc)) *ut_out = SpectralField::zeros(grid_, nc);
    const Complex zero(0.0, 0.0);

    if (!hyp) {
        for (int c = 0; c < nc; ++c)
            for (std::size_t i = 0; i < N; ++i) {
                const Coeffs& k = cp_[i];
                Complex y = k.yy * u.components[c][i];
                if (a) y += k.ya * a->components[c][i];
                if (b) y += k.yb * b->components[c][i];
                u_out.components[c][i] = y;
            }
        return;
    }

    auto combine = [&](const Coeffs& k, Complex y0, Complex v0, Complex fa, Complex fb, Complex& y, Complex& v) {
        y = k.yy * y0 + k.yv * v0 + k.ya * fa + k.yb * fb;
        v = k.vy * y0 + k.vv * v0 + k.va * fa + k.vb * fb;
    };

    if (cq_.empty()) {
        for (int c = 0; c < nc; ++c)
            for (std::size_t i = 0; i < N; ++i) {
                Complex y, v;
                combine(cp_[i], u.components[c][i], ut->components[c][i], a ? a->components[c][i] : zero,
                        b ? b->components[c][i] : zero, y, v);
                u_out.components[c][i] = y;
                if (ut_out) ut_out->components[c][i] = v;
            }
        return;
    }

    if (nc != grid_.dim) throw InvalidInput("propagator: vector field required");
    auto w = wavenumbers(grid_);
    const int d = grid_.dim;
    for (std::size_t i = 0; i < N; ++i) {
        const double kk = w->kd2[i];
        Complex qy = 0.0, qv = 0.0, qa = 0.0, qb = 0.0;
        if (kk > 0.0) {
            for (int c = 0; c < d; ++c) {
                const double kc = w->kd[c][i];
                qy += kc * u.components[c][i];
                qv += kc * ut->components[c][i];
                if (a) qa += kc * a->components[c][i];
                if (b) qb += kc * b->components[c][i];
            }
            qy /= kk;
            qv /= kk;
            qa /= kk;
            qb /= kk;
        }
        for (int c = 0; c < d; ++c) {
            const double kc = kk > 0.0 ? w->kd[c][i] : 0.0;
            const Complex y0 = u.components[c][i], v0 = ut->components[c][i];
            const Complex fa = a ? a->components[c][i] : zero, fb = b ? b->components[c][i] : zero;
            // P part = total - Q part
            Complex yp, vp, yq, vq;
            combine(cp_[i], y0 - kc * qy, v0 - kc * qv, fa - kc * qa, fb - kc * qb, yp, vp);
            combine(cq_[i], kc * qy, kc * qv, kc * qa, kc * qb, yq, vq);
            u_out.components[c][i] = yp + yq;
            if (ut_out) ut_out->components[c][i] = vp + vq;
        }
    }
}

SolverState linear_propagate(const SolverState& s, const ModelParams& p, double t) {
    LinearPropagator prop(s.u.grid, p, t);
    SolverState out;
    out.t = s.t + t;
    out.step = s.step;
    if (p.hyperbolic()) {
        if (!s.ut) throw MissingState("linear_propagate: hyperbolic model requires u_t");
        out.ut = SpectralField::zeros(s.u.grid, s.u.ncomp());
        prop.apply(s.u, &*s.ut, nullptr, nullptr, out.u, &*out.ut);
    } else {
        prop.apply(s.u, nullptr, nullptr, nullptr, out.u, nullptr);
    }
    return out;
}

} // namespace hns
