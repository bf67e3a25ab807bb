/// @file spectral.cpp
/// @brief FFTW-backed transforms and Fourier multipliers

#include "hns/spectral.hpp"
#include "hns/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace hns {

// ============================================================================
// Grid
// ============================================================================

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n);
    return s;
}

double GridSpec::volume() const { return std::pow(L, dim); }

void GridSpec::validate() const {
    if (dim != 2 && dim != 3) throw InvalidInput("grid dim must be 2 or 3");
    if (n < 4 || n % 2 != 0) throw InvalidInput("grid n must be even and >= 4");
    if (!(L > 0.0) || !std::isfinite(L)) throw InvalidInput("grid L must be positive");
    if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
        throw InvalidInput("dealias fraction must lie in (0, 1]");
}

bool GridSpec::operator==(const GridSpec& o) const {
    return dim == o.dim && n == o.n && L == o.L && dealias_fraction == o.dealias_fraction;
}

std::shared_ptr<const Wavenumbers> wavenumbers(const GridSpec& grid) {
    static std::mutex mtx;
    static std::map<std::tuple<int, int, double>, std::shared_ptr<const Wavenumbers>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(grid.dim, grid.n, grid.L);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    grid.validate();
    auto w = std::make_shared<Wavenumbers>();
    w->grid = grid;
    const std::size_t N = grid.size();
    const int n = grid.n;
    const double k0 = grid.k0();
    for (int a = 0; a < grid.dim; ++a) {
        w->k[a].resize(N);
        w->kd[a].resize(N);
    }
    w->k2.resize(N);
    w->kd2.resize(N);
    w->m2.resize(N);
    w->neg.resize(N);
    for (std::size_t idx = 0; idx < N; ++idx) {
        std::size_t rem = idx;
        int i[3] = {0, 0, 0};
        for (int a = grid.dim - 1; a >= 0; --a) {
            i[a] = static_cast<int>(rem % n);
            rem /= n;
        }
        double k2 = 0.0, kd2 = 0.0;
        std::int64_t m2 = 0;
        std::size_t neg = 0;
        for (int a = 0; a < grid.dim; ++a) {
            int j = i[a] < n / 2 ? i[a] : i[a] - n;
            double k = k0 * j;
            double kd = (i[a] == n / 2) ? 0.0 : k;
            w->k[a][idx] = k;
            w->kd[a][idx] = kd;
            k2 += k * k;
            kd2 += kd * kd;
            m2 += static_cast<std::int64_t>(j) * j;
            neg = neg * n + static_cast<std::size_t>((n - i[a]) % n);
        }
        w->k2[idx] = k2;
        w->kd2[idx] = kd2;
        w->m2[idx] = m2;
        w->neg[idx] = neg;
    }
    cache[key] = w;
    return w;
}

// ============================================================================
// Fields
// ============================================================================

PhysicalField PhysicalField::zeros(const GridSpec& grid, int ncomp) {
    grid.validate();
    PhysicalField f;
    f.grid = grid;
    f.components.assign(ncomp, RealArray(grid.size(), 0.0));
    return f;
}

SpectralField SpectralField::zeros(const GridSpec& grid, int ncomp) {
    grid.validate();
    SpectralField F;
    F.grid = grid;
    F.components.assign(ncomp, ComplexArray(grid.size(), Complex(0.0, 0.0)));
    return F;
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const auto& c : components)
        for (const auto& z : c) m = std::max(m, std::abs(z));
    return m;
}

bool same_grid(const SpectralField& a, const SpectralField& b) {
    return a.grid == b.grid && a.ncomp() == b.ncomp();
}

static void require_same(const SpectralField& a, const SpectralField& b, const char* op) {
    if (!same_grid(a, b)) throw InvalidInput(std::string(op) + ": field shapes differ");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same(*this, o, "operator+=");
    for (std::size_t c = 0; c < components.size(); ++c) {
        auto& a = components[c];
        const auto& b = o.components[c];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    }
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_same(*this, o, "operator-=");
    for (std::size_t c = 0; c < components.size(); ++c) {
        auto& a = components[c];
        const auto& b = o.components[c];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    }
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : components)
        for (auto& z : c) z *= s;
    return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& o) {
    require_same(*this, o, "axpy");
    for (std::size_t c = 0; c < components.size(); ++c) {
        auto& a = components[c];
        const auto& b = o.components[c];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    }
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

// ============================================================================
// Transforms
// ============================================================================

namespace {

fftw_plan plan_for(int dim, int n, int sign) {
    static std::mutex mtx;
    static std::map<std::tuple<int, int, int>, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(dim, n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::size_t N = 1;
    int dims[3];
    for (int a = 0; a < dim; ++a) {
        dims[a] = n;
        N *= static_cast<std::size_t>(n);
    }
    ComplexArray in(N), out(N);
    fftw_plan p = fftw_plan_dft(dim, dims, reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw Error("fftw plan creation failed");
    plans[key] = p;
    return p;
}

void execute(int dim, int n, int sign, ComplexArray& in, ComplexArray& out) {
    fftw_plan p = plan_for(dim, n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace

SpectralField to_spectral(const PhysicalField& f) {
    f.grid.validate();
    const std::size_t N = f.grid.size();
    SpectralField F;
    F.grid = f.grid;
    F.components.resize(f.components.size());
    ComplexArray buf(N);
    const double scale = 1.0 / static_cast<double>(N);
    for (std::size_t c = 0; c < f.components.size(); ++c) {
        const auto& src = f.components[c];
        if (src.size() != N) throw InvalidInput("to_spectral: component size mismatch");
        for (std::size_t i = 0; i < N; ++i) buf[i] = Complex(src[i], 0.0);
        F.components[c].resize(N);
        execute(f.grid.dim, f.grid.n, FFTW_FORWARD, buf, F.components[c]);
        for (auto& z : F.components[c]) z *= scale;
    }
    return F;
}

PhysicalField to_physical(const SpectralField& F) {
    F.grid.validate();
    const std::size_t N = F.grid.size();
    PhysicalField f;
    f.grid = F.grid;
    f.components.resize(F.components.size());
    ComplexArray in(N), out(N);
    for (std::size_t c = 0; c < F.components.size(); ++c) {
        if (F.components[c].size() != N) throw InvalidInput("to_physical: component size mismatch");
        in = F.components[c];
        execute(F.grid.dim, F.grid.n, FFTW_BACKWARD, in, out);
        auto& dst = f.components[c];
        dst.resize(N);
        for (std::size_t i = 0; i < N; ++i) dst[i] = out[i].real();
    }
    return f;
}

// ============================================================================
// Multipliers
// ============================================================================

SpectralField dealias(const SpectralField& F, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw InvalidInput("dealias: fraction must lie in (0, 1]");
    auto w = wavenumbers(F.grid);
    const double cut = fraction * F.grid.k_max() * (1.0 + 1e-12);
    SpectralField G = F;
    const std::size_t N = F.grid.size();
    for (std::size_t i = 0; i < N; ++i) {
        bool kill = false;
        for (int a = 0; a < F.grid.dim; ++a)
            if (std::abs(w->k[a][i]) > cut) kill = true;
        if (kill)
            for (auto& c : G.components) c[i] = 0.0;
    }
    return G;
}

SpectralField dealias(const SpectralField& F) { return dealias(F, F.grid.dealias_fraction); }

SpectralField gradient(const SpectralField& F) {
    if (F.ncomp() != 1) throw InvalidInput("gradient: scalar field required");
    auto w = wavenumbers(F.grid);
    const int d = F.grid.dim;
    SpectralField G = SpectralField::zeros(F.grid, d);
    const std::size_t N = F.grid.size();
    const auto& f = F.components[0];
    for (int a = 0; a < d; ++a)
        for (std::size_t i = 0; i < N; ++i) G.components[a][i] = Complex(0.0, w->kd[a][i]) * f[i];
    return G;
}

SpectralField divergence(const SpectralField& F) {
    const int d = F.grid.dim;
    if (F.ncomp() != d) throw InvalidInput("divergence: vector field required");
    auto w = wavenumbers(F.grid);
    SpectralField G = SpectralField::zeros(F.grid, 1);
    const std::size_t N = F.grid.size();
    auto& g = G.components[0];
    for (int a = 0; a < d; ++a)
        for (std::size_t i = 0; i < N; ++i) g[i] += Complex(0.0, w->kd[a][i]) * F.components[a][i];
    return G;
}

SpectralField laplacian(const SpectralField& F) {
    auto w = wavenumbers(F.grid);
    SpectralField G = F;
    const std::size_t N = F.grid.size();
    for (auto& c : G.components)
        for (std::size_t i = 0; i < N; ++i) c[i] *= -w->k2[i];
    return G;
}

SpectralField curl(const SpectralField& F) {
    const int d = F.grid.dim;
    if (F.ncomp() != d) throw InvalidInput("curl: vector field required");
    auto w = wavenumbers(F.grid);
    const std::size_t N = F.grid.size();
    const Complex I(0.0, 1.0);
    if (d == 2) {
        SpectralField G = SpectralField::zeros(F.grid, 1);
        for (std::size_t i = 0; i < N; ++i)
            G.components[0][i] = I * (w->kd[0][i] * F.components[1][i] - w->kd[1][i] * F.components[0][i]);
        return G;
    }
    SpectralField G = SpectralField::zeros(F.grid, 3);
    for (std::size_t i = 0; i < N; ++i) {
        const Complex u = F.components[0][i], v = F.components[1][i], x = F.components[2][i];
        G.components[0][i] = I * (w->kd[1][i] * x - w->kd[2][i] * v);
        G.components[1][i] = I * (w->kd[2][i] * u - w->kd[0][i] * x);
        G.components[2][i] = I * (w->kd[0][i] * v - w->kd[1][i] * u);
    }
    return G;
}

SpectralField project_Q(const SpectralField& F) {
    const int d = F.grid.dim;
    if (F.ncomp() != d) throw InvalidInput("project_Q: vector field required");
    auto w = wavenumbers(F.grid);
    SpectralField G = SpectralField::zeros(F.grid, d);
    const std::size_t N = F.grid.size();
    for (std::size_t i = 0; i < N; ++i) {
        const double kk = w->kd2[i];
        if (kk == 0.0) continue;
        Complex dot = 0.0;
        for (int a = 0; a < d; ++a) dot += w->kd[a][i] * F.components[a][i];
        dot /= kk;
        for (int a = 0; a < d; ++a) G.components[a][i] = dot * w->kd[a][i];
    }
    return G;
}

SpectralField project_P(const SpectralField& F) {
    SpectralField G = F;
    G -= project_Q(F);
    return G;
}

static double mean_tolerance(const SpectralField& F) { return 1e-12 * std::max(F.max_abs(), 1e-300); }

static bool has_mean(const SpectralField& F) {
    const double tol = mean_tolerance(F);
    for (const auto& c : F.components)
        if (std::abs(c[0]) > tol) return true;
    return false;
}

SpectralField lambda_pow(const SpectralField& F, double sigma) {
    if (sigma < 0.0 && has_mean(F)) throw SingularMultiplier("lambda_pow: negative power of a field with nonzero mean");
    auto w = wavenumbers(F.grid);
    SpectralField G = F;
    const std::size_t N = F.grid.size();
    std::vector<double> m(N);
    m[0] = 0.0;
    for (std::size_t i = 1; i < N; ++i) m[i] = std::pow(w->k2[i], 0.5 * sigma);
    for (auto& c : G.components)
        for (std::size_t i = 0; i < N; ++i) c[i] *= m[i];
    return G;
}

double sobolev_norm_sq(const SpectralField& F, double sigma) {
    if (sigma < 0.0 && has_mean(F)) throw SingularMultiplier("sobolev_norm: negative index with nonzero mean");
    auto w = wavenumbers(F.grid);
    const std::size_t N = F.grid.size();
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double a = 0.0;
        for (const auto& c : F.components) a += std::norm(c[i]);
        if (a == 0.0) continue;
        double m;
        if (i == 0) m = (sigma == 0.0) ? 1.0 : 0.0;
        else m = (sigma == 0.0) ? 1.0 : std::pow(w->k2[i], sigma);
        s += m * a;
    }
    return s * F.grid.volume();
}

double sobolev_norm(const SpectralField& F, double sigma) { return std::sqrt(sobolev_norm_sq(F, sigma)); }

double inner_product(const SpectralField& a, const SpectralField& b, double sigma) {
    require_same(a, b, "inner_product");
    auto w = wavenumbers(a.grid);
    const std::size_t N = a.grid.size();
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double m;
        if (i == 0) m = (sigma == 0.0) ? 1.0 : 0.0;
        else m = (sigma == 0.0) ? 1.0 : std::pow(w->k2[i], sigma);
        if (m == 0.0) continue;
        double acc = 0.0;
        for (int c = 0; c < a.ncomp(); ++c) acc += (a.components[c][i] * std::conj(b.components[c][i])).real();
        s += m * acc;
    }
    return s * a.grid.volume();
}

// ============================================================================
// Physical-space norms and products
// ============================================================================

static RealArray magnitude(const PhysicalField& f) {
    const std::size_t N = f.grid.size();
    RealArray m(N, 0.0);
    for (const auto& c : f.components)
        for (std::size_t i = 0; i < N; ++i) m[i] += c[i] * c[i];
    for (auto& x : m) x = std::sqrt(x);
    return m;
}

double lebesgue_norm(const SpectralField& F, double p, int refine) {
    if (refine < 1) throw InvalidInput("lebesgue_norm: refine must be >= 1");
    SpectralField G = refine == 1 ? F : resample(F, F.grid.n * refine);
    RealArray m = magnitude(to_physical(G));
    if (p <= 0.0) return *std::max_element(m.begin(), m.end());
    double s = 0.0;
    for (double x : m) s += std::pow(x, p);
    const double cell = G.grid.volume() / static_cast<double>(G.grid.size());
    return std::pow(s * cell, 1.0 / p);
}

double sup_norm(const SpectralField& F) { return lebesgue_norm(F, 0.0, 1); }

SpectralField resample(const SpectralField& F, int n_new) {
    if (n_new == F.grid.n) return F;
    GridSpec g2 = F.grid;
    g2.n = n_new;
    const int n = F.grid.n;
    const int d = F.grid.dim;
    SpectralField G = SpectralField::zeros(g2, F.ncomp());
    auto wrap = [](int j, int m) { return static_cast<std::size_t>(((j % m) + m) % m); };
    const std::size_t N = F.grid.size();
    for (std::size_t idx = 0; idx < N; ++idx) {
        std::size_t rem = idx;
        int j[3] = {0, 0, 0};
        for (int a = d - 1; a >= 0; --a) {
            int i = static_cast<int>(rem % n);
            rem /= n;
            j[a] = i < n / 2 ? i : i - n;
        }
        if (n_new > n) {
            // An old Nyquist index splits evenly between +-n/2 on the finer grid.
            int nyq = 0;
            for (int a = 0; a < d; ++a)
                if (j[a] == -n / 2) ++nyq;
            const double share = std::ldexp(1.0, -nyq);
            for (int mask = 0; mask < (1 << nyq); ++mask) {
                std::size_t t = 0;
                int bit = 0;
                for (int a = 0; a < d; ++a) {
                    int jj = j[a];
                    if (jj == -n / 2) {
                        if (mask & (1 << bit)) jj = n / 2;
                        ++bit;
                    }
                    t = t * n_new + wrap(jj, n_new);
                }
                for (int c = 0; c < F.ncomp(); ++c) G.components[c][t] += share * F.components[c][idx];
            }
        } else {
            bool keep = true;
            std::size_t t = 0;
            for (int a = 0; a < d; ++a) {
                if (j[a] < -n_new / 2 || j[a] > n_new / 2) keep = false;
                t = t * n_new + wrap(j[a], n_new);
            }
            if (!keep) continue;
            for (int c = 0; c < F.ncomp(); ++c) G.components[c][t] += F.components[c][idx];
        }
    }
    return G;
}

SpectralField product_full(const SpectralField& u, const SpectralField& v) {
    if (u.grid != v.grid) throw InvalidInput("product: grids differ");
    const int cu = u.ncomp(), cv = v.ncomp();
    if (!(cu == cv || cu == 1 || cv == 1)) throw InvalidInput("product: incompatible component counts");
    const int n2 = 2 * u.grid.n;
    PhysicalField pu = to_physical(resample(u, n2));
    PhysicalField pv = to_physical(resample(v, n2));
    const int cout = std::max(cu, cv);
    PhysicalField pw = PhysicalField::zeros(pu.grid, cout);
    const std::size_t N = pu.grid.size();
    for (int c = 0; c < cout; ++c) {
        const auto& a = pu.components[cu == 1 ? 0 : c];
        const auto& b = pv.components[cv == 1 ? 0 : c];
        auto& o = pw.components[c];
        for (std::size_t i = 0; i < N; ++i) o[i] = a[i] * b[i];
    }
    return to_spectral(pw);
}

static void zero_nyquist(SpectralField& F) {
    const int n = F.grid.n;
    const int d = F.grid.dim;
    const std::size_t N = F.grid.size();
    for (std::size_t idx = 0; idx < N; ++idx) {
        std::size_t rem = idx;
        bool nyq = false;
        for (int a = 0; a < d; ++a) {
            if (static_cast<int>(rem % n) == n / 2) nyq = true;
            rem /= n;
        }
        if (nyq)
            for (auto& c : F.components) c[idx] = 0.0;
    }
}

SpectralField padded_product(const SpectralField& u, const SpectralField& v) {
    SpectralField w = resample(product_full(u, v), u.grid.n);
    zero_nyquist(w);
    return w;
}

void enforce_hermitian(SpectralField& F) {
    auto w = wavenumbers(F.grid);
    const std::size_t N = F.grid.size();
    for (auto& c : F.components) {
        ComplexArray out(N);
        for (std::size_t i = 0; i < N; ++i) out[i] = 0.5 * (c[i] + std::conj(c[w->neg[i]]));
        c.swap(out);
    }
}

void remove_mean(SpectralField& F) {
    for (auto& c : F.components) c[0] = 0.0;
}

SpectralField random_field(const GridSpec& grid, int ncomp, const RandomFieldSpec& spec,
                           std::mt19937_64& rng) {
    if (!(spec.kmin > 0.0) || spec.kmax < spec.kmin) throw InvalidInput("random_field: invalid shell range");
    auto w = wavenumbers(grid);
    SpectralField F = SpectralField::zeros(grid, ncomp);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t N = grid.size();
    for (std::size_t i = 0; i < N; ++i) {
        const double r = std::sqrt(static_cast<double>(w->m2[i]));
        for (int c = 0; c < ncomp; ++c) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            if (r < spec.kmin || r > spec.kmax) continue;
            F.components[c][i] = Complex(re, im) * std::pow(r, -spec.decay);
        }
    }
    enforce_hermitian(F);
    if (spec.divergence_free) {
        if (ncomp != grid.dim) throw InvalidInput("random_field: divergence-free needs a vector field");
        F = project_P(F);
    }
    return F;
}

} // namespace hns
