/// @file spectral.hpp
/// @brief Periodic grids, spectral fields and Fourier multipliers

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace hns {

using Complex = std::complex<double>;
using ComplexArray = std::vector<Complex>;
using RealArray = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct GridSpec {
    int dim = 2;
    int n = 64;
    double L = 2.0 * kPi;
    double dealias_fraction = 2.0 / 3.0;

    std::size_t size() const;
    double h() const { return L / n; }
    /// Fundamental wavenumber 2*pi/L
    double k0() const { return 2.0 * kPi / L; }
    /// Largest representable wavenumber along one axis
    double k_max() const { return k0() * (n / 2); }
    double volume() const;
    void validate() const;
    bool operator==(const GridSpec& o) const;
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

/// Per-grid wavenumber tables, indexed by flat row-major mode index.
/// `k[a]` holds the true wavenumber along axis a with indices in [-n/2, n/2).
/// `kd[a]` is the first-derivative wavenumber: identical except zero on the
/// Nyquist index, so odd multipliers keep real fields real.
struct Wavenumbers {
    GridSpec grid;
    std::vector<double> k[3];
    std::vector<double> kd[3];
    std::vector<double> k2;       // |k|^2 from k
    std::vector<double> kd2;      // |kd|^2
    std::vector<std::int64_t> m2; // sum of squared integer indices
    std::vector<std::size_t> neg; // flat index of -k
};

std::shared_ptr<const Wavenumbers> wavenumbers(const GridSpec& grid);

struct PhysicalField {
    GridSpec grid;
    std::vector<RealArray> components;

    static PhysicalField zeros(const GridSpec& grid, int ncomp);
    int ncomp() const { return static_cast<int>(components.size()); }
};

struct SpectralField {
    GridSpec grid;
    std::vector<ComplexArray> components;

    static SpectralField zeros(const GridSpec& grid, int ncomp);
    int ncomp() const { return static_cast<int>(components.size()); }
    Complex mean(int c) const { return components[c][0]; }
    double max_abs() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);
    /// this += s * o
    SpectralField& axpy(double s, const SpectralField& o);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Physical coordinate of grid index i along one axis
inline double coordinate(const GridSpec& g, int i) { return g.h() * i; }

/// Forward transform; coefficients are mode amplitudes (divided by n^dim)
SpectralField to_spectral(const PhysicalField& f);
/// Inverse transform, returning the real part
PhysicalField to_physical(const SpectralField& F);

/// Zero every mode with |k_j| > fraction * k_max on some axis
SpectralField dealias(const SpectralField& F, double fraction);
SpectralField dealias(const SpectralField& F);

SpectralField gradient(const SpectralField& F);
SpectralField divergence(const SpectralField& F);
SpectralField laplacian(const SpectralField& F);
/// 2D: scalar vorticity; 3D: vector curl
SpectralField curl(const SpectralField& F);

/// Leray projector onto divergence-free fields; keeps the mean
SpectralField project_P(const SpectralField& F);
/// Complementary gradient projector; zero at k = 0
SpectralField project_Q(const SpectralField& F);

/// Multiply by |k|^sigma, zeroing the mean coefficient
SpectralField lambda_pow(const SpectralField& F, double sigma);

/// Homogeneous Sobolev norm with the torus measure, so sigma = 0 equals the
/// L2 norm of the physical field
double sobolev_norm(const SpectralField& F, double sigma);
double sobolev_norm_sq(const SpectralField& F, double sigma);
/// Real L2 inner product of two fields, integrated over the torus
double inner_product(const SpectralField& a, const SpectralField& b, double sigma = 0.0);

/// L^p norm by trapezoid quadrature on a grid refined by `refine`
/// (spectral interpolation); p <= 0 means the supremum
double lebesgue_norm(const SpectralField& F, double p, int refine = 1);
/// Maximum pointwise Euclidean magnitude on the grid samples
double sup_norm(const SpectralField& F);

/// Zero-pad or truncate to a grid with a different resolution
SpectralField resample(const SpectralField& F, int n_new);
/// Exact product of band-limited fields on the doubled grid; scalar fields
/// broadcast against vector fields, otherwise componentwise
SpectralField product_full(const SpectralField& u, const SpectralField& v);
/// product_full truncated back to the input grid, Nyquist planes zeroed
SpectralField padded_product(const SpectralField& u, const SpectralField& v);

/// Symmetrize so the field is the transform of a real field
void enforce_hermitian(SpectralField& F);
void remove_mean(SpectralField& F);
bool same_grid(const SpectralField& a, const SpectralField& b);

/// Seeded random band-limited field: Gaussian coefficients with
/// amplitude |k|^(-decay) on shells kmin <= |k| L / 2pi <= kmax
struct RandomFieldSpec {
    double kmin = 1.0;
    double kmax = 8.0;
    double decay = 1.0;
    bool divergence_free = false;
};
SpectralField random_field(const GridSpec& grid, int ncomp, const RandomFieldSpec& spec,
                           std::mt19937_64& rng);

} // namespace hns
