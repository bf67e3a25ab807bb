/// @file field_io.cpp
/// @brief Snapshot serialization

#include "hns/field_io.hpp"
#include "hns/error.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace hns {

static_assert(std::endian::native == std::endian::little, "snapshot IO assumes a little-endian host");

namespace {

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw InvalidInput("snapshot: truncated header");
    return v;
}

} // namespace

void write_snapshot(std::ostream& os, const SpectralField& F, double time, bool spectral) {
    os.write("HNSF", 4);
    put<std::uint32_t>(os, kSnapshotVersion);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(F.grid.dim));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(F.grid.n));
    put<double>(os, F.grid.L);
    put<double>(os, time);
    put<std::uint8_t>(os, spectral ? 1 : 0);
    if (spectral) {
        for (const auto& c : F.components)
            os.write(reinterpret_cast<const char*>(c.data()), static_cast<std::streamsize>(c.size() * sizeof(Complex)));
    } else {
        PhysicalField f = to_physical(F);
        for (const auto& c : f.components)
            os.write(reinterpret_cast<const char*>(c.data()), static_cast<std::streamsize>(c.size() * sizeof(double)));
    }
    if (!os) throw Error("snapshot: write failed");
}

void write_snapshot(const std::string& path, const SpectralField& F, double time, bool spectral) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("snapshot: cannot open " + path);
    write_snapshot(os, F, time, spectral);
}

Snapshot read_snapshot(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "HNSF", 4) != 0) throw InvalidInput("snapshot: bad magic");
    const auto version = get<std::uint32_t>(is);
    if (version != kSnapshotVersion) throw InvalidInput("snapshot: unsupported version");
    GridSpec g;
    g.dim = static_cast<int>(get<std::uint32_t>(is));
    g.n = static_cast<int>(get<std::uint32_t>(is));
    g.L = get<double>(is);
    const double time = get<double>(is);
    const bool spectral = get<std::uint8_t>(is) != 0;
    g.validate();

    std::string payload((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    const std::size_t N = g.size();
    const std::size_t per = N * (spectral ? sizeof(Complex) : sizeof(double));
    if (payload.empty() || payload.size() % per != 0) throw InvalidInput("snapshot: payload size mismatch");
    const int ncomp = static_cast<int>(payload.size() / per);

    Snapshot s;
    s.time = time;
    if (spectral) {
        SpectralField F = SpectralField::zeros(g, ncomp);
        for (int c = 0; c < ncomp; ++c) std::memcpy(F.components[c].data(), payload.data() + c * per, per);
        s.field = std::move(F);
    } else {
        PhysicalField f = PhysicalField::zeros(g, ncomp);
        for (int c = 0; c < ncomp; ++c) std::memcpy(f.components[c].data(), payload.data() + c * per, per);
        s.field = std::move(f);
    }
    return s;
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidInput("snapshot: cannot open " + path);
    return read_snapshot(is);
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

} // namespace hns
