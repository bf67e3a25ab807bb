/// @file field_io.hpp
/// @brief Binary field snapshots and CSV helpers

#pragma once

#include "hns/spectral.hpp"

#include <iosfwd>
#include <string>
#include <variant>

namespace hns {

/// Snapshot layout: magic "HNSF", u32 version, u32 dim, u32 n, f64 L,
/// f64 time, u8 is_spectral, then components in component-major, row-major
/// order as little-endian f64 (interleaved re/im when spectral).
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
    double time = 0.0;
    std::variant<PhysicalField, SpectralField> field;
};

void write_snapshot(const std::string& path, const SpectralField& F, double time, bool spectral);
void write_snapshot(std::ostream& os, const SpectralField& F, double time, bool spectral);
Snapshot read_snapshot(const std::string& path);
Snapshot read_snapshot(std::istream& is);

/// Fixed-format number for CSV output, round-trippable
std::string fmt_double(double x);

} // namespace hns
