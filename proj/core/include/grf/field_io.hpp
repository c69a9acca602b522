#pragma once

#include <filesystem>
#include <iosfwd>

#include "grf/synth.hpp"

namespace grf {

/// GRF1 binary field format, all values little-endian:
///   magic "GRF1" | u32 version=1 | u32 dim |
///   per dimension: u64 count N_i, f64 length l_i |
///   P f64 field values, row-major.
void write_grf1(const std::filesystem::path& path, const RealField& field);

/// Reads a GRF1 file; validates magic, version and payload size. Provenance
/// is not stored in the format and comes back default-initialized.
RealField read_grf1(const std::filesystem::path& path);

/// CSV dump: header x1,...,xd,value then one row per grid point.
void write_field_csv(std::ostream& os, const RealField& field);

/// Binary PGM (P5) preview for 2D fields, min-max normalized to 0..255.
/// Width is N_2 (fast index), height N_1. Throws for d != 2.
void write_field_pgm(const std::filesystem::path& path, const RealField& field);

}  // namespace grf
