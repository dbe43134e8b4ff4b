#pragma once

#include <string>

#include "jetflow/field.hpp"

namespace jetflow {

// Self-describing snapshot container, documented byte-exactly in
// docs/container.md:
//   bytes 0..7   magic "JFARRAY1"
//   bytes 8..11  uint32 LE version (currently 1)
//   byte  12     endianness marker 0x01 (written on LE hosts only)
//   byte  13     rank code: 1 scalar, 3 vector, 9 tensor
//   byte  14     real flag (0/1)
//   byte  15     reserved, zero
//   bytes 16..19 uint32 LE n_per_axis
//   then n^3 * ncomp IEEE-754 LE doubles, row-major over (n1,n2,n3,component)
void write_snapshot(const std::string& path, const PhysicalField& f, bool real_flag = true);
PhysicalField read_snapshot(const std::string& path);

void write_field(const std::string& path, const SpectralField& f);
SpectralField read_field(const std::string& path);

} // namespace jetflow
