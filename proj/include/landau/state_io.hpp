#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "landau/grid.hpp"

namespace landau {

// Binary SampledState container:
//   8 bytes   magic "LANDAUSS"
//   uint32    format version (little endian)
//   uint64    header length in bytes
//   header    UTF-8 JSON: grid, time, physical parameters, amplitude count
//   payload   row-major amplitudes, re/im interleaved, IEEE-754 binary64 little endian
// Round trips are bit-exact.
inline constexpr std::uint32_t kStateFormatVersion = 1;

void write_state(std::ostream& out, const SampledState& state);
SampledState read_state(std::istream& in);

void save_state(const std::string& path, const SampledState& state);
SampledState load_state(const std::string& path);

}  // namespace landau
