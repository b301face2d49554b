#pragma once

#include <filesystem>
#include <iosfwd>

#include "selgrade/chain.hpp"

namespace selgrade {

/// Plain-text chain certificate:
///
///     # selgrade chain v1
///     # dim <d> controls <m>
///     x_1 .. x_d  T  u_1 .. u_m  eps      (one line per step)
///     x_1 .. x_d                          (terminal point)
///
/// Numbers use shortest round-trip decimal form, so write -> read is exact.
void write_chain(std::ostream& out, const Chain& chain);
void write_chain(const std::filesystem::path& path, const Chain& chain);

/// Throws ParseError with the offending line number.
Chain read_chain(std::istream& in);
Chain read_chain(const std::filesystem::path& path);

}  // namespace selgrade
