#pragma once

#include <filesystem>
#include <string>

#include "selgrade/pipeline.hpp"

namespace selgrade {

/// SVG of the Poincare disc for d = 2: cone cells colored by component, the equator
/// components on the rim, and the half-line witness chains as polylines.
/// Throws UnsupportedDimension for d != 2 and InvalidArgument without a hemisphere grid.
[[nodiscard]] std::string poincare_svg(const LevelArtifacts& level);

void write_poincare_svg(const std::filesystem::path& path, const LevelArtifacts& level);

}  // namespace selgrade
