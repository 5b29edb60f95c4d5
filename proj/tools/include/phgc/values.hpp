#pragma once

#include <string>

#include "phg/autodiff.hpp"
#include "phg/place.hpp"
#include "phg/program.hpp"

namespace phgc {

/// JSON object mapping node names to coefficients: either a list (all 2^d
/// blades in ascending order, or only the blades of the node's declared
/// grades) or an object keyed by blade name. Numbers may be JSON numbers or
/// "num/den" strings.
phg::ValueMap parse_values(const std::string& json_text, const phg::Program& program, phg::NumericMode mode);

/// {"name": ..., "rows": R, "cols": C, "tile_kb": K, "dma_channels": D}
phg::TargetModel parse_target(const std::string& json_text);

}  // namespace phgc
