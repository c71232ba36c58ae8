#pragma once

#include <array>
#include <vector>

#include "optlab/numkit/rng.hpp"

namespace optlab::sampleweight {

using numkit::RngStream;

/// Batch with a prescribed fraction from each group, largest-remainder
/// rounding so the composition hits `size` exactly. Indices are global
/// positions in the flattened group order; draws are without replacement
/// within each group.
std::vector<std::size_t> stratified_batch(const std::vector<std::size_t>& group_sizes,
                                          const std::vector<double>& fractions, std::size_t size,
                                          RngStream& rng);

/// Spatially diverse batch over a 1-D pool: the range is split into equal
/// cells and points are drawn round-robin, at most ceil(size/cells) per
/// cell.
std::vector<std::size_t> spatial_diverse_batch(const std::vector<double>& points,
                                               std::size_t size, std::size_t cells,
                                               RngStream& rng);

}  // namespace optlab::sampleweight
