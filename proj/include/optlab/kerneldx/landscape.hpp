#pragma once

#include <string>
#include <utility>

#include "optlab/admodel/mlp.hpp"
#include "optlab/numkit/rng.hpp"
#include "optlab/problems/objective.hpp"

namespace optlab::kerneldx {

using numkit::Matrix;
using numkit::RngStream;
using numkit::Vector;
using problems::FiniteSumObjective;

struct LandscapeGrid {
    Vector offsets;  // shared coordinates of both axes
    Matrix values;   // f(θ* + a·d₁ + b·d₂), rows index a
    Vector d1, d2;
};

struct LandscapeOptions {
    double half_width = 1.0;
    std::size_t steps = 21;  // odd so the center hits θ* exactly
    /// Scale direction blocks to the parameter blocks' norms (the
    /// filter-normalized visualization convention). Blocks are
    /// (offset,length) pairs; when empty, directions are normalized
    /// globally to ‖θ*‖ (or unit length when θ* = 0).
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    bool filter_normalize = true;
};

/// Two random orthonormalized directions, objective sampled over the grid;
/// grid evaluations run in parallel (independent). Center value equals
/// f(θ*).
LandscapeGrid landscape_projection(const FiniteSumObjective& obj, const Vector& theta_star,
                                   const LandscapeOptions& opts, RngStream& rng);

/// max/min ratio of the |second difference| curvature along the two axes
/// at the grid center.
double axis_anisotropy(const LandscapeGrid& grid);

/// CSV `a,b,f`, 17 significant digits.
void save_landscape_csv(const LandscapeGrid& grid, const std::string& path);

/// Parameter blocks of an MLP packing (one block per weight matrix and per
/// bias vector), for filter normalization.
std::vector<std::pair<std::size_t, std::size_t>> mlp_blocks(const admodel::MlpSpec& spec);

}  // namespace optlab::kerneldx
