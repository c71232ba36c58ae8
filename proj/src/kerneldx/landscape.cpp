#include "optlab/kerneldx/landscape.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace optlab::kerneldx {

namespace {

void normalize_direction(Vector& d, const Vector& theta,
                         const std::vector<std::pair<std::size_t, std::size_t>>& blocks,
                         bool filter_normalize) {
    if (filter_normalize && !blocks.empty()) {
        for (const auto& [off, len] : blocks) {
            double dn = 0.0, tn = 0.0;
            for (std::size_t i = off; i < off + len; ++i) {
                dn += d[i] * d[i];
                tn += theta[i] * theta[i];
            }
            dn = std::sqrt(dn);
            tn = std::sqrt(tn);
            if (dn == 0.0) continue;
            const double scale = (tn > 0.0 ? tn : 1.0) / dn;
            for (std::size_t i = off; i < off + len; ++i) d[i] *= scale;
        }
        return;
    }
    const double dn = numkit::norm2(d);
    const double tn = numkit::norm2(theta);
    if (dn > 0.0) d *= (tn > 0.0 ? tn : 1.0) / dn;
}

}  // namespace

LandscapeGrid landscape_projection(const FiniteSumObjective& obj, const Vector& theta_star,
                                   const LandscapeOptions& opts, RngStream& rng) {
    if (opts.steps < 3 || opts.steps % 2 == 0)
        throw std::invalid_argument("landscape_projection: steps must be odd and >= 3");
    const std::size_t n = theta_star.size();

    LandscapeGrid grid;
    grid.d1 = Vector(n);
    grid.d2 = Vector(n);
    for (std::size_t i = 0; i < n; ++i) grid.d1[i] = rng.normal(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) grid.d2[i] = rng.normal(0.0, 1.0);
    // orthogonalize d2 against d1 before the per-block scaling
    const double proj = numkit::dot(grid.d2, grid.d1) / numkit::dot(grid.d1, grid.d1);
    numkit::axpy(-proj, grid.d1, grid.d2);
    normalize_direction(grid.d1, theta_star, opts.blocks, opts.filter_normalize);
    normalize_direction(grid.d2, theta_star, opts.blocks, opts.filter_normalize);

    grid.offsets = Vector(opts.steps);
    const std::size_t half = opts.steps / 2;
    for (std::size_t i = 0; i < opts.steps; ++i)
        grid.offsets[i] = opts.half_width *
                          (static_cast<double>(i) - static_cast<double>(half)) /
                          static_cast<double>(half);

    grid.values = Matrix(opts.steps, opts.steps);
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(opts.steps * opts.steps);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
        const std::size_t i = static_cast<std::size_t>(idx) / opts.steps;
        const std::size_t j = static_cast<std::size_t>(idx) % opts.steps;
        if (i == half && j == half) {
            grid.values(i, j) = obj.value(theta_star);  // center is exactly θ*
            continue;
        }
        Vector t = theta_star;
        numkit::axpy(grid.offsets[i], grid.d1, t);
        numkit::axpy(grid.offsets[j], grid.d2, t);
        grid.values(i, j) = obj.value(t);
    }
    return grid;
}

double axis_anisotropy(const LandscapeGrid& grid) {
    const std::size_t half = grid.offsets.size() / 2;
    const double h = grid.offsets[half + 1] - grid.offsets[half];
    const double center = grid.values(half, half);
    const double curv_a =
        std::abs(grid.values(half + 1, half) - 2.0 * center + grid.values(half - 1, half)) /
        (h * h);
    const double curv_b =
        std::abs(grid.values(half, half + 1) - 2.0 * center + grid.values(half, half - 1)) /
        (h * h);
    const double lo = std::min(curv_a, curv_b);
    const double hi = std::max(curv_a, curv_b);
    return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

void save_landscape_csv(const LandscapeGrid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_landscape_csv: cannot open " + path);
    out.precision(17);
    out << "a,b,f\n";
    for (std::size_t i = 0; i < grid.offsets.size(); ++i)
        for (std::size_t j = 0; j < grid.offsets.size(); ++j)
            out << grid.offsets[i] << "," << grid.offsets[j] << "," << grid.values(i, j) << "\n";
}

std::vector<std::pair<std::size_t, std::size_t>> mlp_blocks(const admodel::MlpSpec& spec) {
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t l = 0; l < spec.depth(); ++l)
        blocks.emplace_back(spec.weight_offset(l),
                            spec.layer_widths[l + 1] * spec.layer_widths[l]);
    for (std::size_t l = 0; l < spec.depth(); ++l)
        blocks.emplace_back(spec.bias_offset(l), spec.layer_widths[l + 1]);
    return blocks;
}

}  // namespace optlab::kerneldx
