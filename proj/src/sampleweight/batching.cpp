#include "optlab/sampleweight/batching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace optlab::sampleweight {

namespace {

/// First `count` entries of a partial Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count,
                                                    RngStream& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i)
        std::swap(idx[i], idx[i + rng.uniform_index(n - i)]);
    idx.resize(count);
    return idx;
}

}  // namespace

std::vector<std::size_t> stratified_batch(const std::vector<std::size_t>& group_sizes,
                                          const std::vector<double>& fractions, std::size_t size,
                                          RngStream& rng) {
    const std::size_t G = group_sizes.size();
    if (fractions.size() != G) throw std::invalid_argument("stratified_batch: fraction count");
    double fsum = 0.0;
    for (double f : fractions) {
        if (f < 0.0) throw std::invalid_argument("stratified_batch: negative fraction");
        fsum += f;
    }
    if (std::abs(fsum - 1.0) > 1e-9)
        throw std::invalid_argument("stratified_batch: fractions must sum to 1");

    // largest-remainder rounding of size·fraction_g
    std::vector<std::size_t> counts(G);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t g = 0; g < G; ++g) {
        const double target = static_cast<double>(size) * fractions[g];
        counts[g] = static_cast<std::size_t>(std::floor(target));
        assigned += counts[g];
        remainders.emplace_back(target - std::floor(target), g);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;  // deterministic tie-break
    });
    for (std::size_t r = 0; assigned < size; ++r, ++assigned) ++counts[remainders[r % G].second];

    std::vector<std::size_t> batch;
    batch.reserve(size);
    std::size_t offset = 0;
    for (std::size_t g = 0; g < G; ++g) {
        if (counts[g] > group_sizes[g])
            throw std::invalid_argument("stratified_batch: group population too small");
        for (std::size_t local : sample_without_replacement(group_sizes[g], counts[g], rng))
            batch.push_back(offset + local);
        offset += group_sizes[g];
    }
    return batch;
}

std::vector<std::size_t> spatial_diverse_batch(const std::vector<double>& points,
                                               std::size_t size, std::size_t cells,
                                               RngStream& rng) {
    if (cells == 0) throw std::invalid_argument("spatial_diverse_batch: cells must be >= 1");
    if (size > points.size())
        throw std::invalid_argument("spatial_diverse_batch: more points requested than exist");

    const auto [lo_it, hi_it] = std::minmax_element(points.begin(), points.end());
    const double lo = *lo_it;
    const double span = std::max(*hi_it - lo, 1e-300);

    std::vector<std::vector<std::size_t>> bins(cells);
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto c = static_cast<std::size_t>((points[i] - lo) / span * static_cast<double>(cells));
        bins[std::min(c, cells - 1)].push_back(i);
    }
    // shuffle draw order within each cell
    for (auto& bin : bins)
        for (std::size_t i = 0; i + 1 < bin.size(); ++i)
            std::swap(bin[i], bin[i + rng.uniform_index(bin.size() - i)]);

    std::vector<std::size_t> batch;
    batch.reserve(size);
    std::vector<std::size_t> cursor(cells, 0);
    while (batch.size() < size) {
        bool advanced = false;
        for (std::size_t c = 0; c < cells && batch.size() < size; ++c) {
            if (cursor[c] < bins[c].size()) {
                batch.push_back(bins[c][cursor[c]++]);
                advanced = true;
            }
        }
        if (!advanced) break;  // all cells exhausted (cannot happen given the size check)
    }
    return batch;
}

}  // namespace optlab::sampleweight
