#pragma once

#include <string>
#include <vector>

#include "optlab/numkit/vector.hpp"

namespace optlab::problems {

using numkit::Vector;

struct Dataset {
    std::vector<Vector> inputs;
    std::vector<Vector> targets;

    std::size_t size() const { return inputs.size(); }
    std::size_t input_dim() const { return inputs.empty() ? 0 : inputs.front().size(); }
    std::size_t target_dim() const { return targets.empty() ? 0 : targets.front().size(); }

    void validate() const;
};

/// One row per sample, inputs then targets, header line, 17 significant
/// digits.
void save_csv(const Dataset& data, const std::string& path);
Dataset load_csv(const std::string& path, std::size_t input_dim);

}  // namespace optlab::problems
