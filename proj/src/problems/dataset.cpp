#include "optlab/problems/dataset.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace optlab::problems {

void Dataset::validate() const {
    if (inputs.size() != targets.size())
        throw std::invalid_argument("Dataset: inputs/targets count mismatch");
    if (inputs.empty()) throw std::invalid_argument("Dataset: empty");
    for (const auto& x : inputs)
        if (x.size() != input_dim()) throw std::invalid_argument("Dataset: ragged inputs");
    for (const auto& y : targets)
        if (y.size() != target_dim()) throw std::invalid_argument("Dataset: ragged targets");
}

void save_csv(const Dataset& data, const std::string& path) {
    data.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_csv: cannot open " + path);
    out.precision(17);
    for (std::size_t j = 0; j < data.input_dim(); ++j) out << "x" << j << ",";
    for (std::size_t j = 0; j < data.target_dim(); ++j)
        out << "y" << j << (j + 1 < data.target_dim() ? "," : "");
    out << "\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = 0; j < data.input_dim(); ++j) out << data.inputs[i][j] << ",";
        for (std::size_t j = 0; j < data.target_dim(); ++j)
            out << data.targets[i][j] << (j + 1 < data.target_dim() ? "," : "");
        out << "\n";
    }
}

Dataset load_csv(const std::string& path, std::size_t input_dim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);
    Dataset data;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() <= input_dim) throw std::runtime_error("load_csv: malformed row");
        Vector x(input_dim), y(row.size() - input_dim);
        for (std::size_t j = 0; j < input_dim; ++j) x[j] = row[j];
        for (std::size_t j = input_dim; j < row.size(); ++j) y[j - input_dim] = row[j];
        data.inputs.push_back(std::move(x));
        data.targets.push_back(std::move(y));
    }
    data.validate();
    return data;
}

}  // namespace optlab::problems
