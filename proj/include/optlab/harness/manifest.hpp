#pragma once

#include <string>

#include "json.hpp"

namespace optlab::harness {

/// Run manifest: configuration echo, versions, and timings. This is the
/// one output that carries wall-clock numbers; the CSV artifacts stay
/// byte-reproducible per seed.
class Manifest {
public:
    Manifest(std::string command, std::uint64_t seed);

    nlohmann::json& config() { return j_["config"]; }
    nlohmann::json& results() { return j_["results"]; }
    void flag_partial(const std::string& reason);
    void add_timing(const std::string& label, double ms);
    void save(const std::string& path) const;

private:
    nlohmann::json j_;
};

std::string version_string();
std::string build_revision();

/// Creates the directory (and parents) if needed.
void ensure_directory(const std::string& path);

}  // namespace optlab::harness
