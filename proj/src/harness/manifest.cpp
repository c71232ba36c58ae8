#include "optlab/harness/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#ifndef OPTLAB_VERSION
#define OPTLAB_VERSION "0.1.0"
#endif
#ifndef OPTLAB_REVISION
#define OPTLAB_REVISION "unknown"
#endif

namespace optlab::harness {

Manifest::Manifest(std::string command, std::uint64_t seed) {
    j_["command"] = std::move(command);
    j_["seed"] = seed;
    j_["version"] = version_string();
    j_["revision"] = build_revision();
    j_["config"] = nlohmann::json::object();
    j_["results"] = nlohmann::json::object();
    j_["timings_ms"] = nlohmann::json::object();
    j_["partial"] = false;
}

void Manifest::flag_partial(const std::string& reason) {
    j_["partial"] = true;
    j_["partial_reason"] = reason;
}

void Manifest::add_timing(const std::string& label, double ms) { j_["timings_ms"][label] = ms; }

void Manifest::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("Manifest::save: cannot open " + path);
    out << j_.dump(2) << "\n";
}

std::string version_string() { return OPTLAB_VERSION; }
std::string build_revision() { return OPTLAB_REVISION; }

void ensure_directory(const std::string& path) {
    std::filesystem::create_directories(path);
}

}  // namespace optlab::harness
