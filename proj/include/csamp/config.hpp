#pragma once

#include <string>
#include <vector>

#include "csamp/matrix.hpp"

namespace csamp {

/// Run-wide knobs: tolerances, refinement ladders, output paths, RNG seed.
/// Ladders must be strictly increasing; all tolerances strictly positive.
struct RunConfig {
    Tolerances tol;
    std::vector<double> omega_ladder = {1e2, 1e3, 1e4};
    std::vector<long long> n_ladder = {2500, 5000, 10000};
    int circle_nodes = 64;
    unsigned long long seed = 20240101;
    // 0 keeps the per-lemma defaults; any positive value replaces them all.
    double lemma_tol_override = 0.0;
    std::string output_dir = ".";
};

void validate(const RunConfig& config);

RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& config);

/// Loads the file at `path`; with an empty path, consults the
/// CORRECTED_SAMPLER_CONFIG environment variable, then falls back to defaults.
RunConfig load_config(const std::string& path);

}  // namespace csamp
