#include "csamp/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace csamp {

namespace {

using nlohmann::json;

template <typename T>
void require_increasing(const std::vector<T>& v, const char* name) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            throw ValidationError(std::string("config: ") + name +
                                  " must be strictly increasing");
}

}  // namespace

void validate(const RunConfig& config) {
    if (!(config.tol.proj > 0.0) || !(config.tol.cluster_rel > 0.0) ||
        !(config.tol.resolvent_residual > 0.0) ||
        !(config.tol.pole_collision_rel > 0.0) || !(config.tol.real_truncation > 0.0))
        throw ValidationError("config: all tolerances must be positive");
    if (config.omega_ladder.empty() || config.n_ladder.empty())
        throw ValidationError("config: ladders must be nonempty");
    require_increasing(config.omega_ladder, "omega_ladder");
    require_increasing(config.n_ladder, "N ladder");
    if (config.circle_nodes < 8)
        throw ValidationError("config: circle_nodes must be at least 8");
    if (config.lemma_tol_override < 0.0)
        throw ValidationError("config: lemma_tol_override must be >= 0");
}

RunConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config JSON parse error: ") + e.what());
    }
    RunConfig c;
    c.tol.proj = j.value("tol_proj", c.tol.proj);
    c.tol.cluster_rel = j.value("tol_cluster_rel", c.tol.cluster_rel);
    c.tol.resolvent_residual = j.value("tol_resolvent_residual", c.tol.resolvent_residual);
    c.tol.pole_collision_rel = j.value("tol_pole_collision_rel", c.tol.pole_collision_rel);
    c.tol.real_truncation = j.value("tol_real_truncation", c.tol.real_truncation);
    c.omega_ladder = j.value("omega_ladder", c.omega_ladder);
    c.n_ladder = j.value("N_ladder", c.n_ladder);
    c.circle_nodes = j.value("circle_nodes", c.circle_nodes);
    c.seed = j.value("seed", c.seed);
    c.lemma_tol_override = j.value("lemma_tol_override", c.lemma_tol_override);
    c.output_dir = j.value("output_dir", c.output_dir);
    validate(c);
    return c;
}

std::string config_to_json(const RunConfig& c) {
    json j;
    j["tol_proj"] = c.tol.proj;
    j["tol_cluster_rel"] = c.tol.cluster_rel;
    j["tol_resolvent_residual"] = c.tol.resolvent_residual;
    j["tol_pole_collision_rel"] = c.tol.pole_collision_rel;
    j["tol_real_truncation"] = c.tol.real_truncation;
    j["omega_ladder"] = c.omega_ladder;
    j["N_ladder"] = c.n_ladder;
    j["circle_nodes"] = c.circle_nodes;
    j["seed"] = c.seed;
    j["lemma_tol_override"] = c.lemma_tol_override;
    j["output_dir"] = c.output_dir;
    return j.dump(2);
}

RunConfig load_config(const std::string& path) {
    std::string effective = path;
    if (effective.empty()) {
        if (const char* env = std::getenv("CORRECTED_SAMPLER_CONFIG")) effective = env;
    }
    if (effective.empty()) return RunConfig{};
    std::ifstream in(effective);
    if (!in) throw ValidationError("config: cannot open '" + effective + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

}  // namespace csamp
