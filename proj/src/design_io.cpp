#include "neon/design_io.hpp"

#include <stdexcept>

namespace neon {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void check_schema(const json& j) {
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kDesignSchemaVersion)
        throw std::runtime_error("design document: unsupported schema_version");
}

ordered_json scheme_params_to_json(const SchemeParams& p) {
    return ordered_json{{"n_items", p.n_items}, {"k_max", p.k_max},
                        {"local_bound", p.local_bound}, {"circles", p.circles},
                        {"delta", p.delta}, {"lambda", p.lambda}, {"zeta", p.zeta},
                        {"epsilon", p.epsilon}, {"eta", p.eta}, {"b", p.b},
                        {"blocks", p.blocks}, {"block_rows", p.block_rows}, {"rho", p.rho}};
}

SchemeParams scheme_params_from_json(const json& j) {
    SchemeParams p;
    p.n_items = j.at("n_items").get<std::uint64_t>();
    p.k_max = j.at("k_max").get<std::uint64_t>();
    p.local_bound = j.at("local_bound").get<std::uint32_t>();
    p.circles = j.at("circles").get<std::uint32_t>();
    p.delta = j.at("delta").get<double>();
    p.lambda = j.at("lambda").get<double>();
    p.zeta = j.at("zeta").get<double>();
    p.epsilon = j.at("epsilon").get<double>();
    p.eta = j.at("eta").get<double>();
    p.b = j.at("b").get<std::uint32_t>();
    p.blocks = j.at("blocks").get<std::uint64_t>();
    p.block_rows = j.at("block_rows").get<std::uint64_t>();
    p.rho = j.at("rho").get<double>();
    return p;
}

ordered_json noisy_params_to_json(const NoisyParams& p) {
    return ordered_json{{"n_items", p.n_items}, {"k_max", p.k_max}, {"zeta", p.zeta},
                        {"reps", p.reps}, {"epsilon", p.epsilon},
                        {"subtree_depth", p.subtree_depth}, {"extra_levels", p.extra_levels},
                        {"c_double_prime", p.c_double_prime}, {"rho", p.rho},
                        {"rho_prime", p.rho_prime}, {"omega", p.omega}, {"beta", p.beta},
                        {"mode", p.mode == NoisyMode::bsc ? "bsc" : "bac"}};
}

NoisyParams noisy_params_from_json(const json& j) {
    NoisyParams p;
    p.n_items = j.at("n_items").get<std::uint64_t>();
    p.k_max = j.at("k_max").get<std::uint64_t>();
    p.zeta = j.at("zeta").get<double>();
    p.reps = j.at("reps").get<std::uint32_t>();
    p.epsilon = j.at("epsilon").get<double>();
    p.subtree_depth = j.at("subtree_depth").get<std::uint32_t>();
    p.extra_levels = j.at("extra_levels").get<std::uint32_t>();
    p.c_double_prime = j.at("c_double_prime").get<double>();
    p.rho = j.at("rho").get<double>();
    p.rho_prime = j.at("rho_prime").get<double>();
    p.omega = j.at("omega").get<double>();
    p.beta = j.at("beta").get<double>();
    p.mode = j.at("mode").get<std::string>() == "bsc" ? NoisyMode::bsc : NoisyMode::bac;
    return p;
}

} // namespace

nlohmann::ordered_json to_json(const SplitDesign& design) {
    return ordered_json{{"n_items", design.n_items},
                        {"defect_bound", design.defect_bound},
                        {"tests_per_level", design.tests_per_level},
                        {"start_level", design.start_level},
                        {"end_level", design.end_level},
                        {"reps", design.reps},
                        {"rng_seed", design.rng_seed},
                        {"assignment", design.assignment}};
}

SplitDesign split_design_from_json(const nlohmann::json& j) {
    SplitDesign d;
    d.n_items = j.at("n_items").get<std::uint64_t>();
    d.defect_bound = j.at("defect_bound").get<std::uint64_t>();
    d.tests_per_level = j.at("tests_per_level").get<std::uint32_t>();
    d.start_level = j.at("start_level").get<std::uint32_t>();
    d.end_level = j.at("end_level").get<std::uint32_t>();
    d.reps = j.at("reps").get<std::uint32_t>();
    d.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    d.assignment = j.at("assignment").get<std::vector<std::vector<std::uint32_t>>>();
    return d;
}

nlohmann::ordered_json to_json(const NeonDesign& design) {
    ordered_json j{{"schema_version", kDesignSchemaVersion},
                   {"scheme", "neon"},
                   {"N", design.params.n_items},
                   {"K", design.params.k_max},
                   {"parameters", scheme_params_to_json(design.params)},
                   {"seed", design.seed},
                   {"shared_local", design.shared_local}};
    ordered_json locals = ordered_json::array();
    for (const SplitDesign& local : design.locals) locals.push_back(to_json(local));
    j["locals"] = std::move(locals);
    j["circling"] = design.circling;
    return j;
}

NeonDesign neon_design_from_json(const nlohmann::json& j) {
    check_schema(j);
    if (j.at("scheme").get<std::string>() != "neon")
        throw std::runtime_error("design document: not a neon design");
    NeonDesign d;
    d.params = scheme_params_from_json(j.at("parameters"));
    d.seed = j.at("seed").get<std::uint64_t>();
    d.shared_local = j.at("shared_local").get<bool>();
    for (const auto& local : j.at("locals")) d.locals.push_back(split_design_from_json(local));
    d.circling = j.at("circling").get<std::vector<std::uint32_t>>();
    return d;
}

nlohmann::ordered_json to_json(const NoisyDesign& design) {
    return ordered_json{{"schema_version", kDesignSchemaVersion},
                        {"scheme", design.params.mode == NoisyMode::bsc ? "noisy-bsc" : "noisy-bac"},
                        {"N", design.params.n_items},
                        {"K", design.params.k_max},
                        {"parameters", noisy_params_to_json(design.params)},
                        {"seed", design.seed},
                        {"branch", to_json(design.branch)},
                        {"chain", design.chain}};
}

NoisyDesign noisy_design_from_json(const nlohmann::json& j) {
    check_schema(j);
    const auto scheme = j.at("scheme").get<std::string>();
    if (scheme != "noisy-bsc" && scheme != "noisy-bac")
        throw std::runtime_error("design document: not a noisy design");
    NoisyDesign d;
    d.params = noisy_params_from_json(j.at("parameters"));
    d.seed = j.at("seed").get<std::uint64_t>();
    d.branch = split_design_from_json(j.at("branch"));
    d.chain = j.at("chain").get<std::vector<std::vector<std::uint32_t>>>();
    return d;
}

} // namespace neon
