#include "neon/report_io.hpp"

#include <cstdio>
#include <set>
#include <stdexcept>

namespace neon {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

} // namespace

std::string csv_header() {
    return "scheme,N,K,M,trials,failures,error_rate,ci_low,ci_high,mean_nodes_visited,"
           "max_nodes_visited,err1_count,err2_count,blowup_count,seed";
}

std::string csv_row(const AggregateReport& r) {
    std::string row;
    row += scheme_name(r.scheme);
    row += ',' + std::to_string(r.n_items);
    row += ',' + std::to_string(r.k_max);
    row += ',' + std::to_string(r.tests);
    row += ',' + std::to_string(r.trials);
    row += ',' + std::to_string(r.failures);
    row += ',' + format_double("%.6f", r.error_rate);
    row += ',' + format_double("%.6f", r.ci_low);
    row += ',' + format_double("%.6f", r.ci_high);
    row += ',' + format_double("%.3f", r.mean_nodes_visited);
    row += ',' + std::to_string(r.max_nodes_visited);
    row += ',' + std::to_string(r.err1_count);
    row += ',' + std::to_string(r.err2_count);
    row += ',' + std::to_string(r.blowup_count);
    row += ',' + std::to_string(r.master_seed);
    return row;
}

std::string to_csv(const std::vector<AggregateReport>& reports) {
    std::string out = csv_header() + '\n';
    for (const auto& r : reports) out += csv_row(r) + '\n';
    return out;
}

nlohmann::ordered_json to_json(const ConstraintReport& report) {
    ordered_json constraints = ordered_json::object();
    for (const Constraint& c : report.constraints)
        constraints[c.name] = ordered_json{{"lhs", c.lhs},
                                           {"rhs", c.rhs},
                                           {"op", std::string(relation_symbol(c.rel))},
                                           {"satisfied", c.satisfied}};
    ordered_json exponents = ordered_json::object();
    for (const auto& [name, value] : report.exponents) exponents[name] = value;
    return ordered_json{{"constraints", std::move(constraints)},
                        {"exponents", std::move(exponents)},
                        {"all_satisfied", report.all_satisfied()}};
}

nlohmann::ordered_json to_json(const AggregateReport& r) {
    ordered_json hist = ordered_json::object();
    for (const auto& [m, c] : r.multiplicity_histogram) hist[std::to_string(m)] = c;
    ordered_json j{{"scheme", scheme_name(r.scheme)},
                   {"N", r.n_items},
                   {"K", r.k_max},
                   {"M", r.tests},
                   {"trials", r.trials},
                   {"failures", r.failures},
                   {"error_rate", r.error_rate},
                   {"ci_low", r.ci_low},
                   {"ci_high", r.ci_high},
                   {"mean_nodes_visited", r.mean_nodes_visited},
                   {"max_nodes_visited", r.max_nodes_visited},
                   {"err1_count", r.err1_count},
                   {"err2_count", r.err2_count},
                   {"blowup_count", r.blowup_count},
                   {"seed", r.master_seed},
                   {"total_fp", r.total_fp},
                   {"total_fn", r.total_fn},
                   {"gamma_hat", r.gamma_hat},
                   {"gamma_bound", r.gamma_bound},
                   {"closed_form_tests_log2", r.closed_form_tests_log2},
                   {"closed_form_tests_ln", r.closed_form_tests_ln},
                   {"multiplicity_histogram", std::move(hist)},
                   {"constraints", to_json(r.constraints)}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

nlohmann::ordered_json to_json(const std::vector<AggregateReport>& reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr;
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
    ordered_json j{{"schema_version", kConfigSchemaVersion},
                   {"scheme", scheme_name(c.scheme)},
                   {"n", c.n_items},
                   {"k", c.k_max},
                   {"c", c.circles},
                   {"b", c.b},
                   {"eta", c.eta},
                   {"epsilon", c.epsilon},
                   {"c_prime", c.reps},
                   {"c_double_prime", c.c_double_prime},
                   {"rho", c.rho},
                   {"rho_prime", c.rho_prime},
                   {"trials", c.trials},
                   {"seed", c.master_seed},
                   {"strict", c.strict},
                   {"fresh_design_per_trial", c.fresh_design_per_trial},
                   {"shared_local", c.shared_local},
                   {"parallel", c.exec == Exec::parallel}};
    if (c.zeta) j["zeta"] = *c.zeta;
    if (c.lambda_override) j["lambda"] = *c.lambda_override;
    if (c.subtree_depth) j["r"] = *c.subtree_depth;
    if (c.omega) j["omega"] = *c.omega;
    if (c.defective_model == DefectiveModel::explicit_list)
        j["defectives"] = c.explicit_defectives;
    else
        j["defective_model"] = c.defective_model == DefectiveModel::exact_k ? "exact-k" : "up-to-k";
    return j;
}

std::string trace_csv_header() { return "trial,nodes_visited,blowup_abort,frontier_sizes"; }

std::string trace_csv_row(std::uint32_t trial, const TrialStats& stats) {
    std::string sizes;
    for (std::uint64_t f : stats.frontier_sizes) {
        if (!sizes.empty()) sizes += ';';
        sizes += std::to_string(f);
    }
    return std::to_string(trial) + ',' + std::to_string(stats.nodes_visited) + ',' +
           (stats.blowup_abort ? "1" : "0") + ',' + sizes;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    static const std::set<std::string> known{
        "schema_version", "scheme", "n", "k", "c", "b", "eta", "epsilon", "c_prime",
        "c_double_prime", "rho", "rho_prime", "trials", "seed", "strict",
        "fresh_design_per_trial", "shared_local", "parallel", "zeta", "lambda", "r", "omega",
        "defectives", "defective_model"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key))
            throw std::runtime_error("config: unknown key '" + key + "'");
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kConfigSchemaVersion)
        throw std::runtime_error("config: unsupported schema_version");

    ExperimentConfig c;
    if (j.contains("scheme")) c.scheme = scheme_from_name(j.at("scheme").get<std::string>());
    if (j.contains("n")) c.n_items = j.at("n").get<std::uint64_t>();
    if (j.contains("k")) c.k_max = j.at("k").get<std::uint64_t>();
    if (j.contains("c")) c.circles = j.at("c").get<std::uint32_t>();
    if (j.contains("b")) c.b = j.at("b").get<std::uint32_t>();
    if (j.contains("eta")) c.eta = j.at("eta").get<double>();
    if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
    if (j.contains("c_prime")) c.reps = j.at("c_prime").get<std::uint32_t>();
    if (j.contains("c_double_prime")) c.c_double_prime = j.at("c_double_prime").get<double>();
    if (j.contains("rho")) c.rho = j.at("rho").get<double>();
    if (j.contains("rho_prime")) c.rho_prime = j.at("rho_prime").get<double>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::uint32_t>();
    if (j.contains("seed")) c.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("strict")) c.strict = j.at("strict").get<bool>();
    if (j.contains("fresh_design_per_trial"))
        c.fresh_design_per_trial = j.at("fresh_design_per_trial").get<bool>();
    if (j.contains("shared_local")) c.shared_local = j.at("shared_local").get<bool>();
    if (j.contains("parallel"))
        c.exec = j.at("parallel").get<bool>() ? Exec::parallel : Exec::serial;
    if (j.contains("zeta")) c.zeta = j.at("zeta").get<double>();
    if (j.contains("lambda")) c.lambda_override = j.at("lambda").get<double>();
    if (j.contains("r")) c.subtree_depth = j.at("r").get<std::uint32_t>();
    if (j.contains("omega")) c.omega = j.at("omega").get<double>();
    if (j.contains("defectives")) {
        c.defective_model = DefectiveModel::explicit_list;
        c.explicit_defectives = j.at("defectives").get<std::vector<std::uint64_t>>();
    } else if (j.contains("defective_model")) {
        const auto model = j.at("defective_model").get<std::string>();
        if (model == "exact-k")
            c.defective_model = DefectiveModel::exact_k;
        else if (model == "up-to-k")
            c.defective_model = DefectiveModel::up_to_k;
        else
            throw std::runtime_error("config: unknown defective_model '" + model + "'");
    }
    return c;
}

} // namespace neon
