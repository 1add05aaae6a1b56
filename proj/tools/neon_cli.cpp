// Command-line front end: constraint validation, design emission, single
// experiments and parameter sweeps. Parameters come from an optional JSON
// config file with CLI flags taking precedence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "neon/design_io.hpp"
#include "neon/harness.hpp"
#include "neon/report_io.hpp"

namespace {

struct CommonFlags {
    std::optional<std::string> config_path;
    std::optional<std::string> scheme;
    std::optional<std::uint64_t> n, k, seed;
    std::optional<std::uint32_t> c, b, c_prime, r, trials;
    std::optional<double> rho, rho_prime, zeta, c_double_prime, epsilon, eta, lambda, omega;
    bool strict = false;
    bool fixed_design = false;
    bool independent_locals = false;
    bool serial = false;
    std::string out_path;
    std::string trace_path;
    std::string format = "csv";
};

void add_common_flags(CLI::App* app, CommonFlags& f) {
    app->add_option("--config", f.config_path, "JSON config file (flags override it)");
    app->add_option("--scheme", f.scheme, "noiseless | fpc | bsc | bac");
    app->add_option("--n", f.n, "number of items N (power of two)");
    app->add_option("--k", f.k, "defective upper bound K");
    app->add_option("--rho", f.rho, "false positive flip probability");
    app->add_option("--rho-prime", f.rho_prime, "false negative flip probability");
    app->add_option("--zeta", f.zeta, "tests-per-level constant zeta");
    app->add_option("--c", f.c, "circling constant C (NEON schemes)");
    app->add_option("--c-prime", f.c_prime, "repetition constant C' (noisy schemes)");
    app->add_option("--c-double-prime", f.c_double_prime, "chain constant C'' (BAC)");
    app->add_option("--epsilon", f.epsilon, "epsilon parameter");
    app->add_option("--eta", f.eta, "eta parameter (NEON regime)");
    app->add_option("--b", f.b, "exponent b in delta = e^{b+2}");
    app->add_option("--r", f.r, "subtree depth r (noisy schemes)");
    app->add_option("--lambda", f.lambda, "override lambda (empirical mode)");
    app->add_option("--omega", f.omega, "survivor-cap exponent omega");
    app->add_option("--trials", f.trials, "Monte Carlo trials");
    app->add_option("--seed", f.seed, "master seed");
    app->add_flag("--strict", f.strict, "reject constraint violations and overweight inputs");
    app->add_flag("--fixed-design", f.fixed_design, "reuse one design across all trials");
    app->add_flag("--independent-locals", f.independent_locals,
                  "redraw the local matrix per block instead of sharing it");
    app->add_flag("--serial", f.serial, "run the serial reference path");
    app->add_option("--out", f.out_path, "output path (default stdout)");
    app->add_option("--trace-out", f.trace_path,
                    "also write per-trial decode traces (CSV) to this path");
    app->add_option("--format", f.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
}

neon::ExperimentConfig build_config(const CommonFlags& f) {
    neon::ExperimentConfig config;
    if (f.config_path) {
        std::ifstream in(*f.config_path);
        if (!in) throw std::runtime_error("cannot open config file: " + *f.config_path);
        nlohmann::json j;
        in >> j;
        config = neon::config_from_json(j);
    }
    if (f.scheme) config.scheme = neon::scheme_from_name(*f.scheme);
    if (f.n) config.n_items = *f.n;
    if (f.k) config.k_max = *f.k;
    if (f.rho) config.rho = *f.rho;
    if (f.rho_prime) config.rho_prime = *f.rho_prime;
    if (f.zeta) config.zeta = *f.zeta;
    if (f.c) config.circles = *f.c;
    if (f.c_prime) config.reps = *f.c_prime;
    if (f.c_double_prime) config.c_double_prime = *f.c_double_prime;
    if (f.epsilon) config.epsilon = *f.epsilon;
    if (f.eta) config.eta = *f.eta;
    if (f.b) config.b = *f.b;
    if (f.r) config.subtree_depth = *f.r;
    if (f.lambda) config.lambda_override = *f.lambda;
    if (f.omega) config.omega = *f.omega;
    if (f.trials) config.trials = *f.trials;
    if (f.seed) config.master_seed = *f.seed;
    if (f.strict) config.strict = true;
    if (f.fixed_design) config.fresh_design_per_trial = false;
    if (f.independent_locals) config.shared_local = false;
    if (f.serial) config.exec = neon::Exec::serial;
    if (config.scheme == neon::Scheme::bsc) config.rho_prime = config.rho;
    return config;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

int cmd_validate(const CommonFlags& f) {
    const auto config = build_config(f);
    const neon::ConstraintReport report = neon::experiment_constraints(config);
    emit(neon::to_json(report).dump(2) + "\n", f.out_path);
    return f.strict && !report.all_satisfied() ? 1 : 0;
}

int cmd_design(const CommonFlags& f) {
    const auto config = build_config(f);
    const std::uint64_t seed = config.master_seed;
    nlohmann::ordered_json doc;
    if (config.is_noisy_scheme())
        doc = neon::to_json(neon::build_noisy_design(config.noisy_params(), seed));
    else
        doc = neon::to_json(
            neon::build_neon_design(config.scheme_params(), seed, config.shared_local));
    emit(doc.dump() + "\n", f.out_path);
    return 0;
}

int cmd_simulate(const CommonFlags& f) {
    const auto config = build_config(f);
    const neon::AggregateReport report = neon::run_experiment(config);
    if (f.format == "json")
        emit(neon::to_json(report).dump(2) + "\n", f.out_path);
    else
        emit(neon::to_csv({report}), f.out_path);
    if (!f.trace_path.empty()) {
        std::string traces = neon::trace_csv_header() + '\n';
        for (std::uint32_t t = 0; t < config.trials; ++t)
            traces += neon::trace_csv_row(t, neon::run_trial(config, t)) + '\n';
        emit(traces, f.trace_path);
    }
    return 0;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_sweep(const CommonFlags& f, const std::string& sweep_k, const std::string& sweep_rho) {
    const auto base = build_config(f);
    std::vector<std::uint64_t> ks;
    for (const auto& s : split_list(sweep_k)) ks.push_back(std::stoull(s));
    std::vector<double> rhos;
    for (const auto& s : split_list(sweep_rho)) rhos.push_back(std::stod(s));
    if (ks.empty()) ks.push_back(base.k_max);
    if (rhos.empty()) rhos.push_back(base.rho);

    std::vector<neon::ExperimentConfig> grid;
    for (std::uint64_t k : ks)
        for (double rho : rhos) {
            neon::ExperimentConfig cell = base;
            cell.k_max = k;
            cell.rho = rho;
            if (cell.scheme == neon::Scheme::bsc) cell.rho_prime = rho;
            grid.push_back(cell);
        }
    const auto reports = neon::sweep(grid);
    if (f.format == "json")
        emit(neon::to_json(reports).dump(2) + "\n", f.out_path);
    else
        emit(neon::to_csv(reports), f.out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NEON group-testing simulator"};
    app.require_subcommand(1);

    CommonFlags fv, fd, fs, fw;
    auto* validate = app.add_subcommand("validate", "evaluate theorem constraints");
    add_common_flags(validate, fv);
    auto* design = app.add_subcommand("design", "emit a serialized test design");
    add_common_flags(design, fd);
    auto* simulate = app.add_subcommand("simulate", "run one Monte Carlo experiment");
    add_common_flags(simulate, fs);
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter grid");
    add_common_flags(sweep_cmd, fw);
    std::string sweep_k, sweep_rho;
    sweep_cmd->add_option("--sweep-k", sweep_k, "comma-separated K values");
    sweep_cmd->add_option("--sweep-rho", sweep_rho, "comma-separated rho values");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(fv);
        if (design->parsed()) return cmd_design(fd);
        if (simulate->parsed()) return cmd_simulate(fs);
        if (sweep_cmd->parsed()) return cmd_sweep(fw, sweep_k, sweep_rho);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
