#include "neon/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "neon/rng.hpp"
#include "neon/tree.hpp"

namespace neon {

namespace {

constexpr std::uint64_t kDesignSalt = 0xDE5160;
constexpr std::uint64_t kDefectSalt = 0xDEFEC7;
constexpr std::uint64_t kChannelSalt = 0xC4A22E1;

} // namespace

const char* scheme_name(Scheme scheme) {
    switch (scheme) {
    case Scheme::noiseless: return "noiseless";
    case Scheme::fpc: return "fpc";
    case Scheme::bsc: return "bsc";
    case Scheme::bac: return "bac";
    }
    return "?";
}

Scheme scheme_from_name(std::string_view name) {
    if (name == "noiseless") return Scheme::noiseless;
    if (name == "fpc") return Scheme::fpc;
    if (name == "bsc") return Scheme::bsc;
    if (name == "bac") return Scheme::bac;
    throw std::invalid_argument("unknown scheme: " + std::string(name));
}

ChannelSpec ExperimentConfig::channel() const {
    switch (scheme) {
    case Scheme::noiseless: return ChannelSpec::noiseless();
    case Scheme::fpc: return ChannelSpec::fpc(rho);
    case Scheme::bsc: return ChannelSpec::bsc(rho);
    case Scheme::bac: return ChannelSpec::bac(rho, rho_prime);
    }
    throw std::logic_error("unreachable");
}

SchemeParams ExperimentConfig::scheme_params() const {
    if (is_noisy_scheme())
        throw std::logic_error("scheme_params: not a noiseless/FPC configuration");
    NoiselessOverrides ov;
    ov.zeta = zeta;
    ov.lambda = lambda_override;
    return derive_noiseless_params(n_items, k_max, circles, b, epsilon, eta, rho, ov);
}

NoisyParams ExperimentConfig::noisy_params() const {
    if (!is_noisy_scheme())
        throw std::logic_error("noisy_params: not a BSC/BAC configuration");
    const NoisyMode mode = scheme == Scheme::bsc ? NoisyMode::bsc : NoisyMode::bac;
    NoisyOverrides ov;
    ov.subtree_depth = subtree_depth;
    ov.omega = omega;
    const double rp = scheme == Scheme::bsc ? rho : rho_prime;
    return derive_noisy_params(mode, n_items, k_max, zeta.value_or(16.0), reps, epsilon, rho, rp,
                               c_double_prime, ov);
}

bool TrialStats::operator==(const TrialStats& other) const {
    return success == other.success && fp_count == other.fp_count && fn_count == other.fn_count &&
           tests == other.tests && nodes_visited == other.nodes_visited &&
           multiplicity_histogram == other.multiplicity_histogram &&
           blowup_abort == other.blowup_abort && frontier_sizes == other.frontier_sizes &&
           err1 == other.err1 && err2 == other.err2 &&
           false_block_detections == other.false_block_detections;
}

ErrorEvents classify_errors(const NeonDesign& design, const std::vector<std::uint64_t>& truth,
                            const MultiplicityTable& table) {
    ErrorEvents events;
    std::vector<std::uint32_t> per_block(design.params.blocks, 0);
    for (std::uint64_t item : truth)
        for (std::uint32_t block : design.circled_blocks(item)) ++per_block[block];
    events.err1 = std::any_of(per_block.begin(), per_block.end(), [&](std::uint32_t c) {
        return c > design.params.local_bound;
    });
    for (const auto& [item, count] : table.counts)
        if (count >= design.params.circles &&
            !std::binary_search(truth.begin(), truth.end(), item)) {
            events.err2 = true;
            break;
        }
    return events;
}

std::pair<double, double> wilson_interval(std::uint32_t failures, std::uint32_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = trials;
    const double p = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    double lo = std::max(0.0, center - half);
    double hi = std::min(1.0, center + half);
    if (failures == 0) lo = 0.0; // exact endpoints, not rounding residue
    if (failures == trials) hi = 1.0;
    return {lo, hi};
}

namespace {

std::vector<std::uint64_t> draw_defectives(const ExperimentConfig& config, std::uint64_t seed) {
    switch (config.defective_model) {
    case DefectiveModel::explicit_list: {
        auto truth = config.explicit_defectives;
        std::sort(truth.begin(), truth.end());
        truth.erase(std::unique(truth.begin(), truth.end()), truth.end());
        for (std::uint64_t id : truth)
            if (id >= config.n_items)
                throw std::out_of_range("explicit defective id out of range");
        return truth;
    }
    case DefectiveModel::exact_k: {
        Rng rng(seed);
        return sample_without_replacement(rng, config.n_items, config.k_max);
    }
    case DefectiveModel::up_to_k: {
        Rng rng(seed);
        const std::uint64_t size = rng.bounded(config.k_max + 1);
        return sample_without_replacement(rng, config.n_items, size);
    }
    }
    throw std::logic_error("unreachable");
}

TrialStats run_trial_impl(const ExperimentConfig& config, std::uint32_t trial_index,
                          const NeonDesign* fixed_neon, const NoisyDesign* fixed_noisy,
                          Exec inner_exec) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t trial_seed = derive_seed(config.master_seed, trial_index);
    const std::uint64_t design_seed = config.fresh_design_per_trial
                                          ? derive_seed(trial_seed, kDesignSalt)
                                          : derive_seed(config.master_seed, kDesignSalt);
    const auto truth = draw_defectives(config, derive_seed(trial_seed, kDefectSalt));
    const std::uint64_t channel_seed = derive_seed(trial_seed, kChannelSalt);
    const ChannelSpec spec = config.channel();

    TrialStats stats;
    std::vector<std::uint64_t> decoded;

    if (config.is_noisy_scheme()) {
        NoisyDesign built;
        const NoisyDesign* design = fixed_noisy;
        if (!design) {
            built = build_noisy_design(config.noisy_params(), design_seed);
            design = &built;
        }
        const OutcomeVector y = apply_channel(encode(*design, truth, config.strict), spec,
                                              channel_seed, inner_exec);
        stats.tests = design->total_tests();
        auto result = decode_noisy(*design, y, inner_exec, &truth);
        decoded = std::move(result.items);
        stats.nodes_visited = result.trace.nodes_visited;
        stats.blowup_abort = result.trace.blowup_abort;
        stats.frontier_sizes.reserve(result.trace.steps.size());
        for (const StepCounts& step : result.trace.steps)
            stats.frontier_sizes.push_back(step.frontier);
    } else {
        NeonDesign built;
        const NeonDesign* design = fixed_neon;
        if (!design) {
            built = build_neon_design(config.scheme_params(), design_seed, config.shared_local);
            design = &built;
        }
        const OutcomeVector y = apply_channel(encode(*design, truth, config.strict), spec,
                                              channel_seed, inner_exec);
        stats.tests = design->total_tests();
        auto result = global_decode(*design, y, inner_exec);
        decoded = std::move(result.items);
        stats.nodes_visited = result.nodes_visited;
        for (const auto& [m, c] : result.table.histogram()) stats.multiplicity_histogram[m] += c;
        const ErrorEvents events = classify_errors(*design, truth, result.table);
        for (const auto& [item, count] : result.table.counts)
            if (!std::binary_search(truth.begin(), truth.end(), item))
                stats.false_block_detections += count;
        stats.err1 = events.err1;
        stats.err2 = events.err2;
    }

    for (std::uint64_t item : decoded)
        if (!std::binary_search(truth.begin(), truth.end(), item)) ++stats.fp_count;
    for (std::uint64_t item : truth)
        if (!std::binary_search(decoded.begin(), decoded.end(), item)) ++stats.fn_count;
    stats.success = stats.fp_count == 0 && stats.fn_count == 0;
    stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return stats;
}

} // namespace

ConstraintReport experiment_constraints(const ExperimentConfig& config) {
    ConstraintReport report;
    if (config.is_noisy_scheme()) {
        const NoisyParams p = config.noisy_params();
        report = config.scheme == Scheme::bsc ? validate_bsc(p) : validate_bac(p);
    } else {
        const SchemeParams p = config.scheme_params();
        report = validate_scheme(p);
        const RegimeReport regime = regime_check(p);
        report.add("scheme.regime_k_le_bound", static_cast<double>(p.k_max),
                   Relation::less_equal, regime.bound);
        report.add_exponent("regime_exponent", regime.exponent);
        report.add_exponent("regime_slack", regime.slack);
        if (config.scheme == Scheme::fpc) {
            const ConstraintReport fpc = validate_fpc(p);
            report.constraints.insert(report.constraints.end(), fpc.constraints.begin(),
                                      fpc.constraints.end());
            report.exponents.insert(report.exponents.end(), fpc.exponents.begin(),
                                    fpc.exponents.end());
        }
    }
    return report;
}

TrialStats run_trial(const ExperimentConfig& config, std::uint32_t trial_index) {
    return run_trial_impl(config, trial_index, nullptr, nullptr, config.exec);
}

AggregateReport run_experiment(const ExperimentConfig& config) {
    if (config.trials < 1)
        throw std::invalid_argument("run_experiment: trials must be >= 1");
    config.channel().validate();

    AggregateReport report;
    report.scheme = config.scheme;
    report.n_items = config.n_items;
    report.k_max = config.k_max;
    report.trials = config.trials;
    report.master_seed = config.master_seed;
    report.constraints = experiment_constraints(config);

    if (config.strict && !report.constraints.all_satisfied()) {
        std::string names;
        for (const auto& c : report.constraints.constraints)
            if (!c.satisfied) names += " " + c.name;
        throw std::runtime_error("strict mode: unsatisfied constraints:" + names);
    }

    // one fixed design for all trials when configured; immutable, so shared
    // freely across the trial pool
    NeonDesign fixed_neon;
    NoisyDesign fixed_noisy;
    const NeonDesign* neon_ptr = nullptr;
    const NoisyDesign* noisy_ptr = nullptr;
    if (!config.fresh_design_per_trial) {
        const std::uint64_t design_seed = derive_seed(config.master_seed, kDesignSalt);
        if (config.is_noisy_scheme()) {
            fixed_noisy = build_noisy_design(config.noisy_params(), design_seed);
            noisy_ptr = &fixed_noisy;
        } else {
            fixed_neon = build_neon_design(config.scheme_params(), design_seed,
                                           config.shared_local);
            neon_ptr = &fixed_neon;
        }
    }

    std::vector<TrialStats> all(config.trials);
    if (config.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(config.trials); ++t)
            all[static_cast<std::size_t>(t)] =
                run_trial_impl(config, static_cast<std::uint32_t>(t), neon_ptr, noisy_ptr,
                               Exec::serial);
    } else {
        for (std::uint32_t t = 0; t < config.trials; ++t)
            all[t] = run_trial_impl(config, t, neon_ptr, noisy_ptr, Exec::serial);
    }

    std::uint64_t visited_sum = 0;
    std::uint64_t false_detections = 0;
    for (const TrialStats& s : all) {
        report.tests = s.tests;
        if (!s.success) ++report.failures;
        report.err1_count += s.err1;
        report.err2_count += s.err2;
        report.blowup_count += s.blowup_abort;
        report.total_fp += s.fp_count;
        report.total_fn += s.fn_count;
        visited_sum += s.nodes_visited;
        report.max_nodes_visited = std::max(report.max_nodes_visited, s.nodes_visited);
        false_detections += s.false_block_detections;
        for (const auto& [m, c] : s.multiplicity_histogram)
            report.multiplicity_histogram[m] += c;
    }
    report.error_rate = static_cast<double>(report.failures) / config.trials;
    std::tie(report.ci_low, report.ci_high) = wilson_interval(report.failures, config.trials);
    report.mean_nodes_visited = static_cast<double>(visited_sum) / config.trials;

    if (!config.is_noisy_scheme()) {
        const SchemeParams p = config.scheme_params();
        const double denominator = static_cast<double>(p.blocks) *
                                   static_cast<double>(p.n_items - p.k_max) * config.trials;
        report.gamma_hat = denominator > 0 ? false_detections / denominator : 0.0;
        report.gamma_bound = 2.0 * p.local_bound / static_cast<double>(p.n_items);
        const double k = static_cast<double>(p.k_max);
        report.closed_form_tests_log2 = p.lambda * p.zeta * k * p.leaf_level();
        report.closed_form_tests_ln =
            p.lambda * p.zeta * k * std::log(static_cast<double>(p.n_items));
    } else {
        const NoisyParams p = config.noisy_params();
        const double levels = static_cast<double>(p.leaf_level() - ilog2(p.k_max)) +
                              static_cast<double>(p.extra_levels);
        report.closed_form_tests_log2 =
            p.zeta * p.reps * static_cast<double>(p.k_max) * levels;
        report.closed_form_tests_ln = report.closed_form_tests_log2;
    }
    return report;
}

std::vector<AggregateReport> sweep(const std::vector<ExperimentConfig>& grid) {
    if (grid.empty())
        throw std::invalid_argument("sweep: empty grid");
    std::vector<AggregateReport> reports;
    reports.reserve(grid.size());
    for (const ExperimentConfig& config : grid) {
        try {
            reports.push_back(run_experiment(config));
        } catch (const std::exception& e) {
            AggregateReport failed;
            failed.scheme = config.scheme;
            failed.n_items = config.n_items;
            failed.k_max = config.k_max;
            failed.trials = config.trials;
            failed.master_seed = config.master_seed;
            failed.error = e.what();
            reports.push_back(std::move(failed));
        }
    }
    return reports;
}

} // namespace neon
