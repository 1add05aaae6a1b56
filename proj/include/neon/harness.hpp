#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neon/channel.hpp"
#include "neon/exec.hpp"
#include "neon/neon_decoder.hpp"
#include "neon/noisy_decoder.hpp"
#include "neon/params.hpp"

namespace neon {

enum class Scheme { noiseless, fpc, bsc, bac };

const char* scheme_name(Scheme scheme);
Scheme scheme_from_name(std::string_view name);

enum class DefectiveModel { exact_k, up_to_k, explicit_list };

// One experiment cell: scheme + parameters + channel + run control.
struct ExperimentConfig {
    Scheme scheme = Scheme::noiseless;
    std::uint64_t n_items = 1024;
    std::uint64_t k_max = 16;

    // noiseless / FPC inputs
    std::uint32_t circles = 10;
    std::uint32_t b = 1;
    double eta = 1.0;
    std::optional<double> lambda_override;
    bool shared_local = true;

    // shared
    double epsilon = 0.1;
    std::optional<double> zeta; // override for noiseless/FPC, required-ish for noisy

    // BSC / BAC inputs
    std::uint32_t reps = 1;                      // C'
    std::optional<std::uint32_t> subtree_depth;  // r
    double c_double_prime = 2.0;                 // C''
    std::optional<double> omega;

    // channel rates (kind follows the scheme)
    double rho = 0;
    double rho_prime = 0;

    // run control
    std::uint32_t trials = 100;
    std::uint64_t master_seed = 1;
    DefectiveModel defective_model = DefectiveModel::exact_k;
    std::vector<std::uint64_t> explicit_defectives;
    bool strict = false;
    bool fresh_design_per_trial = true; // false: one fixed design for all trials
    Exec exec = Exec::parallel;

    bool is_noisy_scheme() const { return scheme == Scheme::bsc || scheme == Scheme::bac; }

    ChannelSpec channel() const;
    SchemeParams scheme_params() const; // noiseless / fpc
    NoisyParams noisy_params() const;   // bsc / bac
};

// Per-trial outcome against ground truth.
struct TrialStats {
    bool success = false; // exact recovery
    std::uint32_t fp_count = 0;
    std::uint32_t fn_count = 0;
    std::uint64_t tests = 0; // M, always the structural count
    std::uint64_t nodes_visited = 0;
    std::map<std::uint32_t, std::uint64_t> multiplicity_histogram; // NEON schemes
    bool blowup_abort = false;
    std::vector<std::uint64_t> frontier_sizes; // per decoding step (noisy schemes)
    bool err1 = false; // some block holds > k circled defectives
    bool err2 = false; // some non-defective reached multiplicity >= C
    std::uint64_t false_block_detections = 0; // sum over blocks of |D_j \ S|
    double wall_seconds = 0;

    bool operator==(const TrialStats& other) const;
};

struct ErrorEvents {
    bool err1 = false;
    bool err2 = false;
};

// Recomputable classification of the noiseless/FPC failure taxonomy from the
// trial artifacts (design + truth + multiplicity table).
ErrorEvents classify_errors(const NeonDesign& design, const std::vector<std::uint64_t>& truth,
                            const MultiplicityTable& table);

struct AggregateReport {
    Scheme scheme = Scheme::noiseless;
    std::uint64_t n_items = 0;
    std::uint64_t k_max = 0;
    std::uint64_t tests = 0;
    std::uint32_t trials = 0;
    std::uint32_t failures = 0;
    double error_rate = 0;
    double ci_low = 0;  // Wilson 95%
    double ci_high = 0;
    double mean_nodes_visited = 0;
    std::uint64_t max_nodes_visited = 0;
    std::uint32_t err1_count = 0;
    std::uint32_t err2_count = 0;
    std::uint32_t blowup_count = 0;
    std::uint64_t master_seed = 0;
    std::uint64_t total_fp = 0;
    std::uint64_t total_fn = 0;
    // empirical per-block, per-item false-detection rate (NEON schemes),
    // reported next to the 2k/N bound it is compared against
    double gamma_hat = 0;
    double gamma_bound = 0;
    // M is always the structural count; the closed forms are reported beside
    // it because the source formulas mix log2 and natural-log conventions
    double closed_form_tests_log2 = 0;
    double closed_form_tests_ln = 0;
    std::map<std::uint32_t, std::uint64_t> multiplicity_histogram;
    ConstraintReport constraints;
    std::string error; // non-empty when a sweep cell failed outright
};

std::pair<double, double> wilson_interval(std::uint32_t failures, std::uint32_t trials,
                                          double z = 1.959963984540054);

// Scheme-appropriate theorem constraints for a configuration (structural
// checks + regime for NEON schemes, the main-theorem hypotheses for BSC/BAC).
ConstraintReport experiment_constraints(const ExperimentConfig& config);

// Deterministic given (config, trial_index): derives the trial seed, draws
// defectives, builds (or reuses) the design, encodes, corrupts, decodes with
// the scheme-appropriate decoder, and compares against ground truth.
TrialStats run_trial(const ExperimentConfig& config, std::uint32_t trial_index);

// All trials plus aggregation. Under strict mode an unsatisfied theorem
// constraint rejects the run; by default it is reported and the run proceeds.
AggregateReport run_experiment(const ExperimentConfig& config);

// One aggregate per cell; a throwing cell records its error and the sweep
// continues.
std::vector<AggregateReport> sweep(const std::vector<ExperimentConfig>& grid);

} // namespace neon
