#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "neon/harness.hpp"

namespace neon {

inline constexpr int kConfigSchemaVersion = 1;

// Fixed CSV contract: scheme,N,K,M,trials,failures,error_rate,ci_low,ci_high,
// mean_nodes_visited,max_nodes_visited,err1_count,err2_count,blowup_count,seed
std::string csv_header();
std::string csv_row(const AggregateReport& report);
std::string to_csv(const std::vector<AggregateReport>& reports);

// Flat name -> (lhs, rhs, op, satisfied) document plus the exponent map.
nlohmann::ordered_json to_json(const ConstraintReport& report);

nlohmann::ordered_json to_json(const AggregateReport& report);
nlohmann::ordered_json to_json(const std::vector<AggregateReport>& reports);

nlohmann::ordered_json to_json(const ExperimentConfig& config);
// Versioned key-value document; unknown keys are rejected to catch typos.
ExperimentConfig config_from_json(const nlohmann::json& j);

// Per-trial decode trace rows: trial,nodes_visited,blowup_abort,frontier_sizes
// (frontier sizes joined with ';').
std::string trace_csv_header();
std::string trace_csv_row(std::uint32_t trial, const TrialStats& stats);

} // namespace neon
