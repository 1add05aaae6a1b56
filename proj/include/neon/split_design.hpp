#pragma once

#include <cstdint>
#include <vector>

#include "neon/tree.hpp"

namespace neon {

// Sparse binary-splitting test design. For each tested level, each repetition
// bank holds tests_per_level tests and every node of the level is assigned to
// exactly one of them. Test indices are laid out level-major, then repetition,
// then position within the bank, matching the construction's offset formula
// u = (level - start) * reps * bank + rep * bank.
struct SplitDesign {
    std::uint64_t n_items = 0;      // N
    std::uint64_t defect_bound = 0; // t (k for local designs, K for global)
    std::uint32_t tests_per_level = 0;
    std::uint32_t start_level = 0; // first tested level (0-based, inclusive)
    std::uint32_t end_level = 0;   // last tested level (== log2 N)
    std::uint32_t reps = 1;
    std::uint64_t rng_seed = 0;
    // assignment[(level - start_level) * reps + rep][node] -> test in bank
    std::vector<std::vector<std::uint32_t>> assignment;

    std::uint32_t levels() const { return end_level - start_level + 1; }
    std::uint32_t leaf_level() const { return ilog2(n_items); }

    std::uint64_t total_tests() const {
        return static_cast<std::uint64_t>(levels()) * reps * tests_per_level;
    }

    const std::vector<std::uint32_t>& bank(std::uint32_t level, std::uint32_t rep) const {
        return assignment[static_cast<std::size_t>(level - start_level) * reps + rep];
    }

    std::uint32_t test_of(std::uint32_t level, std::uint32_t rep, std::uint64_t node) const {
        return bank(level, rep)[node];
    }

    // Offset of a (level, rep) bank within this design's test range.
    std::uint64_t bank_offset(std::uint32_t level, std::uint32_t rep) const {
        return (static_cast<std::uint64_t>(level - start_level) * reps + rep) * tests_per_level;
    }

    std::uint64_t global_test(std::uint32_t level, std::uint32_t rep, std::uint64_t node) const {
        return bank_offset(level, rep) + test_of(level, rep, node);
    }
};

// Draws one uniform test per (level, rep, node). Deterministic given seed.
SplitDesign build_split_design(std::uint64_t n_items, std::uint64_t defect_bound, double zeta,
                               std::uint32_t reps, std::uint32_t start_level,
                               std::uint32_t end_level, std::uint64_t seed);

// First tested level for a defect bound t: one below the level holding t nodes.
std::uint32_t split_start_level(std::uint64_t defect_bound);

} // namespace neon
