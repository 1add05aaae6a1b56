#pragma once

#include <cstdint>
#include <vector>

#include "neon/params.hpp"
#include "neon/split_design.hpp"

namespace neon {

// Repeated-test design for channels with false negatives: a branching phase
// over levels log2(K)+1 .. log2(N) with C' repetitions per level, followed by
// r' non-branching chain levels where every item is assigned individually.
struct NoisyDesign {
    NoisyParams params;
    SplitDesign branch; // reps = C', defect bound K
    // chain[extra_level * reps + rep][item] -> test within the bank
    std::vector<std::vector<std::uint32_t>> chain;
    std::uint64_t seed = 0;

    std::uint32_t bank_size() const { return branch.tests_per_level; }
    std::uint64_t branch_tests() const { return branch.total_tests(); }

    std::uint64_t chain_tests() const {
        return static_cast<std::uint64_t>(params.extra_levels) * params.reps * bank_size();
    }

    std::uint64_t total_tests() const { return branch_tests() + chain_tests(); }

    // extra_level is 0-based in [0, r')
    std::uint64_t chain_global_test(std::uint32_t extra_level, std::uint32_t rep,
                                    std::uint64_t item) const {
        const std::uint64_t offset =
            branch_tests() +
            (static_cast<std::uint64_t>(extra_level) * params.reps + rep) * bank_size();
        return offset + chain[static_cast<std::size_t>(extra_level) * params.reps + rep][item];
    }
};

NoisyDesign build_noisy_design(const NoisyParams& params, std::uint64_t seed);

} // namespace neon
