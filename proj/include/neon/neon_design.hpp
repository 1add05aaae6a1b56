#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "neon/params.hpp"
#include "neon/split_design.hpp"

namespace neon {

// Block-and-circle design: L vertical copies of a local split design B, with
// each item kept ("circled") in exactly C blocks and zeroed elsewhere.
struct NeonDesign {
    SchemeParams params;
    bool shared_local = true;        // true: all blocks reuse B (the literal
                                     // construction); false: fresh B per block
    std::vector<SplitDesign> locals; // size 1 when shared, else params.blocks
    std::vector<std::uint32_t> circling; // flat [item * C + j] -> block id, sorted per item
    std::uint64_t seed = 0;

    const SplitDesign& local(std::uint64_t block) const {
        return shared_local ? locals[0] : locals[block];
    }

    // Structural rows per block; the closed form params.block_rows is only an
    // upper count, never used here.
    std::uint64_t block_rows() const { return locals[0].total_tests(); }

    std::uint64_t total_tests() const { return params.blocks * block_rows(); }

    std::span<const std::uint32_t> circled_blocks(std::uint64_t item) const {
        return {circling.data() + item * params.circles, params.circles};
    }

    bool is_circled(std::uint64_t item, std::uint64_t block) const;
};

NeonDesign build_neon_design(const SchemeParams& params, std::uint64_t seed,
                             bool shared_local = true);

} // namespace neon
