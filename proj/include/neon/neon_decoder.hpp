#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "neon/bitvec.hpp"
#include "neon/exec.hpp"
#include "neon/neon_design.hpp"

namespace neon {

// Output of one block's binary-splitting descent.
struct LocalResult {
    std::uint32_t block_id = 0;
    std::vector<std::uint64_t> items; // distinct, ascending
    std::uint64_t nodes_visited = 0;
    std::uint64_t positive_nodes = 0;
};

// counts[i] = number of blocks whose local result contains item i. For a
// non-defective item this is its R-value.
struct MultiplicityTable {
    std::map<std::uint64_t, std::uint32_t> counts;

    std::uint32_t multiplicity(std::uint64_t item) const {
        const auto it = counts.find(item);
        return it == counts.end() ? 0 : it->second;
    }

    // histogram[m] = number of items with multiplicity m
    std::map<std::uint32_t, std::uint64_t> histogram() const;
};

// Breadth-first descent over one block: a node survives iff the test holding
// it is positive, children of survivors are examined next, leaf survivors are
// returned. y_block must be exactly the block's slice of the outcome vector.
LocalResult local_decode(const NeonDesign& design, std::uint32_t block_id,
                         const OutcomeVector& y_block);

struct GlobalDecodeResult {
    std::vector<std::uint64_t> items; // multiplicity >= C, ascending
    MultiplicityTable table;
    std::uint64_t nodes_visited = 0;
};

// Runs every block's local decoder and keeps items claimed by at least C of
// them. Blocks are independent; the parallel path fans them out and merges
// in block order, so both paths produce identical results.
GlobalDecodeResult global_decode(const NeonDesign& design, const OutcomeVector& y,
                                 Exec exec = Exec::serial);

} // namespace neon
