#pragma once

#include <cstdint>
#include <vector>

#include "neon/bitvec.hpp"
#include "neon/exec.hpp"
#include "neon/noisy_design.hpp"
#include "neon/tree.hpp"

namespace neon {

// Majority verdict of a node's C' repeated tests; positive needs strictly
// more than C'/2 positive outcomes, ties reject.
struct NodeVerdict {
    NodeId node;
    std::uint32_t positive_votes = 0;
    bool positive = false;
};

// Running positive count along the chain of the current decoding step. The
// step root is taken as positive (it survived the previous step) and enters
// at multiplicity 1, depth 1; each child adds one depth and its own verdict.
struct DensityState {
    NodeId node;
    std::uint32_t multiplicity = 1;
    std::uint32_t depth_in_step = 1;

    double density() const { return static_cast<double>(multiplicity) / depth_in_step; }
};

struct StepCounts {
    std::uint64_t frontier = 0;       // survivors after the step
    std::uint64_t true_positive = 0;  // survivors covering a defective (truth known)
    std::uint64_t false_positive = 0;
};

// Measured decoding work; the operation counter is the empirical analogue of
// the decoding complexity D.
struct DecodeTrace {
    std::vector<StepCounts> steps;
    std::uint64_t nodes_visited = 0;
    bool blowup_abort = false;
    std::uint64_t survivor_cap = 0;
};

NodeVerdict node_positive(const NoisyDesign& design, const OutcomeVector& y, NodeId node);
NodeVerdict chain_slot_positive(const NoisyDesign& design, const OutcomeVector& y,
                                std::uint32_t extra_level, std::uint64_t item);

// Full DFS of the depth-`depth` subtree below root (no pruning); returns the
// leaves whose density exceeds 0.5 strictly, with their final states.
// `nodes_visited` is incremented once per examined node.
std::vector<DensityState> subtree_scan(const NoisyDesign& design, const OutcomeVector& y,
                                       NodeId root, std::uint32_t depth,
                                       std::uint64_t& nodes_visited);

// Accepts an item iff strictly more than half of its r' chain slots are
// positive under the majority-vote verdict.
bool chain_verify(const NoisyDesign& design, const OutcomeVector& y, std::uint64_t item);

struct NoisyDecodeResult {
    std::vector<std::uint64_t> items; // ascending
    DecodeTrace trace;
};

// Density-tracked descent: frontier starts at the level with K nodes, scans
// subtrees of depth r per step (last step truncated to land on the leaf
// level), then chain-verifies the leaf survivors. If a frontier ever exceeds
// K^omega the trial is abandoned with blowup_abort set. `truth`, when given,
// is only used to fill the per-step true/false survivor counts of the trace.
NoisyDecodeResult decode_noisy(const NoisyDesign& design, const OutcomeVector& y,
                               Exec exec = Exec::serial,
                               const std::vector<std::uint64_t>* truth = nullptr);

} // namespace neon
