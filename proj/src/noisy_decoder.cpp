#include "neon/noisy_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace neon {

namespace {

NodeVerdict majority_of(std::uint32_t votes, std::uint32_t reps, NodeId node) {
    NodeVerdict v;
    v.node = node;
    v.positive_votes = votes;
    v.positive = 2 * votes > reps; // strict majority, ties reject
    return v;
}

} // namespace

NodeVerdict node_positive(const NoisyDesign& design, const OutcomeVector& y, NodeId node) {
    const SplitDesign& branch = design.branch;
    if (node.level < branch.start_level || node.level > branch.end_level)
        throw std::invalid_argument("node_positive: node outside tested levels");
    std::uint32_t votes = 0;
    for (std::uint32_t rep = 0; rep < branch.reps; ++rep)
        votes += y.get(branch.global_test(node.level, rep, node.index));
    return majority_of(votes, branch.reps, node);
}

NodeVerdict chain_slot_positive(const NoisyDesign& design, const OutcomeVector& y,
                                std::uint32_t extra_level, std::uint64_t item) {
    if (extra_level >= design.params.extra_levels)
        throw std::invalid_argument("chain_slot_positive: slot outside extra levels");
    std::uint32_t votes = 0;
    for (std::uint32_t rep = 0; rep < design.params.reps; ++rep)
        votes += y.get(design.chain_global_test(extra_level, rep, item));
    return majority_of(votes, design.params.reps,
                       NodeId{design.branch.leaf_level() + 1 + extra_level, item});
}

std::vector<DensityState> subtree_scan(const NoisyDesign& design, const OutcomeVector& y,
                                       NodeId root, std::uint32_t depth,
                                       std::uint64_t& nodes_visited) {
    const std::uint32_t leaf = design.branch.leaf_level();
    if (root.level + depth > leaf)
        throw std::invalid_argument("subtree_scan: depth overruns the tree");
    const std::uint32_t target = root.level + depth;

    std::vector<DensityState> survivors;
    std::vector<DensityState> stack;
    // the root survived the previous step: assumed positive, not re-tested
    stack.push_back(DensityState{root, 1, 1});
    while (!stack.empty()) {
        const DensityState state = stack.back();
        stack.pop_back();
        if (state.multiplicity > state.depth_in_step)
            throw std::logic_error("subtree_scan: multiplicity exceeded depth");
        if (state.node.level == target) {
            if (state.density() > 0.5) survivors.push_back(state);
            continue;
        }
        const auto [left, right] = node_children(state.node, leaf);
        for (const NodeId child : {left, right}) {
            ++nodes_visited;
            const NodeVerdict v = node_positive(design, y, child);
            stack.push_back(DensityState{child, state.multiplicity + (v.positive ? 1u : 0u),
                                         state.depth_in_step + 1});
        }
    }
    std::sort(survivors.begin(), survivors.end(),
              [](const DensityState& a, const DensityState& b) {
                  return a.node.index < b.node.index;
              });
    return survivors;
}

bool chain_verify(const NoisyDesign& design, const OutcomeVector& y, std::uint64_t item) {
    std::uint32_t positives = 0;
    for (std::uint32_t e = 0; e < design.params.extra_levels; ++e)
        positives += chain_slot_positive(design, y, e, item).positive;
    return 2 * positives > design.params.extra_levels;
}

namespace {

bool covers_defective(std::uint64_t node_index, std::uint32_t level, std::uint32_t leaf,
                      const std::vector<std::uint64_t>& truth) {
    for (std::uint64_t d : truth)
        if (ancestor_index(d, level, leaf) == node_index) return true;
    return false;
}

std::uint64_t survivor_cap(const NoisyParams& params) {
    const double cap = std::pow(static_cast<double>(params.k_max), params.omega);
    if (cap >= 0x1p62) return std::uint64_t{1} << 62;
    // floor of 16: K^omega degenerates to 1 at K=1 and would abort on any
    // benign collision survivor
    return std::max<std::uint64_t>(static_cast<std::uint64_t>(std::ceil(cap)), 16);
}

} // namespace

NoisyDecodeResult decode_noisy(const NoisyDesign& design, const OutcomeVector& y, Exec exec,
                               const std::vector<std::uint64_t>* truth) {
    if (y.size() != design.total_tests())
        throw std::invalid_argument("decode_noisy: outcome length does not match design");

    NoisyDecodeResult result;
    const std::uint32_t leaf = design.branch.leaf_level();
    const std::uint32_t depth_r = design.params.subtree_depth;
    result.trace.survivor_cap = survivor_cap(design.params);

    // level with exactly K nodes
    std::uint32_t level = ilog2(design.params.k_max);
    std::vector<std::uint64_t> frontier(design.params.k_max);
    for (std::uint64_t i = 0; i < frontier.size(); ++i) frontier[i] = i;

    while (level < leaf && !frontier.empty()) {
        const std::uint32_t step_depth = std::min(depth_r, leaf - level);

        std::vector<std::vector<std::uint64_t>> per_root(frontier.size());
        std::vector<std::uint64_t> per_root_visits(frontier.size(), 0);
        auto scan_root = [&](std::size_t i) {
            const auto states = subtree_scan(design, y, NodeId{level, frontier[i]}, step_depth,
                                             per_root_visits[i]);
            per_root[i].reserve(states.size());
            for (const DensityState& s : states) per_root[i].push_back(s.node.index);
        };

        // per-root scans are tiny; only fan out when the step holds enough work
        const std::uint64_t step_work =
            frontier.size() * (std::uint64_t{1} << (step_depth + 1)) * design.params.reps;
        if (exec == Exec::parallel && step_work >= 65536) {
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(frontier.size()); ++i)
                scan_root(static_cast<std::size_t>(i));
        } else {
            for (std::size_t i = 0; i < frontier.size(); ++i) scan_root(i);
        }

        std::vector<std::uint64_t> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            result.trace.nodes_visited += per_root_visits[i];
            next.insert(next.end(), per_root[i].begin(), per_root[i].end());
        }
        // distinct subtrees cannot overlap, but keep the frontier a set
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());

        level += step_depth;
        frontier.swap(next);

        StepCounts counts;
        counts.frontier = frontier.size();
        if (truth) {
            for (std::uint64_t node : frontier) {
                if (covers_defective(node, level, leaf, *truth))
                    ++counts.true_positive;
                else
                    ++counts.false_positive;
            }
        }
        result.trace.steps.push_back(counts);

        if (frontier.size() > result.trace.survivor_cap) {
            result.trace.blowup_abort = true;
            return result;
        }
    }

    StepCounts chain_counts;
    for (std::uint64_t item : frontier) {
        result.trace.nodes_visited += design.params.extra_levels;
        if (chain_verify(design, y, item)) {
            result.items.push_back(item);
            ++chain_counts.frontier;
            if (truth) {
                if (std::binary_search(truth->begin(), truth->end(), item))
                    ++chain_counts.true_positive;
                else
                    ++chain_counts.false_positive;
            }
        }
    }
    result.trace.steps.push_back(chain_counts);
    std::sort(result.items.begin(), result.items.end());
    return result;
}

} // namespace neon
