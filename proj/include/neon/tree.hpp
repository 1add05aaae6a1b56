#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace neon {

constexpr bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

// floor(log2 x), x >= 1
constexpr std::uint32_t ilog2(std::uint64_t x) {
    std::uint32_t r = 0;
    while (x >>= 1) ++r;
    return r;
}

// Address into the item binary tree: root is (0,0), level l has 2^l nodes,
// and node (leaf_level, i) is exactly item i.
struct NodeId {
    std::uint32_t level = 0;
    std::uint64_t index = 0;

    bool operator==(const NodeId&) const = default;
};

// Children follow the bit-prefix convention: (l, i) -> (l+1, 2i), (l+1, 2i+1).
inline std::pair<NodeId, NodeId> node_children(NodeId node, std::uint32_t leaf_level) {
    if (node.level >= leaf_level)
        throw std::invalid_argument("node_children: leaf node has no children");
    return {NodeId{node.level + 1, node.index * 2},
            NodeId{node.level + 1, node.index * 2 + 1}};
}

// Index of the ancestor of `item` at `level` (item lives at leaf_level).
constexpr std::uint64_t ancestor_index(std::uint64_t item, std::uint32_t level,
                                       std::uint32_t leaf_level) {
    return item >> (leaf_level - level);
}

// Half-open item range [lo, hi) represented by a node.
constexpr std::pair<std::uint64_t, std::uint64_t> item_range(NodeId node,
                                                             std::uint32_t leaf_level) {
    const std::uint64_t width = std::uint64_t{1} << (leaf_level - node.level);
    return {node.index * width, (node.index + 1) * width};
}

} // namespace neon
