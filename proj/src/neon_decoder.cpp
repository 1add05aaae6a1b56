#include "neon/neon_decoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace neon {

std::map<std::uint32_t, std::uint64_t> MultiplicityTable::histogram() const {
    std::map<std::uint32_t, std::uint64_t> hist;
    for (const auto& [item, count] : counts) ++hist[count];
    return hist;
}

LocalResult local_decode(const NeonDesign& design, std::uint32_t block_id,
                         const OutcomeVector& y_block) {
    const SplitDesign& local = design.local(block_id);
    if (y_block.size() != local.total_tests())
        throw std::invalid_argument("local_decode: slice length does not match block rows");

    LocalResult result;
    result.block_id = block_id;

    // frontier seeded with every node of the first tested level
    std::vector<std::uint64_t> frontier(std::uint64_t{1} << local.start_level);
    for (std::uint64_t i = 0; i < frontier.size(); ++i) frontier[i] = i;

    std::vector<std::uint64_t> next;
    for (std::uint32_t level = local.start_level; level <= local.end_level; ++level) {
        next.clear();
        for (std::uint64_t node : frontier) {
            ++result.nodes_visited;
            if (!y_block.get(local.global_test(level, 0, node))) continue;
            ++result.positive_nodes;
            if (level == local.end_level) {
                result.items.push_back(node);
            } else {
                next.push_back(node * 2);
                next.push_back(node * 2 + 1);
            }
        }
        frontier.swap(next);
    }

    // the descent cannot emit duplicates; dedupe anyway before counting
    std::sort(result.items.begin(), result.items.end());
    result.items.erase(std::unique(result.items.begin(), result.items.end()),
                       result.items.end());
    return result;
}

GlobalDecodeResult global_decode(const NeonDesign& design, const OutcomeVector& y, Exec exec) {
    if (y.size() != design.total_tests())
        throw std::invalid_argument("global_decode: outcome length does not match design");

    const std::uint64_t blocks = design.params.blocks;
    const std::uint64_t rows = design.block_rows();
    std::vector<LocalResult> locals(blocks);

    auto decode_block = [&](std::uint64_t j) {
        locals[j] = local_decode(design, static_cast<std::uint32_t>(j), y.slice(j * rows, rows));
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(blocks); ++j)
            decode_block(static_cast<std::uint64_t>(j));
    } else {
        for (std::uint64_t j = 0; j < blocks; ++j) decode_block(j);
    }

    GlobalDecodeResult result;
    for (const LocalResult& lr : locals) {
        result.nodes_visited += lr.nodes_visited;
        for (std::uint64_t item : lr.items) ++result.table.counts[item];
    }
    for (const auto& [item, count] : result.table.counts)
        if (count >= design.params.circles) result.items.push_back(item);
    return result;
}

} // namespace neon
