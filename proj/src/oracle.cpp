#include "neon/oracle.hpp"

#include <stdexcept>

#include "neon/tree.hpp"

namespace neon::oracle {

namespace {

void check_cells(std::uint64_t m, std::uint64_t n, std::uint64_t max_cells) {
    if (m * n > max_cells)
        throw std::invalid_argument("materialize_matrix: size guard exceeded");
}

} // namespace

DenseMatrix materialize_matrix(const NeonDesign& design, std::uint64_t max_cells) {
    const std::uint64_t m = design.total_tests();
    const std::uint64_t n = design.params.n_items;
    check_cells(m, n, max_cells);
    DenseMatrix a(m, n);
    const std::uint64_t rows = design.block_rows();
    for (std::uint64_t item = 0; item < n; ++item)
        for (std::uint32_t block : design.circled_blocks(item)) {
            const SplitDesign& local = design.local(block);
            for (std::uint32_t level = local.start_level; level <= local.end_level; ++level) {
                const std::uint64_t node = ancestor_index(item, level, local.leaf_level());
                a.set(block * rows + local.global_test(level, 0, node), item);
            }
        }
    return a;
}

DenseMatrix materialize_matrix(const NoisyDesign& design, std::uint64_t max_cells) {
    const std::uint64_t m = design.total_tests();
    const std::uint64_t n = design.params.n_items;
    check_cells(m, n, max_cells);
    DenseMatrix a(m, n);
    const SplitDesign& branch = design.branch;
    for (std::uint64_t item = 0; item < n; ++item) {
        for (std::uint32_t level = branch.start_level; level <= branch.end_level; ++level) {
            const std::uint64_t node = ancestor_index(item, level, branch.leaf_level());
            for (std::uint32_t rep = 0; rep < branch.reps; ++rep)
                a.set(branch.global_test(level, rep, node), item);
        }
        for (std::uint32_t e = 0; e < design.params.extra_levels; ++e)
            for (std::uint32_t rep = 0; rep < design.params.reps; ++rep)
                a.set(design.chain_global_test(e, rep, item), item);
    }
    return a;
}

OutcomeVector dense_or_encode(const DenseMatrix& a, std::span<const std::uint64_t> defectives) {
    for (std::uint64_t id : defectives)
        if (id >= a.cols)
            throw std::out_of_range("dense_or_encode: defective id out of range");
    OutcomeVector y(a.rows);
    for (std::size_t t = 0; t < a.rows; ++t)
        for (std::uint64_t id : defectives)
            if (a.get(t, id)) {
                y.set(t);
                break;
            }
    return y;
}

CompResult comp_possible_defectives(const DenseMatrix& a, const OutcomeVector& y) {
    if (y.size() != a.rows)
        throw std::invalid_argument("comp_possible_defectives: dimension mismatch");
    CompResult out;
    for (std::uint64_t item = 0; item < a.cols; ++item) {
        bool tested = false;
        bool all_positive = true;
        for (std::size_t t = 0; t < a.rows; ++t)
            if (a.get(t, item)) {
                tested = true;
                if (!y.get(t)) {
                    all_positive = false;
                    break;
                }
            }
        if (!tested)
            out.untested.push_back(item);
        else if (all_positive)
            out.possible.push_back(item);
    }
    return out;
}

namespace {

// columns cached as bit vectors so each candidate subset is an OR of at most
// k_max words-wide vectors instead of a row scan
void enumerate_rec(const std::vector<OutcomeVector>& columns, const OutcomeVector& y,
                   std::uint64_t k_max, std::uint64_t first, const OutcomeVector& accum,
                   std::vector<std::uint64_t>& current,
                   std::vector<std::vector<std::uint64_t>>& found) {
    if (accum == y) found.push_back(current);
    if (current.size() == k_max) return;
    for (std::uint64_t item = first; item < columns.size(); ++item) {
        current.push_back(item);
        OutcomeVector next = accum;
        next |= columns[item];
        enumerate_rec(columns, y, k_max, item + 1, next, current, found);
        current.pop_back();
    }
}

} // namespace

std::vector<std::vector<std::uint64_t>> exhaustive_consistent_sets(const DenseMatrix& a,
                                                                   const OutcomeVector& y,
                                                                   std::uint64_t k_max) {
    if (a.cols > 32 || k_max > 3)
        throw std::invalid_argument("exhaustive_consistent_sets: guard exceeded (N <= 32, K <= 3)");
    if (y.size() != a.rows)
        throw std::invalid_argument("exhaustive_consistent_sets: dimension mismatch");
    std::vector<OutcomeVector> columns(a.cols, OutcomeVector(a.rows));
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < a.cols; ++c)
            if (a.get(r, c)) columns[c].set(r);
    std::vector<std::vector<std::uint64_t>> found;
    std::vector<std::uint64_t> current;
    enumerate_rec(columns, y, k_max, 0, OutcomeVector(a.rows), current, found);
    return found;
}

} // namespace neon::oracle
