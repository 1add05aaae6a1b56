#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "neon/bitvec.hpp"
#include "neon/dense_matrix.hpp"
#include "neon/neon_design.hpp"
#include "neon/noisy_design.hpp"

namespace neon::oracle {

// Dense expansion of a sparse design. Guarded: M*N must stay within
// max_cells (default 2^26); oracles exist to be trustworthy, not fast.
DenseMatrix materialize_matrix(const NeonDesign& design,
                               std::uint64_t max_cells = std::uint64_t{1} << 26);
DenseMatrix materialize_matrix(const NoisyDesign& design,
                               std::uint64_t max_cells = std::uint64_t{1} << 26);

// Literal evaluation of y_t = OR_j (A_tj AND x_j).
OutcomeVector dense_or_encode(const DenseMatrix& a, std::span<const std::uint64_t> defectives);

struct CompResult {
    std::vector<std::uint64_t> possible; // items appearing in no negative test
    std::vector<std::uint64_t> untested; // zero columns, reported out-of-band
};

// Noiseless baseline: an item is possibly defective iff every test containing
// it is positive. Superset of the truth when y is noiseless.
CompResult comp_possible_defectives(const DenseMatrix& a, const OutcomeVector& y);

// All subsets S with |S| <= k_max whose dense encoding equals y, in
// lexicographic order. Hard-guarded to N <= 32, K <= 3.
std::vector<std::vector<std::uint64_t>> exhaustive_consistent_sets(const DenseMatrix& a,
                                                                   const OutcomeVector& y,
                                                                   std::uint64_t k_max);

} // namespace neon::oracle
