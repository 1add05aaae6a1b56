#pragma once

#include <cstdint>
#include <vector>

namespace neon {

// Explicit M x N binary test matrix; oracle-side cross-check of the sparse
// designs, never used on a decode path.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> bits; // row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t m, std::size_t n) : rows(m), cols(n), bits(m * n, 0) {}

    bool get(std::size_t r, std::size_t c) const { return bits[r * cols + c] != 0; }
    void set(std::size_t r, std::size_t c) { bits[r * cols + c] = 1; }

    std::size_t column_weight(std::size_t c) const {
        std::size_t w = 0;
        for (std::size_t r = 0; r < rows; ++r) w += get(r, c);
        return w;
    }
};

} // namespace neon
