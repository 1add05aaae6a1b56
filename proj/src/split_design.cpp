#include "neon/split_design.hpp"

#include <cmath>
#include <stdexcept>

#include "neon/rng.hpp"

namespace neon {

std::uint32_t split_start_level(std::uint64_t defect_bound) {
    return ilog2(defect_bound) + 1;
}

SplitDesign build_split_design(std::uint64_t n_items, std::uint64_t defect_bound, double zeta,
                               std::uint32_t reps, std::uint32_t start_level,
                               std::uint32_t end_level, std::uint64_t seed) {
    if (!is_pow2(n_items))
        throw std::invalid_argument("build_split_design: N must be a power of two");
    if (defect_bound < 1 || defect_bound > n_items)
        throw std::invalid_argument("build_split_design: require 1 <= t <= N");
    if (!(zeta > 0))
        throw std::invalid_argument("build_split_design: require zeta > 0");
    if (reps < 1)
        throw std::invalid_argument("build_split_design: require reps >= 1");
    const std::uint32_t leaf = ilog2(n_items);
    if (start_level < 1 || start_level > end_level || end_level > leaf)
        throw std::invalid_argument("build_split_design: bad level range");

    SplitDesign d;
    d.n_items = n_items;
    d.defect_bound = defect_bound;
    d.tests_per_level =
        static_cast<std::uint32_t>(std::ceil(zeta * static_cast<double>(defect_bound)));
    d.start_level = start_level;
    d.end_level = end_level;
    d.reps = reps;
    d.rng_seed = seed;

    Rng rng(seed);
    d.assignment.resize(static_cast<std::size_t>(d.levels()) * reps);
    for (std::uint32_t level = start_level; level <= end_level; ++level) {
        const std::uint64_t nodes = std::uint64_t{1} << level;
        for (std::uint32_t rep = 0; rep < reps; ++rep) {
            auto& bank = d.assignment[static_cast<std::size_t>(level - start_level) * reps + rep];
            bank.resize(nodes);
            for (std::uint64_t node = 0; node < nodes; ++node)
                bank[node] = static_cast<std::uint32_t>(rng.bounded(d.tests_per_level));
        }
    }
    return d;
}

} // namespace neon
