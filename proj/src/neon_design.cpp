#include "neon/neon_design.hpp"

#include <algorithm>
#include <stdexcept>

#include "neon/rng.hpp"

namespace neon {

bool NeonDesign::is_circled(std::uint64_t item, std::uint64_t block) const {
    const auto blocks = circled_blocks(item);
    return std::binary_search(blocks.begin(), blocks.end(), static_cast<std::uint32_t>(block));
}

NeonDesign build_neon_design(const SchemeParams& params, std::uint64_t seed, bool shared_local) {
    if (params.blocks < params.circles)
        throw std::invalid_argument("build_neon_design: fewer blocks than circles per item");

    NeonDesign d;
    d.params = params;
    d.shared_local = shared_local;
    d.seed = seed;

    const std::uint32_t start = split_start_level(params.local_bound);
    const std::uint32_t leaf = params.leaf_level();
    const std::uint64_t n_locals = shared_local ? 1 : params.blocks;
    d.locals.reserve(n_locals);
    for (std::uint64_t j = 0; j < n_locals; ++j)
        d.locals.push_back(build_split_design(params.n_items, params.local_bound, params.zeta,
                                              1, start, leaf, derive_seed(seed, j)));

    Rng rng(derive_seed(seed, 0xC19C1E5ULL));
    d.circling.resize(params.n_items * params.circles);
    for (std::uint64_t item = 0; item < params.n_items; ++item) {
        const auto subset = sample_without_replacement(rng, params.blocks, params.circles);
        for (std::uint32_t j = 0; j < params.circles; ++j)
            d.circling[item * params.circles + j] = static_cast<std::uint32_t>(subset[j]);
    }
    return d;
}

} // namespace neon
