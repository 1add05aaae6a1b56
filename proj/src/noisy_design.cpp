#include "neon/noisy_design.hpp"

#include "neon/rng.hpp"

namespace neon {

NoisyDesign build_noisy_design(const NoisyParams& params, std::uint64_t seed) {
    NoisyDesign d;
    d.params = params;
    d.seed = seed;
    d.branch = build_split_design(params.n_items, params.k_max, params.zeta, params.reps,
                                  params.start_level(), params.leaf_level(),
                                  derive_seed(seed, 0xB4A2C4ULL));

    Rng rng(derive_seed(seed, 0xC4A11ULL));
    const std::uint32_t bank = d.bank_size();
    d.chain.resize(static_cast<std::size_t>(params.extra_levels) * params.reps);
    for (std::uint32_t e = 0; e < params.extra_levels; ++e)
        for (std::uint32_t rep = 0; rep < params.reps; ++rep) {
            auto& slots = d.chain[static_cast<std::size_t>(e) * params.reps + rep];
            slots.resize(params.n_items);
            for (std::uint64_t item = 0; item < params.n_items; ++item)
                slots[item] = static_cast<std::uint32_t>(rng.bounded(bank));
        }
    return d;
}

} // namespace neon
