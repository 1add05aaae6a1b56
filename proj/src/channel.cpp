#include "neon/channel.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "neon/rng.hpp"

namespace neon {

void ChannelSpec::validate() const {
    if (rho < 0 || rho >= 0.5 || rho_prime < 0 || rho_prime >= 0.5)
        throw std::invalid_argument("ChannelSpec: flip rates must lie in [0, 1/2)");
    switch (kind) {
    case ChannelKind::noiseless:
        if (rho != 0 || rho_prime != 0)
            throw std::invalid_argument("ChannelSpec: noiseless requires zero rates");
        break;
    case ChannelKind::fpc:
        if (rho_prime != 0)
            throw std::invalid_argument("ChannelSpec: FPC requires rho_prime = 0");
        break;
    case ChannelKind::fnc:
        if (rho != 0)
            throw std::invalid_argument("ChannelSpec: FNC requires rho = 0");
        break;
    case ChannelKind::bsc:
        if (rho != rho_prime)
            throw std::invalid_argument("ChannelSpec: BSC requires rho = rho_prime");
        break;
    case ChannelKind::bac:
        break;
    }
}

const char* channel_kind_name(ChannelKind kind) {
    switch (kind) {
    case ChannelKind::noiseless: return "noiseless";
    case ChannelKind::fpc: return "fpc";
    case ChannelKind::fnc: return "fnc";
    case ChannelKind::bsc: return "bsc";
    case ChannelKind::bac: return "bac";
    }
    return "?";
}

namespace {

void check_defectives(std::span<const std::uint64_t> defectives, std::uint64_t n_items,
                      std::uint64_t k_max, bool strict) {
    for (std::uint64_t id : defectives)
        if (id >= n_items)
            throw std::out_of_range("encode: defective id out of range");
    if (defectives.size() > k_max) {
        if (strict)
            throw std::invalid_argument("encode: more defectives than K in strict mode");
        std::fprintf(stderr, "neon: warning: %zu defectives exceed K = %llu\n",
                     defectives.size(), static_cast<unsigned long long>(k_max));
    }
}

} // namespace

OutcomeVector encode(const NeonDesign& design, std::span<const std::uint64_t> defectives,
                     bool strict) {
    check_defectives(defectives, design.params.n_items, design.params.k_max, strict);
    OutcomeVector y(design.total_tests());
    const std::uint64_t rows = design.block_rows();
    for (std::uint64_t item : defectives) {
        for (std::uint32_t block : design.circled_blocks(item)) {
            const SplitDesign& local = design.local(block);
            const std::uint64_t base = block * rows;
            for (std::uint32_t level = local.start_level; level <= local.end_level; ++level) {
                const std::uint64_t node = ancestor_index(item, level, local.leaf_level());
                y.set(base + local.global_test(level, 0, node));
            }
        }
    }
    return y;
}

OutcomeVector encode(const NoisyDesign& design, std::span<const std::uint64_t> defectives,
                     bool strict) {
    check_defectives(defectives, design.params.n_items, design.params.k_max, strict);
    OutcomeVector y(design.total_tests());
    const SplitDesign& branch = design.branch;
    for (std::uint64_t item : defectives) {
        for (std::uint32_t level = branch.start_level; level <= branch.end_level; ++level) {
            const std::uint64_t node = ancestor_index(item, level, branch.leaf_level());
            for (std::uint32_t rep = 0; rep < branch.reps; ++rep)
                y.set(branch.global_test(level, rep, node));
        }
        for (std::uint32_t e = 0; e < design.params.extra_levels; ++e)
            for (std::uint32_t rep = 0; rep < design.params.reps; ++rep)
                y.set(design.chain_global_test(e, rep, item));
    }
    return y;
}

OutcomeVector apply_channel(const OutcomeVector& y, const ChannelSpec& spec, std::uint64_t seed,
                            Exec exec) {
    spec.validate();
    const std::size_t m = y.size();
    OutcomeVector out(m);
    if (spec.rho == 0 && spec.rho_prime == 0) {
        out = y;
        return out;
    }

    auto out_bit = [&](std::size_t t) {
        const bool bit = y.get(t);
        const double u = hash_unit(seed, t);
        return bit ? (u >= spec.rho_prime) : (u < spec.rho);
    };
    // One thread owns the full 64-bit word, so there is no shared write.
    const std::size_t n_words = (m + 63) / 64;
    auto fill_word = [&](std::size_t w) {
        const std::size_t hi = std::min(m, (w + 1) * 64);
        for (std::size_t t = w * 64; t < hi; ++t)
            if (out_bit(t)) out.set(t);
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t w = 0; w < static_cast<std::int64_t>(n_words); ++w)
            fill_word(static_cast<std::size_t>(w));
    } else {
        for (std::size_t w = 0; w < n_words; ++w) fill_word(w);
    }
    return out;
}

} // namespace neon
