#pragma once

#include <cstdint>
#include <span>

#include "neon/bitvec.hpp"
#include "neon/exec.hpp"
#include "neon/neon_design.hpp"
#include "neon/noisy_design.hpp"

namespace neon {

enum class ChannelKind { noiseless, fpc, fnc, bsc, bac };

// Flip rates of the test-result channel: rho is 0->1, rho_prime is 1->0.
struct ChannelSpec {
    ChannelKind kind = ChannelKind::noiseless;
    double rho = 0;
    double rho_prime = 0;

    static ChannelSpec noiseless() { return {}; }
    static ChannelSpec fpc(double rho) { return {ChannelKind::fpc, rho, 0}; }
    static ChannelSpec fnc(double rho_prime) { return {ChannelKind::fnc, 0, rho_prime}; }
    static ChannelSpec bsc(double rho) { return {ChannelKind::bsc, rho, rho}; }
    static ChannelSpec bac(double rho, double rho_prime) {
        return {ChannelKind::bac, rho, rho_prime};
    }

    // Enforces the per-kind shape (noiseless => both zero, FPC => rho' = 0,
    // FNC => rho = 0, BSC => equal) and rates in [0, 1/2).
    void validate() const;
};

const char* channel_kind_name(ChannelKind kind);

// Noiseless outcomes: bit t is 1 iff some defective participates in test t.
// Computed by walking each defective's node chain (and circled blocks), never
// through a dense matrix. |defectives| > K warns (errors under strict); ids
// out of [0, N) always error.
OutcomeVector encode(const NeonDesign& design, std::span<const std::uint64_t> defectives,
                     bool strict = false);
OutcomeVector encode(const NoisyDesign& design, std::span<const std::uint64_t> defectives,
                     bool strict = false);

// Flips each 0 to 1 with probability rho and each 1 to 0 with probability
// rho_prime, independently per test, keyed by (seed, test index) so the
// result is identical no matter how the loop is scheduled.
OutcomeVector apply_channel(const OutcomeVector& y, const ChannelSpec& spec, std::uint64_t seed,
                            Exec exec = Exec::serial);

} // namespace neon
