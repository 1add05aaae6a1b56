#pragma once

#include <cstdint>
#include <vector>

namespace neon {

// SplitMix64 finalizer (Steele, Lea, Flood). Doubles as a stateless hash.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent stream seed derived from (base, salt). Used to key trials,
// designs, defective draws and channel noise off one master seed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    return splitmix64(base ^ splitmix64(salt + 0x6A09E667F3BCC909ULL));
}

// Counter-based uniform in [0,1): value depends only on (seed, counter),
// never on evaluation order, so noise application parallelizes safely.
inline double hash_unit(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t u = splitmix64(seed ^ splitmix64(counter + 0xD1B54A32D192ED03ULL));
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

// Sequential SplitMix64 stream. Bit-identical on every platform, unlike
// std::uniform_int_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Multiply-high bounded draw; bias is below n / 2^64.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * static_cast<unsigned __int128>(n)) >> 64);
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Floyd's algorithm: uniform k-subset of [0, n), returned sorted.
std::vector<std::uint64_t> sample_without_replacement(Rng& rng, std::uint64_t n, std::uint64_t k);

} // namespace neon
