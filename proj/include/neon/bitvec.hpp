#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace neon {

// Packed bit vector of test outcomes (y in the problem model). Length is
// fixed at construction and always equals the owning design's test count.
class OutcomeVector {
public:
    OutcomeVector() = default;
    explicit OutcomeVector(std::size_t m) : m_(m), words_((m + 63) / 64, 0) {}

    std::size_t size() const { return m_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = 1ULL << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void set(std::size_t i) { words_[i >> 6] |= 1ULL << (i & 63); }

    std::size_t count_ones() const;

    OutcomeVector& operator|=(const OutcomeVector& other);

    bool operator==(const OutcomeVector& other) const {
        return m_ == other.m_ && words_ == other.words_;
    }

    // true iff every set bit of *this is set in other
    bool is_subset_of(const OutcomeVector& other) const;

    OutcomeVector slice(std::size_t offset, std::size_t len) const;

    // FNV-1a over the packed words; stable fingerprint for cross-run comparison.
    std::string hex_digest() const;

    // length header + packed words, one line of text
    void serialize(std::ostream& os) const;
    static OutcomeVector deserialize(std::istream& is);

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::size_t m_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace neon
