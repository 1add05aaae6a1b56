#include "neon/bitvec.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace neon {

std::size_t OutcomeVector::count_ones() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

OutcomeVector& OutcomeVector::operator|=(const OutcomeVector& other) {
    if (m_ != other.m_)
        throw std::invalid_argument("OutcomeVector: length mismatch in |=");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

bool OutcomeVector::is_subset_of(const OutcomeVector& other) const {
    if (m_ != other.m_)
        throw std::invalid_argument("OutcomeVector: length mismatch in is_subset_of");
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

OutcomeVector OutcomeVector::slice(std::size_t offset, std::size_t len) const {
    if (offset + len > m_)
        throw std::out_of_range("OutcomeVector::slice: range exceeds length");
    OutcomeVector out(len);
    for (std::size_t i = 0; i < len; ++i)
        if (get(offset + i)) out.set(i);
    return out;
}

std::string OutcomeVector::hex_digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix_byte = [&h](std::uint8_t b) {
        h ^= b;
        h *= 0x100000001b3ULL;
    };
    for (std::size_t i = 0; i < 8; ++i) mix_byte(static_cast<std::uint8_t>(m_ >> (8 * i)));
    for (std::uint64_t w : words_)
        for (std::size_t i = 0; i < 8; ++i) mix_byte(static_cast<std::uint8_t>(w >> (8 * i)));
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (std::size_t i = 0; i < 16; ++i) out[15 - i] = digits[(h >> (4 * i)) & 0xF];
    return out;
}

void OutcomeVector::serialize(std::ostream& os) const {
    os << m_;
    os << std::hex;
    for (std::uint64_t w : words_) os << ' ' << w;
    os << std::dec << '\n';
}

OutcomeVector OutcomeVector::deserialize(std::istream& is) {
    std::size_t m = 0;
    if (!(is >> m)) throw std::runtime_error("OutcomeVector: bad length header");
    OutcomeVector out(m);
    is >> std::hex;
    for (auto& w : out.words_)
        if (!(is >> w)) throw std::runtime_error("OutcomeVector: truncated payload");
    is >> std::dec;
    return out;
}

} // namespace neon
