#include "edgeshard/random.hpp"

#include <limits>

namespace edgeshard {

std::uint8_t RandomSource::next_byte() {
    if (buffered_ == 0) {
        buffer_ = engine_();
        buffered_ = 8;
    }
    const auto b = static_cast<std::uint8_t>(buffer_ & 0xFF);
    buffer_ >>= 8;
    --buffered_;
    ++position_;
    return b;
}

std::uint64_t RandomSource::next_u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<std::uint64_t>(next_byte()) << (8 * i);
    }
    return v;
}

std::uint64_t RandomSource::uniform(std::uint64_t bound) {
    if (bound <= 1) return 0;
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    // Rejection sampling: accept r below the largest multiple of bound.
    const std::uint64_t rem = (kMax % bound + 1) % bound;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (rem == 0 || r <= kMax - rem) return r % bound;
    }
}

double RandomSource::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

void RandomSource::fill(std::span<std::uint8_t> out) {
    for (auto& b : out) b = next_byte();
}

}  // namespace edgeshard
