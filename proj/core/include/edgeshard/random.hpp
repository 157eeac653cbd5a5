#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace edgeshard {

/// Deterministic random byte stream. The same seed yields the same byte
/// sequence on every platform (mt19937_64 output is fixed by the standard),
/// and every derived draw (u64, bounded integer, double) consumes from the
/// single byte stream, so interleaved callers replay identically.
///
/// Not safe to share across concurrent callers; give each its own instance.
class RandomSource {
   public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint8_t next_byte();

    /// Next 8 stream bytes assembled little-endian.
    std::uint64_t next_u64();

    /// Uniform in [0, bound). bound == 0 or 1 returns 0.
    std::uint64_t uniform(std::uint64_t bound);

    /// Uniform in [0, 1) with 53 bits of precision.
    double next_double();

    void fill(std::span<std::uint8_t> out);

    std::uint64_t seed() const { return seed_; }
    /// Number of bytes consumed from the stream so far.
    std::uint64_t position() const { return position_; }

   private:
    std::uint64_t seed_;
    std::uint64_t position_ = 0;
    std::mt19937_64 engine_;
    std::uint64_t buffer_ = 0;
    int buffered_ = 0;
};

}  // namespace edgeshard
