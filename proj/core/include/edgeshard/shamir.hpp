#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgeshard/random.hpp"
#include "edgeshard/types.hpp"

namespace edgeshard {

/// (k, n) threshold policy: any k of the n shares reconstruct, any k-1 reveal
/// nothing. x-coordinates are the nonzero field elements 1..n, so n <= 255.
struct SharePolicy {
    std::uint8_t k = 0;
    std::uint8_t n = 0;

    bool valid() const { return k >= 2 && k <= n; }
    void ensure_valid() const;  // throws InvalidPolicy

    friend bool operator==(const SharePolicy&, const SharePolicy&) = default;
};

/// One node's portion of a secret chunk. The payload holds the byte-wise
/// polynomial evaluations at this share's x; it is exactly as long as the
/// chunk it was split from.
struct Share {
    SecretId secret_id;
    SharePolicy policy;
    std::uint8_t x = 0;  // evaluation point, never 0
    std::uint32_t chunk_index = 0;
    std::uint32_t chunk_size = 0;  // nominal chunk size of the owning layout
    Bytes payload;
    std::uint32_t checksum = 0;  // CRC-32 of the encoded record minus the trailing CRC

    /// Recomputes the record checksum from the current fields.
    std::uint32_t compute_checksum() const;
    bool checksum_ok() const { return checksum == compute_checksum(); }
};

/// Interpolation weights w such that sum_i w[i] * f(xs[i]) = f(0) for every
/// polynomial of degree < xs.size(). xs must be pairwise distinct and nonzero.
std::vector<std::uint8_t> lagrange_weights_at_zero(std::span<const std::uint8_t> xs);

/// Splits one chunk under an existing identity. Every byte position gets its
/// own random degree-(k-1) polynomial whose constant term is the secret byte;
/// share i carries x = i for i = 1..n. Coefficients are drawn from rng one
/// byte position at a time, ascending degree.
std::vector<Share> split_chunk(const SecretId& id, std::uint32_t chunk_index,
                               std::uint32_t chunk_size, std::span<const std::uint8_t> chunk,
                               const SharePolicy& policy, RandomSource& rng);

/// Splits a whole secret as a single chunk, drawing a fresh secret id from rng.
std::vector<Share> split(std::span<const std::uint8_t> secret, const SharePolicy& policy,
                         RandomSource& rng);

/// Recovers the chunk from any k (or more) consistent shares by Lagrange
/// interpolation at zero. Shares beyond the first k (ordered by x) are
/// ignored once they pass the consistency checks.
Bytes reconstruct(std::span<const Share* const> shares, const SharePolicy& expected);
Bytes reconstruct(std::span<const Share> shares, const SharePolicy& expected);

}  // namespace edgeshard
