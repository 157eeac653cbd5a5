#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "edgeshard/shamir.hpp"
#include "edgeshard/types.hpp"

namespace edgeshard {

/// Binary share record layout, all integers big-endian:
///   magic "ESH1" | version u8 = 1 | secret_id 16 B | k u8 | n u8 | x u8 |
///   chunk_index u32 | chunk_size u32 | payload_len u64 | payload |
///   CRC-32 (IEEE) over all preceding bytes, u32.
inline constexpr std::size_t kShareHeaderSize = 40;
inline constexpr std::size_t kShareOverhead = kShareHeaderSize + 4;
inline constexpr std::uint8_t kShareFormatVersion = 1;
inline constexpr char kShareMagic[4] = {'E', 'S', 'H', '1'};

Bytes encode_share(const Share& share);

/// Decodes one record from the front of the buffer. When consumed is given it
/// receives the record length. Throws CorruptShare on bad magic, version,
/// truncation, or CRC mismatch.
Share decode_share(std::span<const std::uint8_t> buffer, std::size_t* consumed = nullptr);

/// Decodes back-to-back records until the buffer is exhausted.
std::vector<Share> decode_share_stream(std::span<const std::uint8_t> buffer);

/// Splits data into chunks of chunk_size and writes one file per x under
/// dir, named share-<xxx>.esh, each holding that x's record for every chunk.
/// Empty data still produces one empty-payload record per file. Returns the
/// paths in x order.
struct ShareFileSet {
    SecretId secret_id;
    std::vector<std::filesystem::path> files;
};
ShareFileSet write_share_files(std::span<const std::uint8_t> data, const SharePolicy& policy,
                               std::uint32_t chunk_size, RandomSource& rng,
                               const std::filesystem::path& dir);

/// Reads share files, groups records per chunk, reconstructs every chunk and
/// reassembles the original bytes. Records failing their CRC are skipped with
/// a warning naming the file. Throws InconsistentShares on mixed secret ids
/// and InsufficientShares when any chunk has fewer than k usable shares.
Bytes reconstruct_from_files(std::span<const std::filesystem::path> files,
                             std::vector<std::string>* warnings = nullptr,
                             SecretId* id_out = nullptr);

}  // namespace edgeshard
