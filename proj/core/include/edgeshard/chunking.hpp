#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgeshard/types.hpp"

namespace edgeshard {

/// Fixed-size chunk layout for a payload. The last chunk may be shorter;
/// an empty payload has zero chunks.
struct ChunkLayout {
    std::uint32_t chunk_size = 0;
    std::uint64_t total_length = 0;
    std::uint32_t chunk_count = 0;

    /// Throws InvalidChunkSize when chunk_size is zero.
    static ChunkLayout for_size(std::uint64_t total_length, std::uint32_t chunk_size);

    /// Length of one chunk under this layout.
    std::size_t length_of(std::uint32_t index) const;

    friend bool operator==(const ChunkLayout&, const ChunkLayout&) = default;
};

/// Cuts data into chunk_size pieces; concatenating the result restores data.
std::vector<Bytes> chunk_data(std::span<const std::uint8_t> data, std::uint32_t chunk_size);

}  // namespace edgeshard
