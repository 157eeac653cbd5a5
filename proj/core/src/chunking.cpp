#include "edgeshard/chunking.hpp"

#include "edgeshard/errors.hpp"

namespace edgeshard {

ChunkLayout ChunkLayout::for_size(std::uint64_t total_length, std::uint32_t chunk_size) {
    if (chunk_size == 0) throw InvalidChunkSize();
    ChunkLayout layout;
    layout.chunk_size = chunk_size;
    layout.total_length = total_length;
    layout.chunk_count = static_cast<std::uint32_t>((total_length + chunk_size - 1) / chunk_size);
    return layout;
}

std::size_t ChunkLayout::length_of(std::uint32_t index) const {
    if (index + 1 < chunk_count) return chunk_size;
    if (index + 1 == chunk_count) {
        const std::uint64_t rem = total_length - std::uint64_t(index) * chunk_size;
        return static_cast<std::size_t>(rem);
    }
    return 0;
}

std::vector<Bytes> chunk_data(std::span<const std::uint8_t> data, std::uint32_t chunk_size) {
    const auto layout = ChunkLayout::for_size(data.size(), chunk_size);
    std::vector<Bytes> chunks;
    chunks.reserve(layout.chunk_count);
    for (std::uint32_t i = 0; i < layout.chunk_count; ++i) {
        const std::size_t begin = std::size_t(i) * chunk_size;
        const std::size_t len = layout.length_of(i);
        chunks.emplace_back(data.begin() + begin, data.begin() + begin + len);
    }
    return chunks;
}

}  // namespace edgeshard
