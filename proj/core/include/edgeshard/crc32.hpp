#pragma once

#include <cstdint>
#include <span>

namespace edgeshard {

/// CRC-32 as used by IEEE 802.3 / zip / zlib (reflected polynomial 0xEDB88320,
/// initial value and final XOR 0xFFFFFFFF).
std::uint32_t crc32(std::span<const std::uint8_t> data);

/// Incremental form: state = crc32_init(); state = crc32_update(state, part);
/// crc = crc32_final(state).
constexpr std::uint32_t crc32_init() { return 0xFFFFFFFFu; }
std::uint32_t crc32_update(std::uint32_t state, std::span<const std::uint8_t> data);
constexpr std::uint32_t crc32_final(std::uint32_t state) { return state ^ 0xFFFFFFFFu; }

}  // namespace edgeshard
