#include "edgeshard/crc32.hpp"

#include <array>
#include <cstring>

namespace edgeshard {
namespace {

// Slice-by-8 tables; table[0] is the classic byte-at-a-time table.
constexpr std::array<std::array<std::uint32_t, 256>, 8> build_tables() {
    std::array<std::array<std::uint32_t, 256>, 8> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int bit = 0; bit < 8; ++bit) {
            c = (c & 1) ? (0xEDB88320u ^ (c >> 1)) : (c >> 1);
        }
        t[0][i] = c;
    }
    for (std::uint32_t i = 0; i < 256; ++i) {
        for (int j = 1; j < 8; ++j) {
            t[j][i] = (t[j - 1][i] >> 8) ^ t[0][t[j - 1][i] & 0xFF];
        }
    }
    return t;
}

constexpr std::array<std::array<std::uint32_t, 256>, 8> kT = build_tables();

std::uint32_t load_le32(const std::uint8_t* p) {
    std::uint32_t v;
    std::memcpy(&v, p, 4);
    return v;  // little-endian hosts only; fine for this codebase's targets
}

}  // namespace

std::uint32_t crc32_update(std::uint32_t state, std::span<const std::uint8_t> data) {
    const std::uint8_t* p = data.data();
    std::size_t len = data.size();
    while (len >= 8) {
        const std::uint32_t lo = state ^ load_le32(p);
        const std::uint32_t hi = load_le32(p + 4);
        state = kT[7][lo & 0xFF] ^ kT[6][(lo >> 8) & 0xFF] ^ kT[5][(lo >> 16) & 0xFF] ^
                kT[4][lo >> 24] ^ kT[3][hi & 0xFF] ^ kT[2][(hi >> 8) & 0xFF] ^
                kT[1][(hi >> 16) & 0xFF] ^ kT[0][hi >> 24];
        p += 8;
        len -= 8;
    }
    for (; len > 0; ++p, --len) {
        state = kT[0][(state ^ *p) & 0xFF] ^ (state >> 8);
    }
    return state;
}

std::uint32_t crc32(std::span<const std::uint8_t> data) {
    return crc32_final(crc32_update(crc32_init(), data));
}

}  // namespace edgeshard
