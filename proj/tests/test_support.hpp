#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Test-only reference implementations, kept independent of the library's
// table-driven arithmetic so they can serve as oracles.

namespace testsupport {

// Carry-less shift-and-reduce multiply over x^8 + x^4 + x^3 + x + 1.
inline std::uint8_t slow_gf_mul(std::uint8_t a, std::uint8_t b) {
    unsigned acc = 0;
    unsigned aa = a;
    for (unsigned bb = b; bb != 0; bb >>= 1) {
        if (bb & 1) acc ^= aa;
        aa <<= 1;
        if (aa & 0x100) aa ^= 0x11B;
    }
    return static_cast<std::uint8_t>(acc);
}

// Exhaustive-search inverse; returns 0 when none exists.
inline std::uint8_t slow_gf_inv(std::uint8_t a) {
    for (unsigned c = 0; c < 256; ++c) {
        if (slow_gf_mul(a, static_cast<std::uint8_t>(c)) == 1)
            return static_cast<std::uint8_t>(c);
    }
    return 0;
}

// Power-accumulation evaluation, constant term first.
inline std::uint8_t slow_poly_eval(std::span<const std::uint8_t> coeffs, std::uint8_t x) {
    std::uint8_t acc = 0;
    std::uint8_t xp = 1;
    for (const std::uint8_t c : coeffs) {
        acc ^= slow_gf_mul(c, xp);
        xp = slow_gf_mul(xp, x);
    }
    return acc;
}

// Bit-by-bit CRC-32 (IEEE, reflected), deliberately table-free.
inline std::uint32_t slow_crc32(std::span<const std::uint8_t> data) {
    std::uint32_t crc = 0xFFFFFFFFu;
    for (const std::uint8_t byte : data) {
        crc ^= byte;
        for (int bit = 0; bit < 8; ++bit) {
            crc = (crc & 1) ? (0xEDB88320u ^ (crc >> 1)) : (crc >> 1);
        }
    }
    return crc ^ 0xFFFFFFFFu;
}

// Every index subset of size k from {0, ..., n-1}.
inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k);
    auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= n; ++i) {
            cur[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace testsupport
