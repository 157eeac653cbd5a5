#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace edgeshard::gf {

/// GF(2^8) under the reduction polynomial x^8 + x^4 + x^3 + x + 1 (0x11B).
/// Multiplication goes through log/exp tables over the generator 0x03; the
/// exp table is doubled so the index sum never needs a mod 255.

namespace detail {
extern const std::array<std::uint8_t, 256> kLog;  // kLog[0] is unused
extern const std::array<std::uint8_t, 510> kExp;
}  // namespace detail

constexpr std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }

inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    return detail::kExp[detail::kLog[a] + detail::kLog[b]];
}

/// Multiplicative inverse. Throws NonInvertible for 0.
std::uint8_t inv(std::uint8_t a);

/// Horner evaluation of a polynomial given coefficients, constant term first.
/// Throws InvalidPolynomial when coeffs is empty.
std::uint8_t poly_eval(std::span<const std::uint8_t> coeffs, std::uint8_t x);

}  // namespace edgeshard::gf
