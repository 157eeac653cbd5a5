#include "edgeshard/gf256.hpp"

#include "edgeshard/errors.hpp"

namespace edgeshard::gf {
namespace detail {
namespace {

constexpr unsigned kPoly = 0x11B;
constexpr unsigned kGenerator = 0x03;

constexpr std::uint8_t slow_mul(std::uint8_t a, std::uint8_t b) {
    unsigned acc = 0;
    unsigned aa = a;
    for (unsigned bb = b; bb != 0; bb >>= 1) {
        if (bb & 1) acc ^= aa;
        aa <<= 1;
        if (aa & 0x100) aa ^= kPoly;
    }
    return static_cast<std::uint8_t>(acc);
}

struct Tables {
    std::array<std::uint8_t, 256> log{};
    std::array<std::uint8_t, 510> exp{};
};

constexpr Tables build_tables() {
    Tables t{};
    std::uint8_t value = 1;
    for (int e = 0; e < 255; ++e) {
        t.exp[e] = value;
        t.exp[e + 255] = value;
        t.log[value] = static_cast<std::uint8_t>(e);
        value = slow_mul(value, kGenerator);
    }
    return t;
}

constexpr Tables kTables = build_tables();

}  // namespace

const std::array<std::uint8_t, 256> kLog = kTables.log;
const std::array<std::uint8_t, 510> kExp = kTables.exp;

}  // namespace detail

std::uint8_t inv(std::uint8_t a) {
    if (a == 0) throw NonInvertible();
    return detail::kExp[255 - detail::kLog[a]];
}

std::uint8_t poly_eval(std::span<const std::uint8_t> coeffs, std::uint8_t x) {
    if (coeffs.empty()) throw InvalidPolynomial();
    std::uint8_t acc = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
        acc = add(mul(acc, x), coeffs[i]);
    }
    return acc;
}

}  // namespace edgeshard::gf
