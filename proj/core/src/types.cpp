#include "edgeshard/types.hpp"

#include <stdexcept>

namespace edgeshard {
namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
}

}  // namespace

std::string to_hex(const std::uint8_t* data, std::size_t len) {
    std::string out;
    out.reserve(len * 2);
    for (std::size_t i = 0; i < len; ++i) {
        out.push_back(kHexDigits[data[i] >> 4]);
        out.push_back(kHexDigits[data[i] & 0x0F]);
    }
    return out;
}

std::string SecretId::hex() const { return to_hex(bytes.data(), bytes.size()); }

SecretId SecretId::from_hex(const std::string& text) {
    if (text.size() != 32) throw std::invalid_argument("secret id needs 32 hex digits");
    SecretId id;
    for (std::size_t i = 0; i < 16; ++i) {
        id.bytes[i] = static_cast<std::uint8_t>(hex_value(text[2 * i]) * 16 +
                                                hex_value(text[2 * i + 1]));
    }
    return id;
}

}  // namespace edgeshard
