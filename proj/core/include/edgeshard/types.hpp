#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace edgeshard {

using Bytes = std::vector<std::uint8_t>;
using NodeId = std::string;

/// 16-byte identifier naming one stored secret across shares, records and files.
struct SecretId {
    std::array<std::uint8_t, 16> bytes{};

    auto operator<=>(const SecretId&) const = default;

    std::string hex() const;
    static SecretId from_hex(const std::string& text);  // throws std::invalid_argument
};

std::string to_hex(const std::uint8_t* data, std::size_t len);

}  // namespace edgeshard
