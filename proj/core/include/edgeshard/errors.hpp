#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edgeshard {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// gf_inv(0): zero has no multiplicative inverse.
class NonInvertible : public Error {
   public:
    NonInvertible() : Error("zero is not invertible in GF(2^8)") {}
};

/// Empty coefficient list handed to a polynomial evaluation.
class InvalidPolynomial : public Error {
   public:
    InvalidPolynomial() : Error("polynomial needs at least one coefficient") {}
};

/// (k, n) outside 2 <= k <= n <= 255.
class InvalidPolicy : public Error {
   public:
    InvalidPolicy(unsigned k, unsigned n)
        : Error("invalid share policy k=" + std::to_string(k) + " n=" + std::to_string(n) +
                " (need 2 <= k <= n <= 255)") {}
};

/// Fewer shares (or reachable/valid holders) than the threshold requires.
class InsufficientShares : public Error {
   public:
    InsufficientShares(std::size_t have, std::size_t need)
        : Error("insufficient shares: have " + std::to_string(have) + ", need " +
                std::to_string(need)),
          have(have),
          need(need) {}
    std::size_t have;
    std::size_t need;
};

class DuplicateShare : public Error {
   public:
    explicit DuplicateShare(unsigned x)
        : Error("duplicate share x-coordinate " + std::to_string(x)) {}
};

/// Metadata mismatch, bad encoding, or checksum failure.
class CorruptShare : public Error {
   public:
    using Error::Error;
};

/// Shares from different secrets mixed in one reconstruction.
class InconsistentShares : public Error {
   public:
    using Error::Error;
};

class InvalidChunkSize : public Error {
   public:
    InvalidChunkSize() : Error("chunk size must be at least 1 byte") {}
};

/// Fewer eligible candidates than the requested share count.
class InsufficientNodes : public Error {
   public:
    InsufficientNodes(std::size_t eligible, std::size_t requested)
        : Error("insufficient eligible nodes: " + std::to_string(eligible) + " eligible, " +
                std::to_string(requested) + " requested"),
          eligible(eligible),
          requested(requested) {}
    std::size_t eligible;
    std::size_t requested;
};

/// Registry record with duplicate nodes, or retiring a record never registered.
class InvalidRecord : public Error {
   public:
    using Error::Error;
};

class UnknownNode : public Error {
   public:
    explicit UnknownNode(const std::string& id) : Error("unknown node: " + id) {}
};

class UnknownSecret : public Error {
   public:
    explicit UnknownSecret(const std::string& id_hex) : Error("unknown secret: " + id_hex) {}
};

/// Dealer refused: unreachable, corrupt, full, or not dealer-capable.
class DealerUnavailable : public Error {
   public:
    using Error::Error;
};

/// Scenario or config document does not match the published schema.
class SchemaError : public Error {
   public:
    SchemaError(const std::string& field, const std::string& why)
        : Error("schema violation at '" + field + "': " + why), field(field) {}
    std::string field;
};

}  // namespace edgeshard
