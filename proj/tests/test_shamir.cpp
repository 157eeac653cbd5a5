#include "edgeshard/shamir.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "edgeshard/errors.hpp"
#include "edgeshard/gf256.hpp"
#include "test_support.hpp"

using namespace edgeshard;

namespace {

SecretId test_id(std::uint8_t fill = 0xAB) {
    SecretId id;
    id.bytes.fill(fill);
    return id;
}

// rng whose first drawn byte equals `value`; found by search so the library
// surface stays a plain seeded stream.
RandomSource rng_with_first_byte(std::uint8_t value) {
    for (std::uint64_t seed = 0;; ++seed) {
        RandomSource probe(seed);
        if (probe.next_byte() == value) return RandomSource(seed);
    }
}

}  // namespace

TEST_CASE("lagrange weights: single point") {
    const std::vector<std::uint8_t> xs{0x05};
    CHECK(lagrange_weights_at_zero(xs) == std::vector<std::uint8_t>{0x01});
}

TEST_CASE("lagrange weights: worked pair {1,2}") {
    // lambda_1 = 2 * inv(1 xor 2), lambda_2 = 1 * inv(1 xor 2), inv(3) = 0xF6.
    CHECK(testsupport::slow_gf_mul(0x02, testsupport::slow_gf_inv(0x03)) == 0xF7);
    const std::vector<std::uint8_t> xs{0x01, 0x02};
    CHECK(lagrange_weights_at_zero(xs) == std::vector<std::uint8_t>{0xF7, 0xF6});
}

TEST_CASE("lagrange weights reject duplicate abscissae") {
    const std::vector<std::uint8_t> xs{0x01, 0x01};
    CHECK_THROWS_AS(lagrange_weights_at_zero(xs), DuplicateShare);
}

TEST_CASE("lagrange weights recover f(0) for random polynomials") {
    RandomSource rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t degree_plus_1 = 1 + rng.uniform(8);
        std::vector<std::uint8_t> coeffs(degree_plus_1);
        rng.fill(coeffs);

        std::set<std::uint8_t> xset;
        while (xset.size() < degree_plus_1) {
            xset.insert(static_cast<std::uint8_t>(1 + rng.uniform(255)));
        }
        const std::vector<std::uint8_t> xs(xset.begin(), xset.end());

        const auto weights = lagrange_weights_at_zero(xs);
        std::uint8_t acc = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            acc ^= testsupport::slow_gf_mul(weights[i],
                                            testsupport::slow_poly_eval(coeffs, xs[i]));
        }
        REQUIRE(acc == coeffs[0]);
    }
}

TEST_CASE("split: empty secret yields empty payloads at x = 1..n") {
    RandomSource rng(1);
    const auto shares = split({}, SharePolicy{2, 3}, rng);
    REQUIRE(shares.size() == 3);
    std::set<std::uint8_t> xs;
    for (const auto& s : shares) {
        CHECK(s.payload.empty());
        xs.insert(s.x);
    }
    CHECK(xs == std::set<std::uint8_t>{1, 2, 3});
}

TEST_CASE("split: forced degree-1 coefficient reproduces f(x) = 0x2A + x") {
    auto rng = rng_with_first_byte(0x01);
    const Bytes secret{0x2A};
    const auto shares = split_chunk(test_id(), 0, 1, secret, SharePolicy{2, 3}, rng);
    REQUIRE(shares.size() == 3);
    CHECK(shares[0].x == 1);
    CHECK(shares[0].payload == Bytes{0x2B});
    CHECK(shares[1].x == 2);
    CHECK(shares[1].payload == Bytes{0x28});
    CHECK(shares[2].x == 3);
    CHECK(shares[2].payload == Bytes{0x29});
}

TEST_CASE("split rejects invalid policies") {
    RandomSource rng(2);
    const Bytes secret{0x01, 0x02};
    CHECK_THROWS_AS(split(secret, SharePolicy{3, 2}, rng), InvalidPolicy);
    CHECK_THROWS_AS(split(secret, SharePolicy{1, 5}, rng), InvalidPolicy);
    CHECK_THROWS_AS(split(secret, SharePolicy{0, 0}, rng), InvalidPolicy);
}

TEST_CASE("split is deterministic per seed and fresh per state") {
    const Bytes secret{0xDE, 0xAD, 0xBE, 0xEF};
    RandomSource a(77), b(77), c(78);
    const auto sa = split(secret, SharePolicy{3, 5}, a);
    const auto sb = split(secret, SharePolicy{3, 5}, b);
    const auto sc = split(secret, SharePolicy{3, 5}, c);
    REQUIRE(sa.size() == sb.size());
    for (std::size_t i = 0; i < sa.size(); ++i) {
        CHECK(sa[i].payload == sb[i].payload);
        CHECK(sa[i].secret_id == sb[i].secret_id);
    }
    CHECK(sa[0].payload != sc[0].payload);
}

TEST_CASE("reconstruct: frozen two-share example") {
    Share s1, s2;
    s1.secret_id = s2.secret_id = test_id();
    s1.policy = s2.policy = SharePolicy{2, 3};
    s1.x = 1;
    s1.payload = {0x2B};
    s2.x = 2;
    s2.payload = {0x28};
    s1.chunk_size = s2.chunk_size = 1;
    s1.checksum = s1.compute_checksum();
    s2.checksum = s2.compute_checksum();

    const std::vector<Share> shares{s1, s2};
    CHECK(reconstruct(std::span<const Share>(shares), SharePolicy{2, 3}) == Bytes{0x2A});
}

TEST_CASE("reconstruct: below threshold") {
    RandomSource rng(3);
    const Bytes secret{0x10, 0x20};
    const auto shares = split(secret, SharePolicy{2, 3}, rng);
    const std::vector<Share> one{shares[0]};
    CHECK_THROWS_AS(reconstruct(std::span<const Share>(one), SharePolicy{2, 3}),
                    InsufficientShares);
    try {
        reconstruct(std::span<const Share>(one), SharePolicy{2, 3});
    } catch (const InsufficientShares& e) {
        CHECK(e.have == 1);
        CHECK(e.need == 2);
    }
}

TEST_CASE("round trip over every k-subset, all policies with n <= 6") {
    RandomSource rng(101);
    for (int trial = 0; trial < 8; ++trial) {
        Bytes secret(1 + rng.uniform(96));
        rng.fill(secret);
        for (unsigned n = 2; n <= 6; ++n) {
            for (unsigned k = 2; k <= n; ++k) {
                const SharePolicy policy{std::uint8_t(k), std::uint8_t(n)};
                const auto shares = split(secret, policy, rng);
                REQUIRE(shares.size() == n);
                for (const auto& s : shares) REQUIRE(s.payload.size() == secret.size());
                for (const auto& subset : testsupport::subsets_of_size(n, k)) {
                    std::vector<const Share*> picked;
                    for (const auto i : subset) picked.push_back(&shares[i]);
                    REQUIRE(reconstruct(std::span<const Share* const>(picked), policy) ==
                            secret);
                }
            }
        }
    }
}

TEST_CASE("extra shares beyond k are ignored") {
    RandomSource rng(5);
    Bytes secret(33);
    rng.fill(secret);
    const SharePolicy policy{3, 7};
    const auto shares = split(secret, policy, rng);
    CHECK(reconstruct(std::span<const Share>(shares), policy) == secret);
}

TEST_CASE("reconstruct consistency checks") {
    RandomSource rng(6);
    const Bytes secret{0x42, 0x43};
    const SharePolicy policy{2, 3};
    auto shares = split(secret, policy, rng);

    SUBCASE("duplicate x") {
        std::vector<Share> dup{shares[0], shares[0]};
        CHECK_THROWS_AS(reconstruct(std::span<const Share>(dup), policy), DuplicateShare);
    }
    SUBCASE("tampered payload fails the checksum") {
        shares[0].payload[0] ^= 0xFF;
        CHECK_THROWS_AS(reconstruct(std::span<const Share>(shares), policy), CorruptShare);
    }
    SUBCASE("mismatched chunk index") {
        shares[1].chunk_index = 9;
        shares[1].checksum = shares[1].compute_checksum();
        CHECK_THROWS_AS(reconstruct(std::span<const Share>(shares), policy), CorruptShare);
    }
    SUBCASE("mismatched policy") {
        CHECK_THROWS_AS(reconstruct(std::span<const Share>(shares), SharePolicy{2, 4}),
                        CorruptShare);
    }
    SUBCASE("mixed secret ids") {
        shares[2].secret_id = test_id(0x01);
        shares[2].checksum = shares[2].compute_checksum();
        CHECK_THROWS_AS(reconstruct(std::span<const Share>(shares), policy),
                        InconsistentShares);
    }
}

TEST_CASE("two distinct k-subsets agree byte for byte") {
    RandomSource rng(8);
    Bytes secret(257);
    rng.fill(secret);
    const SharePolicy policy{4, 9};
    const auto shares = split(secret, policy, rng);
    const auto subsets = testsupport::subsets_of_size(9, 4);
    Bytes first;
    for (std::size_t si = 0; si < subsets.size(); si += 7) {
        std::vector<const Share*> picked;
        for (const auto i : subsets[si]) picked.push_back(&shares[i]);
        const auto got = reconstruct(std::span<const Share* const>(picked), policy);
        if (first.empty()) {
            first = got;
        } else {
            REQUIRE(got == first);
        }
    }
    CHECK(first == secret);
}

TEST_CASE("one-byte secrecy: share values are a bijection of the coefficient") {
    // k = 2: at fixed x, the 256 coefficient choices must hit every share
    // value exactly once, for every secret byte.
    for (const std::uint8_t secret : {0x00, 0x5A, 0xFF}) {
        for (const std::uint8_t x : {1, 2, 3}) {
            std::array<int, 256> hist{};
            for (unsigned c = 0; c < 256; ++c) {
                const std::vector<std::uint8_t> coeffs{secret, std::uint8_t(c)};
                ++hist[gf::poly_eval(coeffs, x)];
            }
            for (const int count : hist) REQUIRE(count == 1);
        }
    }
}
