#include "edgeshard/random.hpp"

#include <vector>

#include "doctest.h"

using namespace edgeshard;

TEST_CASE("same seed replays the identical byte stream") {
    RandomSource a(42), b(42);
    for (int i = 0; i < 4096; ++i) {
        REQUIRE(a.next_byte() == b.next_byte());
    }
    CHECK(a.position() == 4096);
}

TEST_CASE("different seeds diverge") {
    RandomSource a(1), b(2);
    std::vector<std::uint8_t> va(64), vb(64);
    a.fill(va);
    b.fill(vb);
    CHECK(va != vb);
}

TEST_CASE("mixed draw kinds stay on one stream") {
    RandomSource a(9), b(9);
    (void)a.next_u64();
    for (int i = 0; i < 8; ++i) (void)b.next_byte();
    CHECK(a.position() == b.position());
    CHECK(a.next_byte() == b.next_byte());
}

TEST_CASE("uniform stays in bounds and covers small ranges") {
    RandomSource rng(5);
    std::vector<int> seen(10, 0);
    for (int i = 0; i < 5000; ++i) {
        const auto v = rng.uniform(10);
        REQUIRE(v < 10);
        ++seen[static_cast<std::size_t>(v)];
    }
    for (const int count : seen) CHECK(count > 0);
    CHECK(rng.uniform(0) == 0);
    CHECK(rng.uniform(1) == 0);
}

TEST_CASE("next_double lies in the unit interval") {
    RandomSource rng(17);
    for (int i = 0; i < 1000; ++i) {
        const double d = rng.next_double();
        REQUIRE(d >= 0.0);
        REQUIRE(d < 1.0);
    }
}
