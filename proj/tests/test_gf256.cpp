#include "edgeshard/gf256.hpp"

#include <vector>

#include "doctest.h"
#include "edgeshard/errors.hpp"
#include "edgeshard/random.hpp"
#include "test_support.hpp"

using namespace edgeshard;

TEST_CASE("gf mul matches the shift-and-reduce oracle everywhere") {
    for (unsigned a = 0; a < 256; ++a) {
        for (unsigned b = 0; b < 256; ++b) {
            const auto expect = testsupport::slow_gf_mul(std::uint8_t(a), std::uint8_t(b));
            REQUIRE(gf::mul(std::uint8_t(a), std::uint8_t(b)) == expect);
        }
    }
}

TEST_CASE("gf mul worked examples") {
    CHECK(gf::mul(0x00, 0x7F) == 0x00);
    CHECK(testsupport::slow_gf_mul(0x57, 0x02) == 0xAE);
    CHECK(gf::mul(0x57, 0x02) == 0xAE);
    CHECK(testsupport::slow_gf_mul(0x57, 0x83) == 0xC1);
    CHECK(gf::mul(0x57, 0x83) == 0xC1);
}

TEST_CASE("addition is xor and self-inverse") {
    for (unsigned a = 0; a < 256; ++a) {
        CHECK(gf::add(std::uint8_t(a), std::uint8_t(a)) == 0);
    }
}

TEST_CASE("mul commutes and distributes over add") {
    RandomSource rng(7);
    for (int i = 0; i < 2000; ++i) {
        const auto a = rng.next_byte(), b = rng.next_byte(), c = rng.next_byte();
        CHECK(gf::mul(a, b) == gf::mul(b, a));
        CHECK(gf::mul(a, gf::add(b, c)) == gf::add(gf::mul(a, b), gf::mul(a, c)));
    }
}

TEST_CASE("inverse agrees with exhaustive search") {
    CHECK(gf::inv(0x01) == 0x01);
    CHECK(testsupport::slow_gf_inv(0x03) == 0xF6);
    CHECK(gf::inv(0x03) == 0xF6);
    for (unsigned a = 1; a < 256; ++a) {
        const auto ia = gf::inv(std::uint8_t(a));
        CHECK(ia == testsupport::slow_gf_inv(std::uint8_t(a)));
        CHECK(gf::mul(std::uint8_t(a), ia) == 0x01);
    }
    CHECK_THROWS_AS(gf::inv(0x00), NonInvertible);
}

TEST_CASE("poly_eval worked examples") {
    const std::vector<std::uint8_t> constant{0x2A};
    for (unsigned x = 0; x < 256; ++x) {
        CHECK(gf::poly_eval(constant, std::uint8_t(x)) == 0x2A);
    }

    const std::vector<std::uint8_t> linear{0x2A, 0x01};
    CHECK(testsupport::slow_poly_eval(linear, 0x02) == 0x28);
    CHECK(gf::poly_eval(linear, 0x02) == 0x28);

    const std::vector<std::uint8_t> square{0x00, 0x00, 0x01};
    CHECK(testsupport::slow_poly_eval(square, 0x02) == 0x04);
    CHECK(gf::poly_eval(square, 0x02) == 0x04);

    CHECK_THROWS_AS(gf::poly_eval({}, 0x01), InvalidPolynomial);
}

TEST_CASE("poly_eval at zero returns the constant term") {
    RandomSource rng(11);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::uint8_t> coeffs(1 + rng.uniform(6));
        rng.fill(coeffs);
        CHECK(gf::poly_eval(coeffs, 0x00) == coeffs[0]);
        const auto x = rng.next_byte();
        CHECK(gf::poly_eval(coeffs, x) == testsupport::slow_poly_eval(coeffs, x));
    }
}
