#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>

#include "doctest.h"
#include "rlgt/rng.hpp"

using namespace rlgt;

TEST_SUITE("rng") {

TEST_CASE("mix64 matches the splitmix64 reference sequence") {
    // splitmix64 from state 0 emits mix64(0), mix64(gamma), mix64(2*gamma);
    // reference outputs from the published implementation.
    constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;
    CHECK(mix64(0) == 0xE220A8397B1DCDAFULL);
    CHECK(mix64(gamma) == 0x6E789E6AA1B965F4ULL);
    CHECK(mix64(2 * gamma) == 0x06C45D188009454FULL);
}

TEST_CASE("mix64 avalanche and determinism") {
    CHECK(mix64(1) != mix64(2));
    CHECK(mix64(0) != 0);
    // Flipping one input bit flips roughly half the output bits.
    for (std::uint64_t x : {std::uint64_t{0}, std::uint64_t{12345}, ~std::uint64_t{0}}) {
        const int flips = std::popcount(mix64(x) ^ mix64(x ^ 1));
        CHECK(flips > 16);
        CHECK(flips < 48);
    }
}

TEST_CASE("derive_seed separates substreams") {
    const std::uint64_t master = 0xDEADBEEFCAFEBABEULL;
    CHECK(derive_seed(master, 0) == derive_seed(master, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(master, i));
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(master, 7) != derive_seed(master + 1, 7));
}

TEST_CASE("engine is deterministic per seed") {
    Rng a(42), b(42), c(43);
    bool diverged = false;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next();
        CHECK(va == b.next());
        diverged = diverged || (va != c.next());
    }
    CHECK(diverged);
}

TEST_CASE("below stays in range and is roughly uniform") {
    Rng rng(7);
    std::array<std::uint32_t, 6> buckets{};
    constexpr int draws = 60000;
    for (int i = 0; i < draws; ++i) {
        const std::uint64_t v = rng.below(6);
        REQUIRE(v < 6);
        ++buckets[v];
    }
    // Deterministic sequence; each bucket should be near 10000 (sigma ~91).
    for (std::uint32_t b : buckets) {
        CHECK(b > 9500);
        CHECK(b < 10500);
    }
    CHECK(rng.below(1) == 0);
}

TEST_CASE("unit and bernoulli behave at the edges") {
    Rng rng(99);
    double mean = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        mean += u;
    }
    mean /= 20000;
    CHECK(std::abs(mean - 0.5) < 0.01);

    Rng r2(5);
    for (int i = 0; i < 100; ++i) {
        CHECK_FALSE(r2.bernoulli(0.0));
        CHECK(r2.bernoulli(1.0));
    }
}

}  // TEST_SUITE
