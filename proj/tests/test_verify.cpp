#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "rlgt/construct.hpp"
#include "rlgt/matrix.hpp"
#include "rlgt/verify.hpp"

using namespace rlgt;

namespace {

// Checks a disjunctness witness independently: the column's support must be
// covered by the union of the covering columns.
bool witness_is_valid(const TestMatrix& m, const DisjunctWitness& w) {
    BitVec uni(m.rows());
    for (std::uint32_t c : w.covering) uni |= m.column(c);
    return m.column(w.column).is_subset_of(uni);
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("identity matrices are k-disjunct for every k below n") {
    const auto m = TestMatrix::identity(6);
    for (std::uint32_t k = 1; k <= 5; ++k) {
        const auto rep = is_k_disjunct(m, k);
        CHECK(rep.disjunct);
        CHECK(rep.exhaustive);
        CHECK_FALSE(rep.witness.has_value());
        CHECK(rep.subsets_checked > 0);
        CHECK(rep.zero_columns.empty());
    }
}

TEST_CASE("duplicate columns defeat 1-disjunctness with a verified witness") {
    const auto m = TestMatrix::from_rows({"110", "110", "001"});
    const auto rep = is_k_disjunct(m, 1);
    CHECK_FALSE(rep.disjunct);
    REQUIRE(rep.witness.has_value());
    CHECK(witness_is_valid(m, *rep.witness));
    CHECK(rep.witness->covering.size() <= 1);
}

TEST_CASE("an all-zero column is flagged and breaks disjunctness") {
    const auto m = TestMatrix::from_rows({"100", "010", "000"});
    const auto rep = is_k_disjunct(m, 1);
    CHECK(rep.zero_columns == std::vector<std::uint32_t>{2});
    CHECK_FALSE(rep.disjunct);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->column == 2);
    CHECK(witness_is_valid(m, *rep.witness));
}

TEST_CASE("exhaustive verdict agrees with the brute-force oracle") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto m = bernoulli_matrix(10, 8, 0.35, seed);
        for (std::uint32_t k = 1; k <= 3; ++k) {
            const auto rep = is_k_disjunct(m, k);
            REQUIRE(rep.disjunct == oracles::is_disjunct_brute(m, k));
            if (!rep.disjunct && rep.witness) REQUIRE(witness_is_valid(m, *rep.witness));
        }
    }
}

TEST_CASE("the exhaustive check honors its work cap") {
    const auto m = bernoulli_matrix(12, 40, 0.3, 1);
    CHECK_THROWS_AS(is_k_disjunct(m, 3, /*cap=*/100), InfeasibleError);
}

TEST_CASE("sampled checking finds witnesses on a bad matrix") {
    const auto m = TestMatrix::from_rows({"110", "110", "000"});  // col 2 all zero
    const auto rep = is_k_disjunct_sampled(m, 1, 500, 99);
    CHECK_FALSE(rep.exhaustive);
    CHECK(rep.trials == 500);
    CHECK(rep.seed == 99);
    CHECK_FALSE(rep.disjunct);
    REQUIRE(rep.witness.has_value());
    CHECK(witness_is_valid(m, *rep.witness));
    // On a genuinely disjunct matrix sampling finds nothing.
    CHECK(is_k_disjunct_sampled(TestMatrix::identity(8), 2, 300, 7).disjunct);
}

TEST_CASE("private set of an identity column is the column's own row") {
    const auto m = TestMatrix::identity(5);
    for (std::uint32_t j = 0; j < 5; ++j) {
        const auto s = find_private_set(m, j, 1);
        REQUIRE(s.has_value());
        CHECK(*s == std::vector<std::uint32_t>{j});
    }
}

TEST_CASE("a covered column has no private set") {
    //  col0 = {0,1}, col1 = {0}, col2 = {1}: every row of col0 is shared.
    const auto m = TestMatrix::from_rows({"110", "101"});
    CHECK_FALSE(find_private_set(m, 0, 1).has_value());
    // But the pair {0,1} works: col1 misses row 1, col2 misses row 0.
    const auto s = find_private_set(m, 0, 2);
    REQUIRE(s.has_value());
    CHECK(*s == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("returned private sets block every other column") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto m = bernoulli_matrix(12, 9, 0.4, seed);
        for (std::uint32_t j = 0; j < m.cols(); ++j) {
            const auto s = find_private_set(m, j, 3);
            if (!s.has_value()) continue;
            for (std::uint32_t r : *s) REQUIRE(m.at(r, j));
            for (std::uint32_t other = 0; other < m.cols(); ++other) {
                if (other == j) continue;
                bool misses = false;
                for (std::uint32_t r : *s) misses = misses || !m.at(r, other);
                REQUIRE(misses);
            }
        }
    }
}

TEST_CASE("private-set search honors its cap") {
    const auto m = bernoulli_matrix(24, 30, 0.5, 3);
    CHECK_THROWS_AS(find_private_set(m, 0, 6, /*cap=*/5), InfeasibleError);
}

TEST_CASE("quantitative zero-error agrees with the map-based oracle") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto m = bernoulli_matrix(8, 8, 0.4, seed);
        for (const auto mode : {WeightMode::exactly_k, WeightMode::at_most_k}) {
            const auto rep = qnagt_zero_error_check(m, 2, mode);
            const bool expect = oracles::qnagt_zero_error_brute(m, 2, mode == WeightMode::exactly_k);
            REQUIRE(rep.zero_error == expect);
            CHECK(rep.pairs_checked > 0);
            if (!rep.zero_error && rep.witness.has_value()) {
                const auto& w = *rep.witness;
                REQUIRE_FALSE(w.first == w.second);
                REQUIRE(count_outcome(m, w.first).values == count_outcome(m, w.second).values);
            }
        }
    }
}

TEST_CASE("identity passes the quantitative check; duplicates fail it") {
    CHECK(qnagt_zero_error_check(TestMatrix::identity(6), 3, WeightMode::at_most_k).zero_error);
    const auto rep =
        qnagt_zero_error_check(TestMatrix::from_rows({"11", "11"}), 1, WeightMode::exactly_k);
    CHECK_FALSE(rep.zero_error);
    REQUIRE(rep.witness.has_value());
}

TEST_CASE("the quantitative check honors its cap") {
    const auto m = bernoulli_matrix(10, 24, 0.4, 6);
    CHECK_THROWS_AS(qnagt_zero_error_check(m, 3, WeightMode::at_most_k, /*cap=*/10),
                    InfeasibleError);
}

}  // TEST_SUITE
