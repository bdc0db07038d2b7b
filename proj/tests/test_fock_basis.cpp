#include <doctest.h>

#include "lopt/fock_basis.hpp"

using namespace lopt;

TEST_CASE("enumerate_occupations: documented order for (3, 2)") {
    const auto basis = enumerate_occupations(3, 2);
    REQUIRE(basis.size() == 6);
    const std::vector<std::vector<int>> expected = {
        {2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(basis.at(k).counts == expected[k]);
}

TEST_CASE("enumerate_occupations: single mode and vacuum sector") {
    const auto single = enumerate_occupations(1, 5);
    REQUIRE(single.size() == 1);
    CHECK(single.at(0).counts == std::vector<int>{5});

    const auto vac = enumerate_occupations(4, 0);
    REQUIRE(vac.size() == 1);
    CHECK(vac.at(0).counts == std::vector<int>(4, 0));
}

TEST_CASE("enumerate_occupations: stars-and-bars count, exhaustive") {
    for (int modes = 1; modes <= 8; ++modes)
        for (int total = 0; total <= 8; ++total)
            CHECK(enumerate_occupations(modes, total).size() ==
                  binomial(total + modes - 1, modes - 1));
}

TEST_CASE("reverse lookup inverts enumeration") {
    const auto basis = enumerate_occupations(5, 4);
    for (std::size_t k = 0; k < basis.size(); ++k) CHECK(basis.index_of(basis.at(k)) == k);
    const auto pats = enumerate_patterns(6, 3);
    for (std::size_t k = 0; k < pats.size(); ++k) CHECK(pats.index_of(pats.at(k)) == k);
}

TEST_CASE("enumerate_patterns: counts and edge cases") {
    CHECK(enumerate_patterns(4, 3).size() == 4);
    CHECK(enumerate_patterns(5, 2).size() == 10);
    const auto zero = enumerate_patterns(2, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero.at(0).bits == std::vector<int>{0, 0});
    CHECK(enumerate_patterns(3, 5).size() == 0);  // weight > modes: empty, not wrong
}

TEST_CASE("clear_one") {
    CHECK(clear_one(InputPattern({1, 1, 0}), 0).bits == std::vector<int>{0, 1, 0});
    CHECK(clear_one(InputPattern({1, 0, 0, 1}), 3).bits == std::vector<int>{1, 0, 0, 0});
    CHECK_THROWS_AS(clear_one(InputPattern({0, 1}), 0), std::invalid_argument);

    // clearing then restoring bit i is the identity
    const InputPattern s({1, 0, 1, 1});
    for (int i = 0; i < s.modes(); ++i) {
        if (!s.bits[i]) continue;
        InputPattern cleared = clear_one(s, i);
        CHECK(cleared.weight() == s.weight() - 1);
        cleared.bits[i] = 1;
        CHECK(cleared == s);
    }
}

TEST_CASE("factorial weights are exact integers") {
    CHECK(OccupationVector({0, 0}).factorial_weight() == 1);
    CHECK(OccupationVector({3, 2, 1}).factorial_weight() == 12);
    CHECK(factorial(20) == 2432902008176640000ULL);
    CHECK_THROWS_AS(factorial(21), std::invalid_argument);
}
