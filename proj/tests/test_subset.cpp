#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "paircover/subset.hpp"

using namespace paircover;

TEST_CASE("binomial agrees with Pascal's triangle") {
  for (int n = 0; n <= 24; ++n)
    for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == oracle::pascal_binomial(n, k));
  CHECK(binomial(60, 6) == 50063860u);
  CHECK(binomial(60, 6) == oracle::pascal_binomial(60, 6));
  CHECK(binomial(5, 9) == 0);
  CHECK_THROWS_AS(binomial(-1, 2), parameter_error);
  CHECK_THROWS_AS(binomial(200, 100), std::overflow_error);
}

TEST_CASE("unrank enumerates in lexicographic order") {
  CHECK(unrank_subset(5, 3, 0) == std::vector<element_id>{1, 2, 3});
  CHECK(unrank_subset(5, 3, 9) == std::vector<element_id>{3, 4, 5});
  std::vector<element_id> prev;
  for (std::uint64_t r = 0; r < binomial(6, 3); ++r) {
    const auto cur = unrank_subset(6, 3, r);
    if (r > 0) CHECK(prev < cur);
    CHECK(rank_subset(6, cur) == r);
    prev = cur;
  }
  CHECK_THROWS_AS(unrank_subset(5, 3, 10), parameter_error);
}

TEST_CASE("next_subset matches unrank successor") {
  std::vector<element_id> c = {1, 2, 3, 4};
  std::uint64_t r = 0;
  do {
    CHECK(c == unrank_subset(9, 4, r));
    ++r;
  } while (next_subset(c, 9));
  CHECK(r == binomial(9, 4));
}

TEST_CASE("rank and unrank round-trip on random subsets") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 40)(rng);
    const int k = std::uniform_int_distribution<int>(1, n)(rng);
    const auto s = oracle::random_subset(rng, n, k);
    CHECK(unrank_subset(n, k, rank_subset(n, s)) == s);
  }
}
