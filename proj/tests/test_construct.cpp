#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "paircover/family.hpp"

using namespace paircover;

namespace {

// The published 30-block family on [60]: ten interval base blocks followed by
// the four half recombinations of each consecutive pair.
const std::vector<block> kGolden60 = {
    {1, 2, 3, 4, 5, 6},       {7, 8, 9, 10, 11, 12},    {13, 14, 15, 16, 17, 18},
    {19, 20, 21, 22, 23, 24}, {25, 26, 27, 28, 29, 30}, {31, 32, 33, 34, 35, 36},
    {37, 38, 39, 40, 41, 42}, {43, 44, 45, 46, 47, 48}, {49, 50, 51, 52, 53, 54},
    {55, 56, 57, 58, 59, 60},
    {1, 2, 3, 7, 8, 9},       {1, 2, 3, 10, 11, 12},    {4, 5, 6, 7, 8, 9},
    {4, 5, 6, 10, 11, 12},    {13, 14, 15, 19, 20, 21}, {13, 14, 15, 22, 23, 24},
    {16, 17, 18, 19, 20, 21}, {16, 17, 18, 22, 23, 24}, {25, 26, 27, 31, 32, 33},
    {25, 26, 27, 34, 35, 36}, {28, 29, 30, 31, 32, 33}, {28, 29, 30, 34, 35, 36},
    {37, 38, 39, 43, 44, 45}, {37, 38, 39, 46, 47, 48}, {40, 41, 42, 43, 44, 45},
    {40, 41, 42, 46, 47, 48}, {49, 50, 51, 55, 56, 57}, {49, 50, 51, 58, 59, 60},
    {52, 53, 54, 55, 56, 57}, {52, 53, 54, 58, 59, 60}};

}  // namespace

TEST_CASE("construction parameters derive the family shape") {
  const construction_params p(6, 10);
  CHECK(p.ground_size() == 60);
  CHECK(p.half_size() == 3);
  CHECK(p.pair_count() == 5);
  CHECK(p.block_count() == 30);
  CHECK(p.guarantee_threshold() == 6);

  CHECK_THROWS_AS(construction_params(5, 10), parameter_error);
  CHECK_THROWS_AS(construction_params(6, 9), parameter_error);
  CHECK_THROWS_AS(construction_params(0, 10), parameter_error);
  CHECK_THROWS_AS(construction_params(6, -2), parameter_error);
}

TEST_CASE("base blocks are the interval blocks") {
  const auto bases = base_blocks(construction_params(6, 10));
  REQUIRE(bases.size() == 10);
  CHECK(bases[0] == block{1, 2, 3, 4, 5, 6});
  CHECK(bases[9] == block{55, 56, 57, 58, 59, 60});

  const auto small = base_blocks(construction_params(2, 4));
  CHECK(small[2] == block{5, 6});
}

TEST_CASE("base blocks partition the ground set") {
  for (auto [g, t] : {std::pair{2, 4}, {4, 6}, {6, 10}, {8, 2}}) {
    const construction_params p(g, t);
    const auto bases = base_blocks(p);
    std::set<element_id> all;
    for (const auto& b : bases) all.insert(b.begin(), b.end());
    CHECK(static_cast<int>(all.size()) == p.ground_size());
    CHECK(*all.begin() == 1);
    CHECK(*all.rbegin() == p.ground_size());
  }
}

TEST_CASE("split_halves takes the lowest and highest halves") {
  CHECK(split_halves({1, 2, 3, 4, 5, 6}) == std::pair<block, block>{{1, 2, 3}, {4, 5, 6}});
  CHECK(split_halves({7, 8, 9, 10, 11, 12}) ==
        std::pair<block, block>{{7, 8, 9}, {10, 11, 12}});
  CHECK(split_halves({5, 6}) == std::pair<block, block>{{5}, {6}});
  CHECK_THROWS_AS(split_halves({1, 2, 3}), structure_error);
  CHECK_THROWS_AS(split_halves({}), structure_error);
}

TEST_CASE("recombined blocks cross the four half unions") {
  const construction_params p(6, 10);
  const auto first = recombined_blocks(pair_group{1}, p);
  CHECK(first[0] == block{1, 2, 3, 7, 8, 9});
  CHECK(first[1] == block{1, 2, 3, 10, 11, 12});
  CHECK(first[2] == block{4, 5, 6, 7, 8, 9});
  CHECK(first[3] == block{4, 5, 6, 10, 11, 12});

  const auto last = recombined_blocks(pair_group{5}, p);
  CHECK(last[3] == block{52, 53, 54, 58, 59, 60});

  const auto tiny = recombined_blocks(pair_group{1}, construction_params(2, 4));
  CHECK(tiny[0] == block{1, 3});
  CHECK(tiny[1] == block{1, 4});
  CHECK(tiny[2] == block{2, 3});
  CHECK(tiny[3] == block{2, 4});

  CHECK_THROWS_AS(recombined_blocks({1, 2, 3, 4}, {3, 4, 5, 6}), structure_error);
  CHECK_THROWS_AS(recombined_blocks(pair_group{6}, p), parameter_error);
}

TEST_CASE("every cross pair lies in exactly one recombined block") {
  for (auto [g, t] : {std::pair{2, 4}, {4, 6}, {6, 10}}) {
    const construction_params p(g, t);
    const auto bases = base_blocks(p);
    for (int m = 1; m <= p.pair_count(); ++m) {
      const auto cross = recombined_blocks(pair_group{m}, p);
      for (element_id x : bases[2 * m - 2])
        for (element_id y : bases[2 * m - 1]) {
          int containing = 0;
          for (const auto& b : cross)
            if (std::find(b.begin(), b.end(), x) != b.end() &&
                std::find(b.begin(), b.end(), y) != b.end())
              ++containing;
          CHECK(containing == 1);
        }
    }
  }
}

TEST_CASE("build_family reproduces the published 30-block family") {
  const auto fam = build_family(construction_params(6, 10));
  CHECK(fam.n == 60);
  CHECK(fam.k == 6);
  REQUIRE(fam.blocks.size() == 30);
  for (std::size_t i = 0; i < 30; ++i) CHECK(fam.blocks[i] == kGolden60[i]);
  CHECK(fam.blocks[21] == block{28, 29, 30, 34, 35, 36});
  CHECK(fam.blocks[22] == block{37, 38, 39, 43, 44, 45});

  REQUIRE(fam.structure.has_value());
  REQUIRE(fam.structure->size() == 30);
  CHECK((*fam.structure)[0] == block_tag{base_tag{1}});
  CHECK((*fam.structure)[10] == block_tag{recomb_tag{1, 1, 1}});
  CHECK((*fam.structure)[29] == block_tag{recomb_tag{5, 2, 2}});
  CHECK_NOTHROW(validate_family(fam));
}

TEST_CASE("build_family is deterministic and well formed for small instances") {
  const auto a = build_family(construction_params(2, 4));
  const auto b = build_family(construction_params(2, 4));
  CHECK(a == b);
  CHECK(a.n == 8);
  CHECK(a.blocks.size() == 12);
  for (const auto& blk : a.blocks) CHECK(blk.size() == 2);

  // brute-force construction oracle for (g=2, t=4): bases {1,2},...,{7,8};
  // the cross singles of each consecutive pair
  const std::vector<block> expected = {{1, 2}, {3, 4}, {5, 6}, {7, 8},
                                       {1, 3}, {1, 4}, {2, 3}, {2, 4},
                                       {5, 7}, {5, 8}, {6, 7}, {6, 8}};
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(a.blocks[i] == expected[i]);
}

TEST_CASE("validate_family rejects malformed families") {
  design_family fam;
  fam.n = 6;
  fam.k = 3;
  fam.blocks = {{1, 2, 3}};
  CHECK_NOTHROW(validate_family(fam));

  design_family bad = fam;
  bad.blocks = {{1, 2}};
  CHECK_THROWS_AS(validate_family(bad), structure_error);
  bad = fam;
  bad.blocks = {{1, 2, 7}};
  CHECK_THROWS_AS(validate_family(bad), structure_error);
  bad = fam;
  bad.blocks = {{2, 1, 3}};
  CHECK_THROWS_AS(validate_family(bad), structure_error);
  bad = fam;
  bad.blocks = {{1, 1, 3}};
  CHECK_THROWS_AS(validate_family(bad), structure_error);
  bad = fam;
  bad.structure = std::vector<block_tag>{};
  CHECK_THROWS_AS(validate_family(bad), structure_error);
  bad = fam;
  bad.k = 0;
  CHECK_THROWS_AS(validate_family(bad), parameter_error);
}
