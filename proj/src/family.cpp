#include "paircover/family.hpp"

#include <algorithm>
#include <string>

namespace paircover {

construction_params::construction_params(int group_size, int group_count)
    : group_size_(group_size), group_count_(group_count) {
  if (group_size < 2 || group_size % 2 != 0)
    throw parameter_error("group size must be an even integer >= 2, got " +
                          std::to_string(group_size));
  if (group_count < 2 || group_count % 2 != 0)
    throw parameter_error("group count must be an even integer >= 2, got " +
                          std::to_string(group_count));
}

void validate_family(const design_family& fam) {
  if (fam.n < 1) throw parameter_error("ground set size must be >= 1");
  if (fam.k < 1 || fam.k > fam.n)
    throw parameter_error("block size must satisfy 1 <= k <= n");
  for (std::size_t i = 0; i < fam.blocks.size(); ++i) {
    const block& b = fam.blocks[i];
    const std::string where = "block " + std::to_string(i + 1);
    if (static_cast<int>(b.size()) != fam.k)
      throw structure_error(where + " has size " + std::to_string(b.size()) +
                            ", expected " + std::to_string(fam.k));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] < 1 || b[j] > fam.n)
        throw structure_error(where + ": element " + std::to_string(b[j]) +
                              " out of range [1, " + std::to_string(fam.n) + "]");
      if (j > 0 && b[j] <= b[j - 1])
        throw structure_error(where + ": members not strictly ascending");
    }
  }
  if (fam.structure && fam.structure->size() != fam.blocks.size())
    throw structure_error("structure metadata does not match block count");
}

std::vector<block> base_blocks(const construction_params& params) {
  std::vector<block> bases;
  bases.reserve(params.group_count());
  for (int i = 1; i <= params.group_count(); ++i) {
    block b(params.group_size());
    for (int j = 0; j < params.group_size(); ++j)
      b[j] = params.group_size() * (i - 1) + j + 1;
    bases.push_back(std::move(b));
  }
  return bases;
}

std::pair<block, block> split_halves(const block& blk) {
  if (blk.empty() || blk.size() % 2 != 0)
    throw structure_error("cannot halve a block of odd size " +
                          std::to_string(blk.size()));
  const auto mid = blk.begin() + static_cast<std::ptrdiff_t>(blk.size() / 2);
  return {block(blk.begin(), mid), block(mid, blk.end())};
}

std::array<block, 4> recombined_blocks(const block& left_base, const block& right_base) {
  if (left_base.size() != right_base.size())
    throw structure_error("paired bases differ in size");
  block overlap;
  std::set_intersection(left_base.begin(), left_base.end(), right_base.begin(),
                        right_base.end(), std::back_inserter(overlap));
  if (!overlap.empty())
    throw structure_error("paired bases overlap in element " +
                          std::to_string(overlap.front()));
  const auto [l1, l2] = split_halves(left_base);
  const auto [r1, r2] = split_halves(right_base);
  const block* lefts[2] = {&l1, &l2};
  const block* rights[2] = {&r1, &r2};
  std::array<block, 4> out;
  int pos = 0;
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v) {
      block b;
      b.reserve(left_base.size());
      std::set_union(lefts[u]->begin(), lefts[u]->end(), rights[v]->begin(),
                     rights[v]->end(), std::back_inserter(b));
      out[pos++] = std::move(b);
    }
  return out;
}

std::array<block, 4> recombined_blocks(pair_group pair, const construction_params& params) {
  if (pair.index < 1 || pair.index > params.pair_count())
    throw parameter_error("pair index " + std::to_string(pair.index) +
                          " out of range [1, " + std::to_string(params.pair_count()) + "]");
  const auto bases = base_blocks(params);
  return recombined_blocks(bases[pair.left_base() - 1], bases[pair.right_base() - 1]);
}

design_family build_family(const construction_params& params) {
  design_family fam;
  fam.n = params.ground_size();
  fam.k = params.group_size();
  fam.blocks = base_blocks(params);
  std::vector<block_tag> tags;
  tags.reserve(params.block_count());
  for (int i = 1; i <= params.group_count(); ++i) tags.push_back(base_tag{i});
  for (int m = 1; m <= params.pair_count(); ++m) {
    auto cross = recombined_blocks(pair_group{m}, params);
    int pos = 0;
    for (int u = 1; u <= 2; ++u)
      for (int v = 1; v <= 2; ++v) {
        fam.blocks.push_back(std::move(cross[pos++]));
        tags.push_back(recomb_tag{m, u, v});
      }
  }
  fam.structure = std::move(tags);
  return fam;
}

}  // namespace paircover
