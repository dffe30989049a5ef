#pragma once

#include <cstdint>
#include <vector>

#include "paircover/pair_graph.hpp"

namespace paircover {

/// A partition of the vertices into cliques. A cover of size c certifies that
/// the independence number is at most c: an independent set can take at most
/// one vertex per clique.
struct clique_cover {
  std::vector<std::vector<element_id>> cliques;
  bool operator==(const clique_cover&) const = default;
};

/// Checks a cover independently of how it was produced: cliques must be
/// pairwise disjoint, cover every vertex exactly once, and every 2-subset of
/// each clique must be an edge.
bool is_valid_clique_cover(const pair_graph& g, const clique_cover& cover);

/// Deterministic greedy cover: repeatedly grow a clique from the smallest
/// uncovered vertex, always adding the smallest vertex adjacent to all
/// current members.
clique_cover greedy_clique_cover(const pair_graph& g);

inline constexpr std::uint64_t mis_default_budget = 50'000'000;

struct mis_result {
  bool decided = true;          // false when the node budget ran out
  int alpha = 0;                // exact when decided, otherwise a lower bound
  std::vector<element_id> witness;  // independent set of size alpha, ascending
  std::uint64_t nodes = 0;      // branch-and-bound nodes expanded
};

/// Exact maximum independent set by branch and bound. Branches on the vertex
/// of maximum degree within the candidate set (ties to the smallest id), prunes
/// with the greedy clique-cover bound, and starts from a greedy independent
/// set, so the witness is reproducible. Never returns a wrong bound: when the
/// budget runs out the result is marked undecided.
mis_result independence_number(const pair_graph& g,
                               std::uint64_t node_budget = mis_default_budget);

}  // namespace paircover
