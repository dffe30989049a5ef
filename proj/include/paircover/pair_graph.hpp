#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paircover/family.hpp"

namespace paircover {

/// Graph on [1, n] whose edges are the pairs covered by at least one block.
/// Adjacency is stored as one bit row per vertex (vertex v occupies bit v-1),
/// so neighborhood intersections are word operations.
class pair_graph {
public:
  explicit pair_graph(int n);

  int vertex_count() const { return n_; }
  int words() const { return words_; }
  std::uint64_t edge_count() const { return edges_; }

  void add_edge(element_id x, element_id y);
  bool has_edge(element_id x, element_id y) const;
  int degree(element_id v) const;

  /// Neighbor bitset of v.
  std::span<const std::uint64_t> row(element_id v) const {
    return {adj_.data() + static_cast<std::size_t>(v - 1) * words_,
            static_cast<std::size_t>(words_)};
  }

private:
  void check_vertex(element_id v) const;

  int n_;
  int words_;
  std::uint64_t edges_ = 0;
  std::vector<std::uint64_t> adj_;
};

/// Builds the covered-pair graph of a family: edge {x, y} iff some block
/// contains both.
pair_graph covered_pair_graph(const design_family& fam);

}  // namespace paircover
