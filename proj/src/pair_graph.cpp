#include "paircover/pair_graph.hpp"

#include <bit>
#include <string>

namespace paircover {

pair_graph::pair_graph(int n)
    : n_(n), words_((n + 63) / 64),
      adj_(static_cast<std::size_t>(n) * static_cast<std::size_t>((n + 63) / 64), 0) {
  if (n < 1) throw parameter_error("graph needs at least one vertex");
}

void pair_graph::check_vertex(element_id v) const {
  if (v < 1 || v > n_)
    throw parameter_error("vertex " + std::to_string(v) + " out of range [1, " +
                          std::to_string(n_) + "]");
}

void pair_graph::add_edge(element_id x, element_id y) {
  check_vertex(x);
  check_vertex(y);
  if (x == y) throw parameter_error("covered pairs are irreflexive");
  if (has_edge(x, y)) return;
  const std::size_t xi = x - 1, yi = y - 1;
  adj_[xi * words_ + yi / 64] |= std::uint64_t{1} << (yi % 64);
  adj_[yi * words_ + xi / 64] |= std::uint64_t{1} << (xi % 64);
  ++edges_;
}

bool pair_graph::has_edge(element_id x, element_id y) const {
  check_vertex(x);
  check_vertex(y);
  const std::size_t xi = x - 1, yi = y - 1;
  return (adj_[xi * words_ + yi / 64] >> (yi % 64)) & 1;
}

int pair_graph::degree(element_id v) const {
  check_vertex(v);
  int d = 0;
  for (std::uint64_t w : row(v)) d += std::popcount(w);
  return d;
}

pair_graph covered_pair_graph(const design_family& fam) {
  validate_family(fam);
  pair_graph g(fam.n);
  for (const block& b : fam.blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) g.add_edge(b[i], b[j]);
  return g;
}

}  // namespace paircover
