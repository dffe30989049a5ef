#include "paircover/mis.hpp"

#include <algorithm>
#include <bit>

namespace paircover {

namespace {

bool set_empty(const std::uint64_t* s, int w) {
  for (int i = 0; i < w; ++i)
    if (s[i]) return false;
  return true;
}

int first_vertex(const std::uint64_t* s, int w) {
  for (int i = 0; i < w; ++i)
    if (s[i]) return i * 64 + std::countr_zero(s[i]) + 1;
  return 0;
}

void clear_vertex(std::uint64_t* s, element_id v) {
  s[(v - 1) / 64] &= ~(std::uint64_t{1} << ((v - 1) % 64));
}

int common_degree(const pair_graph& g, element_id v, const std::uint64_t* s) {
  const auto r = g.row(v);
  int c = 0;
  for (int i = 0; i < g.words(); ++i) c += std::popcount(r[i] & s[i]);
  return c;
}

// One pass of the greedy cover over the vertices in `rem` (consumed); returns
// the number of cliques and, when `out` is given, the cliques themselves.
int greedy_cover_count(const pair_graph& g, std::vector<std::uint64_t>& rem,
                       std::vector<std::uint64_t>* cand_buf,
                       std::vector<std::vector<element_id>>* out) {
  const int w = g.words();
  int count = 0;
  while (!set_empty(rem.data(), w)) {
    ++count;
    element_id v = first_vertex(rem.data(), w);
    clear_vertex(rem.data(), v);
    std::vector<element_id> clique{v};
    auto& cand = *cand_buf;
    const auto rv = g.row(v);
    for (int i = 0; i < w; ++i) cand[i] = rem[i] & rv[i];
    while (!set_empty(cand.data(), w)) {
      element_id u = first_vertex(cand.data(), w);
      clique.push_back(u);
      clear_vertex(rem.data(), u);
      const auto ru = g.row(u);
      for (int i = 0; i < w; ++i) cand[i] &= ru[i];
      clear_vertex(cand.data(), u);
    }
    if (out) out->push_back(std::move(clique));
  }
  return count;
}

class mis_solver {
public:
  mis_solver(const pair_graph& g, std::uint64_t budget)
      : g_(g), w_(g.words()), budget_(budget),
        pool_(static_cast<std::size_t>(g.vertex_count() + 2) * w_, 0),
        rem_buf_(w_), cand_buf_(w_) {}

  mis_result run() {
    seed_greedy();
    std::uint64_t* root = level(0);
    for (int v = 1; v <= g_.vertex_count(); ++v)
      root[(v - 1) / 64] |= std::uint64_t{1} << ((v - 1) % 64);
    cur_.clear();
    solve(0);
    mis_result result;
    result.decided = !exhausted_;
    result.alpha = static_cast<int>(best_.size());
    result.witness = best_;
    std::sort(result.witness.begin(), result.witness.end());
    result.nodes = nodes_;
    return result;
  }

private:
  std::uint64_t* level(int d) { return pool_.data() + static_cast<std::size_t>(d) * w_; }

  int cover_bound(const std::uint64_t* p) {
    std::copy(p, p + w_, rem_buf_.begin());
    return greedy_cover_count(g_, rem_buf_, &cand_buf_, nullptr);
  }

  // Greedy independent set, smallest remaining degree first, as the initial
  // incumbent.
  void seed_greedy() {
    std::vector<std::uint64_t> rem(w_, 0);
    for (int v = 1; v <= g_.vertex_count(); ++v)
      rem[(v - 1) / 64] |= std::uint64_t{1} << ((v - 1) % 64);
    while (!set_empty(rem.data(), w_)) {
      element_id pick = 0;
      int pick_deg = g_.vertex_count() + 1;
      for (int i = 0; i < w_; ++i) {
        std::uint64_t word = rem[i];
        while (word) {
          const element_id v = i * 64 + std::countr_zero(word) + 1;
          word &= word - 1;
          const int d = common_degree(g_, v, rem.data());
          if (d < pick_deg) {
            pick_deg = d;
            pick = v;
          }
        }
      }
      best_.push_back(pick);
      const auto r = g_.row(pick);
      for (int i = 0; i < w_; ++i) rem[i] &= ~r[i];
      clear_vertex(rem.data(), pick);
    }
  }

  void solve(int depth) {
    std::uint64_t* p = level(depth);
    while (true) {
      if (exhausted_) return;
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return;
      }
      if (set_empty(p, w_)) {
        if (cur_.size() > best_.size()) best_ = cur_;
        return;
      }
      if (cur_.size() + cover_bound(p) <= best_.size()) return;

      // branch vertex: maximum degree within p, ties to smallest id
      element_id v = 0;
      int v_deg = -1;
      for (int i = 0; i < w_; ++i) {
        std::uint64_t word = p[i];
        while (word) {
          const element_id u = i * 64 + std::countr_zero(word) + 1;
          word &= word - 1;
          const int d = common_degree(g_, u, p);
          if (d > v_deg) {
            v_deg = d;
            v = u;
          }
        }
      }

      std::uint64_t* child = level(depth + 1);
      const auto rv = g_.row(v);
      for (int i = 0; i < w_; ++i) child[i] = p[i] & ~rv[i];
      clear_vertex(child, v);
      cur_.push_back(v);
      solve(depth + 1);
      cur_.pop_back();
      clear_vertex(p, v);  // exclude v and keep branching at this depth
    }
  }

  const pair_graph& g_;
  int w_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::uint64_t> pool_;
  std::vector<std::uint64_t> rem_buf_;
  std::vector<std::uint64_t> cand_buf_;
  std::vector<element_id> cur_;
  std::vector<element_id> best_;
};

}  // namespace

bool is_valid_clique_cover(const pair_graph& g, const clique_cover& cover) {
  std::vector<bool> seen(g.vertex_count() + 1, false);
  int covered = 0;
  for (const auto& clique : cover.cliques) {
    for (element_id v : clique) {
      if (v < 1 || v > g.vertex_count()) return false;
      if (seen[v]) return false;
      seen[v] = true;
      ++covered;
    }
    for (std::size_t i = 0; i < clique.size(); ++i)
      for (std::size_t j = i + 1; j < clique.size(); ++j)
        if (!g.has_edge(clique[i], clique[j])) return false;
  }
  return covered == g.vertex_count();
}

clique_cover greedy_clique_cover(const pair_graph& g) {
  const int w = g.words();
  std::vector<std::uint64_t> rem(w, 0);
  for (int v = 1; v <= g.vertex_count(); ++v)
    rem[(v - 1) / 64] |= std::uint64_t{1} << ((v - 1) % 64);
  std::vector<std::uint64_t> cand(w);
  clique_cover cover;
  greedy_cover_count(g, rem, &cand, &cover.cliques);
  return cover;
}

mis_result independence_number(const pair_graph& g, std::uint64_t node_budget) {
  return mis_solver(g, node_budget).run();
}

}  // namespace paircover
