#include "paircover/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

#include "paircover/subset.hpp"

namespace paircover {

namespace {

// ---------------------------------------------------------------------------
// exhaustive sweep
// ---------------------------------------------------------------------------

// Per-element incidence bitmask over the blocks: bit j of row x is set iff
// block j contains x. A subset meets some block twice iff two of its elements
// share a set bit, which the sweep detects with one AND per element.
struct incidence_masks {
  int words = 1;
  std::vector<std::uint64_t> bits;
  const std::uint64_t* row(element_id x) const {
    return bits.data() + static_cast<std::size_t>(x - 1) * words;
  }
};

incidence_masks build_masks(const design_family& fam) {
  incidence_masks m;
  m.words = std::max<int>(1, static_cast<int>((fam.blocks.size() + 63) / 64));
  m.bits.assign(static_cast<std::size_t>(fam.n) * m.words, 0);
  for (std::size_t j = 0; j < fam.blocks.size(); ++j)
    for (element_id x : fam.blocks[j])
      m.bits[static_cast<std::size_t>(x - 1) * m.words + j / 64] |=
          std::uint64_t{1} << (j % 64);
  return m;
}

// Scans ranks [lo, hi) in lexicographic order. Returns the rank of the first
// subset meeting every block at most once, or hi when the range is clean.
// When `best_rank` drops below lo some other range already beat this one and
// the scan abandons.
std::uint64_t scan_range(const incidence_masks& m, int n, int s,
                         std::uint64_t lo, std::uint64_t hi,
                         const std::atomic<std::uint64_t>* best_rank,
                         std::vector<element_id>* counterexample) {
  const int w = m.words;
  std::vector<element_id> c = unrank_subset(n, s, lo);
  // acc row i = OR of the incidence masks of the first i elements
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(s + 1) * w, 0);
  std::vector<char> covered(s + 1, 0);
  auto recompute = [&](int from) {
    for (int j = from; j < s; ++j) {
      const std::uint64_t* row = m.row(c[j]);
      const std::uint64_t* prev = acc.data() + static_cast<std::size_t>(j) * w;
      std::uint64_t* next = acc.data() + static_cast<std::size_t>(j + 1) * w;
      std::uint64_t hit = 0;
      for (int i = 0; i < w; ++i) {
        hit |= prev[i] & row[i];
        next[i] = prev[i] | row[i];
      }
      covered[j + 1] = static_cast<char>(covered[j] | (hit != 0));
    }
  };
  recompute(0);
  for (std::uint64_t r = lo;;) {
    if (!covered[s]) {
      *counterexample = c;
      return r;
    }
    if (++r == hi) return hi;
    int i = s - 1;
    while (c[i] == n - (s - 1 - i)) --i;
    ++c[i];
    for (int j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
    recompute(i);
    if (best_rank && (r & 0xFFFF) == 0 &&
        best_rank->load(std::memory_order_relaxed) < lo)
      return hi;
  }
}

// ---------------------------------------------------------------------------
// construction metadata index
// ---------------------------------------------------------------------------

struct structure_index_data {
  int t = 0, g = 0, p = 0, n = 0;
  std::vector<int> base_pos;    // base index -> 0-based family position
  std::vector<int> recomb_pos;  // slot(m,u,v) -> 0-based family position
  std::vector<int> elem_base;   // element -> base index
  std::vector<int> elem_half;   // element -> half label 1|2

  int threshold() const { return p + 1; }
  static int slot(int m, int u, int v) { return (m - 1) * 4 + (u - 1) * 2 + (v - 1); }
};

std::string tag_name(int m, int u, int v) {
  return "(m=" + std::to_string(m) + ", u=" + std::to_string(u) + ", v=" +
         std::to_string(v) + ")";
}

// Rebuilds the construction certificate from the tags. The half split of each
// base is not declared separately: it is recovered from the recombined blocks
// themselves and checked for consistency, so any fixed equal-half split is
// accepted, not just the canonical low/high one. Returns a reason on failure.
std::optional<std::string> build_structure_index(const design_family& fam,
                                                 structure_index_data& idx) {
  const auto& tags = *fam.structure;
  idx.n = fam.n;
  idx.g = fam.k;
  int t = 0;
  for (const block_tag& tag : tags)
    if (std::holds_alternative<base_tag>(tag)) ++t;
  if (t == 0) return "no blocks tagged as base blocks";
  if (t % 2 != 0) return "group count " + std::to_string(t) + " is odd";
  idx.t = t;
  idx.p = t / 2;
  if (idx.g % 2 != 0)
    return "block size " + std::to_string(idx.g) + " is odd, halves undefined";
  if (static_cast<long long>(idx.g) * t != fam.n)
    return "base blocks cannot partition: g*t = " + std::to_string(static_cast<long long>(idx.g) * t) +
           " but n = " + std::to_string(fam.n);

  idx.base_pos.assign(t + 1, -1);
  idx.recomb_pos.assign(4 * idx.p, -1);
  for (std::size_t pos = 0; pos < tags.size(); ++pos) {
    if (const auto* bt = std::get_if<base_tag>(&tags[pos])) {
      if (bt->index < 1 || bt->index > t)
        return "base tag index " + std::to_string(bt->index) + " out of range [1, " +
               std::to_string(t) + "]";
      if (idx.base_pos[bt->index] != -1)
        return "duplicate base tag " + std::to_string(bt->index);
      idx.base_pos[bt->index] = static_cast<int>(pos);
    } else {
      const auto& rt = std::get<recomb_tag>(tags[pos]);
      if (rt.pair < 1 || rt.pair > idx.p)
        return "recombined tag pair index " + std::to_string(rt.pair) +
               " out of range [1, " + std::to_string(idx.p) + "]";
      if (rt.left_half < 1 || rt.left_half > 2 || rt.right_half < 1 || rt.right_half > 2)
        return "recombined tag half labels must be 1 or 2";
      int& slot = idx.recomb_pos[structure_index_data::slot(rt.pair, rt.left_half, rt.right_half)];
      if (slot != -1)
        return "duplicate recombined tag " + tag_name(rt.pair, rt.left_half, rt.right_half);
      slot = static_cast<int>(pos);
    }
  }
  for (int m = 1; m <= idx.p; ++m)
    for (int u = 1; u <= 2; ++u)
      for (int v = 1; v <= 2; ++v)
        if (idx.recomb_pos[structure_index_data::slot(m, u, v)] == -1)
          return "missing recombined block " + tag_name(m, u, v);

  // (a) the base blocks partition the ground set
  idx.elem_base.assign(fam.n + 1, 0);
  for (int i = 1; i <= t; ++i)
    for (element_id x : fam.blocks[idx.base_pos[i]]) {
      if (idx.elem_base[x] != 0)
        return "element " + std::to_string(x) + " lies in base blocks " +
               std::to_string(idx.elem_base[x]) + " and " + std::to_string(i);
      idx.elem_base[x] = i;
    }
  for (int x = 1; x <= fam.n; ++x)
    if (idx.elem_base[x] == 0)
      return "element " + std::to_string(x) + " is not covered by any base block";

  // (b, c) recover each base's half split from the recombined blocks and
  // check that all four half unions are present and consistent
  idx.elem_half.assign(fam.n + 1, 0);
  const int h = idx.g / 2;
  for (int m = 1; m <= idx.p; ++m) {
    const int lb = 2 * m - 1, rb = 2 * m;
    std::array<block, 2> left_half, right_half;
    for (int u = 1; u <= 2; ++u)
      for (int v = 1; v <= 2; ++v) {
        const block& rblk = fam.blocks[idx.recomb_pos[structure_index_data::slot(m, u, v)]];
        block lpart, rpart;
        for (element_id x : rblk) {
          if (idx.elem_base[x] == lb)
            lpart.push_back(x);
          else if (idx.elem_base[x] == rb)
            rpart.push_back(x);
          else
            return "recombined block " + tag_name(m, u, v) + " contains element " +
                   std::to_string(x) + " outside bases " + std::to_string(lb) + "/" +
                   std::to_string(rb);
        }
        if (static_cast<int>(lpart.size()) != h || static_cast<int>(rpart.size()) != h)
          return "recombined block " + tag_name(m, u, v) +
                 " does not take an equal half of each base";
        if (v == 1)
          left_half[u - 1] = std::move(lpart);
        else if (lpart != left_half[u - 1])
          return "inconsistent left half u=" + std::to_string(u) + " of pair " +
                 std::to_string(m);
        if (u == 1)
          right_half[v - 1] = std::move(rpart);
        else if (rpart != right_half[v - 1])
          return "inconsistent right half v=" + std::to_string(v) + " of pair " +
                 std::to_string(m);
      }
    block lunion, runion;
    std::set_union(left_half[0].begin(), left_half[0].end(), left_half[1].begin(),
                   left_half[1].end(), std::back_inserter(lunion));
    if (lunion != fam.blocks[idx.base_pos[lb]])
      return "halves of base " + std::to_string(lb) + " do not partition it";
    std::set_union(right_half[0].begin(), right_half[0].end(), right_half[1].begin(),
                   right_half[1].end(), std::back_inserter(runion));
    if (runion != fam.blocks[idx.base_pos[rb]])
      return "halves of base " + std::to_string(rb) + " do not partition it";
    for (int u = 1; u <= 2; ++u)
      for (element_id x : left_half[u - 1]) idx.elem_half[x] = u;
    for (int v = 1; v <= 2; ++v)
      for (element_id x : right_half[v - 1]) idx.elem_half[x] = v;
  }
  return std::nullopt;
}

void check_subset_size(const design_family& fam, int s) {
  if (s < 2) throw parameter_error("subset size must be at least 2");
  if (s > fam.n)
    throw parameter_error("subset size " + std::to_string(s) +
                          " exceeds ground set size " + std::to_string(fam.n));
}

}  // namespace

verification_report exhaustive_verify(const design_family& fam, int subset_size, int jobs) {
  validate_family(fam);
  check_subset_size(fam, subset_size);
  std::uint64_t total;
  try {
    total = binomial(fam.n, subset_size);
  } catch (const std::overflow_error&) {
    throw parameter_error("subset space too large to enumerate exhaustively");
  }
  const incidence_masks masks = build_masks(fam);
  if (jobs <= 0) jobs = std::max(1u, std::thread::hardware_concurrency());

  std::atomic<std::uint64_t> best_rank{UINT64_MAX};
  std::vector<element_id> best_subset;

  if (jobs == 1 || total < 4096) {
    std::vector<element_id> cex;
    const std::uint64_t r =
        scan_range(masks, fam.n, subset_size, 0, total, nullptr, &cex);
    if (r < total) {
      best_rank.store(r);
      best_subset = std::move(cex);
    }
  } else {
    const std::uint64_t chunks = std::min<std::uint64_t>(
        static_cast<std::uint64_t>(jobs) * 8, total);
    std::atomic<std::uint64_t> next{0};
    std::mutex best_mutex;
    auto worker = [&] {
      for (std::uint64_t ci = next.fetch_add(1); ci < chunks; ci = next.fetch_add(1)) {
        const auto lo = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(total) * ci / chunks);
        const auto hi = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(total) * (ci + 1) / chunks);
        if (lo == hi || best_rank.load(std::memory_order_relaxed) < lo) continue;
        std::vector<element_id> cex;
        const std::uint64_t r =
            scan_range(masks, fam.n, subset_size, lo, hi, &best_rank, &cex);
        if (r < hi) {
          std::lock_guard<std::mutex> lock(best_mutex);
          if (r < best_rank.load()) {
            best_rank.store(r);
            best_subset = std::move(cex);
          }
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  verification_report rpt;
  rpt.method = verify_method::exhaustive;
  if (best_rank.load() != UINT64_MAX) {
    rpt.outcome = verify_outcome::fails;
    rpt.counterexample = std::move(best_subset);
    rpt.scanned = best_rank.load() + 1;
  } else {
    rpt.outcome = verify_outcome::holds;
    rpt.scanned = total;
  }
  return rpt;
}

verification_report graph_verify(const design_family& fam, int subset_size,
                                 std::uint64_t node_budget) {
  validate_family(fam);
  check_subset_size(fam, subset_size);
  verification_report rpt;
  rpt.method = verify_method::graph;
  const pair_graph g = covered_pair_graph(fam);

  clique_cover cover = greedy_clique_cover(g);
  if (static_cast<int>(cover.cliques.size()) <= subset_size - 1) {
    rpt.outcome = verify_outcome::holds;
    rpt.detail = "clique cover of size " + std::to_string(cover.cliques.size()) +
                 " bounds the independence number";
    rpt.certificate = std::move(cover);
    return rpt;
  }

  const mis_result mis = independence_number(g, node_budget);
  rpt.scanned = mis.nodes;
  if (!mis.decided) {
    if (static_cast<int>(mis.witness.size()) >= subset_size) {
      rpt.outcome = verify_outcome::fails;
      rpt.counterexample = std::vector<element_id>(mis.witness.begin(),
                                                   mis.witness.begin() + subset_size);
      rpt.detail = "independent set found before the node budget ran out";
    } else {
      rpt.outcome = verify_outcome::undecided;
      rpt.detail = "solver node budget exhausted";
    }
    return rpt;
  }
  rpt.alpha = mis.alpha;
  if (mis.alpha <= subset_size - 1) {
    rpt.outcome = verify_outcome::holds;
    rpt.detail = "independence number " + std::to_string(mis.alpha) +
                 " is below the subset size";
  } else {
    rpt.outcome = verify_outcome::fails;
    rpt.counterexample = std::vector<element_id>(mis.witness.begin(),
                                                 mis.witness.begin() + subset_size);
  }
  return rpt;
}

verification_report structural_verify(const design_family& fam, int subset_size) {
  validate_family(fam);
  check_subset_size(fam, subset_size);
  if (!fam.structure)
    throw structural_inapplicable("family carries no construction metadata");
  verification_report rpt;
  rpt.method = verify_method::structural;
  structure_index_data idx;
  if (auto reason = build_structure_index(fam, idx)) {
    rpt.outcome = verify_outcome::fails;
    rpt.detail = *reason;
    return rpt;
  }
  rpt.certified_threshold = idx.threshold();
  if (subset_size >= idx.threshold()) {
    rpt.outcome = verify_outcome::holds;
    rpt.detail = "construction certifies threshold " + std::to_string(idx.threshold());
    return rpt;
  }
  // s <= p: one element per pair group is pairwise uncovered, because every
  // block lies inside a single pair group
  std::vector<element_id> group_min(idx.p + 1, 0);
  for (int x = fam.n; x >= 1; --x) group_min[(idx.elem_base[x] + 1) / 2] = x;
  std::vector<element_id> cex(group_min.begin() + 1, group_min.end());
  std::sort(cex.begin(), cex.end());
  cex.resize(subset_size);
  rpt.outcome = verify_outcome::fails;
  rpt.counterexample = std::move(cex);
  rpt.detail = "subset size " + std::to_string(subset_size) +
               " is below the certified threshold " + std::to_string(idx.threshold());
  return rpt;
}

// ---------------------------------------------------------------------------
// proof witness
// ---------------------------------------------------------------------------

struct proof_witness::index {
  structure_index_data d;
};

proof_witness::proof_witness(const design_family& fam) : idx_(std::make_unique<index>()) {
  validate_family(fam);
  if (!fam.structure)
    throw structural_inapplicable("family carries no construction metadata");
  if (auto reason = build_structure_index(fam, idx_->d))
    throw structure_error("invalid construction metadata: " + *reason);
}

proof_witness::~proof_witness() = default;
proof_witness::proof_witness(proof_witness&&) noexcept = default;
proof_witness& proof_witness::operator=(proof_witness&&) noexcept = default;

int proof_witness::certified_threshold() const { return idx_->d.threshold(); }
int proof_witness::group_count() const { return idx_->d.t; }

witness_result proof_witness::lookup(std::span<const element_id> subset) const {
  const structure_index_data& d = idx_->d;
  if (subset.empty()) throw parameter_error("empty query subset");
  std::vector<std::pair<int, element_id>> hits;  // (base, element)
  hits.reserve(subset.size());
  for (element_id x : subset) {
    if (x < 1 || x > d.n)
      throw parameter_error("element " + std::to_string(x) + " out of range [1, " +
                            std::to_string(d.n) + "]");
    hits.emplace_back(d.elem_base[x], x);
  }
  std::sort(hits.begin(), hits.end());
  for (std::size_t i = 0; i + 1 < hits.size(); ++i)
    if (hits[i].second == hits[i + 1].second)
      throw parameter_error("duplicate element " + std::to_string(hits[i].second) +
                            " in query subset");

  // Case 1: two elements in one base block.
  for (std::size_t i = 0; i + 1 < hits.size(); ++i)
    if (hits[i].first == hits[i + 1].first) {
      witness_result res;
      res.case_tag = witness_result::kind::base_collision;
      res.base = hits[i].first;
      res.block_index = d.base_pos[res.base] + 1;
      return res;
    }

  // Case 2: two distinct bases of the same pair; the recombined block of
  // their halves contains both elements.
  for (std::size_t i = 0; i + 1 < hits.size(); ++i)
    if ((hits[i].first + 1) / 2 == (hits[i + 1].first + 1) / 2) {
      witness_result res;
      res.case_tag = witness_result::kind::pair_collision;
      res.pair = (hits[i].first + 1) / 2;
      res.left_half = d.elem_half[hits[i].second];
      res.right_half = d.elem_half[hits[i + 1].second];
      res.block_index =
          d.recomb_pos[structure_index_data::slot(res.pair, res.left_half, res.right_half)] + 1;
      return res;
    }

  if (static_cast<int>(subset.size()) >= d.threshold())
    throw std::logic_error("no collision in a subset at the certified threshold");
  throw threshold_error("guarantee threshold not met: subset of size " +
                        std::to_string(subset.size()) + " is below threshold " +
                        std::to_string(d.threshold()) + " and has no collision");
}

witness_result witness_block(const design_family& fam, std::span<const element_id> subset) {
  return proof_witness(fam).lookup(subset);
}

// ---------------------------------------------------------------------------
// irredundancy and coverage statistics
// ---------------------------------------------------------------------------

std::vector<int> irredundancy_report::necessary_blocks() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < verdicts.size(); ++i)
    if (verdicts[i] == removal_verdict::necessary) out.push_back(static_cast<int>(i) + 1);
  return out;
}

irredundancy_report irredundancy_check(const design_family& fam, int subset_size,
                                       std::uint64_t node_budget) {
  validate_family(fam);
  const verification_report baseline = graph_verify(fam, subset_size, node_budget);
  if (baseline.outcome != verify_outcome::holds)
    throw parameter_error("family does not satisfy the guarantee at subset size " +
                          std::to_string(subset_size));
  irredundancy_report rep;
  rep.verdicts.reserve(fam.blocks.size());
  rep.counterexamples.resize(fam.blocks.size());
  for (std::size_t i = 0; i < fam.blocks.size(); ++i) {
    design_family reduced;
    reduced.n = fam.n;
    reduced.k = fam.k;
    reduced.blocks = fam.blocks;
    reduced.blocks.erase(reduced.blocks.begin() + static_cast<std::ptrdiff_t>(i));
    const verification_report r = graph_verify(reduced, subset_size, node_budget);
    switch (r.outcome) {
      case verify_outcome::fails:
        rep.verdicts.push_back(removal_verdict::necessary);
        rep.counterexamples[i] = r.counterexample;
        break;
      case verify_outcome::holds:
        rep.verdicts.push_back(removal_verdict::redundant);
        break;
      case verify_outcome::undecided:
        rep.verdicts.push_back(removal_verdict::undecided);
        break;
    }
  }
  return rep;
}

coverage_record coverage_stats(const design_family& fam) {
  validate_family(fam);
  coverage_record rec;
  const std::size_t n = fam.n;
  std::vector<std::uint32_t> mult(n * (n - 1) / 2, 0);
  const auto tri = [n](element_id x, element_id y) {  // x < y, 1-based
    return static_cast<std::size_t>(x - 1) * n -
           static_cast<std::size_t>(x) * (x - 1) / 2 + (y - x - 1);
  };
  rec.block_pair_counts.reserve(fam.blocks.size());
  for (const block& b : fam.blocks) {
    rec.block_pair_counts.push_back(b.size() * (b.size() - 1) / 2);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) ++mult[tri(b[i], b[j])];
  }
  for (std::uint32_t c : mult)
    if (c > 0) {
      ++rec.covered_pairs;
      ++rec.multiplicity_histogram[static_cast<int>(c)];
    }
  return rec;
}

}  // namespace paircover
