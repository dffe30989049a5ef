#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paircover/family.hpp"
#include "paircover/mis.hpp"
#include "paircover/pair_graph.hpp"

namespace paircover {

enum class verify_outcome { holds, fails, undecided };
enum class verify_method { exhaustive, graph, structural };

/// Result of one verification run. FAILS from the exhaustive or graph method
/// always carries a counterexample subset meeting every block in at most one
/// point; a structural FAILS caused by broken construction metadata carries
/// the reason in `detail` instead.
struct verification_report {
  verify_method method;
  verify_outcome outcome = verify_outcome::undecided;
  std::uint64_t scanned = 0;  // subsets examined, or solver nodes for the graph method
  std::optional<std::vector<element_id>> counterexample;
  std::optional<clique_cover> certificate;       // graph method, when found
  std::optional<int> alpha;                      // graph method, when computed exactly
  std::optional<int> certified_threshold;        // structural method
  std::string detail;
};

/// Sweeps every subset of the given size in lexicographic order and checks it
/// against the family via per-element block-incidence bitmasks, so each subset
/// costs a handful of word operations. On FAILS the counterexample is the
/// lexicographically smallest and `scanned` is its rank + 1; on HOLDS
/// `scanned` = C(n, s). The sweep is partitioned into rank ranges across
/// `jobs` worker threads (0 = hardware concurrency); the report does not
/// depend on the worker count.
verification_report exhaustive_verify(const design_family& fam, int subset_size,
                                      int jobs = 1);

/// Decides the guarantee through the covered-pair graph: it holds iff the
/// graph has no independent set of the given size. HOLDS comes with a
/// clique-cover certificate when the greedy cover is small enough; FAILS
/// with a maximum independent set truncated to the subset size.
verification_report graph_verify(const design_family& fam, int subset_size,
                                 std::uint64_t node_budget = mis_default_budget);

/// Certifies the guarantee from the construction metadata alone: base blocks
/// must partition the ground set, every pair must carry all four recombined
/// blocks, and those must be consistent half unions. A valid structure
/// certifies threshold t/2 + 1 without enumeration. Throws
/// structural_inapplicable when the family has no structure metadata.
verification_report structural_verify(const design_family& fam, int subset_size);

struct witness_result {
  enum class kind { base_collision, pair_collision };
  kind case_tag;
  int block_index;  // 1-based position in the family
  int base = 0;                                  // base_collision
  int pair = 0, left_half = 0, right_half = 0;   // pair_collision
};

/// Constructive witness lookup that mirrors the guarantee's two-case proof:
/// either two subset elements share a base block, or two hit base blocks share
/// a pair and the recombined block of their halves contains both. Lookup cost
/// is proportional to the subset size; no block scan.
class proof_witness {
public:
  /// Builds the element -> (base, half) index. Throws structural_inapplicable
  /// when no structure is attached and structure_error when it is invalid.
  explicit proof_witness(const design_family& fam);
  ~proof_witness();
  proof_witness(proof_witness&&) noexcept;
  proof_witness& operator=(proof_witness&&) noexcept;

  /// Throws threshold_error when the subset is smaller than the certified
  /// threshold and has no collision.
  witness_result lookup(std::span<const element_id> subset) const;

  int certified_threshold() const;
  int group_count() const;

private:
  struct index;
  std::unique_ptr<index> idx_;
};

/// One-shot convenience around proof_witness.
witness_result witness_block(const design_family& fam, std::span<const element_id> subset);

enum class removal_verdict { necessary, redundant, undecided };

struct irredundancy_report {
  std::vector<removal_verdict> verdicts;  // per block
  std::vector<std::optional<std::vector<element_id>>> counterexamples;

  /// 1-based indices of blocks whose removal breaks the guarantee.
  std::vector<int> necessary_blocks() const;
};

/// Re-verifies the family with each block removed in turn (graph method).
/// The family must satisfy the guarantee at the given size to begin with.
irredundancy_report irredundancy_check(const design_family& fam, int subset_size,
                                       std::uint64_t node_budget = mis_default_budget);

struct coverage_record {
  std::uint64_t covered_pairs = 0;                     // distinct pairs in >= 1 block
  std::map<int, std::uint64_t> multiplicity_histogram; // multiplicity -> pair count
  std::vector<std::uint64_t> block_pair_counts;        // pairs contained in each block
};

coverage_record coverage_stats(const design_family& fam);

}  // namespace paircover
