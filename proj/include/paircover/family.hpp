#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace paircover {

/// 1-based element of the ground set [1, n].
using element_id = int;

/// A block is a k-subset of the ground set, kept strictly ascending.
using block = std::vector<element_id>;

class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction parameters or operation arguments.
class parameter_error : public error {
public:
  using error::error;
};

/// A family or block violates a structural invariant.
class structure_error : public error {
public:
  using error::error;
};

/// Structural verification was asked for but the family carries no
/// construction metadata. Distinct from a FAILS outcome.
class structural_inapplicable : public error {
public:
  using error::error;
};

/// A witness query on a subset smaller than the guarantee threshold
/// that has no collision at all.
class threshold_error : public error {
public:
  using error::error;
};

/// Parameters of the pairing construction: t disjoint base groups of even
/// size g partition [1, g*t]; consecutive groups are paired and each base is
/// split into two halves, giving four recombined blocks per pair. The family
/// guarantees that every subset of size t/2 + 1 meets some block twice.
class construction_params {
public:
  /// Throws parameter_error unless both group_size and group_count are even
  /// integers >= 2.
  construction_params(int group_size, int group_count);

  int group_size() const { return group_size_; }
  int group_count() const { return group_count_; }
  int ground_size() const { return group_size_ * group_count_; }
  int half_size() const { return group_size_ / 2; }
  int pair_count() const { return group_count_ / 2; }
  int block_count() const { return 3 * group_count_; }
  int guarantee_threshold() const { return group_count_ / 2 + 1; }

private:
  int group_size_;
  int group_count_;
};

/// Construction tag: the block is base block i (1-based).
struct base_tag {
  int index;
  bool operator==(const base_tag&) const = default;
};

/// Construction tag: the block is the union of half u of base 2m-1 and
/// half v of base 2m.
struct recomb_tag {
  int pair;        // m
  int left_half;   // u in {1, 2}
  int right_half;  // v in {1, 2}
  bool operator==(const recomb_tag&) const = default;
};

using block_tag = std::variant<base_tag, recomb_tag>;

/// An ordered family of k-blocks over [1, n], optionally carrying the
/// construction tags that structural verification certifies.
struct design_family {
  int n = 0;
  int k = 0;
  std::vector<block> blocks;
  std::optional<std::vector<block_tag>> structure;  // parallel to blocks

  bool operator==(const design_family&) const = default;
};

/// A fixed couple of base blocks (2m-1, 2m).
struct pair_group {
  int index;  // m, 1-based
  int left_base() const { return 2 * index - 1; }
  int right_base() const { return 2 * index; }
};

/// Checks the design_family invariants: 1 <= k <= n, every block sorted,
/// duplicate-free, of size k, with members in [1, n], and the structure
/// vector (when present) parallel to the blocks. Throws on violation.
void validate_family(const design_family& fam);

/// The t interval base blocks; block i is {g(i-1)+1, ..., g*i}. Together
/// they partition [1, n].
std::vector<block> base_blocks(const construction_params& params);

/// Splits an even-size sorted block into its lowest and highest halves.
std::pair<block, block> split_halves(const block& blk);

/// The four cross blocks of two disjoint even-size bases, emitted in half
/// order (1,1), (1,2), (2,1), (2,2).
std::array<block, 4> recombined_blocks(const block& left_base, const block& right_base);
std::array<block, 4> recombined_blocks(pair_group pair, const construction_params& params);

/// The full family: t base blocks followed by the four recombined blocks of
/// each pair, pairs ascending. Deterministic in params; structure attached.
design_family build_family(const construction_params& params);

}  // namespace paircover
