#include "paircover/subset.hpp"

#include <limits>
#include <string>

namespace paircover {

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0) throw parameter_error("binomial arguments must be nonnegative");
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= static_cast<unsigned>(n - k + i);
    result /= static_cast<unsigned>(i);  // exact: result holds C(n-k+i, i)
    if (result > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                std::to_string(k) + ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<element_id> unrank_subset(int n, int k, std::uint64_t rank) {
  if (k < 0 || k > n) throw parameter_error("subset size out of range");
  if (rank >= binomial(n, k)) throw parameter_error("subset rank out of range");
  std::vector<element_id> subset(k);
  std::uint64_t remaining = rank;
  int next = 1;
  for (int i = 0; i < k; ++i) {
    for (int v = next;; ++v) {
      const std::uint64_t with_v = binomial(n - v, k - 1 - i);
      if (remaining < with_v) {
        subset[i] = v;
        next = v + 1;
        break;
      }
      remaining -= with_v;
    }
  }
  return subset;
}

std::uint64_t rank_subset(int n, std::span<const element_id> subset) {
  const int k = static_cast<int>(subset.size());
  std::uint64_t rank = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    const int e = subset[i];
    if (e <= prev || e > n) throw parameter_error("subset not strictly ascending in [1, n]");
    for (int v = prev + 1; v < e; ++v) rank += binomial(n - v, k - 1 - i);
    prev = e;
  }
  return rank;
}

bool next_subset(std::span<element_id> subset, int n) {
  const int k = static_cast<int>(subset.size());
  int i = k - 1;
  while (i >= 0 && subset[i] == n - (k - 1 - i)) --i;
  if (i < 0) return false;
  ++subset[i];
  for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  return true;
}

}  // namespace paircover
