#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paircover/family.hpp"

namespace paircover {

/// Exact binomial coefficient C(n, k). Throws std::overflow_error when the
/// value does not fit in 64 bits, parameter_error on negative arguments.
std::uint64_t binomial(int n, int k);

/// The k-subset of [1, n] at the given lexicographic rank (rank 0 is
/// {1, ..., k}).
std::vector<element_id> unrank_subset(int n, int k, std::uint64_t rank);

/// Lexicographic rank of a strictly ascending k-subset of [1, n].
std::uint64_t rank_subset(int n, std::span<const element_id> subset);

/// Advances a strictly ascending subset to its lexicographic successor in
/// place; returns false when the input was the last subset.
bool next_subset(std::span<element_id> subset, int n);

}  // namespace paircover
