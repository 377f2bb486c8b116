#pragma once

#include <optional>
#include <utility>

#include "core/metrics.hpp"
#include "core/reductions.hpp"

namespace polar {

enum class PairColor { mono, bi, untyped };

struct PairResult {
  std::size_t i = 0;  // i < j under the instance's canonical ordering
  std::size_t j = 0;
  double distance = 0.0;
  PairColor color = PairColor::untyped;
};

// Exact quadratic argmin over unordered pairs. Ties (exact in the integral
// cases, within relative tolerance otherwise) keep the lexicographically
// smallest (i, j).
PairResult closest_pair_bruteforce(const PointSet& ps);

// Exact argmin over red x blue. Indices are reported in the combined
// canonical order (reds first), so i indexes red and j = |red| + blue index.
PairResult bcp_bruteforce(const BCPInstance& inst);

// First orthogonal pair in lexicographic (U index, W index) order.
std::optional<std::pair<std::size_t, std::size_t>> ov_bruteforce(const OVInstance& inst);

// Bit-parallel L0 path: packs binary coordinates ({0,1} or {-1,1}) into
// 64-bit words and scans pairs with xor + popcount. Answers, including the
// tie-break, are identical to closest_pair_bruteforce on the same set.
PairResult hamming_closest_pair_fast(const PointSet& ps);

}  // namespace polar
