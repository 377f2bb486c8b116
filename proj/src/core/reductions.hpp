#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/constructions.hpp"
#include "core/metrics.hpp"

namespace polar {

// Orthogonal-vectors instance: two collections of 0/1 vectors of a shared
// dimension. The reductions require U and W to be duplicate-free (see dedupe).
struct OVInstance {
  std::size_t dim = 0;
  std::vector<std::vector<std::uint8_t>> U;
  std::vector<std::vector<std::uint8_t>> W;
};

// Bichromatic closest-pair instance: red and blue point-sets sharing metric
// and dimension. Cardinalities may differ; the reduction pads with far
// dummies.
struct BCPInstance {
  PointSet red;
  PointSet blue;

  const Metric& metric() const { return red.metric(); }
};

struct MappingEntry {
  std::size_t output_index = 0;
  char cls = 'U';  // input class: 'U'/'W' for OV, 'R'/'B' for BCP
  std::size_t input_index = 0;
  bool dummy = false;  // padding point with no input counterpart
};

struct ReductionCertificate {
  std::string kind;
  double scale = 0.0;     // the lambda of the gadget attachment; 0 = none
  double gap_low = 0.0;   // distance thresholds separating yes/no or bi/mono
  double gap_high = 0.0;  // invariant: gap_low < gap_high
  std::vector<MappingEntry> mapping;
  std::string notes;
};

struct ReducedInstance {
  PointSet points;
  ReductionCertificate certificate;
};

struct DedupeResult {
  OVInstance instance;
  std::vector<MappingEntry> mapping;  // output row -> first occurrence index
};

// Removes duplicate rows from U and W (sort-based, O(d n log n) comparisons),
// keeping first occurrences in their original relative order.
DedupeResult dedupe(const OVInstance& inst);

// L-infinity gap construction: u maps to a with a_j = 0/2 as u_j = 0/1, and w
// maps to b with b_j = 1/-1 as w_j = 0/1. If some pair is orthogonal the
// minimum pairwise distance of the output is exactly 1; otherwise every pair
// is at distance >= 2 (crossing non-orthogonal pairs land at 3, and distinct
// inner pairs differ by 2 somewhere). Duplicates are rejected because the
// inner-pair bound needs distinctness.
ReducedInstance ov_to_closest_pair_linf(const OVInstance& inst);

// Gadget attachment: output red_i = r_i || lambda * gadget.A_i and blue_j =
// b_j || lambda * gadget.B_j under the shared finite-p metric. lambda is
// sized so that lambda^p (I^p - C^p) = 2 * Dmax^p (factor-2 safety), which
// makes every monochromatic output distance exceed every bichromatic one
// while bichromatic p-th powers shift by the single constant lambda^p C^p —
// the bichromatic argmin (and the whole bichromatic order) is preserved.
// When fast_dmax_bound is set, Dmax is the per-coordinate range bound instead
// of the exact quadratic scan.
ReducedInstance bcp_to_closest_pair(const BCPInstance& inst, const PolarPair& gadget,
                                    bool fast_dmax_bound = false);

}  // namespace polar
