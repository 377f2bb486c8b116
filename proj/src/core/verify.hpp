#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/constructions.hpp"
#include "core/metrics.hpp"

namespace polar {

// Outcome of the exhaustive polar-invariant scan. Distances are rooted; when
// the pair carries exact p-th-power targets the pass/fail decision is made in
// the power domain with no tolerance.
struct VerificationReport {
  double min_inner = 0.0;
  double max_inner = 0.0;
  double min_cross = 0.0;
  double max_cross = 0.0;
  double margin = 0.0;       // min_inner - max_cross
  bool equal_cross = false;  // all crossing distances equal within tolerance
  bool pass = false;
  std::string notes;

  // Witnesses for failure messages: the shortest within-set pair and the
  // crossing pair deviating most from the claimed distance.
  char min_inner_side = '-';
  std::size_t min_inner_i = 0, min_inner_j = 0;
  std::size_t worst_cross_i = 0, worst_cross_j = 0;

  std::string to_text() const;  // "key: value" lines
};

// Exhaustive O(n^2) check that pp is what it claims: every crossing distance
// equals pp.crossing_distance (exactly in the integral cases, within
// tol * scale otherwise), every within-set distance is at least the claimed
// floor, and min_inner clears max_cross with a positive margin.
VerificationReport check_polar(const PolarPair& pp, double tol);
VerificationReport check_polar(const PolarPair& pp);

// Finite-support distribution over points (weights normalized to sum 1).
struct WeightedSupport {
  PointSet points;
  std::vector<double> probs;
};

struct DistributionPair {
  WeightedSupport X;
  WeightedSupport Y;
  std::size_t dim = 0;
};

void validate_distribution(const DistributionPair& dp);

struct ExpectedDistances {
  double exx = 0.0;
  double eyy = 0.0;
  double exy = 0.0;
};

// Exact double summation over support pairs (independent copies, so the
// x1 = x2 diagonal is included with its weight).
ExpectedDistances expected_distances(const DistributionPair& dp, const Metric& m);

// Random-search + hill-climbing attack on the impossibility statement: tries
// to find distributions with min(E[XX], E[YY]) > E[XY]. The best objective
// value min(exx, eyy) - exy must stay <= 0 on every trial; the top trials are
// re-verified in exact rational arithmetic. A positive exact objective would
// contradict the theorem and is flagged as an internal invariant breach.
struct FalsifierReport {
  std::size_t trials = 0;
  double best_objective = 0.0;  // max over trials (double arithmetic)
  std::uint64_t best_trial = 0;
  std::size_t rational_rechecked = 0;  // how many top trials were re-verified
  bool rational_all_nonpositive = true;
  bool theorem_upheld = false;  // best <= 1e-12 and rational recheck clean
  std::string notes;

  std::string to_text() const;
};

FalsifierReport distribution_falsifier(const Metric& metric, std::size_t dim,
                                       std::size_t support_size, std::size_t trials,
                                       std::uint64_t seed);

// Per-coordinate value 2(rho^A_0 - rho^B_0)(rho^A_1 - rho^B_1) over binary
// supports, which algebraically equals -2(rho^A_0 - rho^B_0)^2 and is
// therefore never positive. Both forms are computed and cross-checked.
std::vector<double> l0_coordinate_contribution(const DistributionPair& dp);

// Output of the L2 rank machinery: append coordinate K (plus a per-point
// adjustment c_u < 1/K equalizing norms to sqrt(K^2+1)), assemble the
// symmetric-swap matrix M whose first n columns are (a_i; b_i) and last n are
// (b_j; a_j), and count positive eigenvalues of M^T M.
struct SpectralReport {
  double K = 0.0;
  std::vector<double> c_adjustments;
  std::vector<double> eigenvalues;  // of M^T M, ascending
  std::size_t positive_count = 0;   // eigenvalues above 1e-8 * max |eigenvalue|
  std::size_t rank_lower_bound = 0;
  double dimension_bound = 0.0;  // (n-3)/2
  bool swap_block_negative = false;  // M11 - M12 entrywise strictly negative
  bool pass = false;
  std::string notes;

  std::string to_text() const;
};

SpectralReport spectral_check(const PolarPair& pp);

// Threshold graph on the points of ps (edge iff distance <= threshold within
// tolerance) plus the complete-bipartite-with-balanced-sides test.
struct DistanceGraph {
  std::size_t vertices = 0;
  std::vector<std::uint8_t> adjacency;  // row-major vertices x vertices
  std::size_t edges = 0;
  bool is_complete_bipartite = false;
  std::vector<std::size_t> side_x;  // discovered bipartition (when CB)
  std::vector<std::size_t> side_y;

  bool adjacent(std::size_t i, std::size_t j) const {
    return adjacency[i * vertices + j] != 0;
  }
};

DistanceGraph distance_graph(const PointSet& ps, double threshold, double tol);
DistanceGraph distance_graph(const PointSet& ps, double threshold);

}  // namespace polar
