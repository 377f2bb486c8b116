#pragma once

#include <optional>
#include <string>

#include "core/codes.hpp"
#include "core/metrics.hpp"

namespace polar {

// Two equal-cardinality point-sets where every crossing distance equals
// crossing_distance and every within-set distance is at least inner_floor,
// with inner_floor > crossing_distance whenever a gap is claimed (the L0
// contact case encodes the gap as consecutive integers d vs d-1). Every
// constructor runs the exhaustive verification before releasing the object.
struct PolarPair {
  PointSet A;
  PointSet B;
  Metric metric;
  double crossing_distance = 0.0;  // all A x B distances
  double inner_floor = 0.0;        // certified floor for within-set distances

  // Exact p-th-power targets when metric and coordinates are integral; these
  // let the verifier demand equality with no tolerance.
  std::optional<double> crossing_pow;
  std::optional<double> inner_floor_pow;

  std::string provenance;  // construction name + parameters + seed
  std::string notes;       // certificate remarks (measured-value flags etc.)

  std::size_t n() const { return A.size(); }
  std::size_t dim() const { return A.dim(); }
};

// A = n copies of the all-i vector, B = the n left rotations of (1,...,n):
// every within-set L0 distance is exactly n, every crossing distance exactly
// n-1 (dimension n). For n=1 both sides hold the same single point and the
// crossing distance degenerates to 0.
PolarPair l0_arbitrary(std::size_t n);

// Indicator expansion: each scalar becomes the |alphabet|-long indicator of
// its alphabet position, so output L0 distances are exactly twice the input
// ones. Every coordinate must be a member of alphabet (exact comparison).
PointSet real_to_binary(const PointSet& ps, const std::vector<double>& alphabet);

// l0_arbitrary(n) pushed through real_to_binary with alphabet {1..n}:
// dimension n^2 over {0,1}, within-set distance exactly 2n, crossing exactly
// 2(n-1). The certificate notes flag that these are the measured, doubled
// values — the un-doubled n / n-1 hold only before the indicator expansion.
PolarPair l0_binary(std::size_t n);

// Dimension 2n; A_i = indicator e_i on the first block and the constant alpha
// on the second, B symmetric. Every within-set distance is exactly 2^(1/p);
// crossing distances all equal 2^(1/p) * ((1-alpha)^p + (n-1) alpha^p)^(1/p).
// alpha is found by a coarse log grid plus bisection maximizing the margin
// 1 - ((1-alpha)^p + (n-1) alpha^p); the construction fails if the best
// achievable margin is not above 10 * tol.
PolarPair lp_mid(std::size_t n, double p, double tol);
PolarPair lp_mid(std::size_t n, double p);

// Seeded random construction: A gets n distinct sign vectors on the first d/2
// coordinates (zeros elsewhere), B on the second half. Crossing p-th powers
// are exactly d. Rows too close to an earlier row — Hamming distance below
// (1/2 - delta') * d/2 with delta' = (1/2 - 2^(1-p))/2, duplicates included —
// are redrawn in bounded sweeps (budget 16 per side), which forces within
// p-th powers above (2^(p-3) + 1/2) * d > d. Sweep-budget exhaustion reports
// the worst measured pair (the signal that d is too small for n at this p).
// Dimensions below ceil(64 ln n) are allowed but noted in the certificate.
PolarPair lp_high_random(std::size_t n, double p, std::size_t d, std::uint64_t seed);

enum class CodeBackend { hadamard, rs_hadamard };

// Deterministic construction from a binary code with relative distance at
// least 1/2 - delta, delta in (0, 1/4 - 2^-p): A_i = word_i || 0^d',
// B_i = 0^d' || word_i, d = 2d'. Crossing p-th powers are exactly d; within
// p-th powers are at least 2^p * min_distance > (2^(p-3) + 1/2) * d, certified
// from the code's measured minimum distance.
PolarPair lp_high_code(std::size_t n, double p, CodeBackend backend,
                       double delta = 0.05);

// The code the backend would supply (exposed for inspection/serialization).
BinaryCode lp_high_code_backend(std::size_t n, double p, CodeBackend backend,
                                double delta = 0.05);

// Explicit L2 pair: A_i = (e_i - (1/n) * ones) on the first n coordinates,
// B symmetric on the second block. Within squared distances are 2, crossing
// squared distances 2(1 - 1/n).
PolarPair l2_simplex(std::size_t n);

}  // namespace polar
