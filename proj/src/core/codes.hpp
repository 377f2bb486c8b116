#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace polar {

// n distinct codewords over {-1,+1} with a certified minimum pairwise Hamming
// distance. The certificate records how min_distance was established: an
// exhaustive scan for n <= kExhaustiveLimit, otherwise the algebraic design
// distance cross-checked against a large random sample of pairs.
struct BinaryCode {
  std::size_t length = 0;                // d'
  std::vector<std::int8_t> words;        // n * length, values in {-1,+1}
  std::size_t min_distance = 0;          // certified minimum Hamming distance
  std::size_t design_distance = 0;       // algebraic lower bound (0 = none claimed)
  bool exhaustive = false;               // certificate from a full pair scan
  bool distinct = true;                  // pairwise distinctness held
  std::string provenance;

  static constexpr std::size_t kExhaustiveLimit = 4096;
  static constexpr std::size_t kSamplePairs = 1'000'000;

  std::size_t size() const { return length == 0 ? 0 : words.size() / length; }

  const std::int8_t* word(std::size_t i) const { return words.data() + i * length; }

  double relative_distance() const {
    return length == 0 ? 0.0 : static_cast<double>(min_distance) / static_cast<double>(length);
  }
};

std::size_t hamming(const std::int8_t* a, const std::int8_t* b, std::size_t len);

// 2^k codewords of length 2^k: the rows of the order-2^k Sylvester matrix,
// H[s][t] = (-1)^popcount(s & t). Every pair of distinct rows is at Hamming
// distance exactly 2^(k-1), i.e. relative distance 1/2.
BinaryCode hadamard_code(int k);

// Concatenation of an outer Reed-Solomon code over GF(2^m) (evaluations of
// degree < k_rs polynomials at all 2^m field points, rate k_rs/2^m <= 2*delta)
// with the inner Hadamard code of length 2^m. Yields >= n codewords of length
// 2^(2m) and relative distance >= (1 - rate)/2 >= 1/2 - delta. The smallest
// feasible m in [4,16] is chosen; infeasible parameters report the smallest m
// that would work.
BinaryCode rs_hadamard_code(std::size_t n, double delta);

// Exact exhaustive minimum pairwise Hamming distance, O(n^2 d'); updates the
// certificate (and the distinctness flag) in place.
std::size_t certify_min_distance(BinaryCode& code);

}  // namespace polar
