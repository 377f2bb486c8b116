#include "core/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "core/gf2m.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace polar {

std::size_t hamming(const std::int8_t* a, const std::int8_t* b, std::size_t len) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < len; ++i) count += (a[i] != b[i]);
  return count;
}

namespace {

// Exhaustive minimum over all pairs, parallel over rows with one partial
// result per chunk merged in chunk order (thread-count invariant).
std::size_t exhaustive_min_distance(const BinaryCode& code, bool& distinct) {
  const std::size_t n = code.size();
  if (n < 2) {
    distinct = true;
    return code.length;  // vacuous: no pairs
  }
  const std::size_t grain = std::max<std::size_t>(1, n / 64);
  const std::size_t nchunks = (n + grain - 1) / grain;
  std::vector<std::size_t> partial(nchunks, std::numeric_limits<std::size_t>::max());
  parallel_chunks(n, grain, [&](std::size_t c, std::size_t b, std::size_t e) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = b; i < e; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        best = std::min(best, hamming(code.word(i), code.word(j), code.length));
    partial[c] = best;
  });
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t v : partial) best = std::min(best, v);
  distinct = best > 0;
  return best;
}

std::size_t sampled_min_distance(const BinaryCode& code, std::size_t pairs) {
  const std::size_t n = code.size();
  SplitMix64 rng(0x636f646573ULL ^ (n * 0x9E3779B97F4A7C15ULL) ^ code.length);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t t = 0; t < pairs; ++t) {
    const std::size_t i = rng.next_below(n);
    std::size_t j = rng.next_below(n - 1);
    if (j >= i) ++j;
    best = std::min(best, hamming(code.word(i), code.word(j), code.length));
  }
  return best;
}

void attach_certificate(BinaryCode& code) {
  if (code.size() <= BinaryCode::kExhaustiveLimit) {
    bool distinct = true;
    code.min_distance = exhaustive_min_distance(code, distinct);
    code.distinct = distinct;
    code.exhaustive = true;
    require(code.design_distance == 0 || code.min_distance >= code.design_distance,
            errc::internal_error,
            "measured minimum distance fell below the algebraic design distance");
  } else {
    const std::size_t sampled = sampled_min_distance(code, BinaryCode::kSamplePairs);
    require(sampled >= code.design_distance, errc::internal_error,
            "sampled pair distance fell below the algebraic design distance");
    code.min_distance = code.design_distance;
    code.distinct = code.design_distance > 0;
    code.exhaustive = false;
  }
}

// Number of messages addressable with k_rs symbols over GF(2^m), saturated.
std::size_t message_capacity(int m, std::size_t k_rs, std::size_t cap) {
  std::size_t capacity = 1;
  for (std::size_t i = 0; i < k_rs; ++i) {
    if (capacity > cap >> m) return cap + 1;  // would overflow past cap
    capacity <<= m;
    if (capacity > cap) return cap + 1;
  }
  return capacity;
}

}  // namespace

BinaryCode hadamard_code(int k) {
  require(k >= 1 && k <= 16, errc::invalid_argument,
          "hadamard_code supports k in [1,16]");
  const std::size_t n = std::size_t{1} << k;
  BinaryCode code;
  code.length = n;
  code.words.resize(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      code.words[s * n + t] = (std::popcount(s & t) & 1) ? -1 : 1;
  code.design_distance = n / 2;
  code.provenance = "hadamard(k=" + std::to_string(k) + ")";
  attach_certificate(code);
  return code;
}

BinaryCode rs_hadamard_code(std::size_t n, double delta) {
  require(n >= 1, errc::invalid_argument, "rs_hadamard_code needs n >= 1");
  require(delta > 0.0 && delta < 0.25, errc::invalid_argument,
          "rs_hadamard_code needs delta in (0, 1/4)");

  // Smallest m with outer rate <= 2*delta and at least n messages.
  int chosen = 0;
  std::size_t chosen_k = 0;
  for (int m = 4; m <= 40 && chosen == 0; ++m) {
    const std::size_t outer_len = std::size_t{1} << m;
    const auto k_rs =
        static_cast<std::size_t>(std::floor(2.0 * delta * static_cast<double>(outer_len)));
    if (k_rs < 1) continue;
    if (m <= 16) {
      if (message_capacity(m, k_rs, n) >= n) {
        chosen = m;
        chosen_k = k_rs;
      }
    } else {
      // Feasible only beyond the supported field sizes: report and stop.
      const double capacity_bits = static_cast<double>(k_rs) * m;
      if (capacity_bits >= std::log2(static_cast<double>(n)))
        fail(errc::invalid_argument,
             "rate bound 2*delta forces fewer than n codewords for every supported "
             "field; smallest feasible m is " + std::to_string(m) +
                 " but the supported range is 4..16");
    }
  }
  require(chosen != 0, errc::invalid_argument,
          "no feasible field size for the requested (n, delta)");

  const GF2m field(chosen);
  const std::size_t outer_len = field.size();   // 2^m evaluation points
  const std::size_t inner_len = field.size();   // Hadamard rows of length 2^m
  const std::size_t dprime = outer_len * inner_len;

  BinaryCode code;
  code.length = dprime;
  code.words.resize(n * dprime);
  std::vector<std::uint32_t> message(chosen_k);
  for (std::size_t idx = 0; idx < n; ++idx) {
    // Message = base-2^m digits of idx; distinct indices give distinct
    // polynomials of degree < k_rs.
    std::size_t rest = idx;
    for (std::size_t s = 0; s < chosen_k; ++s) {
      message[s] = static_cast<std::uint32_t>(rest & (outer_len - 1));
      rest >>= chosen;
    }
    std::int8_t* row = code.words.data() + idx * dprime;
    for (std::size_t x = 0; x < outer_len; ++x) {
      const std::uint32_t symbol = field.eval_poly(message, static_cast<std::uint32_t>(x));
      std::int8_t* block = row + x * inner_len;
      for (std::size_t t = 0; t < inner_len; ++t)
        block[t] = (std::popcount(symbol & static_cast<std::uint32_t>(t)) & 1) ? -1 : 1;
    }
  }

  // Distinct messages differ on >= outer_len - k_rs + 1 outer symbols, and each
  // differing symbol contributes an inner Hadamard distance of exactly 2^(m-1).
  code.design_distance = (outer_len - chosen_k + 1) * (inner_len / 2);
  code.provenance = "rs-hadamard(n=" + std::to_string(n) + ",delta=" + std::to_string(delta) +
                    ",m=" + std::to_string(chosen) + ",k=" + std::to_string(chosen_k) + ")";
  attach_certificate(code);
  return code;
}

std::size_t certify_min_distance(BinaryCode& code) {
  bool distinct = true;
  code.min_distance = exhaustive_min_distance(code, distinct);
  code.distinct = distinct;
  code.exhaustive = true;
  return code.min_distance;
}

}  // namespace polar
