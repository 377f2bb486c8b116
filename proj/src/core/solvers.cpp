#include "core/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "core/parallel.hpp"

namespace polar {

namespace {

// Distances compare exactly (plain double <, ==) when no rounding can occur:
// L0 counts, integer-p powers of integer coordinates, and max-norms of
// integer coordinates. Everything else gets a relative-tolerance tie rule.
bool exact_comparable(const PointSet& ps) {
  switch (ps.metric().kind) {
    case MetricKind::L0:
      return true;
    case MetricKind::Linf:
      return ps.integral_coords();
    case MetricKind::Lp:
      return ps.metric().integral_p() && ps.integral_coords();
  }
  return false;
}

// Comparison-domain value: p-th power for integral Lp (cheaper and exact),
// the distance itself otherwise.
double cmp_value(std::span<const double> a, std::span<const double> b, const Metric& m,
                 bool power_domain) {
  return power_domain ? distance_pow_p(a, b, m.p) : distance(a, b, m);
}

double from_cmp(double v, const Metric& m, bool power_domain) {
  if (!power_domain || m.p == 1.0) return v;
  return m.p == 2.0 ? std::sqrt(v) : std::pow(v, 1.0 / m.p);
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  std::size_t j = 0;
};

}  // namespace

PairResult closest_pair_bruteforce(const PointSet& ps) {
  const std::size_t n = ps.size();
  require(n >= 2, errc::invalid_argument, "closest pair needs at least 2 points");
  const Metric& m = ps.metric();
  const bool power_domain = m.integral_p() && ps.integral_coords();
  const bool exact = exact_comparable(ps);

  // Row-chunked scan; chunk boundaries depend only on n, and the merge walks
  // chunks in order, so the result is identical for any worker count.
  const std::size_t rows = n - 1;
  const std::size_t grain = std::max<std::size_t>(std::size_t{1}, rows / 64);
  const std::size_t nchunks = (rows + grain - 1) / grain;
  std::vector<Best> chunk_best(nchunks);

  parallel_chunks(rows, grain, [&](std::size_t c, std::size_t rb, std::size_t re) {
    Best best;
    for (std::size_t i = rb; i < re; ++i) {
      const auto a = ps[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = cmp_value(a, ps[j], m, power_domain);
        if (d < best.value) best = {d, i, j};
      }
    }
    chunk_best[c] = best;
  });

  Best best;
  for (const Best& b : chunk_best)
    if (b.value < best.value) best = b;  // ties keep the earlier chunk = smaller i

  if (!exact) {
    // Every pair within relative tolerance of the minimum counts as tied;
    // rescan for the lexicographically smallest among them. Pure reductions
    // in both passes keep the answer worker-count independent.
    const double cutoff =
        best.value + default_tolerance() * std::max(1.0, std::fabs(best.value));
    std::vector<Best> chunk_first(nchunks);
    parallel_chunks(rows, grain, [&](std::size_t c, std::size_t rb, std::size_t re) {
      Best first;
      for (std::size_t i = rb; i < re && first.value == std::numeric_limits<double>::infinity();
           ++i) {
        const auto a = ps[i];
        for (std::size_t j = i + 1; j < n; ++j) {
          const double d = cmp_value(a, ps[j], m, power_domain);
          if (d <= cutoff) {
            first = {d, i, j};
            break;
          }
        }
      }
      chunk_first[c] = first;
    });
    for (const Best& b : chunk_first)
      if (b.value != std::numeric_limits<double>::infinity()) {
        best = b;
        break;
      }
  }

  PairResult out;
  out.i = best.i;
  out.j = best.j;
  out.distance = from_cmp(
      power_domain ? distance_pow_p(ps[best.i], ps[best.j], m.p) : distance(ps, best.i, best.j),
      m, power_domain);
  out.color = PairColor::untyped;
  return out;
}

PairResult bcp_bruteforce(const BCPInstance& inst) {
  require(inst.red.size() >= 1 && inst.blue.size() >= 1, errc::invalid_argument,
          "bichromatic closest pair needs both classes nonempty");
  require(inst.red.dim() == inst.blue.dim(), errc::invalid_argument,
          "red/blue dimension mismatch");
  require(inst.red.metric() == inst.blue.metric(), errc::invalid_argument,
          "red/blue metric mismatch");
  const Metric& m = inst.metric();
  const bool power_domain =
      m.integral_p() && inst.red.integral_coords() && inst.blue.integral_coords();
  const bool exact = (m.kind == MetricKind::L0) || power_domain ||
                     (m.kind == MetricKind::Linf && inst.red.integral_coords() &&
                      inst.blue.integral_coords());

  Best best;
  for (std::size_t r = 0; r < inst.red.size(); ++r)
    for (std::size_t b = 0; b < inst.blue.size(); ++b) {
      const double d = cmp_value(inst.red[r], inst.blue[b], m, power_domain);
      if (d < best.value) best = {d, r, b};
    }

  if (!exact) {
    const double cutoff =
        best.value + default_tolerance() * std::max(1.0, std::fabs(best.value));
    for (std::size_t r = 0; r < inst.red.size(); ++r) {
      bool found = false;
      for (std::size_t b = 0; b < inst.blue.size(); ++b) {
        const double d = cmp_value(inst.red[r], inst.blue[b], m, power_domain);
        if (d <= cutoff) {
          best = {d, r, b};
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }

  PairResult out;
  out.i = best.i;
  out.j = inst.red.size() + best.j;  // combined canonical order: reds first
  out.distance = from_cmp(best.value, m, power_domain);
  out.color = PairColor::bi;
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> ov_bruteforce(const OVInstance& inst) {
  for (std::size_t u = 0; u < inst.U.size(); ++u) {
    const auto& uv = inst.U[u];
    for (std::size_t w = 0; w < inst.W.size(); ++w) {
      const auto& wv = inst.W[w];
      bool orthogonal = true;
      for (std::size_t k = 0; k < inst.dim; ++k)
        if (uv[k] && wv[k]) {
          orthogonal = false;
          break;
        }
      if (orthogonal) return std::make_pair(u, w);
    }
  }
  return std::nullopt;
}

PairResult hamming_closest_pair_fast(const PointSet& ps) {
  const std::size_t n = ps.size();
  require(n >= 2, errc::invalid_argument, "closest pair needs at least 2 points");
  require(ps.metric().kind == MetricKind::L0, errc::invalid_argument,
          "the bit-parallel path counts differing coordinates and requires the L0 metric");

  // Accepted alphabets are {0,1} and {-1,1}. Mixing 0 and -1 would make the
  // single pack bit (value == 1) conflate distinct values, so it is refused.
  const std::size_t d = ps.dim();
  bool saw_zero = false, saw_neg = false;
  for (double v : ps.raw()) {
    if (v == 0.0)
      saw_zero = true;
    else if (v == -1.0)
      saw_neg = true;
    else
      require(v == 1.0, errc::invalid_argument,
              "non-binary coordinate (expected values from {0,1} or {-1,1})");
  }
  require(!(saw_zero && saw_neg), errc::invalid_argument,
          "coordinates mix 0 and -1; a single binary alphabet is required");

  const std::size_t words = (d + 63) / 64;
  std::vector<std::uint64_t> packed(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = ps[i];
    std::uint64_t* out = packed.data() + i * words;
    for (std::size_t k = 0; k < d; ++k)
      if (row[k] == 1.0) out[k / 64] |= std::uint64_t{1} << (k % 64);
  }

  const std::size_t rows = n - 1;
  const std::size_t grain = std::max<std::size_t>(std::size_t{1}, rows / 64);
  const std::size_t nchunks = (rows + grain - 1) / grain;
  struct IBest {
    std::uint64_t h = ~std::uint64_t{0};
    std::size_t i = 0, j = 0;
  };
  std::vector<IBest> chunk_best(nchunks);

  parallel_chunks(rows, grain, [&](std::size_t c, std::size_t rb, std::size_t re) {
    IBest best;
    for (std::size_t i = rb; i < re; ++i) {
      const std::uint64_t* xi = packed.data() + i * words;
      const std::uint64_t* xj = packed.data() + (i + 1) * words;
      for (std::size_t j = i + 1; j < n; ++j, xj += words) {
        // Four accumulators keep the xor+popcount chain out of a single
        // dependency line; the tail loop covers words % 4.
        std::uint64_t h0 = 0, h1 = 0, h2 = 0, h3 = 0;
        std::size_t w = 0;
        for (; w + 4 <= words; w += 4) {
          h0 += static_cast<std::uint64_t>(std::popcount(xi[w] ^ xj[w]));
          h1 += static_cast<std::uint64_t>(std::popcount(xi[w + 1] ^ xj[w + 1]));
          h2 += static_cast<std::uint64_t>(std::popcount(xi[w + 2] ^ xj[w + 2]));
          h3 += static_cast<std::uint64_t>(std::popcount(xi[w + 3] ^ xj[w + 3]));
        }
        std::uint64_t h = h0 + h1 + h2 + h3;
        for (; w < words; ++w)
          h += static_cast<std::uint64_t>(std::popcount(xi[w] ^ xj[w]));
        if (h < best.h) best = {h, i, j};
      }
    }
    chunk_best[c] = best;
  });

  IBest best;
  for (const IBest& b : chunk_best)
    if (b.h < best.h) best = b;  // ties keep the earlier chunk = smaller i

  PairResult out;
  out.i = best.i;
  out.j = best.j;
  out.distance = static_cast<double>(best.h);
  out.color = PairColor::untyped;
  return out;
}

}  // namespace polar
