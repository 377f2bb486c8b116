#include "core/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include "core/rng.hpp"
#include "core/verify.hpp"

namespace polar {

namespace {

std::string fmt(double v) {
  char buf[40];
  auto n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, buf + n);
}

// Every construction self-verifies before releasing the pair.
void release_check(PolarPair& pp) {
  const VerificationReport report = check_polar(pp);
  require(report.pass, errc::construction_failure,
          "construction failed self-verification (" + pp.provenance + "): " + report.notes);
}

}  // namespace

PolarPair l0_arbitrary(std::size_t n) {
  require(n >= 1, errc::invalid_argument, "l0_arbitrary needs n >= 1");
  const Metric m = Metric::l0();
  PolarPair pp;
  pp.metric = m;
  pp.A = PointSet(n, m);
  pp.B = PointSet(n, m);
  std::vector<double> row(n);

  for (std::size_t i = 1; i <= n; ++i) {
    std::fill(row.begin(), row.end(), static_cast<double>(i));
    pp.A.add(row);
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k)
      row[k] = static_cast<double>((r + k) % n + 1);  // r-th left rotation of (1..n)
    pp.B.add(row);
  }

  pp.crossing_distance = static_cast<double>(n - 1);
  pp.inner_floor = static_cast<double>(n);
  pp.provenance = "l0_arbitrary(n=" + std::to_string(n) + ")";
  if (n == 1)
    pp.notes = "degenerate n=1 case: the single crossing pair coincides, distance 0";
  release_check(pp);
  return pp;
}

PointSet real_to_binary(const PointSet& ps, const std::vector<double>& alphabet) {
  require(!alphabet.empty(), errc::invalid_argument, "alphabet must be non-empty");
  for (std::size_t i = 0; i + 1 < alphabet.size(); ++i)
    for (std::size_t j = i + 1; j < alphabet.size(); ++j)
      require(alphabet[i] != alphabet[j], errc::invalid_argument,
              "alphabet entries must be distinct");

  const std::size_t s = alphabet.size();
  PointSet out(ps.dim() * s, Metric::l0());
  out.reserve(ps.size());
  std::vector<double> row(ps.dim() * s);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    const auto src = ps[i];
    for (std::size_t k = 0; k < ps.dim(); ++k) {
      std::size_t pos = s;
      for (std::size_t a = 0; a < s; ++a) {
        if (src[k] == alphabet[a]) {
          pos = a;
          break;
        }
      }
      require(pos < s, errc::invalid_argument,
              "coordinate " + fmt(src[k]) + " of point " + std::to_string(i) +
                  " is outside the alphabet");
      row[k * s + pos] = 1.0;
    }
    out.add(row);
  }
  return out;
}

PolarPair l0_binary(std::size_t n) {
  require(n >= 1, errc::invalid_argument, "l0_binary needs n >= 1");
  PolarPair base = l0_arbitrary(n);
  std::vector<double> alphabet(n);
  for (std::size_t i = 0; i < n; ++i) alphabet[i] = static_cast<double>(i + 1);

  PolarPair pp;
  pp.metric = Metric::l0();
  pp.A = real_to_binary(base.A, alphabet);
  pp.B = real_to_binary(base.B, alphabet);
  pp.crossing_distance = static_cast<double>(2 * (n - 1));
  pp.inner_floor = static_cast<double>(2 * n);
  pp.provenance = "l0_binary(n=" + std::to_string(n) + ")";
  pp.notes =
      "indicator expansion doubles every L0 distance; certified values are the "
      "measured inner=2n=" + std::to_string(2 * n) +
      ", crossing=2(n-1)=" + std::to_string(2 * (n - 1)) +
      "; the un-doubled values n=" + std::to_string(n) + ", n-1=" + std::to_string(n - 1) +
      " describe the pre-expansion distances only";
  release_check(pp);
  return pp;
}

namespace {

// Margin of the needed strict inequality (1-a)^p + (n-1) a^p < 1.
double lp_mid_margin(double a, double p, std::size_t n) {
  return 1.0 - (std::pow(1.0 - a, p) + static_cast<double>(n - 1) * std::pow(a, p));
}

// Sign of d(margin)/da, up to the positive factor p.
double lp_mid_margin_slope(double a, double p, std::size_t n) {
  return std::pow(1.0 - a, p - 1.0) - static_cast<double>(n - 1) * std::pow(a, p - 1.0);
}

// The margin is concave on (0, 1/2]: coarse log-spaced grid to bracket the
// optimum, then bisection on the slope sign.
double lp_mid_search_alpha(std::size_t n, double p) {
  constexpr int kPerDecade = 8;
  std::vector<double> grid;
  for (int e = -30 * kPerDecade; e <= 0; ++e)
    grid.push_back(0.5 * std::pow(10.0, static_cast<double>(e) / kPerDecade));

  double best_a = grid.front();
  double best_m = -std::numeric_limits<double>::infinity();
  for (double a : grid) {
    const double m = lp_mid_margin(a, p, n);
    if (m > best_m) {
      best_m = m;
      best_a = a;
    }
  }

  if (n == 1) return 0.5;  // margin 1-(1-a)^p is increasing; 1/2 caps the grid

  // Bracket around the best grid point and bisect on the slope.
  double lo = best_a / std::pow(10.0, 1.0 / kPerDecade);
  double hi = std::min(0.5, best_a * std::pow(10.0, 1.0 / kPerDecade));
  if (lp_mid_margin_slope(lo, p, n) <= 0.0 || lp_mid_margin_slope(hi, p, n) >= 0.0)
    return best_a;  // optimum pinned at a grid edge (e.g. a = 1/2 for n = 2)
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (lp_mid_margin_slope(mid, p, n) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double refined = 0.5 * (lo + hi);
  return lp_mid_margin(refined, p, n) > best_m ? refined : best_a;
}

}  // namespace

PolarPair lp_mid(std::size_t n, double p, double tol) {
  require(n >= 1, errc::invalid_argument, "lp_mid needs n >= 1");
  require(p > 1.0 && p < 2.0, errc::invalid_argument, "lp_mid needs p in (1,2)");

  const double alpha = lp_mid_search_alpha(n, p);
  const double margin = lp_mid_margin(alpha, p, n);
  if (!(margin > 10.0 * tol))
    fail(errc::construction_failure,
         "lp_mid(n=" + std::to_string(n) + ", p=" + fmt(p) +
             "): no admissible alpha; best achievable margin " + fmt(margin) +
             " at alpha=" + fmt(alpha) + " does not clear 10*tol=" + fmt(10.0 * tol));

  const Metric m = Metric::lp(p);
  PolarPair pp;
  pp.metric = m;
  pp.A = PointSet(2 * n, m);
  pp.B = PointSet(2 * n, m);
  std::vector<double> row(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row.begin(), row.begin() + n, 0.0);
    std::fill(row.begin() + n, row.end(), alpha);
    row[i] = 1.0;
    pp.A.add(row);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(row.begin(), row.begin() + n, alpha);
    std::fill(row.begin() + n, row.end(), 0.0);
    row[n + j] = 1.0;
    pp.B.add(row);
  }

  const double expr = std::pow(1.0 - alpha, p) + static_cast<double>(n - 1) * std::pow(alpha, p);
  pp.inner_floor = std::pow(2.0, 1.0 / p);
  pp.crossing_distance = pp.inner_floor * std::pow(expr, 1.0 / p);
  pp.provenance = "lp_mid(n=" + std::to_string(n) + ",p=" + fmt(p) + ",alpha=" + fmt(alpha) +
                  ",margin=" + fmt(margin) + ")";
  release_check(pp);
  return pp;
}

PolarPair lp_mid(std::size_t n, double p) { return lp_mid(n, p, default_tolerance()); }

namespace {

std::size_t sign_hamming(const double* a, const double* b, std::size_t len) {
  std::size_t c = 0;
  for (std::size_t k = 0; k < len; ++k) c += (a[k] != b[k]);
  return c;
}

}  // namespace

PolarPair lp_high_random(std::size_t n, double p, std::size_t d, std::uint64_t seed) {
  require(n >= 1, errc::invalid_argument, "lp_high_random needs n >= 1");
  require(p > 2.0, errc::invalid_argument, "lp_high_random needs p > 2");
  require(d % 2 == 0 && d >= 2, errc::invalid_argument, "lp_high_random needs even d >= 2");

  const std::size_t half = d / 2;
  const double delta_prime = (0.5 - std::pow(2.0, 1.0 - p)) / 2.0;
  const double needed = (0.5 - delta_prime) * static_cast<double>(half);
  constexpr int kRetryBudget = 16;

  // One side = n sign rows on its own half of the coordinates.  Rows whose
  // Hamming distance to an earlier row falls below `needed` (duplicates
  // included, distance 0) are redrawn in bounded sweeps; the earlier row of
  // each offending pair is kept so a sweep never invalidates finished work.
  // Returns the side's final minimum pairwise Hamming distance and the number
  // of sweeps it took.
  auto sample_side = [&](std::uint64_t stream, char side, std::vector<double>& flat,
                         int& sweeps) -> double {
    SplitMix64 rng(stream);
    flat.assign(n * half, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double* row = flat.data() + i * half;
      for (std::size_t k = 0; k < half; ++k) row[k] = static_cast<double>(rng.next_sign());
    }
    if (n == 1) return std::numeric_limits<double>::infinity();

    for (sweeps = 0;; ++sweeps) {
      double min_h = std::numeric_limits<double>::infinity();
      std::size_t worst_i = 0, worst_j = 0;
      std::vector<char> redo(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const double h = static_cast<double>(
              sign_hamming(flat.data() + i * half, flat.data() + j * half, half));
          if (h < min_h) {
            min_h = h;
            worst_i = i;
            worst_j = j;
          }
          if (h < needed) redo[j] = 1;
        }
      if (min_h >= needed) return min_h;
      require(sweeps < kRetryBudget, errc::construction_failure,
              "lp_high_random(n=" + std::to_string(n) + ",p=" + fmt(p) +
                  ",d=" + std::to_string(d) + ",seed=" + std::to_string(seed) +
                  "): retry budget (" + std::to_string(kRetryBudget) +
                  ") exhausted; worst within pair " + std::string(1, side) + "(" +
                  std::to_string(worst_i) + "," + std::to_string(worst_j) + ") differs on " +
                  fmt(min_h) + " < required " + fmt(needed) +
                  " coordinates - d is too small for n at this p");
      for (std::size_t j = 0; j < n; ++j) {
        if (!redo[j]) continue;
        double* row = flat.data() + j * half;
        for (std::size_t k = 0; k < half; ++k) row[k] = static_cast<double>(rng.next_sign());
      }
    }
  };

  std::vector<double> rowsA, rowsB;
  int sweepsA = 0, sweepsB = 0;
  const double min_hA = sample_side(child_seed(seed, 0), 'A', rowsA, sweepsA);
  const double min_hB = sample_side(child_seed(seed, 1), 'B', rowsB, sweepsB);
  const double min_h = std::min(min_hA, min_hB);

  const Metric m = Metric::lp(p);
  PolarPair pp;
  pp.metric = m;
  pp.A = PointSet(d, m);
  pp.B = PointSet(d, m);
  std::vector<double> row(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    std::copy_n(rowsA.data() + i * half, half, row.begin());
    pp.A.add(row);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    std::copy_n(rowsB.data() + i * half, half, row.begin() + half);
    pp.B.add(row);
  }

  // Crossing pairs differ by exactly 1 in every coordinate: p-th power d.
  pp.crossing_pow = static_cast<double>(d);
  pp.crossing_distance = std::pow(static_cast<double>(d), 1.0 / p);

  // Measured inner floor: the worst within-set pair differs on min_h
  // coordinates, each contributing |±2|^p.
  if (n > 1) {
    pp.inner_floor_pow = min_h * std::pow(2.0, p);
    pp.inner_floor = std::pow(*pp.inner_floor_pow, 1.0 / p);
  } else {
    pp.inner_floor = pp.crossing_distance + 1.0;  // vacuous: no within pairs
  }
  pp.provenance = "lp_high_random(n=" + std::to_string(n) + ",p=" + fmt(p) +
                  ",d=" + std::to_string(d) + ",seed=" + std::to_string(seed) + ")";
  const double floor_d = std::ceil(64.0 * std::log(static_cast<double>(n)));
  if (static_cast<double>(d) < floor_d) {
    pp.notes = "d=" + std::to_string(d) + " is below the recommended floor ceil(64 ln n) = " +
               std::to_string(static_cast<std::size_t>(floor_d)) +
               "; resampling needed " + std::to_string(sweepsA) + "+" + std::to_string(sweepsB) +
               " sweeps";
  }
  release_check(pp);
  return pp;
}

BinaryCode lp_high_code_backend(std::size_t n, double p, CodeBackend backend, double delta) {
  require(n >= 1, errc::invalid_argument, "lp_high_code needs n >= 1");
  require(p > 2.0, errc::invalid_argument, "lp_high_code needs p > 2");
  const double ceiling = 0.25 - std::pow(2.0, -p);
  switch (backend) {
    case CodeBackend::hadamard: {
      int k = 1;
      while ((std::size_t{1} << k) < n) ++k;
      BinaryCode code = hadamard_code(k);
      // Any n distinct Sylvester rows keep pairwise distance exactly 2^(k-1).
      code.words.resize(n * code.length);
      code.min_distance = code.length / 2;
      code.design_distance = code.length / 2;
      code.provenance += " (first " + std::to_string(n) + " words)";
      certify_min_distance(code);
      return code;
    }
    case CodeBackend::rs_hadamard: {
      require(delta > 0.0 && delta < ceiling, errc::invalid_argument,
              "lp_high_code rs-hadamard backend needs delta in (0, 1/4 - 2^-p); the delta "
              "ceiling for p=" + fmt(p) + " is " + fmt(ceiling));
      return rs_hadamard_code(n, delta);
    }
  }
  fail(errc::internal_error, "unknown code backend");
}

PolarPair lp_high_code(std::size_t n, double p, CodeBackend backend, double delta) {
  BinaryCode code = lp_high_code_backend(n, p, backend, delta);
  const std::size_t dprime = code.length;
  const std::size_t d = 2 * dprime;

  // Within-set floor from the code's certified minimum distance: differing
  // coordinates contribute |±2|^p each.
  const double zeta_plus_half = std::pow(2.0, p - 3.0) + 0.5;
  const double bound = zeta_plus_half * static_cast<double>(d);
  const double floor_pow = std::pow(2.0, p) * static_cast<double>(code.min_distance);
  require(n == 1 || floor_pow > bound, errc::construction_failure,
          "code minimum distance " + std::to_string(code.min_distance) +
              " gives within p-th power " + fmt(floor_pow) +
              ", not above the required (2^(p-3)+1/2)d = " + fmt(bound));

  const Metric m = Metric::lp(p);
  PolarPair pp;
  pp.metric = m;
  pp.A = PointSet(d, m);
  pp.B = PointSet(d, m);
  std::vector<double> row(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t k = 0; k < dprime; ++k) row[k] = code.word(i)[k];
    pp.A.add(row);
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t k = 0; k < dprime; ++k) row[dprime + k] = code.word(i)[k];
    pp.B.add(row);
  }

  pp.crossing_pow = static_cast<double>(d);  // every coordinate differs by exactly 1
  pp.crossing_distance = std::pow(static_cast<double>(d), 1.0 / p);
  if (n > 1) {
    pp.inner_floor_pow = floor_pow;
    pp.inner_floor = std::pow(floor_pow, 1.0 / p);
  } else {
    pp.inner_floor = pp.crossing_distance + 1.0;  // vacuous: no within pairs
  }
  pp.provenance = "lp_high_code(n=" + std::to_string(n) + ",p=" + fmt(p) + ",backend=" +
                  (backend == CodeBackend::hadamard ? "hadamard" : "rs-hadamard") +
                  ",code=" + code.provenance + ")";
  pp.notes = "code certificate: min_distance=" + std::to_string(code.min_distance) +
             " over length " + std::to_string(dprime) +
             (code.exhaustive ? " (exhaustive)" : " (algebraic + sampled)");
  release_check(pp);
  return pp;
}

PolarPair l2_simplex(std::size_t n) {
  require(n >= 2, errc::invalid_argument, "l2_simplex needs n >= 2");
  const Metric m = Metric::l2();
  const double c = 1.0 / static_cast<double>(n);
  PolarPair pp;
  pp.metric = m;
  pp.A = PointSet(2 * n, m);
  pp.B = PointSet(2 * n, m);
  std::vector<double> row(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row.begin(), row.begin() + n, -c);
    std::fill(row.begin() + n, row.end(), 0.0);
    row[i] = 1.0 - c;
    pp.A.add(row);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(row.begin(), row.begin() + n, 0.0);
    std::fill(row.begin() + n, row.end(), -c);
    row[n + j] = 1.0 - c;
    pp.B.add(row);
  }
  pp.inner_floor = std::sqrt(2.0);
  pp.crossing_distance = std::sqrt(2.0 * (1.0 - c));
  pp.provenance = "l2_simplex(n=" + std::to_string(n) + ")";
  release_check(pp);
  return pp;
}

}  // namespace polar
