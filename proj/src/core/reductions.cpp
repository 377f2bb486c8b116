#include "core/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace polar {

namespace {

std::string fmt(double v) {
  char buf[40];
  auto n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, buf + n);
}

void validate_ov(const OVInstance& inst) {
  require(inst.dim >= 1, errc::invalid_argument, "OV instance needs dimension >= 1");
  auto check = [&](const std::vector<std::vector<std::uint8_t>>& rows, const char* name) {
    for (const auto& r : rows) {
      require(r.size() == inst.dim, errc::invalid_argument,
              std::string(name) + ": row dimension does not match the instance");
      for (auto v : r)
        require(v <= 1, errc::invalid_argument,
                std::string(name) + ": entries must be 0 or 1");
    }
  };
  check(inst.U, "U");
  check(inst.W, "W");
}

// Three-way lexicographic row comparison (plain loop; the library operators
// trip a GCC 11 -Wstringop-overread false positive here).
int row_cmp(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  return 0;
}

// Indices of first occurrences, ascending. Sorting index views costs
// O(d n log n) comparisons and no row copies.
std::vector<std::size_t> first_occurrences(const std::vector<std::vector<std::uint8_t>>& rows) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int c = row_cmp(rows[a], rows[b]);
    if (c != 0) return c < 0;
    return a < b;  // within a duplicate group the smallest index sorts first
  });
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < order.size(); ++k)
    if (k == 0 || row_cmp(rows[order[k]], rows[order[k - 1]]) != 0) keep.push_back(order[k]);
  std::sort(keep.begin(), keep.end());
  return keep;
}

bool has_duplicates(const std::vector<std::vector<std::uint8_t>>& rows) {
  return first_occurrences(rows).size() != rows.size();
}

}  // namespace

DedupeResult dedupe(const OVInstance& inst) {
  validate_ov(inst);
  DedupeResult out;
  out.instance.dim = inst.dim;
  const auto keep_u = first_occurrences(inst.U);
  const auto keep_w = first_occurrences(inst.W);
  out.instance.U.reserve(keep_u.size());
  out.instance.W.reserve(keep_w.size());
  for (std::size_t k = 0; k < keep_u.size(); ++k) {
    out.instance.U.push_back(inst.U[keep_u[k]]);
    out.mapping.push_back({k, 'U', keep_u[k], false});
  }
  for (std::size_t k = 0; k < keep_w.size(); ++k) {
    out.instance.W.push_back(inst.W[keep_w[k]]);
    out.mapping.push_back({k, 'W', keep_w[k], false});
  }
  return out;
}

ReducedInstance ov_to_closest_pair_linf(const OVInstance& inst) {
  validate_ov(inst);
  require(!has_duplicates(inst.U) && !has_duplicates(inst.W), errc::invalid_argument,
          "OV instance has duplicate rows; the distance-2 bound for inner pairs "
          "needs distinct vectors (run dedupe first)");

  ReducedInstance out;
  out.points = PointSet(inst.dim, Metric::linf());
  out.points.reserve(inst.U.size() + inst.W.size());
  std::vector<double> row(inst.dim);

  for (std::size_t u = 0; u < inst.U.size(); ++u) {
    for (std::size_t k = 0; k < inst.dim; ++k) row[k] = inst.U[u][k] ? 2.0 : 0.0;
    out.points.add(row);
    out.certificate.mapping.push_back({u, 'U', u, false});
  }
  for (std::size_t w = 0; w < inst.W.size(); ++w) {
    for (std::size_t k = 0; k < inst.dim; ++k) row[k] = inst.W[w][k] ? -1.0 : 1.0;
    out.points.add(row);
    out.certificate.mapping.push_back({inst.U.size() + w, 'W', w, false});
  }

  out.certificate.kind = "ov_to_closest_pair_linf";
  out.certificate.scale = 0.0;
  out.certificate.gap_low = 1.0;
  out.certificate.gap_high = 2.0;
  out.certificate.notes =
      "an orthogonal pair exists iff the minimum pairwise max-norm distance is "
      "exactly 1; otherwise every pair is at distance >= 2";
  return out;
}

ReducedInstance bcp_to_closest_pair(const BCPInstance& inst, const PolarPair& gadget,
                                    bool fast_dmax_bound) {
  require(inst.red.size() >= 1 && inst.blue.size() >= 1, errc::invalid_argument,
          "both color classes must be nonempty");
  require(inst.red.dim() == inst.blue.dim(), errc::invalid_argument,
          "red/blue dimension mismatch");
  require(inst.red.metric() == inst.blue.metric(), errc::invalid_argument,
          "red/blue metric mismatch");
  const Metric& m = inst.metric();
  require(m.kind == MetricKind::Lp, errc::invalid_argument,
          "the gadget attachment needs a finite-p metric (the max-norm route is "
          "the orthogonal-vectors reduction)");
  require(gadget.metric == m, errc::invalid_argument,
          "gadget metric does not match the instance metric");
  require(gadget.inner_floor > gadget.crossing_distance, errc::invalid_argument,
          "gadget gap is not strict (inner_floor must exceed crossing_distance)");

  const double p = m.p;
  const std::size_t base_dim = inst.red.dim();
  const std::size_t n_red = inst.red.size();
  const std::size_t n_blue = inst.blue.size();
  const std::size_t m_side = std::max(n_red, n_blue);
  require(gadget.n() >= m_side, errc::invalid_argument,
          "gadget too small: it has " + std::to_string(gadget.n()) +
              " point pairs but the padded classes need " + std::to_string(m_side));

  std::string notes;

  // Upper bound on bichromatic distances of the given classes, either the
  // exact quadratic scan or the per-coordinate range bound.
  auto dmax_pow = [&](const PointSet& red, const PointSet& blue) {
    if (fast_dmax_bound) {
      double sum = 0.0;
      for (std::size_t k = 0; k < base_dim; ++k) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t i = 0; i < red.size(); ++i) {
          lo = std::min(lo, red[i][k]);
          hi = std::max(hi, red[i][k]);
        }
        for (std::size_t j = 0; j < blue.size(); ++j) {
          lo = std::min(lo, blue[j][k]);
          hi = std::max(hi, blue[j][k]);
        }
        sum += std::pow(hi - lo, p);
      }
      return sum;
    }
    double best = 0.0;
    for (std::size_t i = 0; i < red.size(); ++i)
      for (std::size_t j = 0; j < blue.size(); ++j)
        best = std::max(best, distance_pow_p(red[i], blue[j], p));
    return best;
  };

  // Pad the smaller class with dummies strung out along coordinate 0, each
  // farther than 3x the original diameter bound from everything, so no dummy
  // can steal the bichromatic argmin.
  const double dmax0 = std::pow(dmax_pow(inst.red, inst.blue), 1.0 / p);
  double max_abs = 0.0;
  for (double v : inst.red.raw()) max_abs = std::max(max_abs, std::fabs(v));
  for (double v : inst.blue.raw()) max_abs = std::max(max_abs, std::fabs(v));
  const double spacing = 2.0 * max_abs + 1.0 + 3.0 * dmax0;

  PointSet red = inst.red;
  PointSet blue = inst.blue;
  PointSet& shorter = n_red < n_blue ? red : blue;
  const std::size_t pad_count = m_side - std::min(n_red, n_blue);
  {
    std::vector<double> dummy(base_dim, 0.0);
    for (std::size_t k = 0; k < pad_count; ++k) {
      dummy[0] = max_abs + static_cast<double>(k + 1) * spacing;
      shorter.add(dummy);
    }
  }
  if (pad_count > 0)
    notes += "padded " + std::to_string(pad_count) + " dummy point(s) onto the " +
             (n_red < n_blue ? std::string("red") : std::string("blue")) + " class; ";

  // Lambda sizes the gadget so mono distances clear bi distances with a
  // factor-2 margin: lambda^p (I^p - C^p) = 2 Dmax^p over the padded classes
  // (dummy pairs included, so the bound covers them too).
  const double dmax_p = dmax_pow(red, blue);
  const double ip = std::pow(gadget.inner_floor, p);
  const double cp = std::pow(gadget.crossing_distance, p);
  double lambda = 1.0;
  if (dmax_p > 0.0) {
    lambda = std::pow(2.0 * dmax_p / (ip - cp), 1.0 / p);
  } else {
    notes += "all bichromatic input distances are zero; lambda defaulted to 1; ";
  }
  notes += fast_dmax_bound ? "dmax mode: per-coordinate range bound"
                           : "dmax mode: exact bichromatic scan";

  const double lp_ = std::pow(lambda, p);
  const std::size_t gadget_dim = gadget.dim();
  ReducedInstance out;
  out.points = PointSet(base_dim + gadget_dim, m);
  out.points.reserve(2 * m_side);
  std::vector<double> row(base_dim + gadget_dim);
  auto emit = [&](const PointSet& base, std::size_t i, const PointSet& gadget_side) {
    const auto bp = base[i];
    const auto gp = gadget_side[i];
    for (std::size_t k = 0; k < base_dim; ++k) row[k] = bp[k];
    for (std::size_t k = 0; k < gadget_dim; ++k) row[base_dim + k] = lambda * gp[k];
    out.points.add(row);
  };
  for (std::size_t i = 0; i < m_side; ++i) {
    emit(red, i, gadget.A);
    out.certificate.mapping.push_back({i, 'R', i, i >= n_red});
  }
  for (std::size_t j = 0; j < m_side; ++j) {
    emit(blue, j, gadget.B);
    out.certificate.mapping.push_back({m_side + j, 'B', j, j >= n_blue});
  }

  out.certificate.kind = "bcp_to_closest_pair";
  out.certificate.scale = lambda;
  // Bichromatic p-th powers live in [lambda^p C^p, Dmax^p + lambda^p C^p];
  // monochromatic ones start at lambda^p I^p, strictly above.
  out.certificate.gap_low = std::pow(dmax_p + lp_ * cp, 1.0 / p);
  out.certificate.gap_high = lambda * gadget.inner_floor;
  require(out.certificate.gap_low < out.certificate.gap_high, errc::internal_error,
          "reduction gap collapsed: gap_low " + fmt(out.certificate.gap_low) +
              " >= gap_high " + fmt(out.certificate.gap_high));
  out.certificate.notes = notes;
  return out;
}

}  // namespace polar
