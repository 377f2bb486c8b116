#include "core/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdio>
#include <limits>

#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace polar {

namespace {

using Rational = boost::multiprecision::cpp_rational;

std::string fmt(double v) {
  char buf[40];
  auto n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, buf + n);
}

double rel_scale(double reference) { return std::max(1.0, std::fabs(reference)); }

}  // namespace

std::string VerificationReport::to_text() const {
  std::string out;
  out += "pass: " + std::string(pass ? "true" : "false") + "\n";
  out += "min_inner: " + fmt(min_inner) + "\n";
  out += "max_inner: " + fmt(max_inner) + "\n";
  out += "min_cross: " + fmt(min_cross) + "\n";
  out += "max_cross: " + fmt(max_cross) + "\n";
  out += "margin: " + fmt(margin) + "\n";
  out += "equal_cross: " + std::string(equal_cross ? "true" : "false") + "\n";
  if (!notes.empty()) out += "notes: " + notes + "\n";
  return out;
}

VerificationReport check_polar(const PolarPair& pp, double tol) {
  VerificationReport rep;
  auto note = [&rep](const std::string& s) {
    if (!rep.notes.empty()) rep.notes += "; ";
    rep.notes += s;
  };
  if (!pp.notes.empty()) rep.notes = pp.notes;

  bool ok = true;
  if (pp.A.size() != pp.B.size()) {
    note("|A| != |B| (" + std::to_string(pp.A.size()) + " vs " + std::to_string(pp.B.size()) + ")");
    ok = false;
  }
  if (pp.A.dim() != pp.B.dim()) {
    note("dimension mismatch between A and B");
    ok = false;
  }
  if (!(pp.A.metric() == pp.metric) || !(pp.B.metric() == pp.metric)) {
    note("metric mismatch between the pair and its point-sets");
    ok = false;
  }
  if (!ok) {
    rep.pass = false;
    return rep;
  }

  const Metric& m = pp.metric;
  const bool exact_l0 = m.kind == MetricKind::L0;
  const bool exact_pow = m.integral_p() && pp.crossing_pow.has_value() &&
                         pp.A.integral_coords() && pp.B.integral_coords();

  // Distances used for comparisons: L0 counts (already exact), p-th powers in
  // the exact integral case, rooted values otherwise.
  auto cmp_dist = [&](std::span<const double> a, std::span<const double> b) {
    if (exact_l0) return distance(a, b, m);
    if (exact_pow) return distance_pow_p(a, b, m.p);
    return distance(a, b, m);
  };
  // Maps a comparison-domain value back to a rooted distance for the report.
  auto to_rooted = [&](double v) {
    if (!exact_pow) return v;
    if (std::isinf(v)) return v;
    return m.p == 2.0 ? std::sqrt(v) : std::pow(v, 1.0 / m.p);
  };

  const std::size_t n = pp.A.size();

  double min_inner = std::numeric_limits<double>::infinity();
  double max_inner = -std::numeric_limits<double>::infinity();
  char min_side = '-';
  std::size_t min_i = 0, min_j = 0;
  auto scan_within = [&](const PointSet& ps, char side) {
    for (std::size_t i = 0; i + 1 < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        const double d = cmp_dist(ps[i], ps[j]);
        if (d < min_inner) {
          min_inner = d;
          min_side = side;
          min_i = i;
          min_j = j;
        }
        max_inner = std::max(max_inner, d);
      }
  };
  scan_within(pp.A, 'A');
  scan_within(pp.B, 'B');
  const bool has_inner = n >= 2;
  if (!has_inner) max_inner = min_inner;  // both +inf: no within pairs exist

  double min_cross = std::numeric_limits<double>::infinity();
  double max_cross = -std::numeric_limits<double>::infinity();
  std::size_t worst_i = 0, worst_j = 0;
  double worst_dev = -1.0;
  const double claimed_cmp = exact_pow ? *pp.crossing_pow
                             : exact_l0 ? pp.crossing_distance
                                        : pp.crossing_distance;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = cmp_dist(pp.A[i], pp.B[j]);
      min_cross = std::min(min_cross, d);
      max_cross = std::max(max_cross, d);
      const double dev = std::fabs(d - claimed_cmp);
      if (dev > worst_dev) {
        worst_dev = dev;
        worst_i = i;
        worst_j = j;
      }
    }

  rep.min_inner = to_rooted(min_inner);
  rep.max_inner = to_rooted(max_inner);
  rep.min_cross = to_rooted(min_cross);
  rep.max_cross = to_rooted(max_cross);
  rep.margin = rep.min_inner - rep.max_cross;
  rep.min_inner_side = min_side;
  rep.min_inner_i = min_i;
  rep.min_inner_j = min_j;
  rep.worst_cross_i = worst_i;
  rep.worst_cross_j = worst_j;

  // Crossing distances must all equal the claimed value.
  if (exact_l0 || exact_pow) {
    rep.equal_cross = (min_cross == claimed_cmp) && (max_cross == claimed_cmp);
    if (!rep.equal_cross) {
      ok = false;
      note("crossing pair (" + std::to_string(worst_i) + "," + std::to_string(worst_j) +
           ") deviates from the claimed value: measured " + fmt(to_rooted(worst_dev + claimed_cmp)) +
           " vs claimed " + fmt(pp.crossing_distance) + " (exact comparison)");
    }
    if (exact_l0 && pp.crossing_distance != std::floor(pp.crossing_distance)) {
      ok = false;
      note("claimed L0 crossing distance is not an integer");
    }
  } else {
    const double scale = rel_scale(pp.crossing_distance);
    rep.equal_cross = std::fabs(min_cross - pp.crossing_distance) <= tol * scale &&
                      std::fabs(max_cross - pp.crossing_distance) <= tol * scale;
    if (!rep.equal_cross) {
      ok = false;
      note("crossing pair (" + std::to_string(worst_i) + "," + std::to_string(worst_j) +
           ") deviates from the claimed distance by " + fmt(worst_dev) + " > tol*scale=" +
           fmt(tol * scale));
    }
  }

  if (has_inner) {
    // Within-set distances must clear the claimed floor...
    const double floor_cmp = exact_pow ? pp.inner_floor_pow.value_or(min_inner)
                                       : pp.inner_floor;
    const bool floor_ok = (exact_l0 || exact_pow)
                              ? min_inner >= floor_cmp
                              : min_inner >= floor_cmp - tol * rel_scale(floor_cmp);
    if (!floor_ok) {
      ok = false;
      note("within pair " + std::string(1, min_side) + "(" + std::to_string(min_i) + "," +
           std::to_string(min_j) + ") at " + fmt(rep.min_inner) +
           " is below the claimed inner floor " + fmt(pp.inner_floor));
    }
    // ... and strictly exceed every crossing distance.
    const bool gap_ok = (exact_l0 || exact_pow)
                            ? min_inner > max_cross
                            : min_inner > max_cross + tol * rel_scale(max_cross);
    if (!gap_ok) {
      ok = false;
      note("no strict gap: min within " + fmt(rep.min_inner) + " at " +
           std::string(1, min_side) + "(" + std::to_string(min_i) + "," + std::to_string(min_j) +
           ") does not clear max crossing " + fmt(rep.max_cross));
    }
  }

  // The claim itself must be ordered (floor above crossing) unless the
  // degenerate single-point case makes within pairs vacuous.
  if (has_inner && !(pp.inner_floor > pp.crossing_distance)) {
    ok = false;
    note("claimed inner floor " + fmt(pp.inner_floor) +
         " does not exceed the claimed crossing distance " + fmt(pp.crossing_distance));
  }

  rep.pass = ok;
  return rep;
}

VerificationReport check_polar(const PolarPair& pp) {
  return check_polar(pp, default_tolerance());
}

void validate_distribution(const DistributionPair& dp) {
  auto check_side = [&](const WeightedSupport& ws, const char* name) {
    require(ws.points.size() == ws.probs.size(), errc::invalid_argument,
            std::string(name) + ": probability count does not match support size");
    require(ws.points.size() >= 1, errc::invalid_argument,
            std::string(name) + ": empty support");
    require(ws.points.dim() == dp.dim, errc::invalid_argument,
            std::string(name) + ": dimension mismatch");
    double sum = 0.0;
    for (double p : ws.probs) {
      require(p >= 0.0, errc::invalid_argument, std::string(name) + ": negative probability");
      sum += p;
    }
    require(std::fabs(sum - 1.0) <= 1e-12, errc::invalid_argument,
            std::string(name) + ": probabilities sum to " + fmt(sum) + ", not 1");
  };
  check_side(dp.X, "X");
  check_side(dp.Y, "Y");
}

ExpectedDistances expected_distances(const DistributionPair& dp, const Metric& m) {
  validate_distribution(dp);
  ExpectedDistances out;
  const auto& X = dp.X;
  const auto& Y = dp.Y;
  for (std::size_t i = 0; i < X.points.size(); ++i)
    for (std::size_t j = 0; j < X.points.size(); ++j)
      out.exx += X.probs[i] * X.probs[j] * distance(X.points[i], X.points[j], m);
  for (std::size_t i = 0; i < Y.points.size(); ++i)
    for (std::size_t j = 0; j < Y.points.size(); ++j)
      out.eyy += Y.probs[i] * Y.probs[j] * distance(Y.points[i], Y.points[j], m);
  for (std::size_t i = 0; i < X.points.size(); ++i)
    for (std::size_t j = 0; j < Y.points.size(); ++j)
      out.exy += X.probs[i] * Y.probs[j] * distance(X.points[i], Y.points[j], m);
  return out;
}

namespace {

double falsifier_objective(const DistributionPair& dp, const Metric& m) {
  const ExpectedDistances e = expected_distances(dp, m);
  return std::min(e.exx, e.eyy) - e.exy;
}

// Exact rational recheck of min(EXX, EYY) - EXY <= 0. Doubles convert to
// rationals exactly; probabilities are renormalized exactly so each side is a
// genuine distribution.
bool rational_objective_nonpositive(const DistributionPair& dp, const Metric& m) {
  auto dist = [&](std::span<const double> a, std::span<const double> b) {
    if (m.kind == MetricKind::L0) {
      long c = 0;
      for (std::size_t k = 0; k < a.size(); ++k) c += (a[k] != b[k]);
      return Rational(c);
    }
    Rational sum = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      Rational d = Rational(a[k]) - Rational(b[k]);
      if (d < 0) d = -d;
      sum += d;
    }
    return sum;
  };
  auto normalized = [](const std::vector<double>& probs) {
    std::vector<Rational> out(probs.size());
    Rational total = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      out[i] = Rational(probs[i]);
      total += out[i];
    }
    for (auto& r : out) r /= total;
    return out;
  };
  const auto px = normalized(dp.X.probs);
  const auto py = normalized(dp.Y.probs);

  Rational exx = 0, eyy = 0, exy = 0;
  for (std::size_t i = 0; i < px.size(); ++i)
    for (std::size_t j = 0; j < px.size(); ++j)
      exx += px[i] * px[j] * dist(dp.X.points[i], dp.X.points[j]);
  for (std::size_t i = 0; i < py.size(); ++i)
    for (std::size_t j = 0; j < py.size(); ++j)
      eyy += py[i] * py[j] * dist(dp.Y.points[i], dp.Y.points[j]);
  for (std::size_t i = 0; i < px.size(); ++i)
    for (std::size_t j = 0; j < py.size(); ++j)
      exy += px[i] * py[j] * dist(dp.X.points[i], dp.Y.points[j]);

  const Rational objective = (exx < eyy ? exx : eyy) - exy;
  return objective <= 0;
}

DistributionPair random_distribution(SplitMix64& rng, const Metric& m, std::size_t dim,
                                     std::size_t support) {
  auto side = [&]() {
    WeightedSupport ws;
    ws.points = PointSet(dim, m);
    std::vector<double> row(dim);
    for (std::size_t i = 0; i < support; ++i) {
      for (auto& v : row)
        v = (m.kind == MetricKind::L0) ? static_cast<double>(rng.next_bool())
                                       : rng.next_uniform(-1.0, 1.0);
      ws.points.add(row);
    }
    ws.probs.resize(support);
    double total = 0.0;
    for (auto& p : ws.probs) {
      p = -std::log(1.0 - rng.next_double());  // Exp(1) draws -> Dirichlet(1)
      total += p;
    }
    for (auto& p : ws.probs) p /= total;
    return ws;
  };
  DistributionPair dp;
  dp.dim = dim;
  dp.X = side();
  dp.Y = side();
  return dp;
}

void renormalize(std::vector<double>& probs) {
  double total = 0.0;
  for (double p : probs) total += p;
  for (auto& p : probs) p /= total;
}

}  // namespace

std::string FalsifierReport::to_text() const {
  std::string out;
  out += "trials: " + std::to_string(trials) + "\n";
  out += "best_objective: " + fmt(best_objective) + "\n";
  out += "best_trial: " + std::to_string(best_trial) + "\n";
  out += "rational_rechecked: " + std::to_string(rational_rechecked) + "\n";
  out += "rational_all_nonpositive: " + std::string(rational_all_nonpositive ? "true" : "false") + "\n";
  out += "theorem_upheld: " + std::string(theorem_upheld ? "true" : "false") + "\n";
  if (!notes.empty()) out += "notes: " + notes + "\n";
  return out;
}

FalsifierReport distribution_falsifier(const Metric& metric, std::size_t dim,
                                       std::size_t support_size, std::size_t trials,
                                       std::uint64_t seed) {
  require(metric.kind == MetricKind::L0 ||
              (metric.kind == MetricKind::Lp && metric.p == 1.0),
          errc::invalid_argument, "falsifier supports the L0 and L1 metrics only");
  require(dim >= 1 && support_size >= 1 && trials >= 1, errc::invalid_argument,
          "falsifier needs dim, support_size, trials >= 1");

  constexpr int kClimbSteps = 100;
  constexpr std::size_t kTopK = 10;

  struct Candidate {
    double objective = -std::numeric_limits<double>::infinity();
    std::uint64_t trial = 0;
    DistributionPair pair;
  };

  // One top-K list per chunk, merged in chunk order, keeps the outcome
  // identical for any worker count.
  const std::size_t grain = std::max<std::size_t>(std::size_t{1}, trials / 64);
  const std::size_t nchunks = (trials + grain - 1) / grain;
  std::vector<std::vector<Candidate>> chunk_top(nchunks);

  parallel_chunks(trials, grain, [&](std::size_t c, std::size_t b, std::size_t e) {
    auto& top = chunk_top[c];
    for (std::size_t trial = b; trial < e; ++trial) {
      SplitMix64 rng(child_seed(seed, trial));
      DistributionPair dp = random_distribution(rng, metric, dim, support_size);
      double obj = falsifier_objective(dp, metric);

      for (int step = 0; step < kClimbSteps; ++step) {
        DistributionPair cand = dp;
        WeightedSupport& side = rng.next_bool() ? cand.X : cand.Y;
        if (rng.next_bool()) {
          // Perturb one support coordinate (bit flip for L0).
          const std::size_t pi = rng.next_below(support_size);
          const std::size_t k = rng.next_below(dim);
          Point pt = side.points.point(pi);
          if (metric.kind == MetricKind::L0) {
            pt[k] = pt[k] == 0.0 ? 1.0 : 0.0;
          } else {
            const double scale = 0.5 * std::pow(0.97, step);
            pt[k] = std::clamp(pt[k] + rng.next_uniform(-scale, scale), -1.0, 1.0);
          }
          PointSet rebuilt(side.points.dim(), side.points.metric());
          for (std::size_t q = 0; q < side.points.size(); ++q) {
            if (q == pi)
              rebuilt.add(pt);
            else
              rebuilt.add(side.points[q]);
          }
          side.points = std::move(rebuilt);
        } else {
          // Reweight one support point.
          const std::size_t pi = rng.next_below(support_size);
          side.probs[pi] *= std::exp(rng.next_uniform(-0.5, 0.5));
          renormalize(side.probs);
        }
        const double cand_obj = falsifier_objective(cand, metric);
        if (cand_obj > obj) {
          obj = cand_obj;
          dp = std::move(cand);
        }
      }

      Candidate c2{obj, trial, std::move(dp)};
      top.push_back(std::move(c2));
      std::sort(top.begin(), top.end(),
                [](const Candidate& a, const Candidate& b) { return a.objective > b.objective; });
      if (top.size() > kTopK) top.resize(kTopK);
    }
  });

  // Merge chunk results in chunk order.
  std::vector<Candidate> merged;
  for (auto& ct : chunk_top)
    for (auto& c : ct) merged.push_back(std::move(c));
  std::stable_sort(merged.begin(), merged.end(),
                   [](const Candidate& a, const Candidate& b) { return a.objective > b.objective; });
  if (merged.size() > kTopK) merged.resize(kTopK);

  FalsifierReport rep;
  rep.trials = trials;
  rep.best_objective = merged.empty() ? 0.0 : merged.front().objective;
  rep.best_trial = merged.empty() ? 0 : merged.front().trial;
  rep.rational_rechecked = merged.size();
  for (const auto& c : merged) {
    if (!rational_objective_nonpositive(c.pair, metric)) {
      rep.rational_all_nonpositive = false;
      rep.notes += "trial " + std::to_string(c.trial) +
                   " has an exactly positive objective - this contradicts the impossibility "
                   "theorem and indicates a bug; ";
    }
  }
  rep.theorem_upheld = rep.best_objective <= 1e-12 && rep.rational_all_nonpositive;
  if (!rep.notes.empty() && rep.notes.back() == ' ') rep.notes.pop_back();
  return rep;
}

std::vector<double> l0_coordinate_contribution(const DistributionPair& dp) {
  validate_distribution(dp);
  for (std::size_t i = 0; i < dp.X.points.size(); ++i)
    for (double v : dp.X.points[i])
      require(v == 0.0 || v == 1.0, errc::invalid_argument, "non-binary coordinate in X");
  for (std::size_t i = 0; i < dp.Y.points.size(); ++i)
    for (double v : dp.Y.points[i])
      require(v == 0.0 || v == 1.0, errc::invalid_argument, "non-binary coordinate in Y");

  std::vector<double> out(dp.dim);
  for (std::size_t k = 0; k < dp.dim; ++k) {
    auto marginal_zero = [&](const WeightedSupport& ws) {
      double rho0 = 0.0;
      for (std::size_t i = 0; i < ws.points.size(); ++i)
        if (ws.points[i][k] == 0.0) rho0 += ws.probs[i];
      return rho0;
    };
    const double a0 = marginal_zero(dp.X);
    const double b0 = marginal_zero(dp.Y);
    // rho1 = 1 - rho0 per class: rounding is monotone, so (a1 - b1) never
    // acquires the same sign as (a0 - b0) and the product stays <= 0.
    const double a1 = 1.0 - a0;
    const double b1 = 1.0 - b0;
    const double contribution = 2.0 * (a0 - b0) * (a1 - b1);
    const double closed_form = -2.0 * (a0 - b0) * (a0 - b0);
    require(std::fabs(contribution - closed_form) <= 1e-12,
            errc::internal_error,
            "coordinate contribution disagrees with its closed form");
    out[k] = contribution;
  }
  return out;
}

std::string SpectralReport::to_text() const {
  std::string out;
  out += "pass: " + std::string(pass ? "true" : "false") + "\n";
  out += "K: " + fmt(K) + "\n";
  out += "positive_count: " + std::to_string(positive_count) + "\n";
  out += "rank_lower_bound: " + std::to_string(rank_lower_bound) + "\n";
  out += "dimension_bound: " + fmt(dimension_bound) + "\n";
  out += "swap_block_negative: " + std::string(swap_block_negative ? "true" : "false") + "\n";
  if (!notes.empty()) out += "notes: " + notes + "\n";
  return out;
}

SpectralReport spectral_check(const PolarPair& pp) {
  SpectralReport rep;
  auto note = [&rep](const std::string& s) {
    if (!rep.notes.empty()) rep.notes += "; ";
    rep.notes += s;
  };

  const std::size_t n = pp.n();
  rep.dimension_bound = (static_cast<double>(n) - 3.0) / 2.0;

  if (!(pp.metric.kind == MetricKind::Lp && pp.metric.p == 2.0)) {
    note("spectral check requires the L2 metric");
    return rep;
  }
  const VerificationReport vr = check_polar(pp);
  if (!vr.pass) {
    note("polar verification failed: " + vr.notes);
    return rep;
  }
  if (!(pp.inner_floor > pp.crossing_distance)) {
    note("needs a strict gap inner_floor > crossing_distance");
    return rep;
  }

  const std::size_t d = pp.dim();

  // Scale so the largest norm is 1; alpha/beta scale alike.
  double max_norm = 0.0;
  auto norm_of = [&](std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  for (std::size_t i = 0; i < n; ++i) {
    max_norm = std::max(max_norm, norm_of(pp.A[i]));
    max_norm = std::max(max_norm, norm_of(pp.B[i]));
  }
  if (max_norm == 0.0) {
    note("all points at the origin; nothing to scale");
    return rep;
  }
  const double s = 1.0 / max_norm;
  const double alpha = pp.inner_floor * s;
  const double beta = pp.crossing_distance * s;

  // Smallest admissible K has 1/K^2 = (alpha^2 - beta^2)/2; 1.1 is headroom.
  rep.K = 1.1 * std::sqrt(2.0 / (alpha * alpha - beta * beta));
  const double K = rep.K;
  const double target_sq = K * K + 1.0;  // every appended point lands on this norm

  // Appended coordinate per point: sqrt(K^2 + 1 - |u|^2) = K + c_u, c_u < 1/K.
  const std::size_t dd = d + 1;
  Eigen::MatrixXd M(2 * dd, 2 * n);
  rep.c_adjustments.reserve(2 * n);
  auto fill_column = [&](std::size_t col, std::span<const double> top,
                         std::span<const double> bottom) {
    for (std::size_t k = 0; k < d; ++k) {
      M(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(col)) = top[k] * s;
      M(static_cast<Eigen::Index>(dd + k), static_cast<Eigen::Index>(col)) = bottom[k] * s;
    }
    const double nt = norm_of(top) * s;
    const double nb = norm_of(bottom) * s;
    M(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(col)) =
        std::sqrt(target_sq - nt * nt);
    M(static_cast<Eigen::Index>(dd + d), static_cast<Eigen::Index>(col)) =
        std::sqrt(target_sq - nb * nb);
  };
  for (std::size_t i = 0; i < n; ++i) fill_column(i, pp.A[i], pp.B[i]);
  for (std::size_t j = 0; j < n; ++j) fill_column(n + j, pp.B[j], pp.A[j]);

  for (std::size_t i = 0; i < n; ++i) {
    const double cu = std::sqrt(target_sq - std::pow(norm_of(pp.A[i]) * s, 2)) - K;
    const double cv = std::sqrt(target_sq - std::pow(norm_of(pp.B[i]) * s, 2)) - K;
    rep.c_adjustments.push_back(cu);
    rep.c_adjustments.push_back(cv);
    if (!(cu >= 0.0 && cu < 1.0 / K && cv >= 0.0 && cv < 1.0 / K))
      note("norm adjustment c_u escaped [0, 1/K) for point " + std::to_string(i));
  }

  const Eigen::MatrixXd G = M.transpose() * M;

  // The diagonal shift c makes the swap block matrix zero-diagonal; all
  // columns share the squared norm 2(K^2 + 1).
  const double c = 2.0 * target_sq;
  bool negative = true;
  const auto ni = static_cast<Eigen::Index>(n);
  for (Eigen::Index i = 0; i < ni && negative; ++i)
    for (Eigen::Index j = 0; j < ni; ++j) {
      const double m11 = G(i, j) - (i == j ? c : 0.0);
      const double m12 = G(i, ni + j);
      if (!(m11 - m12 < 0.0)) {
        negative = false;
        break;
      }
    }
  rep.swap_block_negative = negative;
  if (!negative) note("M11 - M12 has a non-negative entry");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(G);
  if (solver.info() != Eigen::Success) {
    note("eigensolver failed to converge");
    return rep;
  }
  rep.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  double max_abs = 0.0;
  for (double ev : rep.eigenvalues) max_abs = std::max(max_abs, std::fabs(ev));
  const double threshold = 1e-8 * max_abs;
  rep.positive_count = static_cast<std::size_t>(
      std::count_if(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                    [&](double ev) { return ev > threshold; }));
  rep.rank_lower_bound = rep.positive_count;

  const bool dim_ok = 2.0 * static_cast<double>(dd) >= static_cast<double>(n) - 1.0;
  if (!dim_ok) note("2(d+1) >= n-1 failed, which would contradict the rank bound");
  rep.pass = negative && rep.positive_count >= n - 1 && dim_ok;
  if (rep.positive_count < n - 1)
    note("only " + std::to_string(rep.positive_count) +
         " positive eigenvalues, expected at least " + std::to_string(n - 1));
  return rep;
}

DistanceGraph distance_graph(const PointSet& ps, double threshold, double tol) {
  DistanceGraph g;
  const std::size_t n = ps.size();
  g.vertices = n;
  g.adjacency.assign(n * n, 0);
  const double cutoff = threshold + tol * rel_scale(threshold);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(ps, i, j) <= cutoff) {
        g.adjacency[i * n + j] = 1;
        g.adjacency[j * n + i] = 1;
        ++g.edges;
      }
    }

  // Complete bipartite with balanced sides: in K_{m,m} the neighborhood of
  // any vertex is exactly the opposite side.
  g.is_complete_bipartite = false;
  if (n >= 2) {
    std::vector<std::size_t> side_x, side_y;
    for (std::size_t v = 0; v < n; ++v)
      (g.adjacent(0, v) ? side_y : side_x).push_back(v);  // v=0 lands in side_x
    if (side_x.size() == side_y.size() && !side_y.empty()) {
      bool ok = true;
      auto in_side_y = [&](std::size_t v) {
        return std::binary_search(side_y.begin(), side_y.end(), v);
      };
      for (std::size_t v = 0; v < n && ok; ++v) {
        const bool x_side = !in_side_y(v);
        for (std::size_t w = 0; w < n && ok; ++w) {
          if (v == w) continue;
          const bool expect = x_side ? in_side_y(w) : !in_side_y(w);
          if (g.adjacent(v, w) != expect) ok = false;
        }
      }
      if (ok) {
        g.is_complete_bipartite = true;
        g.side_x = std::move(side_x);
        g.side_y = std::move(side_y);
      }
    }
  }
  return g;
}

DistanceGraph distance_graph(const PointSet& ps, double threshold) {
  return distance_graph(ps, threshold, default_tolerance());
}

}  // namespace polar
