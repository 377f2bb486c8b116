#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "core/constructions.hpp"
#include "core/metrics.hpp"
#include "core/reductions.hpp"
#include "core/rng.hpp"
#include "core/solvers.hpp"
#include "doctest.h"

using namespace polar;

namespace {

using Row = std::vector<std::uint8_t>;
using Rows = std::vector<Row>;

Rows rand_rows(SplitMix64& rng, std::size_t n, std::size_t d, std::uint64_t alphabet_bias) {
  Rows rows(n, Row(d));
  for (auto& r : rows)
    for (auto& b : r) b = rng.next_below(alphabet_bias) > 0 ? 1 : 0;
  return rows;
}

// First-seen scan: the obvious O(n^2-free) map-based dedupe oracle.
std::vector<std::size_t> oracle_first_occurrences(const Rows& rows) {
  std::map<Row, std::size_t> seen;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (seen.emplace(rows[i], i).second) keep.push_back(i);
  return keep;
}

PointSet rand_set(SplitMix64& rng, std::size_t n, std::size_t d, const Metric& m, double lo,
                  double hi) {
  PointSet ps(d, m);
  Point p(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& v : p) v = rng.next_uniform(lo, hi);
    ps.add(p);
  }
  return ps;
}

// Splits a reduced point set back into its R/B halves by certificate class.
struct SplitView {
  std::vector<std::size_t> red, blue;
};

SplitView split_by_class(const ReducedInstance& r) {
  SplitView v;
  for (const MappingEntry& e : r.certificate.mapping)
    (e.cls == 'R' ? v.red : v.blue).push_back(e.output_index);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Duplicate removal.

TEST_CASE("dedupe keeps first occurrences in order") {
  OVInstance inst;
  inst.dim = 2;
  inst.U = {{1, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 1}};
  inst.W = {{1, 1}, {1, 1}};
  const DedupeResult out = dedupe(inst);
  REQUIRE(out.instance.U.size() == 3);
  CHECK(out.instance.U[0] == Row{1, 0});
  CHECK(out.instance.U[1] == Row{0, 1});
  CHECK(out.instance.U[2] == Row{1, 1});
  REQUIRE(out.instance.W.size() == 1);
  CHECK(out.instance.W[0] == Row{1, 1});

  REQUIRE(out.mapping.size() == 4);
  CHECK(out.mapping[0].cls == 'U');
  CHECK(out.mapping[0].output_index == 0);
  CHECK(out.mapping[0].input_index == 0);
  CHECK(out.mapping[1].input_index == 1);
  CHECK(out.mapping[2].input_index == 3);
  CHECK(out.mapping[3].cls == 'W');
  CHECK(out.mapping[3].output_index == 0);
  CHECK(out.mapping[3].input_index == 0);
}

TEST_CASE("dedupe matches a map-based oracle under forced collisions") {
  SplitMix64 rng(201);
  for (int rep = 0; rep < 10; ++rep) {
    CAPTURE(rep);
    OVInstance inst;
    inst.dim = 4;  // only 16 distinct rows, so 1000 rows collide heavily
    inst.U = rand_rows(rng, 1000, 4, 2);
    inst.W = rand_rows(rng, 333, 4, 2);
    const DedupeResult out = dedupe(inst);

    const auto want_u = oracle_first_occurrences(inst.U);
    const auto want_w = oracle_first_occurrences(inst.W);
    REQUIRE(out.instance.U.size() == want_u.size());
    REQUIRE(out.instance.W.size() == want_w.size());
    for (std::size_t k = 0; k < want_u.size(); ++k) {
      CHECK(out.instance.U[k] == inst.U[want_u[k]]);
      CHECK(out.mapping[k].input_index == want_u[k]);
    }
    for (std::size_t k = 0; k < want_w.size(); ++k) {
      CHECK(out.instance.W[k] == inst.W[want_w[k]]);
      CHECK(out.mapping[want_u.size() + k].input_index == want_w[k]);
    }
  }
}

TEST_CASE("instance validation rejects malformed rows") {
  OVInstance inst;
  inst.dim = 0;
  CHECK_THROWS_WITH_AS(dedupe(inst), doctest::Contains("dimension >= 1"), error);
  inst.dim = 2;
  inst.U = {{1, 0, 1}};
  CHECK_THROWS_WITH_AS(dedupe(inst), doctest::Contains("row dimension"), error);
  inst.U = {{1, 2}};
  CHECK_THROWS_WITH_AS(dedupe(inst), doctest::Contains("0 or 1"), error);
}

// ---------------------------------------------------------------------------
// Orthogonality as a max-norm gap.

TEST_CASE("max-norm embedding: coordinates and the 1-vs-2 gap") {
  OVInstance inst;
  inst.dim = 3;
  inst.U = {{0, 1, 1}, {1, 0, 0}};
  inst.W = {{1, 0, 1}, {0, 1, 0}};
  const ReducedInstance out = ov_to_closest_pair_linf(inst);
  REQUIRE(out.points.size() == 4);
  CHECK(out.points.metric() == Metric::linf());

  // u rows become 0/2, w rows become 1/-1.
  const std::vector<double> want0 = {0, 2, 2};
  const std::vector<double> want2 = {-1, 1, -1};
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(out.points[0][k] == want0[k]);
    CHECK(out.points[2][k] == want2[k]);
  }

  // Crossing distances: 1 when orthogonal, 3 when a shared coordinate exists.
  auto cross = [&](std::size_t u, std::size_t w) {
    return distance(out.points[u], out.points[2 + w], Metric::linf());
  };
  CHECK(cross(0, 0) == 3.0);  // share coordinate 2
  CHECK(cross(0, 1) == 3.0);  // share coordinate 1
  CHECK(cross(1, 0) == 3.0);  // share coordinate 0
  CHECK(cross(1, 1) == 1.0);  // orthogonal
  // Distinct same-class rows always land at distance 2.
  CHECK(distance(out.points[0], out.points[1], Metric::linf()) == 2.0);
  CHECK(distance(out.points[2], out.points[3], Metric::linf()) == 2.0);

  CHECK(out.certificate.kind == "ov_to_closest_pair_linf");
  CHECK(out.certificate.gap_low == 1.0);
  CHECK(out.certificate.gap_high == 2.0);
  CHECK(out.certificate.notes.find("orthogonal pair exists iff") != std::string::npos);
  CHECK(out.certificate.mapping.size() == 4);
  CHECK(out.certificate.mapping[3].cls == 'W');
  CHECK(out.certificate.mapping[3].input_index == 1);
}

TEST_CASE("max-norm embedding separates yes from no across random instances") {
  SplitMix64 rng(202);
  std::size_t yes = 0, no = 0;
  for (int rep = 0; rep < 60; ++rep) {
    CAPTURE(rep);
    OVInstance inst;
    inst.dim = 6 + rng.next_below(6);
    inst.U = rand_rows(rng, 3 + rng.next_below(12), inst.dim, 4);
    inst.W = rand_rows(rng, 3 + rng.next_below(12), inst.dim, 4);
    const DedupeResult clean = dedupe(inst);
    const ReducedInstance out = ov_to_closest_pair_linf(clean.instance);
    const double min_dist = closest_pair_bruteforce(out.points).distance;
    const bool has_orth = ov_bruteforce(clean.instance).has_value();
    if (has_orth) {
      CHECK(min_dist == out.certificate.gap_low);
      ++yes;
    } else {
      CHECK(min_dist >= out.certificate.gap_high);
      ++no;
    }
  }
  CHECK(yes >= 5);
  CHECK(no >= 5);
}

TEST_CASE("max-norm embedding refuses duplicate rows") {
  OVInstance inst;
  inst.dim = 2;
  inst.U = {{1, 0}, {1, 0}};
  inst.W = {{0, 1}};
  CHECK_THROWS_WITH_AS(ov_to_closest_pair_linf(inst), doctest::Contains("run dedupe first"),
                       error);
}

// ---------------------------------------------------------------------------
// Bichromatic-to-monochromatic gadget attachment.

TEST_CASE("gadget attachment: single pair matches the sizing formula") {
  const double p = 3.0;
  const Metric m = Metric::lp(p);
  BCPInstance inst{PointSet(2, m), PointSet(2, m)};
  const Point r = {1.0, 2.0}, b = {4.0, 6.0};
  inst.red.add(r);
  inst.blue.add(b);
  const PolarPair gadget = lp_high_code(4, p, CodeBackend::hadamard);

  const ReducedInstance out = bcp_to_closest_pair(inst, gadget);
  REQUIRE(out.points.size() == 2);
  CHECK(out.points.dim() == 2 + gadget.dim());

  const double dpow = distance_pow_p(r, b, p);  // 27 + 64 = 91
  const double ip = std::pow(gadget.inner_floor, p);
  const double cp = std::pow(gadget.crossing_distance, p);
  const double lambda = std::pow(2.0 * dpow / (ip - cp), 1.0 / p);
  CHECK(out.certificate.scale == doctest::Approx(lambda).epsilon(1e-12));
  CHECK(out.certificate.gap_high ==
        doctest::Approx(out.certificate.scale * gadget.inner_floor).epsilon(1e-15));

  const double got_pow = distance_pow_p(out.points[0], out.points[1], p);
  CHECK(got_pow == doctest::Approx(dpow + std::pow(lambda, p) * cp).epsilon(1e-12));
  CHECK(std::pow(got_pow, 1.0 / p) <= out.certificate.gap_low * (1 + 1e-12));
}

TEST_CASE("gadget attachment: monochromatic distances clear bichromatic ones") {
  SplitMix64 rng(203);
  const double p = 3.0;
  const Metric m = Metric::lp(p);
  const PolarPair gadget = lp_high_code(16, p, CodeBackend::hadamard);
  for (int rep = 0; rep < 30; ++rep) {
    CAPTURE(rep);
    BCPInstance inst{rand_set(rng, 6, 4, m, -2.0, 2.0), rand_set(rng, 9, 4, m, -2.0, 2.0)};
    const ReducedInstance out = bcp_to_closest_pair(inst, gadget);
    const SplitView v = split_by_class(out);
    REQUIRE(v.red.size() == 9);  // padded to the larger class
    REQUIRE(v.blue.size() == 9);

    double max_bi = 0.0, min_mono = std::numeric_limits<double>::infinity();
    for (std::size_t i : v.red)
      for (std::size_t j : v.blue)
        max_bi = std::max(max_bi, distance(out.points[i], out.points[j], m));
    auto scan_mono = [&](const std::vector<std::size_t>& side) {
      for (std::size_t a = 0; a < side.size(); ++a)
        for (std::size_t b = a + 1; b < side.size(); ++b)
          min_mono =
              std::min(min_mono, distance(out.points[side[a]], out.points[side[b]], m));
    };
    scan_mono(v.red);
    scan_mono(v.blue);

    CHECK(max_bi <= out.certificate.gap_low * (1 + 1e-9));
    CHECK(min_mono >= out.certificate.gap_high * (1 - 1e-9));
    CHECK(out.certificate.gap_low < out.certificate.gap_high);
    CHECK(min_mono > max_bi);
  }
}

TEST_CASE("gadget attachment preserves the bichromatic argmin exactly") {
  SplitMix64 rng(204);
  const double p = 3.0;
  const Metric m = Metric::lp(p);
  const PolarPair gadget = lp_high_code(16, p, CodeBackend::hadamard);
  for (int rep = 0; rep < 25; ++rep) {
    CAPTURE(rep);
    const std::size_t nr = 3 + rng.next_below(10);
    const std::size_t nb = 3 + rng.next_below(10);
    BCPInstance inst{rand_set(rng, nr, 5, m, -1.0, 1.0), rand_set(rng, nb, 5, m, -1.0, 1.0)};
    const PairResult want = bcp_bruteforce(inst);

    const ReducedInstance out = bcp_to_closest_pair(inst, gadget);
    const PairResult cp = closest_pair_bruteforce(out.points);
    const MappingEntry& mi = out.certificate.mapping[cp.i];
    const MappingEntry& mj = out.certificate.mapping[cp.j];
    REQUIRE(mi.cls != mj.cls);  // the closest output pair must be bichromatic
    CHECK_FALSE(mi.dummy);
    CHECK_FALSE(mj.dummy);
    const std::size_t got_red = mi.cls == 'R' ? mi.input_index : mj.input_index;
    const std::size_t got_blue = mi.cls == 'B' ? mi.input_index : mj.input_index;
    CHECK(got_red == want.i);
    CHECK(got_blue == want.j - inst.red.size());
  }
}

TEST_CASE("gadget attachment with the Euclidean gadget") {
  SplitMix64 rng(205);
  const Metric m = Metric::l2();
  const PolarPair gadget = l2_simplex(8);
  BCPInstance inst{rand_set(rng, 5, 3, m, -1.0, 1.0), rand_set(rng, 7, 3, m, -1.0, 1.0)};
  const PairResult want = bcp_bruteforce(inst);

  const ReducedInstance out = bcp_to_closest_pair(inst, gadget);
  const PairResult cp = closest_pair_bruteforce(out.points);
  const MappingEntry& mi = out.certificate.mapping[cp.i];
  const MappingEntry& mj = out.certificate.mapping[cp.j];
  REQUIRE(mi.cls != mj.cls);
  const std::size_t got_red = mi.cls == 'R' ? mi.input_index : mj.input_index;
  const std::size_t got_blue = mi.cls == 'B' ? mi.input_index : mj.input_index;
  CHECK(got_red == want.i);
  CHECK(got_blue == want.j - inst.red.size());
}

TEST_CASE("gadget attachment pads the smaller class with inert dummies") {
  const double p = 3.0;
  const Metric m = Metric::lp(p);
  SplitMix64 rng(206);
  BCPInstance inst{rand_set(rng, 2, 3, m, -1.0, 1.0), rand_set(rng, 5, 3, m, -1.0, 1.0)};
  const PolarPair gadget = lp_high_code(8, p, CodeBackend::hadamard);
  const ReducedInstance out = bcp_to_closest_pair(inst, gadget);

  CHECK(out.points.size() == 10);
  CHECK(out.certificate.notes.find("padded 3 dummy point(s) onto the red") !=
        std::string::npos);
  std::size_t dummies = 0;
  for (const MappingEntry& e : out.certificate.mapping)
    if (e.dummy) {
      ++dummies;
      CHECK(e.cls == 'R');
      CHECK(e.input_index >= inst.red.size());
    }
  CHECK(dummies == 3);

  // The argmin is still a real pair.
  const PairResult cp = closest_pair_bruteforce(out.points);
  CHECK_FALSE(out.certificate.mapping[cp.i].dummy);
  CHECK_FALSE(out.certificate.mapping[cp.j].dummy);
  CHECK(out.certificate.mapping[cp.i].cls != out.certificate.mapping[cp.j].cls);
}

TEST_CASE("gadget attachment with coincident classes defaults the scale") {
  const double p = 3.0;
  const Metric m = Metric::lp(p);
  BCPInstance inst{PointSet(2, m), PointSet(2, m)};
  const Point a = {1.0, 1.0};
  inst.red.add(a);
  inst.blue.add(a);
  const PolarPair gadget = lp_high_code(4, p, CodeBackend::hadamard);
  const ReducedInstance out = bcp_to_closest_pair(inst, gadget);
  CHECK(out.certificate.scale == 1.0);
  CHECK(out.certificate.notes.find("lambda defaulted to 1") != std::string::npos);
  // The only bichromatic pair sits at exactly the gadget crossing distance.
  const double d = distance(out.points[0], out.points[1], m);
  CHECK(d == doctest::Approx(gadget.crossing_distance).epsilon(1e-12));
  CHECK(d <= out.certificate.gap_low * (1 + 1e-12));
}

TEST_CASE("gadget attachment range-bound mode never undersizes the scale") {
  SplitMix64 rng(207);
  const double p = 3.0;
  const Metric m = Metric::lp(p);
  const PolarPair gadget = lp_high_code(8, p, CodeBackend::hadamard);
  for (int rep = 0; rep < 10; ++rep) {
    CAPTURE(rep);
    BCPInstance inst{rand_set(rng, 5, 4, m, -2.0, 2.0), rand_set(rng, 6, 4, m, -2.0, 2.0)};
    const ReducedInstance exact = bcp_to_closest_pair(inst, gadget, false);
    const ReducedInstance fast = bcp_to_closest_pair(inst, gadget, true);
    CHECK(fast.certificate.scale >= exact.certificate.scale);
    CHECK(fast.certificate.notes.find("per-coordinate range bound") != std::string::npos);
    CHECK(exact.certificate.notes.find("exact bichromatic scan") != std::string::npos);

    // The looser bound still separates: rerun the mono/bi scan.
    const SplitView v = split_by_class(fast);
    double max_bi = 0.0, min_mono = std::numeric_limits<double>::infinity();
    for (std::size_t i : v.red)
      for (std::size_t j : v.blue)
        max_bi = std::max(max_bi, distance(fast.points[i], fast.points[j], m));
    for (const auto* side : {&v.red, &v.blue})
      for (std::size_t a = 0; a < side->size(); ++a)
        for (std::size_t b = a + 1; b < side->size(); ++b)
          min_mono =
              std::min(min_mono, distance(fast.points[(*side)[a]], fast.points[(*side)[b]], m));
    CHECK(min_mono > max_bi);
  }
}

TEST_CASE("gadget attachment validates instance and gadget") {
  const double p = 3.0;
  const Metric m = Metric::lp(p);
  const PolarPair gadget = lp_high_code(4, p, CodeBackend::hadamard);
  const Point a = {0.0, 0.0};

  BCPInstance empty{PointSet(2, m), PointSet(2, m)};
  empty.red.add(a);
  CHECK_THROWS_WITH_AS(bcp_to_closest_pair(empty, gadget), doctest::Contains("nonempty"),
                       error);

  BCPInstance linf{PointSet(2, Metric::linf()), PointSet(2, Metric::linf())};
  linf.red.add(a);
  linf.blue.add(a);
  CHECK_THROWS_WITH_AS(bcp_to_closest_pair(linf, gadget), doctest::Contains("finite-p"), error);

  BCPInstance l0{PointSet(2, Metric::l0()), PointSet(2, Metric::l0())};
  l0.red.add(a);
  l0.blue.add(a);
  CHECK_THROWS_WITH_AS(bcp_to_closest_pair(l0, gadget), doctest::Contains("finite-p"), error);

  BCPInstance okay{PointSet(2, m), PointSet(2, m)};
  okay.red.add(a);
  okay.blue.add(a);
  const PolarPair wrong_metric = l2_simplex(4);
  CHECK_THROWS_WITH_AS(bcp_to_closest_pair(okay, wrong_metric),
                       doctest::Contains("gadget metric"), error);

  PolarPair flat = gadget;
  flat.inner_floor = flat.crossing_distance;
  CHECK_THROWS_WITH_AS(bcp_to_closest_pair(okay, flat), doctest::Contains("not strict"),
                       error);

  BCPInstance wide{PointSet(1, m), PointSet(1, m)};
  const Point one = {0.0};
  for (int i = 0; i < 6; ++i) wide.red.add(one);
  wide.blue.add(one);
  CHECK_THROWS_WITH_AS(bcp_to_closest_pair(wide, gadget), doctest::Contains("gadget too small"),
                       error);
}
