// Tests for the point-set file format: bit-exact coordinate round trips,
// header parsing and its error messages, the typed conversions (polar pair,
// code, reduction certificate, verification report), and the 0/1 OV format.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "core/codes.hpp"
#include "core/constructions.hpp"
#include "core/error.hpp"
#include "core/io.hpp"
#include "core/metrics.hpp"
#include "core/reductions.hpp"
#include "core/verify.hpp"

using namespace polar;
namespace fs = std::filesystem;

namespace {

std::string tmp_path(const std::string& name) {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "polarpair-io-tests";
    fs::create_directories(d);
    return d;
  }();
  return (dir / name).string();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// File contents with '#' comment lines removed; two writes of the same data
// must agree byte-for-byte on everything else (the timestamp is a comment).
std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string out, line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    out += line;
    out += '\n';
  }
  return out;
}

bool bits_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!bits_equal(a[i], b[i])) return false;
  return true;
}

// A minimal well-formed file; error cases below are single-line mutations.
const char* kGoodFile =
    "polarpair-file 1\n"
    "annotation pointset\n"
    "metric lp 2\n"
    "dim 2\n"
    "count 1\n"
    "points\n"
    "U 1 2\n"
    "end\n";

}  // namespace

TEST_CASE("format_double and parse_double round-trip every bit pattern tried") {
  const double nasty[] = {
      0.0,
      -0.0,
      1.0 / 3.0,
      0.1,
      3.141592653589793,
      1e22,
      -1e-300,
      5e-324,                                  // smallest subnormal
      std::numeric_limits<double>::denorm_min(),
      std::numeric_limits<double>::min(),      // smallest normal
      std::numeric_limits<double>::max(),
      std::numeric_limits<double>::lowest(),
      std::nextafter(1.0, 2.0),
      std::nextafter(2.0, 1.0),
      -6.02214076e23,
  };
  for (double v : nasty) {
    const std::string s = format_double(v);
    CAPTURE(s);
    CHECK(bits_equal(parse_double(s), v));
  }
  // The sign of zero survives the text form.
  CHECK(std::signbit(parse_double(format_double(-0.0))));
  CHECK_FALSE(std::signbit(parse_double(format_double(0.0))));
}

TEST_CASE("point-set files round-trip coordinates bit-exactly with all metadata") {
  const double pool[] = {
      -0.0,
      5e-324,
      std::numeric_limits<double>::max(),
      -std::numeric_limits<double>::min(),
      0.1,
      1.0 / 3.0,
      -7.25,
      1e-17,
      3.141592653589793,
      std::nextafter(1.0, 2.0),
      -1e300,
      6.02214076e23,
  };
  PointSet ps(4, Metric::lp(1.5));
  for (std::size_t r = 0; r < 12; ++r) {
    Point p(4);
    for (std::size_t c = 0; c < 4; ++c) p[c] = pool[(r * 5 + c * 3) % 12];
    ps.add(p);
  }

  PointSetFileData data;
  data.points = std::move(ps);
  data.sides.assign(12, 'U');
  data.sides[0] = 'A';
  data.sides[1] = 'B';
  data.provenance = "unit-test fixture";
  data.notes = {"alpha note", "beta note"};
  data.fields = {{"answer", "42"}, {"ratio", "0.5"}};
  data.mapping = {{0, 'R', 3, false}, {1, 'B', 7, true}};

  const std::string path = tmp_path("roundtrip.psf");
  write_point_set_file(path, data);
  const PointSetFileData back = read_point_set_file(path);

  CHECK(back.annotation == "pointset");
  CHECK(back.points.size() == 12);
  CHECK(back.points.dim() == 4);
  CHECK(back.points.metric().describe() == "lp 1.5");
  CHECK(bits_equal(back.points.raw(), data.points.raw()));
  CHECK(back.sides == data.sides);
  CHECK(back.provenance == data.provenance);
  CHECK(back.notes == data.notes);
  CHECK(back.fields == data.fields);
  REQUIRE(back.mapping.size() == 2);
  CHECK(back.mapping[0].output_index == 0);
  CHECK(back.mapping[0].cls == 'R');
  CHECK(back.mapping[0].input_index == 3);
  CHECK_FALSE(back.mapping[0].dummy);
  CHECK(back.mapping[1].output_index == 1);
  CHECK(back.mapping[1].cls == 'B');
  CHECK(back.mapping[1].input_index == 7);
  CHECK(back.mapping[1].dummy);

  // Re-writing the reloaded data reproduces the file byte-for-byte outside of
  // '#' comment lines (the write timestamp lives in a comment).
  const std::string path2 = tmp_path("roundtrip2.psf");
  write_point_set_file(path2, back);
  CHECK(strip_comments(read_text(path)) == strip_comments(read_text(path2)));
}

TEST_CASE("reader tolerates comments, blank lines, and reordered header keys") {
  const std::string path = tmp_path("tolerant.psf");
  write_text(path,
             "polarpair-file 1\n"
             "# a comment\n"
             "\n"
             "metric lp 2.5\n"
             "count 2\n"
             "annotation code\n"
             "dim 3\n"
             "note spaced out   note\n"
             "points\n"
             "# interleaved comment\n"
             "A 1 -1 1\n"
             "B -1 1 -0.0\n"
             "end\n");
  const PointSetFileData data = read_point_set_file(path);
  CHECK(data.annotation == "code");
  CHECK(data.points.metric().describe() == "lp 2.5");
  CHECK(data.points.size() == 2);
  CHECK(data.points.dim() == 3);
  REQUIRE(data.notes.size() == 1);
  CHECK(data.notes[0] == "spaced out   note");
  CHECK(data.sides == std::vector<char>{'A', 'B'});
  CHECK(bits_equal(data.points[1][2], -0.0));
}

TEST_CASE("parse errors name the file, line, and offending token") {
  struct Case {
    const char* name;
    std::string content;
    const char* expect;
  };
  auto mutate = [](const std::string& from, const std::string& to) {
    std::string s = kGoodFile;
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    s.replace(pos, from.size(), to);
    return s;
  };
  const Case cases[] = {
      {"bad-tag", mutate("polarpair-file 1", "florp 1"),
       "not a point-set file (bad format tag)"},
      {"bad-version", mutate("polarpair-file 1", "polarpair-file 9"),
       "unsupported format version"},
      {"no-metric", mutate("metric lp 2\n", ""), "missing metric line"},
      {"no-dim", mutate("dim 2\n", ""), "missing dim line"},
      {"no-count", mutate("count 1\n", ""), "missing count line"},
      {"metric-lp-bare", mutate("metric lp 2", "metric lp"),
       "metric lp needs a p value"},
      {"metric-unknown", mutate("metric lp 2", "metric manhattan"),
       "unknown metric 'manhattan'"},
      {"dim-not-int", mutate("dim 2", "dim x"),
       "expected a non-negative integer"},
      {"dim-negative", mutate("dim 2", "dim -3"),
       "expected a non-negative integer"},
      {"unknown-key", mutate("dim 2\n", "dim 2\nflavor spicy\n"),
       "unknown header key 'flavor'"},
      {"field-unnamed", mutate("dim 2\n", "dim 2\nfield\n"),
       "field line without a name"},
      {"mapping-short", mutate("dim 2\n", "dim 2\nmapping 0 R\n"),
       "mapping line needs: output class input dummy"},
      {"bad-side", mutate("U 1 2", "C 1 2"),
       "point line must start with side A, B, or U"},
      {"too-few-coords", mutate("U 1 2", "U 1"), "fewer than"},
      {"too-many-coords", mutate("U 1 2", "U 1 2 3"), "more than"},
      {"bad-coordinate", mutate("U 1 2", "U 1 zebra"), "bad coordinate 'zebra'"},
      {"no-end", mutate("U 1 2\nend\n", "U 1 2\nstuff\n"),
       "expected 'end' after the points block"},
      {"trailing", mutate("end\n", "end\njunk\n"),
       "trailing content after 'end'"},
      {"truncated", mutate("U 1 2\nend\n", ""), "unexpected end of file"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const std::string path = tmp_path(std::string("bad-") + c.name + ".psf");
    write_text(path, c.content);
    CHECK_THROWS_WITH_AS(read_point_set_file(path), doctest::Contains(c.expect),
                         error);
    try {
      read_point_set_file(path);
    } catch (const error& e) {
      CHECK(e.code() == errc::parse_error);
      CHECK(std::string(e.what()).find(path) != std::string::npos);
    }
  }
}

TEST_CASE("missing and unopenable paths raise io errors, not parse errors") {
  const std::string missing = tmp_path("does-not-exist.psf");
  fs::remove(missing);
  CHECK_THROWS_WITH_AS(read_point_set_file(missing),
                       doctest::Contains("cannot open"), error);
  try {
    read_point_set_file(missing);
  } catch (const error& e) {
    CHECK(e.code() == errc::io_error);
  }

  // A path that routes through a regular file cannot be created.
  const std::string blocker = tmp_path("blocker");
  write_text(blocker, "x");
  PointSetFileData data;
  data.points = PointSet(1, Metric::l2());
  const Point p{1.0};
  data.points.add(p);
  data.sides = {'U'};
  CHECK_THROWS_WITH_AS(write_point_set_file(blocker + "/child.psf", data),
                       doctest::Contains("for writing"), error);
  CHECK_THROWS_WITH_AS(
      write_point_set_file(blocker + "/child.psf", data),
      doctest::Contains("cannot open"), error);
}

TEST_CASE("writer rejects a side column that does not match the point count") {
  PointSetFileData data;
  data.points = PointSet(1, Metric::l2());
  const Point p{1.0};
  data.points.add(p);
  data.sides = {'U', 'U'};
  CHECK_THROWS_WITH_AS(write_point_set_file(tmp_path("mismatch.psf"), data),
                       doctest::Contains("side column"), error);
}

TEST_CASE("polar pairs survive the file format with certificates intact") {
  const PolarPair pp = lp_high_code(8, 3.0, CodeBackend::hadamard);
  const std::string path = tmp_path("pair.psf");
  write_point_set_file(path, to_file_data(pp));
  const PointSetFileData data = read_point_set_file(path);
  CHECK(data.annotation == "polar-pair");

  const PolarPair back = polar_pair_from_file(data);
  CHECK(back.A.size() == pp.A.size());
  CHECK(back.B.size() == pp.B.size());
  CHECK(bits_equal(back.A.raw(), pp.A.raw()));
  CHECK(bits_equal(back.B.raw(), pp.B.raw()));
  CHECK(bits_equal(back.crossing_distance, pp.crossing_distance));
  CHECK(bits_equal(back.inner_floor, pp.inner_floor));
  REQUIRE(back.crossing_pow.has_value());
  REQUIRE(back.inner_floor_pow.has_value());
  CHECK(bits_equal(*back.crossing_pow, *pp.crossing_pow));
  CHECK(bits_equal(*back.inner_floor_pow, *pp.inner_floor_pow));
  CHECK(back.provenance == pp.provenance);
  CHECK(back.notes == pp.notes);
  CHECK(back.notes.find("min_distance=4") != std::string::npos);
  CHECK(check_polar(back).pass);
}

TEST_CASE("L0 polar pairs reload with exact integer certificates") {
  const PolarPair pp = l0_arbitrary(5);
  const std::string path = tmp_path("pair-l0.psf");
  write_point_set_file(path, to_file_data(pp));
  const PolarPair back = polar_pair_from_file(read_point_set_file(path));
  CHECK(back.metric.describe() == "l0");
  CHECK(bits_equal(back.A.raw(), pp.A.raw()));
  CHECK(bits_equal(back.B.raw(), pp.B.raw()));
  CHECK(back.crossing_distance == 4.0);
  CHECK(back.inner_floor == 5.0);
  CHECK(back.crossing_pow.has_value() == pp.crossing_pow.has_value());
  CHECK(back.inner_floor_pow.has_value() == pp.inner_floor_pow.has_value());
  CHECK(check_polar(back).pass);
}

TEST_CASE("polar-pair extraction rejects wrong annotations, sides, and gaps") {
  const PolarPair pp = l0_arbitrary(3);

  PointSetFileData plain = to_file_data(pp.A);
  CHECK_THROWS_WITH_AS(polar_pair_from_file(plain),
                       doctest::Contains("expected a polar-pair annotation"),
                       error);
  CHECK_THROWS_WITH_AS(polar_pair_from_file(plain),
                       doctest::Contains("found 'pointset'"), error);

  PointSetFileData bad_side = to_file_data(pp);
  bad_side.sides[0] = 'U';
  CHECK_THROWS_WITH_AS(polar_pair_from_file(bad_side),
                       doctest::Contains("must be on side A or B"), error);

  PointSetFileData no_field = to_file_data(pp);
  std::erase_if(no_field.fields,
                [](const auto& kv) { return kv.first == "crossing_distance"; });
  CHECK_THROWS_WITH_AS(
      polar_pair_from_file(no_field),
      doctest::Contains("missing required field 'crossing_distance'"), error);
}

TEST_CASE("binary codes survive the file format with their certificates") {
  const BinaryCode code = hadamard_code(3);
  const std::string path = tmp_path("code.psf");
  write_point_set_file(path, to_file_data(code));
  const PointSetFileData data = read_point_set_file(path);
  CHECK(data.annotation == "code");

  const BinaryCode back = code_from_file(data);
  CHECK(back.size() == code.size());
  CHECK(back.length == code.length);
  CHECK(back.words == code.words);
  CHECK(back.min_distance == 4);
  CHECK(back.design_distance == code.design_distance);
  CHECK(back.exhaustive == code.exhaustive);
  CHECK(back.distinct == code.distinct);
  CHECK(back.provenance == code.provenance);
}

TEST_CASE("code extraction rejects entries outside the sign alphabet") {
  PointSetFileData data = to_file_data(hadamard_code(2));
  PointSet tweaked(data.points.dim(), data.points.metric());
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    Point p = data.points.point(i);
    if (i == 1) p[2] = 0.5;
    tweaked.add(p);
  }
  data.points = std::move(tweaked);
  CHECK_THROWS_WITH_AS(code_from_file(data),
                       doctest::Contains("code entries must be +1 or -1, got 0.5"),
                       error);

  const PolarPair pp = l0_arbitrary(3);
  CHECK_THROWS_WITH_AS(code_from_file(to_file_data(pp)),
                       doctest::Contains("expected a code annotation"), error);
}

TEST_CASE("reduction outputs survive the file format with mapping and gaps") {
  PointSet red(2, Metric::lp(3.0));
  PointSet blue(2, Metric::lp(3.0));
  const Point r0{0.0, 1.0}, r1{2.0, 2.0}, b0{4.0, 0.0}, b1{6.0, 1.0}, b2{5.0, 5.0};
  red.add(r0);
  red.add(r1);
  blue.add(b0);
  blue.add(b1);
  blue.add(b2);
  const PolarPair gadget = lp_high_code(4, 3.0, CodeBackend::hadamard);
  const ReducedInstance out = bcp_to_closest_pair({red, blue}, gadget);

  const std::string path = tmp_path("reduced.psf");
  write_point_set_file(path, to_file_data(out));
  const PointSetFileData data = read_point_set_file(path);
  CHECK(data.annotation == "reduced");

  const ReductionCertificate cert = certificate_from_file(data);
  CHECK(cert.kind == out.certificate.kind);
  CHECK(bits_equal(cert.scale, out.certificate.scale));
  CHECK(bits_equal(cert.gap_low, out.certificate.gap_low));
  CHECK(bits_equal(cert.gap_high, out.certificate.gap_high));
  CHECK(cert.notes == out.certificate.notes);
  REQUIRE(cert.mapping.size() == out.certificate.mapping.size());
  for (std::size_t i = 0; i < cert.mapping.size(); ++i) {
    CAPTURE(i);
    CHECK(cert.mapping[i].output_index == out.certificate.mapping[i].output_index);
    CHECK(cert.mapping[i].cls == out.certificate.mapping[i].cls);
    CHECK(cert.mapping[i].input_index == out.certificate.mapping[i].input_index);
    CHECK(cert.mapping[i].dummy == out.certificate.mapping[i].dummy);
  }
  CHECK(bits_equal(data.points.raw(), out.points.raw()));

  PointSetFileData no_kind = data;
  std::erase_if(no_kind.fields,
                [](const auto& kv) { return kv.first == "kind"; });
  CHECK_THROWS_WITH_AS(certificate_from_file(no_kind),
                       doctest::Contains("missing required field 'kind'"), error);
  CHECK_THROWS_WITH_AS(certificate_from_file(to_file_data(red)),
                       doctest::Contains("expected a reduced annotation"), error);
}

TEST_CASE("embedded verification reports expose every certificate figure") {
  const PolarPair pp = l0_arbitrary(6);
  const VerificationReport report = check_polar(pp);
  PointSetFileData data = to_file_data(pp);
  embed_report(data, report);

  auto field = [&](const std::string& key) -> std::string {
    for (const auto& [k, v] : data.fields)
      if (k == key) return v;
    CAPTURE(key);
    FAIL("missing report field");
    return {};
  };
  CHECK(field("report.pass") == "1");
  CHECK(bits_equal(parse_double(field("report.min_inner")), report.min_inner));
  CHECK(bits_equal(parse_double(field("report.max_inner")), report.max_inner));
  CHECK(bits_equal(parse_double(field("report.min_cross")), report.min_cross));
  CHECK(bits_equal(parse_double(field("report.max_cross")), report.max_cross));
  CHECK(bits_equal(parse_double(field("report.margin")), report.margin));
  CHECK(field("report.equal_cross") == "1");

  // The embedded fields survive a disk round trip like any others.
  const std::string path = tmp_path("reported.psf");
  write_point_set_file(path, data);
  const PointSetFileData back = read_point_set_file(path);
  CHECK(back.fields == data.fields);
}

TEST_CASE("orthogonality instances round-trip through the 0/1 format") {
  OVInstance inst;
  inst.dim = 5;
  inst.U = {{1, 0, 1, 1, 0}, {0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}};
  inst.W = {{0, 1, 0, 0, 1}, {1, 0, 1, 0, 1}};
  const std::string path = tmp_path("inst.ov");
  write_ov_file(path, inst);
  const OVInstance back = read_ov_file(path);
  CHECK(back.dim == 5);
  CHECK(back.U == inst.U);
  CHECK(back.W == inst.W);
}

TEST_CASE("the 0/1 reader tolerates CRLF endings and an empty W block") {
  const std::string path = tmp_path("crlf.ov");
  write_text(path, "101\r\n110\r\n\r\n011\r\n");
  const OVInstance inst = read_ov_file(path);
  CHECK(inst.dim == 3);
  CHECK(inst.U == std::vector<std::vector<std::uint8_t>>{{1, 0, 1}, {1, 1, 0}});
  CHECK(inst.W == std::vector<std::vector<std::uint8_t>>{{0, 1, 1}});

  const std::string empty_w = tmp_path("empty-w.ov");
  write_text(empty_w, "11\n\n");
  const OVInstance ew = read_ov_file(empty_w);
  CHECK(ew.U.size() == 1);
  CHECK(ew.W.empty());
}

TEST_CASE("the 0/1 reader rejects malformed instances with precise messages") {
  struct Case {
    const char* name;
    const char* content;
    const char* expect;
  };
  const Case cases[] = {
      {"bad-char", "101\n1x1\n\n111\n", "invalid character 'x' in a 0/1 row"},
      {"ragged", "10\n101\n\n11\n",
       "row length 3 does not match the instance dimension 2"},
      {"ragged-w", "10\n11\n\n101\n",
       "row length 3 does not match the instance dimension 2"},
      {"no-separator", "10\n11\n", "missing the blank line separating U from W"},
      {"third-block", "11\n\n10\n\n01\n", "rows after the end of the W block"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const std::string path = tmp_path(std::string("bad-") + c.name + ".ov");
    write_text(path, c.content);
    CHECK_THROWS_WITH_AS(read_ov_file(path), doctest::Contains(c.expect), error);
  }
  CHECK_THROWS_WITH_AS(read_ov_file(tmp_path("missing.ov")),
                       doctest::Contains("cannot open"), error);
}
