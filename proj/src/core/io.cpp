#include "core/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

namespace polar {

namespace {

constexpr const char* kFormatTag = "polarpair-file";
constexpr int kFormatVersion = 1;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
  fail(errc::parse_error, path + ":" + std::to_string(line) + ": " + what);
}

std::size_t parse_size(const std::string& tok, const std::string& path, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    parse_fail(path, line, "expected a non-negative integer, got '" + tok + "'");
  return value;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  require(ec == std::errc{}, errc::internal_error, "double rendering failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& token) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  require(ec == std::errc{} && ptr == token.data() + token.size(), errc::parse_error,
          "expected a real number, got '" + token + "'");
  return value;
}

void write_point_set_file(const std::string& path, const PointSetFileData& data) {
  require(data.sides.size() == data.points.size(), errc::invalid_argument,
          "side column size does not match the point count");
  std::ofstream out(path);
  require(out.good(), errc::io_error, "cannot open '" + path + "' for writing");

  out << kFormatTag << ' ' << kFormatVersion << '\n';
  out << "# written " << iso_timestamp() << '\n';
  out << "annotation " << data.annotation << '\n';
  out << "metric " << data.points.metric().describe() << '\n';
  out << "dim " << data.points.dim() << '\n';
  out << "count " << data.points.size() << '\n';
  if (!data.provenance.empty()) out << "provenance " << data.provenance << '\n';
  for (const auto& n : data.notes) out << "note " << n << '\n';
  for (const auto& [k, v] : data.fields) out << "field " << k << ' ' << v << '\n';
  for (const auto& me : data.mapping)
    out << "mapping " << me.output_index << ' ' << me.cls << ' ' << me.input_index << ' '
        << (me.dummy ? 1 : 0) << '\n';
  out << "points\n";
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    out << data.sides[i];
    for (double c : data.points[i]) out << ' ' << format_double(c);
    out << '\n';
  }
  out << "end\n";
  out.flush();
  require(out.good(), errc::io_error, "write to '" + path + "' failed");
}

PointSetFileData read_point_set_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_error, "cannot open '" + path + "' for reading");

  PointSetFileData data;
  data.annotation.clear();
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&](bool required) {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      return true;
    }
    if (required) parse_fail(path, lineno, "unexpected end of file");
    return false;
  };

  next_line(true);
  {
    std::istringstream ls(line);
    std::string tag;
    int version = 0;
    ls >> tag >> version;
    if (tag != kFormatTag) parse_fail(path, lineno, "not a point-set file (bad format tag)");
    if (version != kFormatVersion)
      parse_fail(path, lineno, "unsupported format version " + std::to_string(version));
  }

  bool have_metric = false, have_dim = false, have_count = false;
  Metric metric = Metric::l2();
  std::size_t dim = 0, count = 0;

  // Header block, terminated by the "points" line.
  for (;;) {
    next_line(true);
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "points") break;
    if (key == "annotation") {
      ls >> data.annotation;
    } else if (key == "metric") {
      std::string kind;
      ls >> kind;
      if (kind == "l0")
        metric = Metric::l0();
      else if (kind == "linf")
        metric = Metric::linf();
      else if (kind == "lp") {
        std::string ptok;
        ls >> ptok;
        if (ptok.empty()) parse_fail(path, lineno, "metric lp needs a p value");
        metric = Metric::lp(parse_double(ptok));
      } else
        parse_fail(path, lineno, "unknown metric '" + kind + "'");
      have_metric = true;
    } else if (key == "dim") {
      std::string tok;
      ls >> tok;
      dim = parse_size(tok, path, lineno);
      have_dim = true;
    } else if (key == "count") {
      std::string tok;
      ls >> tok;
      count = parse_size(tok, path, lineno);
      have_count = true;
    } else if (key == "provenance") {
      std::string rest;
      std::getline(ls, rest);
      data.provenance = rest.empty() ? rest : rest.substr(1);
    } else if (key == "note") {
      std::string rest;
      std::getline(ls, rest);
      data.notes.push_back(rest.empty() ? rest : rest.substr(1));
    } else if (key == "field") {
      std::string name, rest;
      ls >> name;
      if (name.empty()) parse_fail(path, lineno, "field line without a name");
      std::getline(ls, rest);
      data.fields.emplace_back(name, rest.empty() ? rest : rest.substr(1));
    } else if (key == "mapping") {
      std::string o, c, i, d;
      ls >> o >> c >> i >> d;
      if (c.size() != 1 || d.empty())
        parse_fail(path, lineno, "mapping line needs: output class input dummy");
      MappingEntry me;
      me.output_index = parse_size(o, path, lineno);
      me.cls = c[0];
      me.input_index = parse_size(i, path, lineno);
      me.dummy = parse_size(d, path, lineno) != 0;
      data.mapping.push_back(me);
    } else {
      parse_fail(path, lineno, "unknown header key '" + key + "'");
    }
  }

  if (!have_metric) parse_fail(path, lineno, "missing metric line");
  if (!have_dim) parse_fail(path, lineno, "missing dim line");
  if (!have_count) parse_fail(path, lineno, "missing count line");

  data.points = PointSet(dim, metric);
  data.points.reserve(count);
  std::vector<double> row(dim);
  for (std::size_t i = 0; i < count; ++i) {
    next_line(true);
    std::istringstream ls(line);
    std::string side;
    ls >> side;
    if (side.size() != 1 || (side[0] != 'A' && side[0] != 'B' && side[0] != 'U'))
      parse_fail(path, lineno, "point line must start with side A, B, or U");
    data.sides.push_back(side[0]);
    for (std::size_t k = 0; k < dim; ++k) {
      std::string tok;
      if (!(ls >> tok))
        parse_fail(path, lineno, "point has fewer than " + std::to_string(dim) + " coordinates");
      try {
        row[k] = parse_double(tok);
      } catch (const error&) {
        parse_fail(path, lineno, "bad coordinate '" + tok + "'");
      }
    }
    std::string extra;
    if (ls >> extra)
      parse_fail(path, lineno, "point has more than " + std::to_string(dim) + " coordinates");
    data.points.add(row);
  }

  next_line(true);
  if (line != "end") parse_fail(path, lineno, "expected 'end' after the points block");
  if (next_line(false)) parse_fail(path, lineno, "trailing content after 'end'");
  if (data.annotation.empty()) data.annotation = "pointset";
  return data;
}

namespace {

const std::string* find_field(const PointSetFileData& data, const std::string& key) {
  for (const auto& [k, v] : data.fields)
    if (k == key) return &v;
  return nullptr;
}

double required_field(const PointSetFileData& data, const std::string& key) {
  const std::string* v = find_field(data, key);
  require(v != nullptr, errc::parse_error, "missing required field '" + key + "'");
  return parse_double(*v);
}

std::string join_notes(const std::vector<std::string>& notes) {
  std::string out;
  for (const auto& n : notes) {
    if (!out.empty()) out += "; ";
    out += n;
  }
  return out;
}

}  // namespace

PointSetFileData to_file_data(const PolarPair& pp) {
  PointSetFileData data;
  data.annotation = "polar-pair";
  data.points = PointSet(pp.dim(), pp.metric);
  data.points.reserve(pp.n() * 2);
  for (std::size_t i = 0; i < pp.A.size(); ++i) {
    data.points.add(pp.A[i]);
    data.sides.push_back('A');
  }
  for (std::size_t i = 0; i < pp.B.size(); ++i) {
    data.points.add(pp.B[i]);
    data.sides.push_back('B');
  }
  data.provenance = pp.provenance;
  if (!pp.notes.empty()) data.notes.push_back(pp.notes);
  data.fields.emplace_back("crossing_distance", format_double(pp.crossing_distance));
  data.fields.emplace_back("inner_floor", format_double(pp.inner_floor));
  if (pp.crossing_pow) data.fields.emplace_back("crossing_pow", format_double(*pp.crossing_pow));
  if (pp.inner_floor_pow)
    data.fields.emplace_back("inner_floor_pow", format_double(*pp.inner_floor_pow));
  return data;
}

PolarPair polar_pair_from_file(const PointSetFileData& data) {
  require(data.annotation == "polar-pair", errc::parse_error,
          "expected a polar-pair annotation, found '" + data.annotation + "'");
  PolarPair pp;
  pp.metric = data.points.metric();
  pp.A = PointSet(data.points.dim(), pp.metric);
  pp.B = PointSet(data.points.dim(), pp.metric);
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    require(data.sides[i] == 'A' || data.sides[i] == 'B', errc::parse_error,
            "polar-pair points must be on side A or B");
    (data.sides[i] == 'A' ? pp.A : pp.B).add(data.points[i]);
  }
  pp.crossing_distance = required_field(data, "crossing_distance");
  pp.inner_floor = required_field(data, "inner_floor");
  if (const auto* v = find_field(data, "crossing_pow")) pp.crossing_pow = parse_double(*v);
  if (const auto* v = find_field(data, "inner_floor_pow")) pp.inner_floor_pow = parse_double(*v);
  pp.provenance = data.provenance;
  pp.notes = join_notes(data.notes);
  return pp;
}

PointSetFileData to_file_data(const PointSet& ps) {
  PointSetFileData data;
  data.annotation = "pointset";
  data.points = ps;
  data.sides.assign(ps.size(), 'U');
  return data;
}

PointSetFileData to_file_data(const BinaryCode& code) {
  PointSetFileData data;
  data.annotation = "code";
  data.points = PointSet(code.length, Metric::l0());
  data.points.reserve(code.size());
  std::vector<double> row(code.length);
  for (std::size_t i = 0; i < code.size(); ++i) {
    const std::int8_t* w = code.word(i);
    for (std::size_t k = 0; k < code.length; ++k) row[k] = static_cast<double>(w[k]);
    data.points.add(row);
    data.sides.push_back('U');
  }
  data.provenance = code.provenance;
  data.fields.emplace_back("min_distance", std::to_string(code.min_distance));
  data.fields.emplace_back("design_distance", std::to_string(code.design_distance));
  data.fields.emplace_back("exhaustive", code.exhaustive ? "1" : "0");
  data.fields.emplace_back("distinct", code.distinct ? "1" : "0");
  return data;
}

BinaryCode code_from_file(const PointSetFileData& data) {
  require(data.annotation == "code", errc::parse_error,
          "expected a code annotation, found '" + data.annotation + "'");
  BinaryCode code;
  code.length = data.points.dim();
  code.words.reserve(data.points.size() * code.length);
  for (std::size_t i = 0; i < data.points.size(); ++i)
    for (double v : data.points[i]) {
      require(v == 1.0 || v == -1.0, errc::parse_error,
              "code entries must be +1 or -1, got " + format_double(v));
      code.words.push_back(static_cast<std::int8_t>(v));
    }
  code.min_distance = static_cast<std::size_t>(required_field(data, "min_distance"));
  code.design_distance = static_cast<std::size_t>(required_field(data, "design_distance"));
  code.exhaustive = required_field(data, "exhaustive") != 0.0;
  code.distinct = required_field(data, "distinct") != 0.0;
  code.provenance = data.provenance;
  return code;
}

PointSetFileData to_file_data(const ReducedInstance& reduced) {
  PointSetFileData data;
  data.annotation = "reduced";
  data.points = reduced.points;
  data.sides.assign(reduced.points.size(), 'U');
  const ReductionCertificate& cert = reduced.certificate;
  if (!cert.notes.empty()) data.notes.push_back(cert.notes);
  data.fields.emplace_back("kind", cert.kind);
  data.fields.emplace_back("scale", format_double(cert.scale));
  data.fields.emplace_back("gap_low", format_double(cert.gap_low));
  data.fields.emplace_back("gap_high", format_double(cert.gap_high));
  data.mapping = cert.mapping;
  return data;
}

ReductionCertificate certificate_from_file(const PointSetFileData& data) {
  require(data.annotation == "reduced", errc::parse_error,
          "expected a reduced annotation, found '" + data.annotation + "'");
  ReductionCertificate cert;
  const std::string* kind = find_field(data, "kind");
  require(kind != nullptr, errc::parse_error, "missing required field 'kind'");
  cert.kind = *kind;
  cert.scale = required_field(data, "scale");
  cert.gap_low = required_field(data, "gap_low");
  cert.gap_high = required_field(data, "gap_high");
  cert.mapping = data.mapping;
  cert.notes = join_notes(data.notes);
  return cert;
}

void embed_report(PointSetFileData& data, const VerificationReport& report) {
  data.fields.emplace_back("report.pass", report.pass ? "1" : "0");
  data.fields.emplace_back("report.min_inner", format_double(report.min_inner));
  data.fields.emplace_back("report.max_inner", format_double(report.max_inner));
  data.fields.emplace_back("report.min_cross", format_double(report.min_cross));
  data.fields.emplace_back("report.max_cross", format_double(report.max_cross));
  data.fields.emplace_back("report.margin", format_double(report.margin));
  data.fields.emplace_back("report.equal_cross", report.equal_cross ? "1" : "0");
  if (!report.notes.empty()) data.fields.emplace_back("report.notes", report.notes);
}

void write_ov_file(const std::string& path, const OVInstance& inst) {
  std::ofstream out(path);
  require(out.good(), errc::io_error, "cannot open '" + path + "' for writing");
  auto emit = [&](const std::vector<std::vector<std::uint8_t>>& rows) {
    for (const auto& r : rows) {
      for (auto v : r) out << (v ? '1' : '0');
      out << '\n';
    }
  };
  emit(inst.U);
  out << '\n';
  emit(inst.W);
  out.flush();
  require(out.good(), errc::io_error, "write to '" + path + "' failed");
}

OVInstance read_ov_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_error, "cannot open '" + path + "' for reading");
  OVInstance inst;
  std::string line;
  std::size_t lineno = 0;
  bool in_w = false;
  bool w_done = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!in_w)
        in_w = true;  // the separator between U and W
      else
        w_done = true;  // trailing blanks allowed, rows after them are not
      continue;
    }
    if (w_done) parse_fail(path, lineno, "rows after the end of the W block");
    std::vector<std::uint8_t> row;
    row.reserve(line.size());
    for (char c : line) {
      if (c != '0' && c != '1')
        parse_fail(path, lineno, std::string("invalid character '") + c + "' in a 0/1 row");
      row.push_back(c == '1');
    }
    if (inst.dim == 0 && inst.U.empty() && inst.W.empty()) inst.dim = row.size();
    if (row.size() != inst.dim)
      parse_fail(path, lineno, "row length " + std::to_string(row.size()) +
                                   " does not match the instance dimension " +
                                   std::to_string(inst.dim));
    (in_w ? inst.W : inst.U).push_back(std::move(row));
  }
  require(in_w, errc::parse_error, path + ": missing the blank line separating U from W");
  return inst;
}

}  // namespace polar
