#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/codes.hpp"
#include "core/constructions.hpp"
#include "core/reductions.hpp"
#include "core/verify.hpp"

namespace polar {

// Round-trip-exact rendering of binary doubles (shortest form that parses back
// to the identical bits).
std::string format_double(double v);
double parse_double(const std::string& token);

// The on-disk point-set format: a text header (format tag, annotation, metric,
// dimension, count, provenance, free-form notes, key/value certificate fields,
// mapping lines) followed by one point per line with a leading side column
// (A/B/U) and round-trip-exact coordinates, closed by "end". Lines starting
// with '#' are comments; the writer emits the timestamp as one such line so
// byte comparisons can exclude it.
struct PointSetFileData {
  std::string annotation = "pointset";  // pointset | polar-pair | code | reduced
  PointSet points;
  std::vector<char> sides;  // one of 'A', 'B', 'U' per point
  std::string provenance;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<MappingEntry> mapping;
};

void write_point_set_file(const std::string& path, const PointSetFileData& data);
PointSetFileData read_point_set_file(const std::string& path);

// Conversions between domain objects and the generic file payload.
PointSetFileData to_file_data(const PolarPair& pp);
PolarPair polar_pair_from_file(const PointSetFileData& data);

PointSetFileData to_file_data(const PointSet& ps);

PointSetFileData to_file_data(const BinaryCode& code);
BinaryCode code_from_file(const PointSetFileData& data);

PointSetFileData to_file_data(const ReducedInstance& reduced);
ReductionCertificate certificate_from_file(const PointSetFileData& data);

// Attaches a verification report to a payload's metadata block.
void embed_report(PointSetFileData& data, const VerificationReport& report);

// OV instances: one 0/1 string per line, a blank line separating U from W.
void write_ov_file(const std::string& path, const OVInstance& inst);
OVInstance read_ov_file(const std::string& path);

}  // namespace polar
