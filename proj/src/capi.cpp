#include "polarpair.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "core/constructions.hpp"
#include "core/io.hpp"
#include "core/parallel.hpp"
#include "core/reductions.hpp"
#include "core/rng.hpp"
#include "core/solvers.hpp"
#include "core/verify.hpp"

namespace {

thread_local std::string g_last_error;

pp_status status_of(polar::errc code) {
  switch (code) {
    case polar::errc::invalid_argument:
      return PP_INVALID_ARGUMENT;
    case polar::errc::parse_error:
      return PP_PARSE_ERROR;
    case polar::errc::io_error:
      return PP_IO_ERROR;
    case polar::errc::construction_failure:
      return PP_CONSTRUCTION_FAILURE;
    case polar::errc::internal_error:
      return PP_INTERNAL_ERROR;
  }
  return PP_INTERNAL_ERROR;
}

// Runs fn, translating exceptions into status codes + pp_last_error. Every
// entry point goes through this so no exception crosses the C boundary.
template <typename Fn>
pp_status guarded(Fn&& fn) {
  try {
    fn();
    return PP_OK;
  } catch (const polar::error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PP_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PP_INTERNAL_ERROR;
  }
}

pp_status invalid(const char* msg) {
  g_last_error = msg;
  return PP_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct pp_pointset {
  polar::PointSetFileData data;
  std::string metric_cache;
};

struct pp_polar_pair {
  polar::PolarPair pair;
};

struct pp_ov {
  polar::OVInstance inst;
};

struct pp_reduced {
  polar::ReducedInstance reduced;
};

extern "C" {

const char* pp_version(void) { return "1.0.0"; }

const char* pp_last_error(void) { return g_last_error.c_str(); }

void pp_set_threads(int threads) { polar::set_thread_count(threads < 0 ? 0 : threads); }

pp_status pp_set_default_tolerance(double tol) {
  return guarded([&] { polar::set_default_tolerance(tol); });
}

/* ---- constructions ---- */

pp_status pp_generate(const char* construction, size_t n, double p, size_t d,
                      uint64_t seed, const char* backend, double delta,
                      pp_polar_pair** out) {
  if (!construction || !out) return invalid("construction and out must be non-NULL");
  *out = nullptr;
  return guarded([&] {
    const std::string name = construction;
    polar::PolarPair pair;
    if (name == "l0-arbitrary") {
      pair = polar::l0_arbitrary(n);
    } else if (name == "l0-binary") {
      pair = polar::l0_binary(n);
    } else if (name == "lp-mid") {
      pair = polar::lp_mid(n, p);
    } else if (name == "lp-random") {
      pair = polar::lp_high_random(n, p, d, seed);
    } else if (name == "lp-code") {
      polar::CodeBackend be = polar::CodeBackend::hadamard;
      if (backend && std::string(backend) == "rs-hadamard")
        be = polar::CodeBackend::rs_hadamard;
      else if (backend && std::string(backend) != "hadamard")
        polar::fail(polar::errc::invalid_argument,
                    "unknown backend '" + std::string(backend) +
                        "' (expected hadamard or rs-hadamard)");
      pair = polar::lp_high_code(n, p, be, delta == 0.0 ? 0.05 : delta);
    } else if (name == "l2-simplex") {
      pair = polar::l2_simplex(n);
    } else {
      polar::fail(polar::errc::invalid_argument,
                  "unknown construction '" + name +
                      "' (expected l0-arbitrary, l0-binary, lp-mid, lp-random, "
                      "lp-code, or l2-simplex)");
    }
    *out = new pp_polar_pair{std::move(pair)};
  });
}

void pp_polar_pair_free(pp_polar_pair* pair) { delete pair; }

size_t pp_polar_pair_n(const pp_polar_pair* pair) { return pair ? pair->pair.n() : 0; }

size_t pp_polar_pair_dim(const pp_polar_pair* pair) { return pair ? pair->pair.dim() : 0; }

pp_status pp_polar_pair_read(const char* path, pp_polar_pair** out) {
  if (!path || !out) return invalid("path and out must be non-NULL");
  *out = nullptr;
  return guarded([&] {
    auto data = polar::read_point_set_file(path);
    *out = new pp_polar_pair{polar::polar_pair_from_file(data)};
  });
}

pp_status pp_polar_pair_write(const pp_polar_pair* pair, const char* path, int embed_check) {
  if (!pair || !path) return invalid("pair and path must be non-NULL");
  return guarded([&] {
    auto data = polar::to_file_data(pair->pair);
    if (embed_check) {
      const auto report = polar::check_polar(pair->pair);
      polar::embed_report(data, report);
    }
    polar::write_point_set_file(path, data);
  });
}

pp_status pp_polar_pair_check(const pp_polar_pair* pair, int* pass, char** report_text) {
  if (!pair || !pass) return invalid("pair and pass must be non-NULL");
  if (report_text) *report_text = nullptr;
  return guarded([&] {
    const auto report = polar::check_polar(pair->pair);
    *pass = report.pass ? 1 : 0;
    if (report_text) *report_text = dup_string(report.to_text());
  });
}

pp_status pp_polar_pair_spectral(const pp_polar_pair* pair, int* pass, char** report_text) {
  if (!pair || !pass) return invalid("pair and pass must be non-NULL");
  if (report_text) *report_text = nullptr;
  return guarded([&] {
    const auto report = polar::spectral_check(pair->pair);
    *pass = report.pass ? 1 : 0;
    if (report_text) *report_text = dup_string(report.to_text());
  });
}

void pp_string_free(char* text) { delete[] text; }

/* ---- point sets ---- */

pp_status pp_pointset_read(const char* path, pp_pointset** out) {
  if (!path || !out) return invalid("path and out must be non-NULL");
  *out = nullptr;
  return guarded([&] { *out = new pp_pointset{polar::read_point_set_file(path), {}}; });
}

pp_status pp_pointset_write(const pp_pointset* ps, const char* path) {
  if (!ps || !path) return invalid("ps and path must be non-NULL");
  return guarded([&] { polar::write_point_set_file(path, ps->data); });
}

void pp_pointset_free(pp_pointset* ps) { delete ps; }

size_t pp_pointset_size(const pp_pointset* ps) { return ps ? ps->data.points.size() : 0; }

size_t pp_pointset_dim(const pp_pointset* ps) { return ps ? ps->data.points.dim() : 0; }

const char* pp_pointset_annotation(const pp_pointset* ps) {
  return ps ? ps->data.annotation.c_str() : "";
}

const char* pp_pointset_metric(pp_pointset* ps) {
  if (!ps) return "";
  ps->metric_cache = ps->data.points.metric().describe();
  return ps->metric_cache.c_str();
}

const char* pp_pointset_field(const pp_pointset* ps, const char* key) {
  if (!ps || !key) return nullptr;
  for (const auto& [k, v] : ps->data.fields)
    if (k == key) return v.c_str();
  return nullptr;
}

pp_status pp_pointset_random_binary(size_t n, size_t d, uint64_t seed, pp_pointset** out) {
  if (!out) return invalid("out must be non-NULL");
  *out = nullptr;
  return guarded([&] {
    polar::require(n >= 1 && d >= 1, polar::errc::invalid_argument,
                   "random binary set needs n >= 1 and d >= 1");
    auto handle = std::make_unique<pp_pointset>();
    handle->data.annotation = "pointset";
    handle->data.points = polar::PointSet(d, polar::Metric::l0());
    handle->data.points.reserve(n);
    polar::SplitMix64 rng(seed);
    std::vector<double> row(d);
    for (size_t i = 0; i < n; ++i) {
      for (auto& v : row) v = rng.next_bool() ? 1.0 : 0.0;
      handle->data.points.add(row);
      handle->data.sides.push_back('U');
    }
    *out = handle.release();
  });
}

/* ---- solvers ---- */

namespace {

void fill_result(const polar::PairResult& r, pp_pair_result* out) {
  out->i = r.i;
  out->j = r.j;
  out->distance = r.distance;
  out->bichromatic = r.color == polar::PairColor::bi ? 1 : 0;
}

}  // namespace

pp_status pp_closest_pair(const pp_pointset* ps, pp_pair_result* out) {
  if (!ps || !out) return invalid("ps and out must be non-NULL");
  return guarded([&] { fill_result(polar::closest_pair_bruteforce(ps->data.points), out); });
}

pp_status pp_closest_pair_hamming_fast(const pp_pointset* ps, pp_pair_result* out) {
  if (!ps || !out) return invalid("ps and out must be non-NULL");
  return guarded([&] { fill_result(polar::hamming_closest_pair_fast(ps->data.points), out); });
}

pp_status pp_bcp(const pp_pointset* ps, pp_pair_result* out) {
  if (!ps || !out) return invalid("ps and out must be non-NULL");
  return guarded([&] {
    polar::BCPInstance inst;
    inst.red = polar::PointSet(ps->data.points.dim(), ps->data.points.metric());
    inst.blue = polar::PointSet(ps->data.points.dim(), ps->data.points.metric());
    for (size_t i = 0; i < ps->data.points.size(); ++i) {
      const char side = ps->data.sides[i];
      polar::require(side == 'A' || side == 'B', polar::errc::invalid_argument,
                     "bichromatic solving needs every point on side A (red) or B (blue)");
      (side == 'A' ? inst.red : inst.blue).add(ps->data.points[i]);
    }
    fill_result(polar::bcp_bruteforce(inst), out);
  });
}

/* ---- orthogonal vectors ---- */

pp_status pp_ov_read(const char* path, pp_ov** out) {
  if (!path || !out) return invalid("path and out must be non-NULL");
  *out = nullptr;
  return guarded([&] { *out = new pp_ov{polar::read_ov_file(path)}; });
}

pp_status pp_ov_write(const pp_ov* inst, const char* path) {
  if (!inst || !path) return invalid("inst and path must be non-NULL");
  return guarded([&] { polar::write_ov_file(path, inst->inst); });
}

void pp_ov_free(pp_ov* inst) { delete inst; }

size_t pp_ov_size_u(const pp_ov* inst) { return inst ? inst->inst.U.size() : 0; }

size_t pp_ov_size_w(const pp_ov* inst) { return inst ? inst->inst.W.size() : 0; }

size_t pp_ov_dim(const pp_ov* inst) { return inst ? inst->inst.dim : 0; }

pp_status pp_ov_bruteforce(const pp_ov* inst, int* found, size_t* u, size_t* w) {
  if (!inst || !found || !u || !w) return invalid("inst, found, u, w must be non-NULL");
  return guarded([&] {
    const auto hit = polar::ov_bruteforce(inst->inst);
    *found = hit.has_value() ? 1 : 0;
    *u = hit ? hit->first : 0;
    *w = hit ? hit->second : 0;
  });
}

pp_status pp_ov_dedupe(const pp_ov* inst, pp_ov** out) {
  if (!inst || !out) return invalid("inst and out must be non-NULL");
  *out = nullptr;
  return guarded([&] { *out = new pp_ov{polar::dedupe(inst->inst).instance}; });
}

/* ---- reductions ---- */

pp_status pp_reduce_ov(const pp_ov* inst, pp_reduced** out) {
  if (!inst || !out) return invalid("inst and out must be non-NULL");
  *out = nullptr;
  return guarded(
      [&] { *out = new pp_reduced{polar::ov_to_closest_pair_linf(inst->inst)}; });
}

pp_status pp_reduce_bcp(const pp_pointset* instance, const pp_polar_pair* gadget,
                        int fast_dmax, pp_reduced** out) {
  if (!instance || !gadget || !out) return invalid("instance, gadget, out must be non-NULL");
  *out = nullptr;
  return guarded([&] {
    polar::BCPInstance inst;
    inst.red = polar::PointSet(instance->data.points.dim(), instance->data.points.metric());
    inst.blue = polar::PointSet(instance->data.points.dim(), instance->data.points.metric());
    for (size_t i = 0; i < instance->data.points.size(); ++i) {
      const char side = instance->data.sides[i];
      polar::require(side == 'A' || side == 'B', polar::errc::invalid_argument,
                     "the reduction needs every point on side A (red) or B (blue)");
      (side == 'A' ? inst.red : inst.blue).add(instance->data.points[i]);
    }
    *out = new pp_reduced{polar::bcp_to_closest_pair(inst, gadget->pair, fast_dmax != 0)};
  });
}

void pp_reduced_free(pp_reduced* red) { delete red; }

pp_status pp_reduced_write(const pp_reduced* red, const char* path) {
  if (!red || !path) return invalid("red and path must be non-NULL");
  return guarded(
      [&] { polar::write_point_set_file(path, polar::to_file_data(red->reduced)); });
}

pp_status pp_reduced_points(const pp_reduced* red, pp_pointset** out) {
  if (!red || !out) return invalid("red and out must be non-NULL");
  *out = nullptr;
  return guarded([&] { *out = new pp_pointset{polar::to_file_data(red->reduced), {}}; });
}

pp_status pp_reduced_gaps(const pp_reduced* red, double* gap_low, double* gap_high) {
  if (!red || !gap_low || !gap_high) return invalid("red, gap_low, gap_high must be non-NULL");
  *gap_low = red->reduced.certificate.gap_low;
  *gap_high = red->reduced.certificate.gap_high;
  return PP_OK;
}

pp_status pp_reduced_scale(const pp_reduced* red, double* scale) {
  if (!red || !scale) return invalid("red and scale must be non-NULL");
  *scale = red->reduced.certificate.scale;
  return PP_OK;
}

/* ---- impossibility falsifier ---- */

pp_status pp_falsify(const char* metric, size_t dim, size_t support_size, size_t trials,
                     uint64_t seed, int* upheld, int* rational_clean,
                     double* best_objective, char** report_text) {
  if (!metric || !upheld || !rational_clean || !best_objective)
    return invalid("metric, upheld, rational_clean, best_objective must be non-NULL");
  if (report_text) *report_text = nullptr;
  return guarded([&] {
    const std::string name = metric;
    polar::Metric m;
    if (name == "l0")
      m = polar::Metric::l0();
    else if (name == "l1")
      m = polar::Metric::l1();
    else
      polar::fail(polar::errc::invalid_argument,
                  "unknown falsifier metric '" + name + "' (expected l0 or l1)");
    const auto report = polar::distribution_falsifier(m, dim, support_size, trials, seed);
    *upheld = report.theorem_upheld ? 1 : 0;
    *rational_clean = report.rational_all_nonpositive ? 1 : 0;
    *best_objective = report.best_objective;
    if (report_text) *report_text = dup_string(report.to_text());
  });
}

} /* extern "C" */
