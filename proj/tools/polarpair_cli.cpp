// Command-line front end. Links only the public C API so it doubles as a
// smoke test of the shared-library surface.
//
// Exit codes: 0 success/verified, 1 verified-false (a legitimate negative
// result, e.g. a failed verification or an unachievable construction),
// 2 usage/parse/io error, 3 internal invariant breach.

#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "polarpair.h"

namespace {

int exit_for(pp_status s) {
  switch (s) {
    case PP_OK:
      return 0;
    case PP_CONSTRUCTION_FAILURE:
      return 1;
    case PP_INVALID_ARGUMENT:
    case PP_PARSE_ERROR:
    case PP_IO_ERROR:
      return 2;
    case PP_INTERNAL_ERROR:
      return 3;
  }
  return 3;
}

int fail_with(pp_status s) {
  std::fprintf(stderr, "error: %s\n", pp_last_error());
  return exit_for(s);
}

void print_report(const char* text) {
  if (text) std::fputs(text, stdout);
}

struct GenerateOpts {
  std::string construction;
  std::size_t n = 8;
  double p = 2.0;
  std::size_t d = 0;
  std::uint64_t seed = 1;
  std::string backend = "hadamard";
  double delta = 0.0;
  std::string out_path;
};

int run_generate(const GenerateOpts& o) {
  pp_polar_pair* pair = nullptr;
  pp_status s = pp_generate(o.construction.c_str(), o.n, o.p, o.d, o.seed,
                            o.backend.c_str(), o.delta, &pair);
  if (s != PP_OK) return fail_with(s);

  std::printf("construction %s: %zu point pairs, dimension %zu\n", o.construction.c_str(),
              pp_polar_pair_n(pair), pp_polar_pair_dim(pair));
  int pass = 0;
  char* text = nullptr;
  s = pp_polar_pair_check(pair, &pass, &text);
  if (s != PP_OK) {
    pp_polar_pair_free(pair);
    return fail_with(s);
  }
  print_report(text);
  pp_string_free(text);

  if (!o.out_path.empty()) {
    s = pp_polar_pair_write(pair, o.out_path.c_str(), /*embed_check=*/1);
    if (s != PP_OK) {
      pp_polar_pair_free(pair);
      return fail_with(s);
    }
    std::printf("wrote %s\n", o.out_path.c_str());
  }
  pp_polar_pair_free(pair);
  return pass ? 0 : 1;
}

struct ReduceOpts {
  std::string input;
  std::string gadget;
  std::string out_path;
  bool dedupe = false;
  bool fast_dmax = false;
};

int run_reduce(const ReduceOpts& o) {
  pp_reduced* red = nullptr;
  pp_status s = PP_OK;

  if (o.gadget.empty()) {
    pp_ov* inst = nullptr;
    s = pp_ov_read(o.input.c_str(), &inst);
    if (s != PP_OK) return fail_with(s);
    if (o.dedupe) {
      pp_ov* clean = nullptr;
      s = pp_ov_dedupe(inst, &clean);
      pp_ov_free(inst);
      if (s != PP_OK) return fail_with(s);
      inst = clean;
    }
    std::printf("orthogonal-vectors instance: |U| = %zu, |W| = %zu, dimension %zu\n",
                pp_ov_size_u(inst), pp_ov_size_w(inst), pp_ov_dim(inst));
    s = pp_reduce_ov(inst, &red);
    pp_ov_free(inst);
    if (s != PP_OK) return fail_with(s);
  } else {
    pp_pointset* inst = nullptr;
    pp_polar_pair* gadget = nullptr;
    s = pp_pointset_read(o.input.c_str(), &inst);
    if (s != PP_OK) return fail_with(s);
    s = pp_polar_pair_read(o.gadget.c_str(), &gadget);
    if (s != PP_OK) {
      pp_pointset_free(inst);
      return fail_with(s);
    }
    s = pp_reduce_bcp(inst, gadget, o.fast_dmax ? 1 : 0, &red);
    pp_pointset_free(inst);
    pp_polar_pair_free(gadget);
    if (s != PP_OK) return fail_with(s);
    double scale = 0.0;
    pp_reduced_scale(red, &scale);
    std::printf("gadget scale lambda = %.17g\n", scale);
  }

  double lo = 0.0, hi = 0.0;
  pp_reduced_gaps(red, &lo, &hi);
  std::printf("certified gap: bichromatic/yes <= %.17g < %.17g <= monochromatic/no\n", lo, hi);
  s = pp_reduced_write(red, o.out_path.c_str());
  pp_reduced_free(red);
  if (s != PP_OK) return fail_with(s);
  std::printf("wrote %s\n", o.out_path.c_str());
  return 0;
}

struct SolveOpts {
  std::string input;
  bool bichromatic = false;
  bool hamming_fast = false;
};

int run_solve(const SolveOpts& o) {
  pp_pointset* ps = nullptr;
  pp_status s = pp_pointset_read(o.input.c_str(), &ps);
  if (s != PP_OK) return fail_with(s);

  pp_pair_result r{};
  if (o.bichromatic)
    s = pp_bcp(ps, &r);
  else if (o.hamming_fast)
    s = pp_closest_pair_hamming_fast(ps, &r);
  else
    s = pp_closest_pair(ps, &r);
  if (s != PP_OK) {
    pp_pointset_free(ps);
    return fail_with(s);
  }
  std::printf("closest %spair: (%zu, %zu) at distance %.17g\n",
              r.bichromatic ? "bichromatic " : "", r.i, r.j, r.distance);

  // Reduced instances carry their decision thresholds; apply them.
  int rc = 0;
  const char* lo_field = pp_pointset_field(ps, "gap_low");
  const char* hi_field = pp_pointset_field(ps, "gap_high");
  if (lo_field && hi_field) {
    const double lo = std::strtod(lo_field, nullptr);
    const double hi = std::strtod(hi_field, nullptr);
    const double eps = 1e-9 * (hi > 1.0 ? hi : 1.0);
    if (r.distance <= lo + eps) {
      std::printf("YES (distance within the certified low band <= %.17g)\n", lo);
    } else if (r.distance >= hi - eps) {
      std::printf("NO (distance in the certified high band >= %.17g)\n", hi);
    } else {
      std::printf("AMBIGUOUS (distance inside the forbidden gap (%.17g, %.17g))\n", lo, hi);
      rc = 3;  // the certificate promises this band is empty
    }
  }
  pp_pointset_free(ps);
  return rc;
}

struct VerifyOpts {
  std::string input;
  bool spectral = false;
};

int run_verify(const VerifyOpts& o) {
  pp_polar_pair* pair = nullptr;
  pp_status s = pp_polar_pair_read(o.input.c_str(), &pair);
  if (s != PP_OK) return fail_with(s);

  int pass = 0;
  char* text = nullptr;
  s = pp_polar_pair_check(pair, &pass, &text);
  if (s != PP_OK) {
    pp_polar_pair_free(pair);
    return fail_with(s);
  }
  print_report(text);
  pp_string_free(text);

  if (o.spectral) {
    int spass = 0;
    char* stext = nullptr;
    s = pp_polar_pair_spectral(pair, &spass, &stext);
    if (s != PP_OK) {
      pp_polar_pair_free(pair);
      return fail_with(s);
    }
    print_report(stext);
    pp_string_free(stext);
    pass = pass && spass;
  }
  pp_polar_pair_free(pair);
  return pass ? 0 : 1;
}

struct FalsifyOpts {
  std::string metric = "l1";
  std::size_t dim = 5;
  std::size_t support = 8;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
};

int run_falsify(const FalsifyOpts& o) {
  int upheld = 0, rational_clean = 0;
  double best = 0.0;
  char* text = nullptr;
  pp_status s = pp_falsify(o.metric.c_str(), o.dim, o.support, o.trials, o.seed, &upheld,
                           &rational_clean, &best, &text);
  if (s != PP_OK) return fail_with(s);
  print_report(text);
  pp_string_free(text);
  if (!rational_clean) return 3;  // an exactly positive objective is a bug
  return upheld ? 0 : 1;
}

struct BenchOpts {
  std::size_t n = 4096;
  std::size_t d = 1024;
  std::uint64_t seed = 1;
  std::string solver = "both";
};

int run_bench(const BenchOpts& o) {
  pp_pointset* ps = nullptr;
  pp_status s = pp_pointset_random_binary(o.n, o.d, o.seed, &ps);
  if (s != PP_OK) return fail_with(s);

  const double pairs = 0.5 * static_cast<double>(o.n) * static_cast<double>(o.n - 1);
  std::printf("solver,n,d,metric,wall_time_s,pairs_per_sec\n");

  pp_pair_result scalar{}, fast{};
  bool ran_scalar = false, ran_fast = false;
  auto time_one = [&](const char* name, auto fn, pp_pair_result* out) {
    const auto t0 = std::chrono::steady_clock::now();
    const pp_status rs = fn(ps, out);
    const auto t1 = std::chrono::steady_clock::now();
    if (rs != PP_OK) return rs;
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    std::printf("%s,%zu,%zu,%s,%.6f,%.6g\n", name, o.n, o.d, pp_pointset_metric(ps), secs,
                pairs / secs);
    return PP_OK;
  };

  if (o.solver == "scalar" || o.solver == "both") {
    s = time_one("scalar", pp_closest_pair, &scalar);
    if (s != PP_OK) {
      pp_pointset_free(ps);
      return fail_with(s);
    }
    ran_scalar = true;
  }
  if (o.solver == "hamming" || o.solver == "both") {
    s = time_one("hamming", pp_closest_pair_hamming_fast, &fast);
    if (s != PP_OK) {
      pp_pointset_free(ps);
      return fail_with(s);
    }
    ran_fast = true;
  }
  pp_pointset_free(ps);

  if (ran_scalar && ran_fast &&
      (scalar.i != fast.i || scalar.j != fast.j || scalar.distance != fast.distance)) {
    std::fprintf(stderr, "error: solver disagreement: scalar (%zu, %zu, %.17g) vs hamming "
                         "(%zu, %zu, %.17g)\n",
                 scalar.i, scalar.j, scalar.distance, fast.i, fast.j, fast.distance);
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar-pair toolkit: gap constructions, reductions, brute-force "
               "solvers, verification, and an impossibility falsifier"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = 0;
  double tolerance = 0.0;
  app.add_option("--threads", threads, "worker threads (0 = hardware default)");
  app.add_option("--tolerance", tolerance,
                 "relative tolerance for non-exact comparisons (default 1e-9)")
      ->envname("POLARPAIR_TOLERANCE");

  GenerateOpts gen;
  auto* cgen = app.add_subcommand("generate", "build a verified polar pair");
  cgen->add_option("--construction", gen.construction,
                   "l0-arbitrary | l0-binary | lp-mid | lp-random | lp-code | l2-simplex")
      ->required();
  cgen->add_option("--n", gen.n, "points per class");
  cgen->add_option("--p", gen.p, "metric exponent");
  cgen->add_option("--d", gen.d, "ambient dimension (lp-random)");
  cgen->add_option("--seed", gen.seed, "random seed (lp-random)");
  cgen->add_option("--backend", gen.backend, "code backend: hadamard | rs-hadamard");
  cgen->add_option("--delta", gen.delta, "code distance slack (lp-code, default 0.05)");
  cgen->add_option("--out", gen.out_path, "output point-set file");

  ReduceOpts red;
  auto* cred = app.add_subcommand("reduce", "map an instance to closest pair");
  cred->add_option("--input", red.input,
                   "orthogonal-vectors text file, or a point-set file with A/B sides "
                   "when --gadget is given")
      ->required();
  cred->add_option("--gadget", red.gadget, "polar-pair file for the bichromatic route");
  cred->add_option("--out", red.out_path, "output point-set file")->required();
  cred->add_flag("--dedupe", red.dedupe, "drop duplicate rows before reducing");
  cred->add_flag("--fast-dmax", red.fast_dmax,
                 "bound the diameter from per-coordinate ranges instead of scanning");

  SolveOpts sol;
  auto* csol = app.add_subcommand("solve", "brute-force closest pair");
  csol->add_option("--input", sol.input, "point-set file")->required();
  csol->add_flag("--bichromatic", sol.bichromatic, "restrict to pairs crossing A/B sides");
  csol->add_flag("--hamming-fast", sol.hamming_fast, "bit-parallel path (binary L0 only)");

  VerifyOpts ver;
  auto* cver = app.add_subcommand("verify", "re-run the exhaustive polar check");
  cver->add_option("--input", ver.input, "polar-pair file")->required();
  cver->add_flag("--spectral", ver.spectral, "also run the Euclidean rank analysis");

  FalsifyOpts fal;
  auto* cfal = app.add_subcommand("falsify", "attack the expected-distance inequality");
  cfal->add_option("--metric", fal.metric, "l0 | l1");
  cfal->add_option("--dim", fal.dim, "support dimension");
  cfal->add_option("--support", fal.support, "support points per side");
  cfal->add_option("--trials", fal.trials, "random restarts");
  cfal->add_option("--seed", fal.seed, "random seed");

  BenchOpts ben;
  auto* cben = app.add_subcommand("bench", "time the closest-pair solvers (CSV)");
  cben->add_option("--n", ben.n, "number of points");
  cben->add_option("--d", ben.d, "dimension");
  cben->add_option("--seed", ben.seed, "random seed");
  cben->add_option("--solver", ben.solver, "scalar | hamming | both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  pp_set_threads(threads);
  if (tolerance != 0.0) {
    const pp_status s = pp_set_default_tolerance(tolerance);
    if (s != PP_OK) return fail_with(s);
  }

  if (cgen->parsed()) return run_generate(gen);
  if (cred->parsed()) return run_reduce(red);
  if (csol->parsed()) return run_solve(sol);
  if (cver->parsed()) return run_verify(ver);
  if (cfal->parsed()) return run_falsify(fal);
  if (cben->parsed()) return run_bench(ben);
  return 2;
}
