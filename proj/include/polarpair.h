/* C surface of the polar-pair toolkit: opaque handles + status codes.
 *
 * Every function that can fail returns a pp_status; PP_OK means success and
 * anything else leaves a human-readable message in pp_last_error() (which is
 * thread-local and overwritten by the next failing call on that thread).
 * Objects returned through out-parameters are owned by the caller and must be
 * released with the matching pp_*_free; strings returned through char** are
 * released with pp_string_free.
 */
#ifndef POLARPAIR_H
#define POLARPAIR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PP_API __declspec(dllexport)
#else
#define PP_API __attribute__((visibility("default")))
#endif

typedef enum pp_status {
  PP_OK = 0,
  PP_INVALID_ARGUMENT = 1,
  PP_PARSE_ERROR = 2,
  PP_IO_ERROR = 3,
  PP_CONSTRUCTION_FAILURE = 4, /* requested parameters cannot achieve the gap */
  PP_INTERNAL_ERROR = 5
} pp_status;

PP_API const char* pp_version(void);
PP_API const char* pp_last_error(void);

/* Worker threads for the parallel scans; 0 restores the hardware default.
 * Results are identical for every thread count. */
PP_API void pp_set_threads(int threads);

/* Relative tolerance used by non-exact comparisons (default 1e-9). */
PP_API pp_status pp_set_default_tolerance(double tol);

/* ---- opaque handles ---------------------------------------------------- */

typedef struct pp_pointset pp_pointset;     /* points + metric + file metadata */
typedef struct pp_polar_pair pp_polar_pair; /* two classes with a certified gap */
typedef struct pp_ov pp_ov;                 /* two collections of 0/1 vectors */
typedef struct pp_reduced pp_reduced;       /* reduced points + certificate */

/* ---- constructions ------------------------------------------------------ */

/* construction: "l0-arbitrary" (n), "l0-binary" (n), "lp-mid" (n, p),
 * "lp-random" (n, p, d, seed), "lp-code" (n, p, backend, delta with 0 = the
 * default 0.05), "l2-simplex" (n). backend: "hadamard" or "rs-hadamard"
 * (ignored by the other constructions; NULL picks hadamard). Unused numeric
 * parameters are ignored. The pair is exhaustively verified before release. */
PP_API pp_status pp_generate(const char* construction, size_t n, double p, size_t d,
                             uint64_t seed, const char* backend, double delta,
                             pp_polar_pair** out);

PP_API void pp_polar_pair_free(pp_polar_pair* pair);
PP_API size_t pp_polar_pair_n(const pp_polar_pair* pair);
PP_API size_t pp_polar_pair_dim(const pp_polar_pair* pair);
PP_API pp_status pp_polar_pair_read(const char* path, pp_polar_pair** out);
/* embed_check != 0 re-runs the verifier and embeds its report in the file. */
PP_API pp_status pp_polar_pair_write(const pp_polar_pair* pair, const char* path,
                                     int embed_check);

/* Exhaustive polar-invariant check. *pass is 1/0; the report text is optional
 * (pass NULL to skip it). A failed check still returns PP_OK — the failure is
 * data, not an error. */
PP_API pp_status pp_polar_pair_check(const pp_polar_pair* pair, int* pass,
                                     char** report_text);

/* Euclidean rank analysis of the lifted pair (L2 pairs only). */
PP_API pp_status pp_polar_pair_spectral(const pp_polar_pair* pair, int* pass,
                                        char** report_text);

PP_API void pp_string_free(char* text);

/* ---- point sets ---------------------------------------------------------- */

PP_API pp_status pp_pointset_read(const char* path, pp_pointset** out);
PP_API pp_status pp_pointset_write(const pp_pointset* ps, const char* path);
PP_API void pp_pointset_free(pp_pointset* ps);
PP_API size_t pp_pointset_size(const pp_pointset* ps);
PP_API size_t pp_pointset_dim(const pp_pointset* ps);
PP_API const char* pp_pointset_annotation(const pp_pointset* ps);
/* "l0" | "lp <p>" | "linf"; the string lives as long as the handle. */
PP_API const char* pp_pointset_metric(pp_pointset* ps);
/* Metadata field lookup ("gap_low", "kind", "report.pass", ...); returns NULL
 * when the field is absent. The string lives as long as the handle. */
PP_API const char* pp_pointset_field(const pp_pointset* ps, const char* key);

/* Uniform random {0,1} coordinates under the L0 metric (benchmark fodder). */
PP_API pp_status pp_pointset_random_binary(size_t n, size_t d, uint64_t seed,
                                           pp_pointset** out);

/* ---- solvers ------------------------------------------------------------- */

typedef struct pp_pair_result {
  size_t i, j;     /* i < j in the instance's canonical order */
  double distance; /* distance of the reported pair */
  int bichromatic; /* 1 when the pair crosses color classes, else 0 */
} pp_pair_result;

PP_API pp_status pp_closest_pair(const pp_pointset* ps, pp_pair_result* out);

/* Bit-parallel Hamming path; same answers as pp_closest_pair on binary L0
 * inputs, including the tie-break. */
PP_API pp_status pp_closest_pair_hamming_fast(const pp_pointset* ps, pp_pair_result* out);

/* Bichromatic closest pair; the file's side column (A = red, B = blue)
 * partitions the points. */
PP_API pp_status pp_bcp(const pp_pointset* ps, pp_pair_result* out);

/* ---- orthogonal vectors -------------------------------------------------- */

PP_API pp_status pp_ov_read(const char* path, pp_ov** out);
PP_API pp_status pp_ov_write(const pp_ov* inst, const char* path);
PP_API void pp_ov_free(pp_ov* inst);
PP_API size_t pp_ov_size_u(const pp_ov* inst);
PP_API size_t pp_ov_size_w(const pp_ov* inst);
PP_API size_t pp_ov_dim(const pp_ov* inst);

/* *found is 1 with the lexicographically first orthogonal (u, w), or 0. */
PP_API pp_status pp_ov_bruteforce(const pp_ov* inst, int* found, size_t* u, size_t* w);

/* Duplicate-free copy, first occurrences kept in order. */
PP_API pp_status pp_ov_dedupe(const pp_ov* inst, pp_ov** out);

/* ---- reductions ----------------------------------------------------------- */

PP_API pp_status pp_reduce_ov(const pp_ov* inst, pp_reduced** out);

/* instance: a point set whose sides mark red (A) and blue (B). gadget: a
 * polar pair over the same finite-p metric with at least max(|red|, |blue|)
 * point pairs. fast_dmax != 0 uses the per-coordinate range bound. */
PP_API pp_status pp_reduce_bcp(const pp_pointset* instance, const pp_polar_pair* gadget,
                               int fast_dmax, pp_reduced** out);

PP_API void pp_reduced_free(pp_reduced* red);
PP_API pp_status pp_reduced_write(const pp_reduced* red, const char* path);
/* The reduced points as a fresh point-set handle (certificate fields and the
 * index mapping embedded as metadata). */
PP_API pp_status pp_reduced_points(const pp_reduced* red, pp_pointset** out);
PP_API pp_status pp_reduced_gaps(const pp_reduced* red, double* gap_low, double* gap_high);
PP_API pp_status pp_reduced_scale(const pp_reduced* red, double* scale);

/* ---- impossibility falsifier ---------------------------------------------- */

/* metric: "l0" or "l1". Runs `trials` seeded random starts with hill
 * climbing, maximizing min(E|XX|, E|YY|) - E|XY| over distribution pairs;
 * the top candidates are re-verified in exact rational arithmetic.
 * *upheld is 1 when the best objective stays <= 1e-12 and the recheck is
 * clean; *rational_clean is 0 when some candidate is exactly positive (which
 * would contradict the impossibility theorem — treat as an internal bug). */
PP_API pp_status pp_falsify(const char* metric, size_t dim, size_t support_size,
                            size_t trials, uint64_t seed, int* upheld,
                            int* rational_clean, double* best_objective,
                            char** report_text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* POLARPAIR_H */
