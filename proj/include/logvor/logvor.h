#ifndef LOGVOR_H
#define LOGVOR_H

/* C interface to the logvor library: logarithmic Voronoi cells of linear
 * and partial linear statistical models, exact over the rationals.
 *
 * Conventions:
 *   - Every operation returns a logvor_status; outputs are JSON (or CSV)
 *     strings allocated by the library and released with
 *     logvor_string_free(). On failure outputs are untouched and
 *     logvor_last_error() holds a message (thread-local, valid until the
 *     next library call on the same thread).
 *   - Rationals travel as strings like "5" or "-5/324"; index-valued JSON
 *     fields are 1-based.
 *   - Parameter points are strings such as "x=0", "x=-5/324,y=1/81",
 *     "x1=1/8,x2=0", or positional "(1/8, 0)".
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LOGVOR_API __declspec(dllexport)
#else
#define LOGVOR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define LOGVOR_VERSION "0.1.0"

typedef enum logvor_status {
  LOGVOR_OK = 0,
  LOGVOR_ERR_PARSE = 1,
  LOGVOR_ERR_INVALID_MODEL = 2,
  LOGVOR_ERR_DOMAIN = 3,
  LOGVOR_ERR_UNBOUNDED = 4,
  LOGVOR_ERR_UNSUPPORTED = 5,
  LOGVOR_ERR_DEGENERATE_SPLIT = 6,
  LOGVOR_ERR_NOMEM = 7,
  LOGVOR_ERR_INTERNAL = 8
} logvor_status;

/* Library version string (LOGVOR_VERSION of the linked library). */
LOGVOR_API const char* logvor_version(void);

/* Short name of a status code, e.g. "parse" or "domain". */
LOGVOR_API const char* logvor_status_name(logvor_status s);

/* Message of the most recent failure on this thread ("" if none). */
LOGVOR_API const char* logvor_last_error(void);

/* Releases any string returned through a char** output. */
LOGVOR_API void logvor_string_free(char* s);

/* ---- Model handles ---------------------------------------------------- */

typedef struct logvor_model logvor_model;

/* Parses a model from JSON text: {"name", "n", "d", "c", "B", "theta"?}.
 * A "theta" member makes the model partial. */
LOGVOR_API logvor_status logvor_model_parse(const char* json_text, logvor_model** out);
LOGVOR_API logvor_status logvor_model_read_file(const char* path, logvor_model** out);
LOGVOR_API void logvor_model_free(logvor_model* m);

LOGVOR_API logvor_status logvor_model_to_json(const logvor_model* m, char** out_json);
/* -1 on null handle. */
LOGVOR_API int logvor_model_n(const logvor_model* m);
LOGVOR_API int logvor_model_d(const logvor_model* m);
/* 1 if the handle carries a partial model, 0 otherwise, -1 on null. */
LOGVOR_API int logvor_model_is_partial(const logvor_model* m);

/* JSON array of bundled example names. */
LOGVOR_API logvor_status logvor_example_names(char** out_json);
LOGVOR_API logvor_status logvor_example_model(const char* name, logvor_model** out);

/* ---- Exact operations -------------------------------------------------- */

/* Validation report {"ok", "violations"}; valid full models also get a
 * "transversality" block. Status is LOGVOR_OK even when the report lists
 * violations. */
LOGVOR_API logvor_status logvor_validate(const logvor_model* m, char** out_json);

/* Positive co-circuits of B; with_functions != 0 adds the affine cell
 * vertex functions including printable formulas. */
LOGVOR_API logvor_status logvor_cocircuits(const logvor_model* m, int with_functions,
                                           char** out_json);

/* Cell at a parameter point. `at` may be NULL for the centroid of the
 * parameter region. Full models dispatch between the interior and boundary
 * constructions; partial models require an interior point (use
 * logvor_partial_cell / logvor_partial_cell_face on the boundary). */
LOGVOR_API logvor_status logvor_cell(const logvor_model* m, const char* at, char** out_json);

/* Closed-form boundary cells at both ends of a one-dimensional model. */
LOGVOR_API logvor_status logvor_endpoints_d1(const logvor_model* m, char** out_json);

/* Dual configuration {"A", "V", "B", "check", "dual_slice"}. */
LOGVOR_API logvor_status logvor_gale(const logvor_model* m, char** out_json);

/* Duality check: cells at the given parameter points (n_at strings) are
 * compared with the dual slice. With n_at == 0, `random_params` interior
 * points are drawn with `seed`. */
LOGVOR_API logvor_status logvor_type_check(const logvor_model* m, const char* const* at,
                                           size_t n_at, int random_params, uint64_t seed,
                                           char** out_json);

/* Cell at a relative-interior point of theta facet `facet_1based` of a
 * partial model. `at` NULL uses the facet centroid. When mc_samples > 0 the
 * report gains a "monte_carlo" block: that many points are drawn from the
 * computed cell and checked against the numeric maximum-likelihood oracle. */
LOGVOR_API logvor_status logvor_partial_cell(const logvor_model* m, size_t facet_1based,
                                             const char* at, int mc_samples,
                                             uint64_t mc_seed, char** out_json);

/* Conjectural cell at a relative-interior point of the theta face spanned
 * by the given 1-based theta vertex indices; labeled experimental beyond
 * codimension one. mc_samples as in logvor_partial_cell. */
LOGVOR_API logvor_status logvor_partial_cell_face(const logvor_model* m,
                                                  const size_t* theta_vertices_1based,
                                                  size_t n_vertices, const char* at,
                                                  int mc_samples, uint64_t mc_seed,
                                                  char** out_json);

/* Faces of a partial model's theta, as vertex index sets by dimension. */
LOGVOR_API logvor_status logvor_theta_faces(const logvor_model* m, char** out_json);

/* Builds a model whose cell at parameter 0 is exactly the polytope
 * {x : Mx = b, sum x = 1, x >= 0}, from JSON {"M", "b", "n"?}. Either
 * output may be NULL. */
LOGVOR_API logvor_status logvor_realize(const char* system_json, logvor_model** out_model,
                                        char** out_json);

/* ---- Numeric oracle ---------------------------------------------------- */

/* Maximum-likelihood estimate for data `u` (comma-separated rationals,
 * n entries). */
LOGVOR_API logvor_status logvor_mle(const logvor_model* m, const char* u, char** out_json);

/* Monte-Carlo tessellation check; threads < 1 means one worker. The report
 * is identical for a fixed seed at any thread count. */
LOGVOR_API logvor_status logvor_tessellate(const logvor_model* m, int samples, uint64_t seed,
                                           double tol, int threads, char** out_json);

/* CSV of cell vertex coordinates at `grid` sampled parameters, for
 * external rendering. Models must live in the triangle or tetrahedron
 * (n = 3 or n = 4). One-dimensional models use an even grid over the
 * parameter interval; higher-dimensional models draw seeded interior
 * samples. */
LOGVOR_API logvor_status logvor_export_plot(const logvor_model* m, int grid, uint64_t seed,
                                            char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* LOGVOR_H */
