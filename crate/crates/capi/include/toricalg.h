#ifndef TORICALG_H
#define TORICALG_H

/* Generated by cbindgen from the toricalg-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. Values mirror the CLI exit codes: `OK` and `NO` are
 * the two sides of a decided question, `UNDECIDED` means a bounded search
 * ran out of room, and the two error statuses signal bad input rather than
 * a mathematical verdict.
 */
typedef enum {
  /**
   * Success; for decision procedures, the affirmative verdict.
   */
  TORICALG_STATUS_OK = 0,
  /**
   * The question was decided negatively; any output is still valid.
   */
  TORICALG_STATUS_NO = 1,
  /**
   * A bounded search exhausted its budget without a verdict.
   */
  TORICALG_STATUS_UNDECIDED = 2,
  /**
   * Invalid input or an unsupported operation; see `toricalg_last_error`.
   */
  TORICALG_STATUS_DOMAIN_ERROR = 3,
  /**
   * Null pointer, malformed UTF-8 or an out-of-range argument.
   */
  TORICALG_STATUS_ARGUMENT_ERROR = 4,
} ToricalgStatus;

/**
 * Opaque handle to the combinatorics of a simple polytope. Create with
 * [`toricalg_polytope_builtin`] or [`toricalg_polytope_parse`], release
 * with [`toricalg_polytope_free`].
 */
typedef struct ToricalgPolytope ToricalgPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a polytope from a built-in name such as `prism`, `cube:3` or
 * `cyclic:4:7`. On success writes a fresh handle to `out` and returns `OK`.
 */
ToricalgStatus toricalg_polytope_builtin(const char *spec, ToricalgPolytope **out);

/**
 * Creates a polytope from document text: a `polytope <name> n=<n> m=<m>`
 * header followed by one `v <facet labels>` line per vertex.
 */
ToricalgStatus toricalg_polytope_parse(const char *document, ToricalgPolytope **out);

/**
 * Releases a handle. Null is tolerated.
 */
void toricalg_polytope_free(ToricalgPolytope *p);

/**
 * Dimension of the polytope; 0 when the handle is null.
 */
size_t toricalg_polytope_dim(const ToricalgPolytope *p);

/**
 * Number of facets; 0 when the handle is null.
 */
size_t toricalg_polytope_facets(const ToricalgPolytope *p);

/**
 * Number of vertices; 0 when the handle is null.
 */
size_t toricalg_polytope_vertex_count(const ToricalgPolytope *p);

/**
 * Writes the elementary symmetric polynomial of the boundary complex in
 * canonical text form. Degree 0 selects the top degree (the dimension);
 * `use_f2` picks coefficients mod 2 when nonzero.
 */
ToricalgStatus toricalg_sigma_text(const ToricalgPolytope *p,
                                   size_t degree,
                                   int use_f2,
                                   char **out);

/**
 * Decides whether the polytope is a product of lower-dimensional ones and
 * writes a JSON object with the factor partition and the factored
 * generating polynomial. Returns `OK` for a product, `NO` otherwise.
 */
ToricalgStatus toricalg_decompose_json(const ToricalgPolytope *p, char **out);

/**
 * Searches for a proper facet coloring with exactly `colors` colors (0
 * selects the dimension) and writes a JSON verdict, including the color
 * classes and their linear forms when one exists. Returns `OK` when
 * colorable, `NO` when provably not.
 */
ToricalgStatus toricalg_color_json(const ToricalgPolytope *p, size_t colors, char **out);

/**
 * Decides whether the Buchstaber invariant equals facets minus dimension
 * over the chosen ring and writes a JSON verdict with the re-verified
 * certificate and search counters. `bound` caps the entry magnitude of the
 * integer search and is ignored over `f2`. Returns `OK` for yes, `NO` for a
 * definitive no, `UNDECIDED` when the bounded integer search was exhausted.
 */
ToricalgStatus toricalg_buchstaber_json(const ToricalgPolytope *p,
                                        int use_f2,
                                        int64_t bound,
                                        char **out);

/**
 * Tests whether an integer characteristic matrix (in document text form:
 * a `ring rows cols` header line, then one row per line) yields a
 * torus-invariant almost complex structure, i.e. whether the wedge of its
 * rows is a cycle. Returns `OK` when it does, `NO` when it does not.
 */
ToricalgStatus toricalg_acs_json(const ToricalgPolytope *p, const char *matrix_text, char **out);

/**
 * Checks a matrix (document text form) against the vertex basis condition
 * and writes a JSON verdict listing any failing vertices. Returns `OK`
 * when the matrix is characteristic, `NO` otherwise.
 */
ToricalgStatus toricalg_verify_char_json(const ToricalgPolytope *p,
                                         const char *matrix_text,
                                         char **out);

/**
 * Releases a string returned by this library. Null is tolerated.
 */
void toricalg_string_free(char *s);

/**
 * Detail message of the most recent failure on the calling thread, empty
 * when none has occurred. The pointer stays valid until the next failing
 * call on the same thread.
 */
const char *toricalg_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORICALG_H */
