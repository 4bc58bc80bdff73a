#ifndef SIZESPECTRA_H
#define SIZESPECTRA_H

/* Generated by cbindgen from sizespectra-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status of an FFI call. Nonzero values leave a message readable through
// [`ss_last_error_message`] on the calling thread.
typedef enum SsStatus {
  SS_STATUS_OK = 0,
  // A required pointer argument was NULL or text was not valid UTF-8.
  SS_STATUS_NULL_ARGUMENT = 1,
  // Rejected input: bad parameter, parse failure, or a size cap.
  SS_STATUS_PARAMETER = 2,
  // A randomized stage exhausted its budget without a witness.
  SS_STATUS_CONSTRUCTION = 3,
  // A certificate failed its independent recount.
  SS_STATUS_INTEGRITY = 4,
  // An internal invariant tripped; the library state is still intact.
  SS_STATUS_PANIC = 5,
} SsStatus;

// Opaque graph handle; create with the `ss_graph_*` constructors and
// release with [`ss_graph_free`].
typedef struct SsGraph SsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *ss_version(void);

// Message from the most recent failing call on this thread, or NULL.
// The caller owns the returned string; release it with [`ss_string_free`].
char *ss_last_error_message(void);

// Releases a string returned by this library. NULL is a no-op.
void ss_string_free(char *s);

// Parses the plain text edge format (`n m` header, one edge per line).
enum SsStatus ss_graph_parse(const char *text, struct SsGraph **out);

// Erdős–Rényi G(n, p) from the deterministic generator.
enum SsStatus ss_graph_gnp(size_t n, double p, uint64_t seed, struct SsGraph **out);

// Paley graph on a prime q ≡ 1 (mod 4).
enum SsStatus ss_graph_paley(size_t q, struct SsGraph **out);

// Releases a graph handle. NULL is a no-op.
void ss_graph_free(struct SsGraph *g);

// Number of vertices; 0 for a NULL handle.
size_t ss_graph_n(const struct SsGraph *g);

// Number of edges; 0 for a NULL handle.
uint64_t ss_graph_edge_count(const struct SsGraph *g);

// Serializes the graph back to the plain text edge format.
enum SsStatus ss_graph_serialize(const struct SsGraph *g, char **out);

// Order of the largest clique or independent set.
enum SsStatus ss_hom(const struct SsGraph *g, size_t *out);

// Edge density e(G) / C(n, 2).
enum SsStatus ss_edge_density(const struct SsGraph *g, double *out);

// Whether every vertex has at most n^delta near-twins at distance < c·n.
// Writes 1 for diverse, 0 otherwise.
enum SsStatus ss_diversity_check(const struct SsGraph *g, double c, double delta, uint8_t *out);

// Exact edge-count spectrum as a JSON array, refusing graphs above `cap`
// vertices.
enum SsStatus ss_phi_exact_json(const struct SsGraph *g, size_t cap, char **out);

// Runs the certified construction with default parameters and returns the
// certificate array as JSON.
enum SsStatus ss_construct_json(const struct SsGraph *g, uint64_t seed, char **out);

// Recounts a certificate JSON array against the graph; writes the number
// of distinct certified sizes.
enum SsStatus ss_certify_json(const struct SsGraph *g, const char *certificates, uint64_t *out);

// Largest point mass of |U∩B| − |U∩A| over uniform k-subsets, exactly
// computed and rounded to f64 once at the end.
enum SsStatus ss_pointmass_max(uint64_t n, uint64_t a, uint64_t b, uint64_t k, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIZESPECTRA_H */
