#ifndef NSMODOP_H
#define NSMODOP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  NSM_STATUS_OK = 0,
  NSM_STATUS_NULL_POINTER = 1,
  NSM_STATUS_INVALID_UTF8 = 2,
  NSM_STATUS_PARSE = 3,
  NSM_STATUS_DOMAIN = 4,
  NSM_STATUS_VERIFICATION_FAILED = 5,
  NSM_STATUS_INCONCLUSIVE = 6,
  NSM_STATUS_PANIC = 7,
} NsmStatus;

// Opaque graph.
typedef struct NsmGraph NsmGraph;

// Opaque multicyclic order.
typedef struct NsmType NsmType;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The last error on this thread, or null. Valid until the next failing
// call on the same thread.
const char *nsm_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library.
void nsm_string_free(char *s);

// Parses `{(a b) (c) ()}`.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
NsmStatus nsm_type_parse(const char *text, NsmType **out);

// # Safety
// `t` must be null or a handle from this library, freed at most once.
void nsm_type_free(NsmType *t);

// # Safety
// `t` must be a live handle; `out` must be writable.
NsmStatus nsm_type_to_string(const NsmType *t, char **out);

// Number of components.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
NsmStatus nsm_type_b(const NsmType *t, uintptr_t *out);

// # Safety
// Handles must be live, labels nul-terminated, `out` writable.
NsmStatus nsm_type_merge(const NsmType *left,
                         const char *u,
                         const NsmType *right,
                         const char *v,
                         NsmType **out);

// # Safety
// `t` must be live, labels nul-terminated, `out` writable.
NsmStatus nsm_type_cut(const NsmType *t, const char *u, const char *v, NsmType **out);

// Parses and validates a graph in the JSON format.
//
// # Safety
// `json` must be nul-terminated; `out` writable.
NsmStatus nsm_graph_from_json(const char *json, NsmGraph **out);

// # Safety
// `g` must be null or a handle from this library, freed at most once.
void nsm_graph_free(NsmGraph *g);

// # Safety
// `g` must be live; `out` writable.
NsmStatus nsm_graph_to_json(const NsmGraph *g, char **out);

// JSON of the canonical representative.
//
// # Safety
// `g` must be live; `out` writable.
NsmStatus nsm_graph_canonical_json(const NsmGraph *g, char **out);

// # Safety
// `g` must be live; `out` writable.
NsmStatus nsm_graph_genus(const NsmGraph *g, uint32_t *out);

// Induced multicyclic order on the legs.
//
// # Safety
// `g` must be live; `out` writable.
NsmStatus nsm_graph_leg_type(const NsmGraph *g, NsmType **out);

// # Safety
// Handles live, labels nul-terminated, `out` writable.
NsmStatus nsm_graph_graft(const NsmGraph *left,
                          const char *u,
                          const NsmGraph *right,
                          const char *v,
                          NsmGraph **out);

// # Safety
// `g` live, labels nul-terminated, `out` writable.
NsmStatus nsm_graph_self_glue(const NsmGraph *g, const char *u, const char *v, NsmGraph **out);

// # Safety
// Handles live; `out` writable.
NsmStatus nsm_graph_isomorphic(const NsmGraph *a, const NsmGraph *b, bool *out);

// # Safety
// `out` writable.
NsmStatus nsm_count_mod_ass(uintptr_t n, uint32_t g, uint64_t *out);

// `2^(n-1) (n-1)!`; `n = 0` is a domain error.
//
// # Safety
// `out` writable.
NsmStatus nsm_wheel_count(uintptr_t n, uint64_t *out);

// Runs the envelope verifier and writes its JSON certificate. Returns
// `VerificationFailed` or `Inconclusive` when the run does not pass; the
// certificate is written in every case.
//
// # Safety
// `out` writable.
NsmStatus nsm_envelope_verify(uintptr_t n, uint32_t g, uintptr_t vmax, bool symmetric, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NSMODOP_H */
