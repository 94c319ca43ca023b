/* C ABI for the fanwalk solver. Strings returned by the library must be released with fw_string_free. */

#ifndef FANWALK_H
#define FANWALK_H

/* Generated by cbindgen from fanwalk-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Walk mode selector.
typedef enum FwMode {
  FW_MODE_FAN = 0,
  FW_MODE_TUCKER = 1,
} FwMode;

// Status codes returned by every fallible entry point.
typedef enum FwStatus {
  FW_STATUS_OK = 0,
  FW_STATUS_NULL_ARGUMENT = 1,
  FW_STATUS_INVALID_UTF8 = 2,
  FW_STATUS_PARSE_ERROR = 3,
  FW_STATUS_VALIDATION_FAILED = 4,
  FW_STATUS_HYPOTHESIS_VIOLATION = 5,
  FW_STATUS_STRUCTURAL_ANOMALY = 6,
  FW_STATUS_INTERNAL_ERROR = 7,
} FwStatus;

// Opaque: a symmetric complex bundled with its hemisphere flag.
typedef struct FwComplex FwComplex;

// Opaque: an anti-symmetric labeling.
typedef struct FwLabeling FwLabeling;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL.
// The pointer stays valid until the next failing call on the thread.
const char *fw_last_error(void);

// Library version as a static string; never freed.
const char *fw_version(void);

// Frees a string returned by this library. NULL is a no-op.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
void fw_string_free(char *s);

// Builds the octahedral subdivision of `S^n`, barycentrically refined
// `refinements` times.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_complex_octahedral(size_t n, size_t refinements, struct FwComplex **out);

// Builds the 4-vertex tetrahedral triangulation of `S^2`.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_complex_paper_tetra(struct FwComplex **out);

// Parses a complex+flag JSON document.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_complex_from_json(const char *json, struct FwComplex **out);

// Serializes a complex+flag handle back to JSON.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_complex_to_json(const struct FwComplex *handle, char **out);

// Sphere dimension, or -1 for NULL.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
int64_t fw_complex_dim(const struct FwComplex *handle);

// Vertex count, or -1 for NULL.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
int64_t fw_complex_vertex_count(const struct FwComplex *handle);

// Number of maximal simplices, or -1 for NULL.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
int64_t fw_complex_top_count(const struct FwComplex *handle);

//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
void fw_complex_free(struct FwComplex *handle);

// Parses a labeling JSON document against a complex; missing antipodal
// partners are mirrored, conflicts rejected.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_labeling_from_json(const struct FwComplex *complex,
                                    const char *json,
                                    struct FwLabeling **out);

// Uniform anti-symmetric labeling; with `forbid_complementary != 0`,
// rejection-samples until no closure edge has zero label sum.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_labeling_random(const struct FwComplex *complex,
                                 uint32_t m,
                                 uint64_t seed,
                                 int32_t forbid_complementary,
                                 struct FwLabeling **out);

// Complementary-edge-free labeling via the constraint-aware sampler,
// which also handles subdivided complexes.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_labeling_random_fan(const struct FwComplex *complex,
                                     uint32_t m,
                                     uint64_t seed,
                                     struct FwLabeling **out);

// Serializes a labeling handle to JSON.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_labeling_to_json(const struct FwLabeling *handle, char **out);

//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
void fw_labeling_free(struct FwLabeling *handle);

// Walks from `H_0` in the requested mode and returns the trace document
// as JSON.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_run(const struct FwComplex *complex,
                     const struct FwLabeling *labeling,
                     enum FwMode mode,
                     char **out_trace_json);

// Brute-force enumeration: materializes the graph, decomposes it, and
// returns the report document as JSON (full lists when `full != 0`).
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_verify(const struct FwComplex *complex,
                        const struct FwLabeling *labeling,
                        enum FwMode mode,
                        int32_t full,
                        char **out_report_json);

// Counts alternating top-dimensional simplices by sign.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_count_alternating(const struct FwComplex *complex,
                                   const struct FwLabeling *labeling,
                                   size_t *out_positive,
                                   size_t *out_negative);

// Counts agreeable almost-alternating simplices containing a
// complementary edge, by carrier sign.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_count_tucker_endpoints(const struct FwComplex *complex,
                                        const struct FwLabeling *labeling,
                                        size_t *out_positive,
                                        size_t *out_negative);

// Solves for an approximate zero of the odd linear map given by a
// row-major `n x (n+1)` matrix; returns the witness document as JSON.
//
// # Safety
// Pointer arguments must be valid for the call: handles must come
// from this library and not be freed yet, strings must be
// NUL-terminated, and out-pointers must be writable.
enum FwStatus fw_borsuk_solve_linear(const struct FwComplex *complex,
                                     const double *entries,
                                     size_t entry_count,
                                     size_t refinements,
                                     char **out_witness_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FANWALK_H */
