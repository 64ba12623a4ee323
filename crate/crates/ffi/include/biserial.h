#ifndef BISERIAL_H
#define BISERIAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BiserialClaimStatus {
  BISERIAL_CLAIM_STATUS_PASS = 0,
  BISERIAL_CLAIM_STATUS_FAIL = 1,
  BISERIAL_CLAIM_STATUS_INCONCLUSIVE = 2,
} BiserialClaimStatus;

typedef enum BiserialIso {
  BISERIAL_ISO_ISOMORPHIC = 0,
  BISERIAL_ISO_NOT_ISOMORPHIC = 1,
  // No isomorphism found within the trial budget.
  BISERIAL_ISO_UNKNOWN = 2,
} BiserialIso;

typedef enum BiserialPdKind {
  // The zero module.
  BISERIAL_PD_KIND_MINUS_INFINITY = 0,
  BISERIAL_PD_KIND_FINITE = 1,
  BISERIAL_PD_KIND_INFINITE = 2,
  BISERIAL_PD_KIND_INCONCLUSIVE = 3,
} BiserialPdKind;

// Result code of every fallible call.
typedef enum BiserialStatus {
  BISERIAL_STATUS_OK = 0,
  BISERIAL_STATUS_NULL_POINTER = 1,
  BISERIAL_STATUS_INVALID_UTF8 = 2,
  BISERIAL_STATUS_INVALID_ARGUMENT = 3,
  BISERIAL_STATUS_PARSE = 4,
  // Module and algebra handles over different presentations or fields.
  BISERIAL_STATUS_MISMATCH = 5,
  BISERIAL_STATUS_PANIC = 6,
} BiserialStatus;

// Opaque algebra handle.
typedef struct BiserialAlgebra BiserialAlgebra;

// Opaque module handle.
typedef struct BiserialModule BiserialModule;

// A projective dimension verdict. `n` is set for `Finite`, `from` and `to` for `Infinite`,
// `n` holds the cutoff for `Inconclusive`.
typedef struct BiserialPd {
  enum BiserialPdKind kind;
  size_t n;
  size_t from;
  size_t to;
} BiserialPd;

// Parameters for [`biserial_verify`]; mirrors the CLI flags of the same names.
typedef struct BiserialVerifyConfig {
  size_t r;
  size_t m_max;
  size_t t_max;
  uint64_t seed;
  size_t cutoff;
  size_t samples;
  size_t max_dim;
} BiserialVerifyConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a successful call. The pointer
// stays valid until the next call on the same thread.
const char *biserial_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void biserial_string_free(char *s);

// Builds a family member from `lambda:r=<r>,m=<m>` or `lambda1prime:r=<r>` over `field`
// (`q` or `fp:<p>`).
//
// # Safety
// String arguments must be null or NUL-terminated; `out` must be null or writable.
enum BiserialStatus biserial_algebra_from_spec(const char *spec,
                                               const char *field,
                                               struct BiserialAlgebra **out);

// Parses a presentation in the `.alg` text format.
//
// # Safety
// As for [`biserial_algebra_from_spec`].
enum BiserialStatus biserial_algebra_parse(const char *text,
                                           const char *field,
                                           struct BiserialAlgebra **out);

// # Safety
// `alg` must be null or a live handle from this library.
void biserial_algebra_free(struct BiserialAlgebra *alg);

// Number of vertices; 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
size_t biserial_algebra_vertex_count(const struct BiserialAlgebra *alg);

// Dimension of the algebra; 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
size_t biserial_algebra_dim(const struct BiserialAlgebra *alg);

// The presentation in the `.alg` text format.
//
// # Safety
// `alg` must be a live handle; `out` must be writable.
enum BiserialStatus biserial_algebra_emit(const struct BiserialAlgebra *alg, char **out);

// Parses module-file text over `alg`; the algebra names in the text are ignored. With a null
// `name` the text must define exactly one module.
//
// # Safety
// `alg` must be a live handle; strings null or NUL-terminated; `out` writable.
enum BiserialStatus biserial_module_parse(const struct BiserialAlgebra *alg,
                                          const char *text,
                                          const char *name,
                                          struct BiserialModule **out);

// The indecomposable projective at `vertex`.
//
// # Safety
// As for [`biserial_module_parse`].
enum BiserialStatus biserial_module_projective(const struct BiserialAlgebra *alg,
                                               const char *vertex,
                                               struct BiserialModule **out);

// # Safety
// `m` must be null or a live handle from this library.
void biserial_module_free(struct BiserialModule *m);

// Total dimension; 0 for a null handle.
//
// # Safety
// `m` must be null or a live handle.
size_t biserial_module_total_dim(const struct BiserialModule *m);

// Dimension at the named vertex.
//
// # Safety
// `m` must be a live handle; `vertex` NUL-terminated; `out` writable.
enum BiserialStatus biserial_module_dim_at(const struct BiserialModule *m,
                                           const char *vertex,
                                           size_t *out);

// The first syzygy of `m` over `alg`.
//
// # Safety
// Handles must be live; `out` writable.
enum BiserialStatus biserial_module_syzygy(const struct BiserialAlgebra *alg,
                                           const struct BiserialModule *m,
                                           struct BiserialModule **out);

// Projective dimension of `m`, examining syzygies up to `cutoff`.
//
// # Safety
// Handles must be live; `out` writable.
enum BiserialStatus biserial_module_pd(const struct BiserialAlgebra *alg,
                                       const struct BiserialModule *m,
                                       size_t cutoff,
                                       uint64_t seed,
                                       struct BiserialPd *out);

// Searches for a certified isomorphism `a → b`.
//
// # Safety
// Handles must be live; `out` writable.
enum BiserialStatus biserial_module_iso(const struct BiserialModule *a,
                                        const struct BiserialModule *b,
                                        uint64_t seed,
                                        enum BiserialIso *out);

// Defaults matching the CLI.
struct BiserialVerifyConfig biserial_verify_config_default(void);

// Runs one claim check. `report_json` (optional) receives the full report as JSON.
//
// # Safety
// `claim` and `field` must be NUL-terminated; `status` writable; `report_json` null or writable.
enum BiserialStatus biserial_verify(const char *claim,
                                    const char *field,
                                    struct BiserialVerifyConfig config,
                                    enum BiserialClaimStatus *status,
                                    char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BISERIAL_H */
