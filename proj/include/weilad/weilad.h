/* C interface to the weilad library.
 *
 * Every call that can fail returns a weilad_status and records the message
 * in the context (weilad_last_error). Strings returned through `char**`
 * are owned by the caller and released with weilad_string_free. Handles are
 * immutable once created and may be shared between threads; a context must
 * not be used by two threads at once. */
#ifndef WEILAD_H
#define WEILAD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define WEILAD_API __declspec(dllexport)
#else
#define WEILAD_API __attribute__((visibility("default")))
#endif

typedef enum weilad_status {
  WEILAD_OK = 0,
  WEILAD_BAD_PARAMETER = 1,
  WEILAD_INFINITE_DIMENSION = 2,
  WEILAD_DUPLICATE_GENERATOR = 3,
  WEILAD_NOT_WELL_DEFINED = 4,
  WEILAD_AUGMENTATION_VIOLATION = 5,
  WEILAD_SOURCE_TARGET_MISMATCH = 6,
  WEILAD_ALGEBRA_MISMATCH = 7,
  WEILAD_SCALAR_MODE_MISMATCH = 8,
  WEILAD_NOT_A_UNIT = 9,
  WEILAD_DOMAIN_ERROR = 10,
  WEILAD_UNSUPPORTED_IN_RATIONAL_MODE = 11,
  WEILAD_PARSE_ERROR = 12,
  WEILAD_UNKNOWN_FUNCTION = 13,
  WEILAD_UNKNOWN_VARIABLE = 14,
  WEILAD_SIZE_LIMIT = 15,
  WEILAD_NON_NATURAL = 16,
  WEILAD_UNAVAILABLE_IN_MODEL = 17,
  WEILAD_INVALID_INSTANCE = 18,
  WEILAD_IO_ERROR = 19,
  WEILAD_INTERNAL = 99
} weilad_status;

typedef enum weilad_scalar { WEILAD_RATIONAL = 0, WEILAD_FLOAT = 1 } weilad_scalar;
typedef enum weilad_format { WEILAD_JSON = 0, WEILAD_HUMAN = 1 } weilad_format;
/* Jet entries as f^(i)(a) (derivative) or f^(i)(a)/i! (raw coefficient). */
typedef enum weilad_normalization { WEILAD_DERIVATIVE = 0, WEILAD_RAW = 1 } weilad_normalization;

typedef struct weilad_context weilad_context;
typedef struct weilad_algebra weilad_algebra;
typedef struct weilad_function weilad_function;
typedef struct weilad_morphism weilad_morphism;

WEILAD_API const char* weilad_version(void);
/* "BadParameter", "ParseError", ... ; "Unknown" for other values. */
WEILAD_API const char* weilad_status_name(int status);

WEILAD_API weilad_context* weilad_context_new(void);
WEILAD_API void weilad_context_free(weilad_context* ctx);
/* Enumeration bound for the finite model; 0 restores the default
 * (10^7, or WEILAD_MAX_ENUM from the environment). */
WEILAD_API weilad_status weilad_set_max_enum(weilad_context* ctx, uint64_t max_enum);
WEILAD_API const char* weilad_last_error(const weilad_context* ctx);
WEILAD_API weilad_status weilad_last_status(const weilad_context* ctx);
/* {"error": {"code": n, "name": "...", "message": "..."}} for the last error. */
WEILAD_API weilad_status weilad_last_error_json(weilad_context* ctx, char** out);
WEILAD_API void weilad_string_free(char* s);

/* ---- algebras ---------------------------------------------------------- */

/* `base`, `dual:n`, `jet:r`, `mixed:r1,r2,...`, products `A*B`, or a path
 * to an algebra text file. */
WEILAD_API weilad_status weilad_algebra_load(weilad_context* ctx, const char* spec, weilad_algebra** out);
WEILAD_API weilad_status weilad_algebra_tensor(weilad_context* ctx, const weilad_algebra* a, const weilad_algebra* b,
                                               weilad_algebra** out);
WEILAD_API void weilad_algebra_free(weilad_algebra* w);
WEILAD_API size_t weilad_algebra_dim(const weilad_algebra* w);
/* Basis, nilpotency index, relations, multiplication table, validation. */
WEILAD_API weilad_status weilad_algebra_describe(weilad_context* ctx, const weilad_algebra* w, weilad_format format,
                                                 char** out);
/* Describes A (x) B together with its factors and pair indexing. */
WEILAD_API weilad_status weilad_tensor_describe(weilad_context* ctx, const weilad_algebra* a, const weilad_algebra* b,
                                                weilad_format format, char** out);

/* ---- smooth maps -------------------------------------------------------- */

/* A single inline expression (variables inferred in order of appearance),
 * or function-file text starting with `vars`. */
WEILAD_API weilad_status weilad_function_parse(weilad_context* ctx, const char* text, weilad_function** out);
WEILAD_API weilad_status weilad_function_load(weilad_context* ctx, const char* path, weilad_function** out);
WEILAD_API void weilad_function_free(weilad_function* f);
WEILAD_API size_t weilad_function_arity(const weilad_function* f);

/* Derivatives up to `order` of a one-variable map at `at`. */
WEILAD_API weilad_status weilad_jet(weilad_context* ctx, const weilad_function* f, const char* at, unsigned order,
                                    weilad_scalar scalar, weilad_normalization norm, weilad_format format, char** out);
/* Mixed partials; `at` and `orders` are comma-separated, one per variable. */
WEILAD_API weilad_status weilad_partials(weilad_context* ctx, const weilad_function* f, const char* at,
                                         const char* orders, weilad_scalar scalar, weilad_normalization norm,
                                         weilad_format format, char** out);

/* ---- morphisms -------------------------------------------------------- */

/* `images` holds one element of `target` per generator of `source`,
 * separated by ';' (e.g. "x_1 + x_2"). */
WEILAD_API weilad_status weilad_morphism_from_images(weilad_context* ctx, const weilad_algebra* source,
                                                     const weilad_algebra* target, const char* images,
                                                     weilad_morphism** out);
WEILAD_API void weilad_morphism_free(weilad_morphism* m);
/* Pushes an element of the source (generator expression or `[c0, c1, ...]`). */
WEILAD_API weilad_status weilad_morphism_apply(weilad_context* ctx, const weilad_morphism* m, const char* value,
                                               weilad_format format, char** out);

/* ---- law suite ----------------------------------------------------------- */

/* `law` is NULL or "" for every law; `defect` is NULL, "none",
 * "struct_const", "non_natural" or "exp_reindex". `all_passed` receives 1
 * when no law run failed. */
WEILAD_API weilad_status weilad_laws_run(weilad_context* ctx, const char* law, weilad_scalar scalar, uint64_t seed,
                                         const char* defect, weilad_format format, int* all_passed, char** out);
WEILAD_API weilad_status weilad_laws_list(weilad_context* ctx, weilad_format format, char** out);

/* ---- finite model -------------------------------------------------------- */

/* `input` is a path or `bundled:<name>`; `check` is ccc, slice-ccc,
 * exp-compat or localization. Probe sets have size <= probe_max_size. */
WEILAD_API weilad_status weilad_model_check(weilad_context* ctx, const char* input, const char* check,
                                            unsigned probe_max_size, weilad_format format, int* passed, char** out);
WEILAD_API weilad_status weilad_model_list(weilad_context* ctx, weilad_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* WEILAD_H */
