#ifndef OPERAD_H
#define OPERAD_H

#include <stddef.h>
#include <stdint.h>

#define OPERAD_OK 0

#define OPERAD_ERR_NULL 1

#define OPERAD_ERR_UTF8 2

#define OPERAD_ERR_UNKNOWN_MODEL 3

#define OPERAD_ERR_PARSE 4

#define OPERAD_ERR_COMPUTE 5

/**
 * the computation ran and the property does not hold
 */
#define OPERAD_CHECK_FAILED 6

#define OPERAD_ERR_PANIC 7

/**
 * Opaque handle to a presentation, possibly with a differential.
 */
struct OperadModel;

/**
 * Message for the last failed call on this thread; empty after a success. Valid until the next call.
 */
const char *operad_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void operad_string_free(char *s);

/**
 * Builtin model by name; dg models are generated with at most `inputs` inputs.
 *
 * # Safety
 * `name` is a NUL-terminated string, `out` a valid pointer.
 */
int32_t operad_model_builtin(const char *name, size_t inputs, struct OperadModel **out);

/**
 * Model from spec-file text.
 *
 * # Safety
 * `src` is a NUL-terminated string, `out` a valid pointer.
 */
int32_t operad_model_parse(const char *src, struct OperadModel **out);

/**
 * # Safety
 * `m` comes from this library or is null.
 */
void operad_model_free(struct OperadModel *m);

/**
 * # Safety
 * `m` is a live model handle.
 */
size_t operad_model_generator_count(const struct OperadModel *m);

/**
 * Spec-file text of the model.
 *
 * # Safety
 * `m` is a live model handle, `out` a valid pointer.
 */
int32_t operad_model_emit(const struct OperadModel *m, char **out);

/**
 * JSON object mapping signatures like "(2,1;o)" to quotient dimensions.
 *
 * # Safety
 * `m` is a live model handle, `out` a valid pointer.
 */
int32_t operad_model_dims_json(const struct OperadModel *m, size_t inputs, char **out);

/**
 * Checks d^2 = 0 on all cells with at most `inputs` inputs. Returns `OPERAD_CHECK_FAILED` with
 * the offending tree in `operad_last_error` when it does not vanish.
 *
 * # Safety
 * `m` is a live model handle; `checked` is null or valid.
 */
int32_t operad_model_d2(const struct OperadModel *m, size_t inputs, size_t *checked);

/**
 * JSON object: signature -> {degree: dimension} of the homology.
 *
 * # Safety
 * `m` is a live model handle, `out` a valid pointer.
 */
int32_t operad_model_homology_json(const struct OperadModel *m, size_t inputs, char **out);

/**
 * Checks a homotopy Leibniz pair given in the tensor text format on inputs with at most `n` symbols.
 *
 * # Safety
 * `src` is a NUL-terminated string.
 */
int32_t operad_shlp_check(const char *src,
                          size_t n);

/**
 * Runs the verification suite; `only` is null for every check or a comma-separated list of
 * names or ids. The JSON report is written to `out` even when checks fail.
 *
 * # Safety
 * `only` is null or a NUL-terminated string, `out` a valid pointer.
 */
int32_t operad_verify_json(const char *only, char **out);

const char *operad_version(void);

#endif  /* OPERAD_H */
