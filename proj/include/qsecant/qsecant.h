/* C interface to the qsecant library.
 *
 * Every function returns a qsecant_status. On failure a message describing the
 * problem is available from qsecant_last_error() on the calling thread until
 * the next call into the library from that thread.
 *
 * Strings returned through char** out-parameters are allocated by the library
 * and must be released with qsecant_string_free. State handles are released
 * with qsecant_state_free. Handles are immutable and may be shared between
 * threads.
 */
#ifndef QSECANT_H
#define QSECANT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QSECANT_API __declspec(dllexport)
#else
#define QSECANT_API __attribute__((visibility("default")))
#endif

typedef enum qsecant_status {
  QSECANT_OK = 0,
  QSECANT_INVALID_ARGUMENT = 1,
  QSECANT_PARSE = 2,
  QSECANT_DIMENSION = 3,
  QSECANT_NUMERICAL = 4,
  QSECANT_INTERNAL = 5
} qsecant_status;

typedef enum qsecant_format {
  QSECANT_FORMAT_JSON = 0,
  QSECANT_FORMAT_TEXT = 1,
  QSECANT_FORMAT_DOT = 2,
  QSECANT_FORMAT_CSV = 3
} qsecant_format;

typedef struct qsecant_state qsecant_state;

QSECANT_API const char* qsecant_version(void);
/* Schema version written as "spec_version" in every JSON document. */
QSECANT_API const char* qsecant_schema_version(void);
QSECANT_API const char* qsecant_last_error(void);
QSECANT_API const char* qsecant_status_name(qsecant_status status);
QSECANT_API void qsecant_string_free(char* s);

/* {"n": 3, "amplitudes": [[re, im], ...]} */
QSECANT_API qsecant_status qsecant_state_parse(const char* json, qsecant_state** out);
/* Constructor description, e.g. {"name": "dicke", "n": 4, "l": 2}. */
QSECANT_API qsecant_status qsecant_state_build(const char* spec_json, qsecant_state** out);
/* re_im holds 2^(n+1) doubles: re_0, im_0, re_1, im_1, ... */
QSECANT_API qsecant_status qsecant_state_from_amplitudes(int n, const double* re_im, qsecant_state** out);
QSECANT_API void qsecant_state_free(qsecant_state* state);
QSECANT_API qsecant_status qsecant_state_qubits(const qsecant_state* state, int* n);
QSECANT_API qsecant_status qsecant_state_amplitude(const qsecant_state* state, size_t index, double* re,
                                                   double* im);
QSECANT_API qsecant_status qsecant_state_to_json(const qsecant_state* state, char** out);
/* JSON array of the constructor names understood by qsecant_state_build. */
QSECANT_API qsecant_status qsecant_constructor_names(char** out);

QSECANT_API qsecant_status qsecant_multirank(const qsecant_state* state, double rank_tol, char** json_out);

/* options_json may be NULL or contain any of rank_tol, fit_tol, restarts, iters
 * and seed. format is JSON or TEXT. *undecided (optional) is set to 1 when no
 * confident label could be given. */
QSECANT_API qsecant_status qsecant_classify(const qsecant_state* state, const char* options_json,
                                            qsecant_format format, char** out, int* undecided);

/* options: n, samples, seed, generators (array of "haar", "structured",
 * "symmetric", "separable"), with_secant and the fit options. Output is CSV. */
QSECANT_API qsecant_status qsecant_census(const char* options_json, char** csv_out);

/* options: family ("A", "B" or "C"), eps_from, eps_to, steps; optional source
 * and target state documents. *passed (optional) receives the verdict. */
QSECANT_API qsecant_status qsecant_limit(const char* options_json, char** json_out, int* passed);

/* Degree-m invariant projection norm and, for three qubits, the hyperdeterminant. */
QSECANT_API qsecant_status qsecant_invariant(const qsecant_state* state, int m, char** json_out);

/* Four-qubit degeneration graph as DOT or JSON. */
QSECANT_API qsecant_status qsecant_hasse(int n, qsecant_format format, char** out);

QSECANT_API qsecant_status qsecant_family_count(int n, int* out);

#ifdef __cplusplus
}
#endif

#endif /* QSECANT_H */
