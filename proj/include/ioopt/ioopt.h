/* C interface to the ioopt library.
 *
 * Handles are opaque. Every call returns an ioopt_status; on failure the
 * message is available from ioopt_last_error() on the calling thread until
 * the next call on that thread. Strings returned through out-parameters are
 * owned by the caller and released with ioopt_string_free().
 */
#ifndef IOOPT_IOOPT_H
#define IOOPT_IOOPT_H

#include <stddef.h>

#if defined(_WIN32)
#define IOOPT_API __declspec(dllexport)
#else
#define IOOPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ioopt_status {
  IOOPT_OK = 0,
  IOOPT_ERR_USAGE = 1,       /* bad arguments, unknown command or option */
  IOOPT_ERR_PARSE = 2,       /* malformed table, list or config file */
  IOOPT_ERR_MODEL = 3,       /* reducible, periodic, singular, rho >= 1 */
  IOOPT_ERR_CONVERGENCE = 4, /* eigen iteration budget exhausted */
  IOOPT_ERR_DOMAIN = 5,      /* argument outside an operation's domain */
  IOOPT_ERR_NUMERIC = 6,     /* overflow or non-finite values in float mode */
  IOOPT_ERR_IO = 7,          /* file could not be read or written */
  IOOPT_ERR_INTERNAL = 8,
  IOOPT_ERR_INVARIANT = 9    /* a checked property failed */
} ioopt_status;

typedef struct ioopt_matrix ioopt_matrix;
typedef struct ioopt_options ioopt_options;
typedef struct ioopt_result ioopt_result;

IOOPT_API const char* ioopt_version(void);
IOOPT_API const char* ioopt_last_error(void);
IOOPT_API const char* ioopt_status_name(ioopt_status status);
IOOPT_API void ioopt_string_free(char* s);

/* Structure matrices. */
IOOPT_API ioopt_status ioopt_matrix_load_csv(const char* path, ioopt_matrix** out);
IOOPT_API ioopt_status ioopt_matrix_from_csv_text(const char* text, ioopt_matrix** out);
/* Row-major d*d values; labels may be NULL for p1..pd. */
IOOPT_API ioopt_status ioopt_matrix_create(size_t d, const double* values, const char* const* labels,
                                           ioopt_matrix** out);
IOOPT_API void ioopt_matrix_free(ioopt_matrix* m);
IOOPT_API size_t ioopt_matrix_dim(const ioopt_matrix* m);
/* Table text with exact decimal entries. */
IOOPT_API ioopt_status ioopt_matrix_to_csv(const ioopt_matrix* m, char** out);

/* Run options, "key = value" as in config files. */
IOOPT_API ioopt_status ioopt_options_create(ioopt_options** out);
IOOPT_API void ioopt_options_free(ioopt_options* o);
IOOPT_API ioopt_status ioopt_options_set(ioopt_options* o, const char* key, const char* value);
IOOPT_API ioopt_status ioopt_options_load_file(ioopt_options* o, const char* path);
/* Output directory configured through the "out" key, or NULL. */
IOOPT_API const char* ioopt_options_output_dir(const ioopt_options* o);

/* Runs a subcommand: inspect, eigen, transform, stability, rank, classify,
 * forecast, optimize, check-invariants. A NULL options pointer means defaults.
 * check-invariants reports IOOPT_ERR_INVARIANT when a property fails but
 * still produces a result. */
IOOPT_API ioopt_status ioopt_run(const char* command, const ioopt_matrix* m, const ioopt_options* o,
                                 ioopt_result** out);
IOOPT_API void ioopt_result_free(ioopt_result* r);
/* JSON report (sorted keys, trailing newline); owned by the result. */
IOOPT_API const char* ioopt_result_json(const ioopt_result* r);
IOOPT_API size_t ioopt_result_artifact_count(const ioopt_result* r);
IOOPT_API const char* ioopt_result_artifact_name(const ioopt_result* r, size_t i);
IOOPT_API const char* ioopt_result_artifact_data(const ioopt_result* r, size_t i);
/* Writes <command>.json and every artifact into dir atomically. */
IOOPT_API ioopt_status ioopt_result_write(const ioopt_result* r, const char* dir);

/* Maximal eigentriple into caller buffers of length d (u, v) and 1 (rho). */
IOOPT_API ioopt_status ioopt_eigentriple(const ioopt_matrix* m, const ioopt_options* o, double* rho, double* u,
                                         double* v);

#ifdef __cplusplus
}
#endif

#endif
