#ifndef MFOUR_H
#define MFOUR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MFOUR_API __declspec(dllexport)
#else
#define MFOUR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mfour_status {
  MFOUR_OK = 0,
  MFOUR_E_INVALID_ARGUMENT = 1,
  MFOUR_E_SYNTAX = 2,
  MFOUR_E_UNSUPPORTED_INPUT = 3,
  MFOUR_E_NOT_A_MORPHISM = 4,
  MFOUR_E_WINDOW = 5,
  MFOUR_E_MISMATCH = 6,
  MFOUR_E_NOT_MONODROMIC = 7,
  MFOUR_E_SIZE_GUARD = 8,
  MFOUR_E_INTERNAL = 99
} mfour_status;

typedef enum mfour_verdict { MFOUR_PASS = 0, MFOUR_FAIL = 1, MFOUR_DIAGNOSTIC = 2 } mfour_verdict;

/* Operator in normal form; immutable once created. */
typedef struct mfour_operator mfour_operator;

MFOUR_API const char* mfour_version(void);

/* Message and syntax offset of the last failed call on this thread. */
MFOUR_API const char* mfour_last_error(void);
MFOUR_API size_t mfour_last_error_offset(void);
MFOUR_API const char* mfour_status_name(mfour_status status);

/* Strings returned through char** are owned by the caller. */
MFOUR_API void mfour_string_free(char* s);

/* algebra: "shift", "weyl" or "laurent-weyl"; rank applies to weyl. */
MFOUR_API mfour_status mfour_operator_parse(const char* text, const char* algebra, int rank, mfour_operator** out);
MFOUR_API void mfour_operator_free(mfour_operator* op);
MFOUR_API mfour_status mfour_operator_to_string(const mfour_operator* op, char** out);
MFOUR_API const char* mfour_operator_algebra(const mfour_operator* op);
MFOUR_API mfour_status mfour_operator_add(const mfour_operator* a, const mfour_operator* b, mfour_operator** out);
MFOUR_API mfour_status mfour_operator_mul(const mfour_operator* a, const mfour_operator* b, mfour_operator** out);
MFOUR_API mfour_status mfour_operator_equal(const mfour_operator* a, const mfour_operator* b, int* out);

/* Remainder of elem modulo the right ideal generated by relation. */
MFOUR_API mfour_status mfour_reduce(const mfour_operator* elem, const mfour_operator* relation, mfour_operator** out);
/* laurent-weyl (or rank-1 weyl) -> shift, and back. */
MFOUR_API mfour_status mfour_mellin(const mfour_operator* op, mfour_operator** out);
MFOUR_API mfour_status mfour_inverse_mellin(const mfour_operator* op, mfour_operator** out);
/* x_i -> -d_i, d_i -> x_i */
MFOUR_API mfour_status mfour_fourier(const mfour_operator* op, mfour_operator** out);

/* JSON table of a trace function; object is "B", "I0:<n>" or "psi". */
MFOUR_API mfour_status mfour_trace(int q, const char* object, char** json);

#define MFOUR_UNSET INT32_MIN

typedef struct mfour_check_params {
  int32_t q, d, n, window, ell, r, nprime, m;
  const char* chi; /* rational literal, NULL for default */
  uint64_t seed;
} mfour_check_params;

MFOUR_API void mfour_check_params_init(mfour_check_params* p);
MFOUR_API size_t mfour_check_count(void);
MFOUR_API const char* mfour_check_name(size_t index);
MFOUR_API mfour_status mfour_check_run(const char* check, const mfour_check_params* params, int with_timings, char** json,
                                       mfour_verdict* verdict);
/* profile: "quick" or "full"; threads 0 picks the hardware count. */
MFOUR_API mfour_status mfour_run_all(const char* profile, uint64_t seed, unsigned threads, int with_timings, char** json,
                                     int* ok);

#ifdef __cplusplus
}
#endif

#endif
