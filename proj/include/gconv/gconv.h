#ifndef GCONV_GCONV_H
#define GCONV_GCONV_H

#include <stddef.h>

#if defined(_WIN32)
#define GCONV_API __declspec(dllexport)
#else
#define GCONV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gconv_status {
  GCONV_OK = 0,
  GCONV_E_ARGUMENT = 1,  /* null pointer or out-of-range index */
  GCONV_E_PARSE = 2,     /* malformed spec, label or JSON */
  GCONV_E_MISMATCH = 3,  /* incompatible spaces, shapes or subgroups */
  GCONV_E_RESOURCE = 4,  /* group larger than GCONV_MAX_ORDER */
  GCONV_E_NUMERICAL = 5,
  GCONV_E_INTERNAL = 6
} gconv_status;

typedef struct gconv_group gconv_group;
typedef struct gconv_space gconv_space;
typedef struct gconv_function gconv_function;

/* Message for the last failing call on this thread; never null. */
GCONV_API const char* gconv_last_error(void);
GCONV_API const char* gconv_status_name(gconv_status s);
GCONV_API const char* gconv_version(void);

/* Strings returned through char** are owned by the caller. */
GCONV_API void gconv_string_free(char* s);

/* "Z12", "D4", "S4", "Z8xZ8", ... */
GCONV_API gconv_status gconv_group_create(const char* spec, gconv_group** out);
GCONV_API void gconv_group_free(gconv_group* g);
GCONV_API gconv_status gconv_group_order(const gconv_group* g, size_t* out);
GCONV_API gconv_status gconv_group_multiply(const gconv_group* g, size_t a, size_t b, size_t* out);
GCONV_API gconv_status gconv_group_inverse(const gconv_group* g, size_t a, size_t* out);
GCONV_API gconv_status gconv_group_label(const gconv_group* g, size_t a, char** out);
GCONV_API gconv_status gconv_group_parse(const gconv_group* g, const char* label, size_t* out);

/* quotient_json: {"kind": "LEFT", "H": ["(12)"]}, or null / "" for G. */
GCONV_API gconv_status gconv_space_create(const gconv_group* g, const char* quotient_json, gconv_space** out);
GCONV_API void gconv_space_free(gconv_space* s);
GCONV_API gconv_status gconv_space_size(const gconv_space* s, size_t* out);
/* Index of g . x; GROUP and LEFT spaces only. */
GCONV_API gconv_status gconv_space_act(const gconv_space* s, size_t g, size_t x, size_t* out);
GCONV_API gconv_status gconv_space_to_json(const gconv_space* s, char** out);

/* values: size * rows * cols interleaved (re, im) pairs, point-major,
   each value row-major. */
GCONV_API gconv_status gconv_function_create(const gconv_space* s, size_t rows, size_t cols, const double* values,
                                             gconv_function** out);
GCONV_API gconv_status gconv_function_from_json(const char* json, gconv_function** out);
GCONV_API gconv_status gconv_function_to_json(const gconv_function* f, char** out);
GCONV_API void gconv_function_free(gconv_function* f);
GCONV_API gconv_status gconv_function_shape(const gconv_function* f, size_t* size, size_t* rows, size_t* cols);
/* Copies size * rows * cols (re, im) pairs into values. */
GCONV_API gconv_status gconv_function_values(const gconv_function* f, double* values);

/* conv_case: 0 for the plain group convolution of lifts, 1..3 for the
   three quotient cases. */
GCONV_API gconv_status gconv_convolve(const gconv_function* f, const gconv_function* g, int conv_case, int via_fourier,
                                      gconv_function** out);

/* Runs one command (group, irreps, fourier, convolve, solve-basis, net,
   demo, verify) on a JSON request and returns the JSON report. pass is
   set to 1 when every check passed. */
GCONV_API gconv_status gconv_run(const char* command, const char* request_json, char** report_json, int* pass);
/* Plain-text table of a JSON report. */
GCONV_API gconv_status gconv_report_table(const char* report_json, char** out);

#ifdef __cplusplus
}
#endif

#endif
