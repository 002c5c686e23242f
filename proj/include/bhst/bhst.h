/* C interface to the bhst library. All reports are returned as JSON strings
 * owned by the caller and released with bhst_string_free. Functions return a
 * bhst_status; on failure bhst_last_error() describes the problem (per thread). */
#ifndef BHST_BHST_H
#define BHST_BHST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BHST_API __declspec(dllexport)
#else
#define BHST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bhst_status {
  BHST_OK = 0,
  BHST_E_INVALID_ARGUMENT = 1,
  BHST_E_NEGATIVE_ENTRY = 2,
  BHST_E_SINGULAR = 3,
  BHST_E_NO_DECOMPOSITION = 4,
  BHST_E_DET_NOT_DIVIDING = 5,
  BHST_E_DOMAIN = 6,
  BHST_E_PRECISION = 7,
  BHST_E_CAPACITY = 8,
  BHST_E_HYPOTHESIS = 9,
  BHST_E_UNSUPPORTED = 10,
  BHST_E_INTERNAL = 11,
  BHST_E_PARSE = 12
} bhst_status;

typedef enum bhst_group_kind {
  BHST_GROUP_J = 0,    /* <J> */
  BHST_GROUP_ALL = 1,  /* the full group G_A */
  BHST_GROUP_GENERATORS = 2
} bhst_group_kind;

typedef enum bhst_verdict {
  BHST_VERDICT_EQUAL = 0,
  BHST_VERDICT_CONGRUENT_ONLY = 1,
  BHST_VERDICT_MISMATCH = 2
} bhst_verdict;

typedef struct bhst_matrix bhst_matrix;
typedef struct bhst_group bhst_group;

BHST_API const char* bhst_version(void);
BHST_API const char* bhst_last_error(void);
BHST_API const char* bhst_status_name(bhst_status status);
BHST_API void bhst_string_free(char* s);

/* entries is row-major n*n. p == 0 selects the smallest admissible prime. */
BHST_API bhst_status bhst_matrix_create(const int64_t* entries, size_t n, uint64_t p,
                                        bhst_matrix** out);
/* Accepts "[[2,1],[0,3]]". */
BHST_API bhst_status bhst_matrix_parse(const char* text, uint64_t p, bhst_matrix** out);
BHST_API void bhst_matrix_free(bhst_matrix* m);
BHST_API uint64_t bhst_matrix_prime(const bhst_matrix* m);
BHST_API size_t bhst_matrix_dim(const bhst_matrix* m);
BHST_API bhst_status bhst_auto_prime(const int64_t* entries, size_t n, uint64_t* out);

/* generators: count vectors of length n, row-major; ignored unless kind is
 * BHST_GROUP_GENERATORS. */
BHST_API bhst_status bhst_group_create(const bhst_matrix* m, bhst_group_kind kind,
                                       const int64_t* generators, size_t count,
                                       bhst_group** out);
BHST_API void bhst_group_free(bhst_group* g);
BHST_API size_t bhst_group_order(const bhst_group* g);

BHST_API bhst_status bhst_validate_json(const bhst_matrix* m, char** out);
BHST_API bhst_status bhst_sectors_json(const bhst_matrix* m, const bhst_group* g, char** out);
BHST_API bhst_status bhst_hodge_json(const bhst_matrix* m, const bhst_group* g, char** out);
/* precision 0 selects the default policy. */
BHST_API bhst_status bhst_supertrace_json(const bhst_matrix* m, const bhst_group* g,
                                          int precision, char** out);
BHST_API bhst_status bhst_supertrace_mod_p_json(const bhst_matrix* m, char** out);
BHST_API bhst_status bhst_count_json(const bhst_matrix* m, const bhst_group* g, char** out);
/* verdict may be NULL. */
BHST_API bhst_status bhst_verify_json(const bhst_matrix* m, const bhst_group* g, int precision,
                                      char** out, bhst_verdict* verdict);
/* arg is "c/d". */
BHST_API bhst_status bhst_gamma_json(uint64_t p, const char* arg, int precision, char** out);
BHST_API bhst_status bhst_gauss_json(uint64_t p, int64_t t, int precision, char** out);
/* family: "elliptic", "k3", "examples" or "all". */
BHST_API bhst_status bhst_catalog_json(const char* family, char** out);
/* Looks up a K3 entry by exponents ("2,3,10,15") or any entry by name. */
BHST_API bhst_status bhst_catalog_lookup(const char* key, char** matrix_text, uint64_t* prime);

#ifdef __cplusplus
}
#endif

#endif /* BHST_BHST_H */
