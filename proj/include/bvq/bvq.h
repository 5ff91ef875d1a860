#ifndef BVQ_H
#define BVQ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define BVQ_API __declspec(dllexport)
#else
#define BVQ_API __attribute__((visibility("default")))
#endif

/* Status codes. BVQ_NO covers "not found" and "false" answers. */
typedef enum bvq_status {
    BVQ_OK = 0,
    BVQ_NO = 1,
    BVQ_ERR_PARSE = 2,
    BVQ_ERR_INVALID = 3,
    BVQ_ERR_PRECONDITION = 4,
    BVQ_ERR_BUDGET = 5,
    BVQ_ERR_INTERNAL = 6,
    BVQ_ERR_ARGUMENT = 7
} bvq_status;

typedef struct bvq_options bvq_options;
typedef struct bvq_result bvq_result;
typedef struct bvq_structure bvq_structure;
typedef struct bvq_process bvq_process;

BVQ_API const char* bvq_version(void);
BVQ_API const char* bvq_status_name(bvq_status s);

/* ---- options */
BVQ_API bvq_options* bvq_options_new(void);
BVQ_API void bvq_options_free(bvq_options* o);
BVQ_API void bvq_options_set_budget(bvq_options* o, uint64_t max_visited);
BVQ_API void bvq_options_set_depth(bvq_options* o, int depth);
/* "down" or "standard"; returns BVQ_ERR_ARGUMENT otherwise */
BVQ_API bvq_status bvq_options_set_fragment(bvq_options* o, const char* fragment);
BVQ_API void bvq_options_set_milner(bvq_options* o, int on);
BVQ_API void bvq_options_set_via_inversion(bvq_options* o, int on);
BVQ_API void bvq_options_set_json(bvq_options* o, int on);
BVQ_API void bvq_options_set_timing(bvq_options* o, int on);
BVQ_API void bvq_options_set_seed(bvq_options* o, uint64_t seed);

/* ---- results: every verb fills one; text is JSON when the json option is set */
BVQ_API bvq_status bvq_result_status(const bvq_result* r);
BVQ_API const char* bvq_result_text(const bvq_result* r);
BVQ_API const char* bvq_result_error(const bvq_result* r);
BVQ_API size_t bvq_result_error_pos(const bvq_result* r);
BVQ_API void bvq_result_free(bvq_result* r);

/* ---- structure and process handles */
BVQ_API bvq_status bvq_structure_parse(const char* text, bvq_structure** out, bvq_result** err);
BVQ_API char* bvq_structure_print(const bvq_structure* s);
BVQ_API bvq_structure* bvq_structure_canonical(const bvq_structure* s);
BVQ_API size_t bvq_structure_size(const bvq_structure* s);
BVQ_API int bvq_structure_congruent(const bvq_structure* a, const bvq_structure* b);
BVQ_API void bvq_structure_free(bvq_structure* s);

BVQ_API bvq_status bvq_process_parse(const char* text, bvq_process** out, bvq_result** err);
BVQ_API char* bvq_process_print(const bvq_process* p);
BVQ_API int bvq_process_is_simple(const bvq_process* p);
BVQ_API void bvq_process_free(bvq_process* p);

BVQ_API void bvq_string_free(char* s);

/* ---- verbs (result must be released with bvq_result_free) */
BVQ_API bvq_status bvq_canon(const char* structure, const bvq_options* o, bvq_result** out);
BVQ_API bvq_status bvq_congruent(const char* a, const char* b, const bvq_options* o, bvq_result** out);
BVQ_API bvq_status bvq_prove(const char* goal, const bvq_options* o, bvq_result** out);
BVQ_API bvq_status bvq_derive(const char* conclusion, const char* premise, const bvq_options* o,
                              bvq_result** out);
/* derivation documents are JSON text */
BVQ_API bvq_status bvq_standardize(const char* derivation_json, const bvq_options* o, bvq_result** out);
BVQ_API bvq_status bvq_reduce(const char* derivation_json, const bvq_options* o, bvq_result** out);
BVQ_API bvq_status bvq_classify(const char* structure, const bvq_options* o, bvq_result** out);
BVQ_API bvq_status bvq_compile(const char* e, const char* f, const char* alpha, const bvq_options* o,
                               bvq_result** out);
BVQ_API bvq_status bvq_reach(const char* e, const char* f, const char* alpha, const bvq_options* o,
                             bvq_result** out);
/* f and alpha may be NULL: then the one-step transitions of e are listed */
BVQ_API bvq_status bvq_lts(const char* e, const char* f, const char* alpha, const bvq_options* o,
                           bvq_result** out);
/* accepts a derivation, an LTS derivation, or a reach verdict */
BVQ_API bvq_status bvq_check(const char* document_json, const bvq_options* o, bvq_result** out);
BVQ_API bvq_status bvq_selftest(const bvq_options* o, bvq_result** out);

#ifdef __cplusplus
}
#endif

#endif
