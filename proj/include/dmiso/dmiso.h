/* C interface to the dmiso library. All documents are UTF-8 JSON text.
 * Results own their strings; they stay valid until dmiso_result_free. */
#ifndef DMISO_H
#define DMISO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DMISO_API __declspec(dllexport)
#else
#define DMISO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Equal to the CLI exit codes. */
typedef enum dmiso_status {
  DMISO_OK = 0,
  DMISO_ERR_INPUT = 2,
  DMISO_INCONCLUSIVE = 3,
  DMISO_ERR_INTERNAL = 4
} dmiso_status;

typedef struct dmiso_context dmiso_context;
typedef struct dmiso_result dmiso_result;

DMISO_API const char* dmiso_version(void);

/* policy_json may be NULL for the defaults: z_prec 8, zeta_window [-8, 8),
 * tauinv_prec 16, ext_max 8, purity_max_iters 32, seed 0. */
DMISO_API dmiso_status dmiso_context_new(const char* policy_json, dmiso_context** out);
DMISO_API void dmiso_context_free(dmiso_context* ctx);
/* Normalized policy as JSON. */
DMISO_API const char* dmiso_context_policy(const dmiso_context* ctx);
/* Message of the last call that could not produce a result. */
DMISO_API const char* dmiso_last_error(const dmiso_context* ctx);

/* Each command stores a result in *out whenever its arguments are non-null,
 * including partial reports for non-zero statuses. */
DMISO_API dmiso_status dmiso_analyze(dmiso_context* ctx, const char* drinfeld_json, dmiso_result** out);
/* sub: tensor (two documents), dual, purity (slope s/r), slopes, tate */
DMISO_API dmiso_status dmiso_isocrystal(dmiso_context* ctx, const char* sub, const char* const* docs, size_t ndocs,
                                        int64_t s, int64_t r, dmiso_result** out);
/* sigma(x) = a x + b; ring is AK, BOK, Bbar or BK. */
DMISO_API dmiso_status dmiso_solve(dmiso_context* ctx, const char* a_json, const char* b_json, const char* ring,
                                   int64_t prec, dmiso_result** out);
DMISO_API dmiso_status dmiso_tate(dmiso_context* ctx, const char* isocrystal_json, int64_t zprec, dmiso_result** out);
DMISO_API dmiso_status dmiso_weil(dmiso_context* ctx, const char* drinfeld_json, dmiso_result** out);
DMISO_API dmiso_status dmiso_corpus(dmiso_context* ctx, const char* dir, unsigned jobs, dmiso_result** out);
DMISO_API dmiso_status dmiso_verify(dmiso_context* ctx, const char* report_json, dmiso_result** out);

DMISO_API dmiso_status dmiso_result_status(const dmiso_result* res);
DMISO_API const char* dmiso_result_json(const dmiso_result* res);
DMISO_API const char* dmiso_result_markdown(const dmiso_result* res);
DMISO_API void dmiso_result_free(dmiso_result* res);

#ifdef __cplusplus
}
#endif

#endif
