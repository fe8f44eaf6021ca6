/* Exercises the shared library through its C header only. */
#include <stdio.h>
#include <string.h>

#include "dmiso/dmiso.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static const char* kCarlitz = "{\"kind\":\"drinfeld\",\"q\":2,\"base\":{\"kind\":\"finite\",\"p\":2},\"coeffs\":[[1],[1]]}";
static const char* kGoodLocal =
    "{\"base\":{\"kind\":\"local\",\"p\":3},\"coeffs\":[{\"coeffs\":[[1,[1]]]},{\"coeffs\":[[0,[1]]]},{\"coeffs\":[[0,[1]]]}]}";
static const char* kSlopeHalf =
    "{\"base\":{\"kind\":\"finite\",\"p\":2},\"tau_matrix\":[[{\"z_coeffs\":[]},{\"z_coeffs\":[[1,1]]}],"
    "[{\"z_coeffs\":[[0,1]]},{\"z_coeffs\":[]}]]}";

int main(void) {
  dmiso_context* ctx = NULL;
  dmiso_result* res = NULL;

  EXPECT(strcmp(dmiso_version(), "1.0.0") == 0);
  EXPECT(dmiso_context_new(NULL, NULL) == DMISO_ERR_INPUT);
  EXPECT(dmiso_context_new("{\"z_prec\":-1}", &ctx) == DMISO_ERR_INPUT);
  EXPECT(ctx != NULL && strlen(dmiso_last_error(ctx)) > 0);
  dmiso_context_free(ctx);
  ctx = NULL;

  EXPECT(dmiso_context_new("{\"z_prec\":6}", &ctx) == DMISO_OK);
  EXPECT(strstr(dmiso_context_policy(ctx), "\"z_prec\":6") != NULL);

  EXPECT(dmiso_analyze(ctx, kCarlitz, &res) == DMISO_OK);
  EXPECT(dmiso_result_status(res) == DMISO_OK);
  EXPECT(strstr(dmiso_result_json(res), "\"certificate\": \"purity\"") != NULL);
  EXPECT(strncmp(dmiso_result_markdown(res), "# dmiso report", 14) == 0);

  /* the report replays */
  dmiso_result* ver = NULL;
  EXPECT(dmiso_verify(ctx, dmiso_result_json(res), &ver) == DMISO_OK);
  EXPECT(strstr(dmiso_result_json(ver), "\"failed\": 0") != NULL);
  dmiso_result_free(ver);
  dmiso_result_free(res);

  EXPECT(dmiso_analyze(ctx, kGoodLocal, &res) == DMISO_OK);
  EXPECT(strstr(dmiso_result_json(res), "\"Good\"") != NULL);
  dmiso_result_free(res);

  /* malformed input still yields a report */
  EXPECT(dmiso_analyze(ctx, "{", &res) == DMISO_ERR_INPUT);
  EXPECT(res != NULL && strstr(dmiso_result_json(res), "input_error") != NULL);
  dmiso_result_free(res);
  EXPECT(dmiso_analyze(ctx, NULL, &res) == DMISO_ERR_INPUT);
  dmiso_result_free(res);
  EXPECT(dmiso_analyze(NULL, kCarlitz, &res) == DMISO_ERR_INPUT);
  EXPECT(dmiso_analyze(ctx, kCarlitz, NULL) == DMISO_ERR_INPUT);

  const char* docs[2] = {kSlopeHalf, kSlopeHalf};
  EXPECT(dmiso_isocrystal(ctx, "tensor", docs, 2, 0, 1, &res) == DMISO_OK);
  EXPECT(strstr(dmiso_result_json(res), "\"slope_identity\": true") != NULL);
  dmiso_result_free(res);
  EXPECT(dmiso_isocrystal(ctx, "purity", docs, 1, 1, 3, &res) == DMISO_OK);
  EXPECT(strstr(dmiso_result_json(res), "NotPureAt") != NULL);
  dmiso_result_free(res);

  EXPECT(dmiso_solve(ctx, "{\"base\":{\"kind\":\"finite\",\"p\":2},\"z_coeffs\":[[1,1]]}", "{\"z_coeffs\":[[0,1]]}", "BK", 8, &res) ==
         DMISO_OK);
  EXPECT(strstr(dmiso_result_json(res), "\"Solution\"") != NULL);
  dmiso_result_free(res);
  EXPECT(dmiso_solve(ctx, "{\"z_coeffs\":[[1,1]]}", NULL, "BK", 8, &res) == DMISO_ERR_INPUT);
  dmiso_result_free(res);

  EXPECT(dmiso_weil(ctx, kCarlitz, &res) == DMISO_OK);
  EXPECT(strstr(dmiso_result_json(res), "\"admissible\": true") != NULL);
  dmiso_result_free(res);

  EXPECT(dmiso_corpus(ctx, "/nonexistent/dmiso/corpus", 2, &res) == DMISO_ERR_INPUT);
  dmiso_result_free(res);

  EXPECT(dmiso_result_status(NULL) == DMISO_ERR_INPUT);
  EXPECT(strcmp(dmiso_result_json(NULL), "") == 0);
  dmiso_result_free(NULL);
  dmiso_context_free(ctx);

  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("all C API checks passed\n");
  return failures ? 1 : 0;
}
