/* Compiled as C: the public header must stay C-compatible. */
#include <stdio.h>
#include <string.h>

#include "arcdet/arcdet.h"

int main(void) {
  arcdet_context* ctx = NULL;
  arcdet_configuration* cfg = NULL;
  arcdet_report* report = NULL;
  char* text = NULL;
  int ok = 1;
  if (arcdet_context_new(&ctx) != ARCDET_OK) return 1;
  if (arcdet_configuration_from_json("{\"d_matrix\": [[1, 0, 1], [0, 1, 1]]}", &cfg) != ARCDET_OK) return 1;
  if (arcdet_matroid(ctx, cfg, &report) != ARCDET_OK) return 1;
  if (arcdet_report_render(report, ARCDET_FORMAT_JSON, &text) != ARCDET_OK) return 1;
  ok = strstr(text, "\"basis_count\": 3") != NULL;
  if (!ok) fprintf(stderr, "unexpected report:\n%s", text);
  arcdet_string_free(text);
  arcdet_report_free(report);
  arcdet_configuration_free(cfg);
  arcdet_context_free(ctx);
  return ok ? 0 : 1;
}
