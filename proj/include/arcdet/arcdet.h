/* C interface to the arcdet library. Every call returns an arcdet_status; on
 * failure arcdet_last_error() describes the problem for the calling thread.
 * Objects are opaque and owned by the caller, who releases them with the
 * matching *_free function. Strings returned through char** are released with
 * arcdet_string_free. */
#ifndef ARCDET_ARCDET_H
#define ARCDET_ARCDET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ARCDET_API
#else
#define ARCDET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum arcdet_status {
  ARCDET_OK = 0,
  ARCDET_ERR_PARSE = 1,
  ARCDET_ERR_INVALID_ARGUMENT = 2,
  ARCDET_ERR_FIELD_MISMATCH = 3,
  ARCDET_ERR_DIVISION_BY_ZERO = 4,
  ARCDET_ERR_TRUNCATION = 5,
  ARCDET_ERR_BUDGET = 6,
  ARCDET_ERR_VALIDATION = 7,
  ARCDET_ERR_IO = 8,
  ARCDET_ERR_INTERNAL = 9,
  ARCDET_ERR_NULL_ARGUMENT = 10
} arcdet_status;

typedef enum arcdet_format { ARCDET_FORMAT_JSON = 0, ARCDET_FORMAT_CSV = 1, ARCDET_FORMAT_TEXT = 2 } arcdet_format;

typedef enum arcdet_verdict {
  ARCDET_VERDICT_PASS = 0,
  ARCDET_VERDICT_FAIL = 1,
  ARCDET_VERDICT_AMBIGUOUS = 2,
  ARCDET_VERDICT_COMPUTED = 3,
  ARCDET_VERDICT_SKIPPED_BUDGET = 4
} arcdet_verdict;

typedef enum arcdet_contact_mode {
  ARCDET_MODE_AT_LEAST = 0,
  ARCDET_MODE_EXACTLY = 1,
  ARCDET_MODE_BELOW = 2
} arcdet_contact_mode;

typedef enum arcdet_strategy {
  ARCDET_STRATEGY_AUTO = 0,
  ARCDET_STRATEGY_LIFT = 1,
  ARCDET_STRATEGY_ENUMERATE = 2,
  ARCDET_STRATEGY_SAMPLE = 3
} arcdet_strategy;

typedef struct arcdet_context arcdet_context;
typedef struct arcdet_matrix arcdet_matrix;
typedef struct arcdet_ideal arcdet_ideal;
typedef struct arcdet_configuration arcdet_configuration;
typedef struct arcdet_jet arcdet_jet;
typedef struct arcdet_campaign arcdet_campaign;
typedef struct arcdet_report arcdet_report;

ARCDET_API const char* arcdet_version(void);
/* Message of the last failed call on this thread; "" if none. */
ARCDET_API const char* arcdet_last_error(void);
ARCDET_API const char* arcdet_status_name(arcdet_status status);
ARCDET_API void arcdet_string_free(char* s);

/* Run settings: primes (default 2,3), budget (default 2^28), seed (default 1),
 * counting strategy, worker threads for campaigns, wall-time recording. Primes,
 * budget and seed set here override a campaign's own values. */
ARCDET_API arcdet_status arcdet_context_new(arcdet_context** out);
ARCDET_API void arcdet_context_free(arcdet_context* ctx);
ARCDET_API arcdet_status arcdet_context_set_primes(arcdet_context* ctx, const uint32_t* primes, size_t count);
ARCDET_API arcdet_status arcdet_context_set_budget(arcdet_context* ctx, uint64_t budget);
ARCDET_API arcdet_status arcdet_context_set_seed(arcdet_context* ctx, uint64_t seed);
ARCDET_API arcdet_status arcdet_context_set_strategy(arcdet_context* ctx, arcdet_strategy strategy);
ARCDET_API arcdet_status arcdet_context_set_threads(arcdet_context* ctx, unsigned threads);
ARCDET_API arcdet_status arcdet_context_set_timings(arcdet_context* ctx, int enabled);

/* Documents: matrix {"vars", "rows"}; ideal {"vars", "generators"};
 * configuration {"d_matrix"} or {"graph": {"vertices", "edges"}};
 * jet {"level", "coefficients", "prime"?}. */
ARCDET_API arcdet_status arcdet_matrix_from_json(const char* json, arcdet_matrix** out);
ARCDET_API arcdet_status arcdet_matrix_from_file(const char* path, arcdet_matrix** out);
ARCDET_API arcdet_status arcdet_matrix_shape(const arcdet_matrix* m, size_t* rows, size_t* cols);
ARCDET_API void arcdet_matrix_free(arcdet_matrix* m);

ARCDET_API arcdet_status arcdet_ideal_from_json(const char* json, arcdet_ideal** out);
ARCDET_API arcdet_status arcdet_ideal_from_file(const char* path, arcdet_ideal** out);
/* The ideal of maximal minors. */
ARCDET_API arcdet_status arcdet_ideal_from_matrix(const arcdet_matrix* m, arcdet_ideal** out);
ARCDET_API arcdet_status arcdet_ideal_size(const arcdet_ideal* ideal, size_t* generators, size_t* vars);
ARCDET_API void arcdet_ideal_free(arcdet_ideal* ideal);

ARCDET_API arcdet_status arcdet_configuration_from_json(const char* json, arcdet_configuration** out);
ARCDET_API arcdet_status arcdet_configuration_from_file(const char* path, arcdet_configuration** out);
ARCDET_API void arcdet_configuration_free(arcdet_configuration* cfg);

ARCDET_API arcdet_status arcdet_jet_from_json(const char* json, arcdet_jet** out);
ARCDET_API arcdet_status arcdet_jet_from_file(const char* path, arcdet_jet** out);
ARCDET_API void arcdet_jet_free(arcdet_jet* jet);

/* Operations. Each produces a report; see arcdet_report_render. */
ARCDET_API arcdet_status arcdet_lct(const arcdet_context* ctx, const arcdet_ideal* ideal, unsigned max_m,
                                    arcdet_report** out);
ARCDET_API arcdet_status arcdet_lct_w(const arcdet_context* ctx, const arcdet_matrix* m, unsigned max_m,
                                      arcdet_report** out);
ARCDET_API arcdet_status arcdet_corollary(const arcdet_context* ctx, const arcdet_matrix* m, unsigned max_m,
                                          arcdet_report** out);
/* constraint: NULL, "y-unit", "y-order:p" or "stratum:l1,..,lr" (the latter
 * needs stratum_matrix over the ideal's variables). */
ARCDET_API arcdet_status arcdet_count(const arcdet_context* ctx, const arcdet_ideal* ideal, arcdet_contact_mode mode,
                                      unsigned m, unsigned level, const char* constraint,
                                      const arcdet_matrix* stratum_matrix, arcdet_report** out);
ARCDET_API arcdet_status arcdet_profile(const arcdet_context* ctx, const arcdet_matrix* m, const arcdet_jet* jet,
                                        arcdet_report** out);
ARCDET_API arcdet_status arcdet_snf(const arcdet_context* ctx, const arcdet_matrix* m, const arcdet_jet* jet,
                                    arcdet_report** out);
/* level < 0: each m is counted at level m. */
ARCDET_API arcdet_status arcdet_strata(const arcdet_context* ctx, const arcdet_matrix* m, const unsigned* ms,
                                       size_t m_count, int level, arcdet_report** out);
ARCDET_API arcdet_status arcdet_fiber(const arcdet_context* ctx, const unsigned* lambda, size_t r, const unsigned* ms,
                                      size_t m_count, unsigned level, arcdet_report** out);
/* Cells (ms[i], ps[i]); level < 0: each cell at level m. */
ARCDET_API arcdet_status arcdet_cone(const arcdet_context* ctx, const arcdet_matrix* m, const unsigned* ms,
                                     const unsigned* ps, size_t cells, int level, arcdet_report** out);
/* max_m == 0: the Patterson matrix and support expansion only. */
ARCDET_API arcdet_status arcdet_patterson(const arcdet_context* ctx, const arcdet_configuration* cfg, unsigned max_m,
                                          arcdet_report** out);
ARCDET_API arcdet_status arcdet_matroid(const arcdet_context* ctx, const arcdet_configuration* cfg,
                                        arcdet_report** out);
ARCDET_API arcdet_status arcdet_one_generic_configuration(const arcdet_context* ctx, const arcdet_configuration* cfg,
                                                          arcdet_report** out);
ARCDET_API arcdet_status arcdet_one_generic_matrix(const arcdet_context* ctx, const arcdet_matrix* m,
                                                   arcdet_report** out);

/* Campaigns. Validation problems are all listed in the error message. */
ARCDET_API arcdet_status arcdet_campaign_from_json(const char* json, arcdet_campaign** out);
ARCDET_API arcdet_status arcdet_campaign_from_file(const char* path, arcdet_campaign** out);
ARCDET_API arcdet_status arcdet_campaign_builtin(const char* name, arcdet_campaign** out);
/* JSON array of built-in campaign names. */
ARCDET_API arcdet_status arcdet_builtin_names(char** out);
ARCDET_API arcdet_status arcdet_campaign_task_count(const arcdet_campaign* campaign, size_t* count);
ARCDET_API void arcdet_campaign_free(arcdet_campaign* campaign);
ARCDET_API arcdet_status arcdet_run_campaign(const arcdet_context* ctx, const arcdet_campaign* campaign,
                                             arcdet_report** out);

ARCDET_API arcdet_verdict arcdet_report_verdict(const arcdet_report* report);
ARCDET_API arcdet_status arcdet_report_render(const arcdet_report* report, arcdet_format format, char** out);
ARCDET_API void arcdet_report_free(arcdet_report* report);

#ifdef __cplusplus
}
#endif

#endif
