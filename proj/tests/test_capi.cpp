#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

#include "arcdet/arcdet.h"
#include "json.hpp"

namespace {

constexpr const char* kGeneric = R"({"vars": ["x1", "x2", "x3", "x4"], "rows": [["x1", "x2"], ["x3", "x4"]]})";

std::string take(char* s) {
  std::string out(s);
  arcdet_string_free(s);
  return out;
}

struct Ctx {
  arcdet_context* ptr = nullptr;
  Ctx() { EXPECT_EQ(arcdet_context_new(&ptr), ARCDET_OK); }
  ~Ctx() { arcdet_context_free(ptr); }
};

nlohmann::json render_json(arcdet_report* report) {
  char* text = nullptr;
  EXPECT_EQ(arcdet_report_render(report, ARCDET_FORMAT_JSON, &text), ARCDET_OK);
  return nlohmann::json::parse(take(text));
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(arcdet_version(), "0.1.0");
  EXPECT_STREQ(arcdet_status_name(ARCDET_OK), "ok");
  EXPECT_STRNE(arcdet_status_name(ARCDET_ERR_IO), arcdet_status_name(ARCDET_ERR_PARSE));
}

TEST(CApi, NullArgumentsAreReported) {
  EXPECT_EQ(arcdet_context_new(nullptr), ARCDET_ERR_NULL_ARGUMENT);
  arcdet_matrix* m = nullptr;
  EXPECT_EQ(arcdet_matrix_from_json(nullptr, &m), ARCDET_ERR_NULL_ARGUMENT);
  EXPECT_EQ(m, nullptr);
  EXPECT_EQ(arcdet_report_verdict(nullptr), ARCDET_VERDICT_FAIL);
  arcdet_matrix_free(nullptr);
  arcdet_report_free(nullptr);
}

TEST(CApi, ErrorsCarryStatusAndMessage) {
  arcdet_matrix* m = nullptr;
  EXPECT_EQ(arcdet_matrix_from_json("{\"vars\": ", &m), ARCDET_ERR_PARSE);
  EXPECT_EQ(arcdet_matrix_from_json(R"({"vars": ["x1"], "rows": [["x2"]]})", &m), ARCDET_ERR_VALIDATION);
  EXPECT_NE(std::string(arcdet_last_error()).find("rows[0][0]"), std::string::npos) << arcdet_last_error();
  EXPECT_EQ(arcdet_matrix_from_file("/no/such/file.json", &m), ARCDET_ERR_IO);
  Ctx ctx;
  const uint32_t bad[] = {2, 4};
  EXPECT_EQ(arcdet_context_set_primes(ctx.ptr, bad, 2), ARCDET_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(arcdet_context_set_budget(ctx.ptr, 0), ARCDET_ERR_INVALID_ARGUMENT);
}

TEST(CApi, LctThroughMatrixIdeal) {
  Ctx ctx;
  const uint32_t primes[] = {3, 5};
  ASSERT_EQ(arcdet_context_set_primes(ctx.ptr, primes, 2), ARCDET_OK);
  arcdet_matrix* m = nullptr;
  ASSERT_EQ(arcdet_matrix_from_json(kGeneric, &m), ARCDET_OK);
  size_t rows = 0, cols = 0;
  ASSERT_EQ(arcdet_matrix_shape(m, &rows, &cols), ARCDET_OK);
  EXPECT_EQ(rows, 2u);
  arcdet_ideal* ideal = nullptr;
  ASSERT_EQ(arcdet_ideal_from_matrix(m, &ideal), ARCDET_OK);
  size_t gens = 0, vars = 0;
  ASSERT_EQ(arcdet_ideal_size(ideal, &gens, &vars), ARCDET_OK);
  EXPECT_EQ(gens, 1u);
  EXPECT_EQ(vars, 4u);
  arcdet_report* report = nullptr;
  ASSERT_EQ(arcdet_lct(ctx.ptr, ideal, 3, &report), ARCDET_OK);
  auto j = render_json(report);
  EXPECT_EQ(j["kind"], "lct");
  EXPECT_EQ(j["payload"]["estimate"]["value"], "1");
  EXPECT_EQ(j["environment"]["primes"], nlohmann::json::parse("[3, 5]"));
  EXPECT_FALSE(j.contains("wall_time_ms"));
  arcdet_report_free(report);
  arcdet_ideal_free(ideal);
  arcdet_matrix_free(m);
}

TEST(CApi, CountPreconditionsValidatedFirst) {
  Ctx ctx;
  arcdet_ideal* ideal = nullptr;
  ASSERT_EQ(arcdet_ideal_from_json(R"({"vars": ["x1"], "generators": ["x1^2"]})", &ideal), ARCDET_OK);
  arcdet_report* report = nullptr;
  EXPECT_EQ(arcdet_count(ctx.ptr, ideal, ARCDET_MODE_EXACTLY, 3, 2, nullptr, nullptr, &report),
            ARCDET_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(report, nullptr);
  ASSERT_EQ(arcdet_count(ctx.ptr, ideal, ARCDET_MODE_AT_LEAST, 2, 2, nullptr, nullptr, &report), ARCDET_OK);
  auto j = render_json(report);
  EXPECT_EQ(j["payload"]["per_prime"][0]["count"], "4");
  arcdet_report_free(report);
  arcdet_ideal_free(ideal);
}

TEST(CApi, BudgetErrorSurfaces) {
  Ctx ctx;
  ASSERT_EQ(arcdet_context_set_budget(ctx.ptr, 10), ARCDET_OK);
  ASSERT_EQ(arcdet_context_set_strategy(ctx.ptr, ARCDET_STRATEGY_ENUMERATE), ARCDET_OK);
  arcdet_matrix* m = nullptr;
  ASSERT_EQ(arcdet_matrix_from_json(kGeneric, &m), ARCDET_OK);
  arcdet_ideal* ideal = nullptr;
  ASSERT_EQ(arcdet_ideal_from_matrix(m, &ideal), ARCDET_OK);
  arcdet_report* report = nullptr;
  EXPECT_EQ(arcdet_count(ctx.ptr, ideal, ARCDET_MODE_AT_LEAST, 1, 1, nullptr, nullptr, &report), ARCDET_ERR_BUDGET);
  arcdet_ideal_free(ideal);
  arcdet_matrix_free(m);
}

TEST(CApi, ConfigurationOperations) {
  Ctx ctx;
  arcdet_configuration* cfg = nullptr;
  ASSERT_EQ(arcdet_configuration_from_json(R"({"graph": {"vertices": 3, "edges": [[1, 2], [2, 3], [1, 3]]}})", &cfg),
            ARCDET_OK);
  arcdet_report* report = nullptr;
  ASSERT_EQ(arcdet_patterson(ctx.ptr, cfg, 0, &report), ARCDET_OK);
  EXPECT_EQ(arcdet_report_verdict(report), ARCDET_VERDICT_PASS);
  EXPECT_EQ(render_json(report)["payload"]["determinant"], "x1*x2 + x1*x3 + x2*x3");
  arcdet_report_free(report);
  ASSERT_EQ(arcdet_matroid(ctx.ptr, cfg, &report), ARCDET_OK);
  EXPECT_EQ(arcdet_report_verdict(report), ARCDET_VERDICT_COMPUTED);
  arcdet_report_free(report);
  ASSERT_EQ(arcdet_one_generic_configuration(ctx.ptr, cfg, &report), ARCDET_OK);
  EXPECT_EQ(arcdet_report_verdict(report), ARCDET_VERDICT_PASS);
  arcdet_report_free(report);
  arcdet_configuration_free(cfg);
}

TEST(CApi, CampaignsAndRendering) {
  char* names = nullptr;
  ASSERT_EQ(arcdet_builtin_names(&names), ARCDET_OK);
  EXPECT_EQ(nlohmann::json::parse(take(names)).size(), 9u);
  arcdet_campaign* campaign = nullptr;
  EXPECT_EQ(arcdet_campaign_builtin("unknown", &campaign), ARCDET_ERR_VALIDATION);
  ASSERT_EQ(arcdet_campaign_builtin("corollary-diag", &campaign), ARCDET_OK);
  size_t tasks = 0;
  ASSERT_EQ(arcdet_campaign_task_count(campaign, &tasks), ARCDET_OK);
  EXPECT_EQ(tasks, 1u);
  Ctx ctx;
  arcdet_report* a = nullptr;
  arcdet_report* b = nullptr;
  ASSERT_EQ(arcdet_run_campaign(ctx.ptr, campaign, &a), ARCDET_OK);
  ASSERT_EQ(arcdet_run_campaign(ctx.ptr, campaign, &b), ARCDET_OK);
  EXPECT_EQ(arcdet_report_verdict(a), ARCDET_VERDICT_PASS);
  char *ta = nullptr, *tb = nullptr, *csv = nullptr, *text = nullptr;
  ASSERT_EQ(arcdet_report_render(a, ARCDET_FORMAT_JSON, &ta), ARCDET_OK);
  ASSERT_EQ(arcdet_report_render(b, ARCDET_FORMAT_JSON, &tb), ARCDET_OK);
  EXPECT_EQ(take(ta), take(tb));
  ASSERT_EQ(arcdet_report_render(a, ARCDET_FORMAT_CSV, &csv), ARCDET_OK);
  EXPECT_EQ(take(csv).rfind("path,value\n", 0), 0u);
  ASSERT_EQ(arcdet_report_render(a, ARCDET_FORMAT_TEXT, &text), ARCDET_OK);
  EXPECT_EQ(take(text).rfind("campaign: PASS", 0), 0u);
  ASSERT_EQ(arcdet_context_set_timings(ctx.ptr, 1), ARCDET_OK);
  arcdet_report* timed = nullptr;
  ASSERT_EQ(arcdet_run_campaign(ctx.ptr, campaign, &timed), ARCDET_OK);
  EXPECT_TRUE(render_json(timed).contains("wall_time_ms"));
  arcdet_report_free(timed);
  arcdet_report_free(a);
  arcdet_report_free(b);
  arcdet_campaign_free(campaign);
}

TEST(CApi, CampaignValidationErrorListsProblems) {
  arcdet_campaign* campaign = nullptr;
  EXPECT_EQ(arcdet_campaign_from_json(R"({"name": "x", "tasks": [{"kind": "lct_z", "input": "a", "max_m": 1},
                                                               {"kind": "lct_z", "input": "b", "max_m": 1}]})",
                                      &campaign),
            ARCDET_ERR_VALIDATION);
  const std::string msg = arcdet_last_error();
  EXPECT_NE(msg.find("'a'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'b'"), std::string::npos) << msg;
}
