#include "arcdet/arcdet.h"

#include <chrono>
#include <cstring>
#include <new>
#include <set>

#include "arcdet/harness.hpp"

struct arcdet_context {
  arcdet::RunSettings settings;
  bool primes_set = false, budget_set = false, seed_set = false;
  unsigned threads = 0;
};
struct arcdet_matrix {
  arcdet::PolyMatrix value;
};
struct arcdet_ideal {
  arcdet::IdealGens value;
};
struct arcdet_configuration {
  arcdet::ConfigurationMatrix value;
};
struct arcdet_jet {
  arcdet::JetPoint value;
};
struct arcdet_campaign {
  arcdet::Campaign value;
};
struct arcdet_report {
  arcdet::Report value;
};

namespace {

using namespace arcdet;

thread_local std::string last_error;

arcdet_status code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return ARCDET_ERR_PARSE;
    case ErrorCode::InvalidArgument: return ARCDET_ERR_INVALID_ARGUMENT;
    case ErrorCode::FieldMismatch: return ARCDET_ERR_FIELD_MISMATCH;
    case ErrorCode::DivisionByZero: return ARCDET_ERR_DIVISION_BY_ZERO;
    case ErrorCode::TruncationInsufficient: return ARCDET_ERR_TRUNCATION;
    case ErrorCode::BudgetExceeded: return ARCDET_ERR_BUDGET;
    case ErrorCode::Validation: return ARCDET_ERR_VALIDATION;
    case ErrorCode::Io: return ARCDET_ERR_IO;
    case ErrorCode::InternalInvariant: return ARCDET_ERR_INTERNAL;
  }
  return ARCDET_ERR_INTERNAL;
}

arcdet_status fail(arcdet_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

template <typename F>
arcdet_status guard(F&& body) {
  try {
    last_error.clear();
    body();
    return ARCDET_OK;
  } catch (const Error& e) {
    return fail(code_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ARCDET_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ARCDET_ERR_INTERNAL, e.what());
  }
}

void require_ptr(const void* p, const char* name) {
  if (p == nullptr) throw InvalidArgument(std::string(name) + " is NULL");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Build>
arcdet_status make_report(const arcdet_context* ctx, arcdet_report** out, Build&& build) {
  if (!ctx || !out) return fail(ARCDET_ERR_NULL_ARGUMENT, "context or output pointer is NULL");
  *out = nullptr;
  return guard([&] {
    auto start = std::chrono::steady_clock::now();
    Report r = build(ctx->settings);
    if (ctx->settings.timings) {
      r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    *out = new arcdet_report{std::move(r)};
  });
}

template <typename T, typename Parse>
arcdet_status from_text(const char* text, T** out, Parse&& parse) {
  if (!text || !out) return fail(ARCDET_ERR_NULL_ARGUMENT, "input or output pointer is NULL");
  *out = nullptr;
  return guard([&] { *out = new T{parse(parse_json_text(text))}; });
}

template <typename T, typename Parse>
arcdet_status from_file(const char* path, T** out, Parse&& parse) {
  if (!path || !out) return fail(ARCDET_ERR_NULL_ARGUMENT, "path or output pointer is NULL");
  *out = nullptr;
  return guard([&] { *out = new T{parse(parse_json_text(read_text_file(path)))}; });
}

std::vector<unsigned> to_vector(const unsigned* p, std::size_t n) {
  if (n > 0) require_ptr(p, "array");
  return std::vector<unsigned>(p, p + n);
}

}  // namespace

extern "C" {

const char* arcdet_version(void) { return arcdet::kLibraryVersion; }
const char* arcdet_last_error(void) { return last_error.c_str(); }
void arcdet_string_free(char* s) { std::free(s); }

const char* arcdet_status_name(arcdet_status status) {
  switch (status) {
    case ARCDET_OK: return "ok";
    case ARCDET_ERR_PARSE: return "parse error";
    case ARCDET_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ARCDET_ERR_FIELD_MISMATCH: return "field mismatch";
    case ARCDET_ERR_DIVISION_BY_ZERO: return "division by zero";
    case ARCDET_ERR_TRUNCATION: return "truncation insufficient";
    case ARCDET_ERR_BUDGET: return "budget exceeded";
    case ARCDET_ERR_VALIDATION: return "validation error";
    case ARCDET_ERR_IO: return "i/o error";
    case ARCDET_ERR_INTERNAL: return "internal error";
    case ARCDET_ERR_NULL_ARGUMENT: return "null argument";
  }
  return "unknown status";
}

arcdet_status arcdet_context_new(arcdet_context** out) {
  if (!out) return fail(ARCDET_ERR_NULL_ARGUMENT, "output pointer is NULL");
  return guard([&] { *out = new arcdet_context(); });
}

void arcdet_context_free(arcdet_context* ctx) { delete ctx; }

arcdet_status arcdet_context_set_primes(arcdet_context* ctx, const uint32_t* primes, size_t count) {
  if (!ctx || (!primes && count)) return fail(ARCDET_ERR_NULL_ARGUMENT, "context or primes is NULL");
  return guard([&] {
    if (count == 0) throw InvalidArgument("at least one prime is required");
    std::set<std::uint32_t> seen;
    for (std::size_t i = 0; i < count; ++i) {
      require_prime(primes[i]);
      if (!seen.insert(primes[i]).second) throw InvalidArgument("duplicate prime " + std::to_string(primes[i]));
    }
    ctx->settings.primes.assign(primes, primes + count);
    ctx->primes_set = true;
  });
}

arcdet_status arcdet_context_set_budget(arcdet_context* ctx, uint64_t budget) {
  if (!ctx) return fail(ARCDET_ERR_NULL_ARGUMENT, "context is NULL");
  if (budget == 0) return fail(ARCDET_ERR_INVALID_ARGUMENT, "budget must be positive");
  ctx->settings.budget = budget;
  ctx->budget_set = true;
  return ARCDET_OK;
}

arcdet_status arcdet_context_set_seed(arcdet_context* ctx, uint64_t seed) {
  if (!ctx) return fail(ARCDET_ERR_NULL_ARGUMENT, "context is NULL");
  ctx->settings.seed = seed;
  ctx->seed_set = true;
  return ARCDET_OK;
}

arcdet_status arcdet_context_set_strategy(arcdet_context* ctx, arcdet_strategy strategy) {
  if (!ctx) return fail(ARCDET_ERR_NULL_ARGUMENT, "context is NULL");
  switch (strategy) {
    case ARCDET_STRATEGY_AUTO: ctx->settings.strategy = CountStrategy::Auto; break;
    case ARCDET_STRATEGY_LIFT: ctx->settings.strategy = CountStrategy::Lift; break;
    case ARCDET_STRATEGY_ENUMERATE: ctx->settings.strategy = CountStrategy::Enumerate; break;
    case ARCDET_STRATEGY_SAMPLE: ctx->settings.strategy = CountStrategy::Sample; break;
    default: return fail(ARCDET_ERR_INVALID_ARGUMENT, "unknown strategy");
  }
  return ARCDET_OK;
}

arcdet_status arcdet_context_set_threads(arcdet_context* ctx, unsigned threads) {
  if (!ctx) return fail(ARCDET_ERR_NULL_ARGUMENT, "context is NULL");
  ctx->threads = threads;
  return ARCDET_OK;
}

arcdet_status arcdet_context_set_timings(arcdet_context* ctx, int enabled) {
  if (!ctx) return fail(ARCDET_ERR_NULL_ARGUMENT, "context is NULL");
  ctx->settings.timings = enabled != 0;
  return ARCDET_OK;
}

arcdet_status arcdet_matrix_from_json(const char* json, arcdet_matrix** out) {
  return from_text(json, out, matrix_from_json);
}
arcdet_status arcdet_matrix_from_file(const char* path, arcdet_matrix** out) {
  return from_file(path, out, matrix_from_json);
}
arcdet_status arcdet_matrix_shape(const arcdet_matrix* m, size_t* rows, size_t* cols) {
  if (!m || !rows || !cols) return fail(ARCDET_ERR_NULL_ARGUMENT, "matrix or output pointer is NULL");
  *rows = m->value.rows();
  *cols = m->value.cols();
  return ARCDET_OK;
}
void arcdet_matrix_free(arcdet_matrix* m) { delete m; }

arcdet_status arcdet_ideal_from_json(const char* json, arcdet_ideal** out) {
  return from_text(json, out, ideal_from_json);
}
arcdet_status arcdet_ideal_from_file(const char* path, arcdet_ideal** out) {
  return from_file(path, out, ideal_from_json);
}
arcdet_status arcdet_ideal_from_matrix(const arcdet_matrix* m, arcdet_ideal** out) {
  if (!m || !out) return fail(ARCDET_ERR_NULL_ARGUMENT, "matrix or output pointer is NULL");
  *out = nullptr;
  return guard([&] { *out = new arcdet_ideal{DeterminantalPair(m->value).z_gens()}; });
}
arcdet_status arcdet_ideal_size(const arcdet_ideal* ideal, size_t* generators, size_t* vars) {
  if (!ideal || !generators || !vars) return fail(ARCDET_ERR_NULL_ARGUMENT, "ideal or output pointer is NULL");
  *generators = ideal->value.size();
  *vars = ideal->value.num_vars();
  return ARCDET_OK;
}
void arcdet_ideal_free(arcdet_ideal* ideal) { delete ideal; }

arcdet_status arcdet_configuration_from_json(const char* json, arcdet_configuration** out) {
  return from_text(json, out, configuration_from_json);
}
arcdet_status arcdet_configuration_from_file(const char* path, arcdet_configuration** out) {
  return from_file(path, out, configuration_from_json);
}
void arcdet_configuration_free(arcdet_configuration* cfg) { delete cfg; }

arcdet_status arcdet_jet_from_json(const char* json, arcdet_jet** out) { return from_text(json, out, jet_from_json); }
arcdet_status arcdet_jet_from_file(const char* path, arcdet_jet** out) { return from_file(path, out, jet_from_json); }
void arcdet_jet_free(arcdet_jet* jet) { delete jet; }

arcdet_status arcdet_lct(const arcdet_context* ctx, const arcdet_ideal* ideal, unsigned max_m, arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings& s) {
    require_ptr(ideal, "ideal");
    return lct_report(ideal->value, max_m, s);
  });
}

arcdet_status arcdet_lct_w(const arcdet_context* ctx, const arcdet_matrix* m, unsigned max_m, arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings& s) {
    require_ptr(m, "matrix");
    if (max_m == 0) throw InvalidArgument("--max-m must be at least 1");
    return lct_w_report(m->value, max_m, s);
  });
}

arcdet_status arcdet_corollary(const arcdet_context* ctx, const arcdet_matrix* m, unsigned max_m,
                               arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings& s) {
    require_ptr(m, "matrix");
    return corollary_report(m->value, max_m, s);
  });
}

arcdet_status arcdet_count(const arcdet_context* ctx, const arcdet_ideal* ideal, arcdet_contact_mode mode, unsigned m,
                           unsigned level, const char* constraint, const arcdet_matrix* stratum_matrix,
                           arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings& s) {
    require_ptr(ideal, "ideal");
    ContactQuery q;
    switch (mode) {
      case ARCDET_MODE_AT_LEAST: q.mode = ContactMode::AtLeast; break;
      case ARCDET_MODE_EXACTLY: q.mode = ContactMode::Exactly; break;
      case ARCDET_MODE_BELOW: q.mode = ContactMode::Below; break;
      default: throw InvalidArgument("unknown contact mode");
    }
    q.m = m;
    q.level = level;
    q.primes = s.primes;
    if (constraint) q.constraint = constraint;
    validate_query(q);
    return count_report(ideal->value, q, s, stratum_matrix ? &stratum_matrix->value : nullptr);
  });
}

arcdet_status arcdet_profile(const arcdet_context* ctx, const arcdet_matrix* m, const arcdet_jet* jet,
                             arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings&) {
    require_ptr(m, "matrix");
    require_ptr(jet, "jet");
    return profile_report(m->value, jet->value);
  });
}

arcdet_status arcdet_snf(const arcdet_context* ctx, const arcdet_matrix* m, const arcdet_jet* jet,
                         arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings&) {
    require_ptr(m, "matrix");
    require_ptr(jet, "jet");
    return snf_report(m->value, jet->value);
  });
}

arcdet_status arcdet_strata(const arcdet_context* ctx, const arcdet_matrix* m, const unsigned* ms, size_t m_count,
                            int level, arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings& s) {
    require_ptr(m, "matrix");
    auto list = to_vector(ms, m_count);
    if (list.empty()) throw InvalidArgument("at least one m is required");
    std::optional<unsigned> lv;
    if (level >= 0) lv = static_cast<unsigned>(level);
    return strata_report(m->value, list, lv, s);
  });
}

arcdet_status arcdet_fiber(const arcdet_context* ctx, const unsigned* lambda, size_t r, const unsigned* ms,
                           size_t m_count, unsigned level, arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings& s) {
    auto parts = to_vector(lambda, r);
    auto list = to_vector(ms, m_count);
    if (parts.empty() || list.empty()) throw InvalidArgument("lambda and m must be nonempty");
    return fiber_report({LambdaProfile(parts)}, list, level, s);
  });
}

arcdet_status arcdet_cone(const arcdet_context* ctx, const arcdet_matrix* m, const unsigned* ms, const unsigned* ps,
                          size_t cells, int level, arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings& s) {
    require_ptr(m, "matrix");
    auto mv = to_vector(ms, cells), pv = to_vector(ps, cells);
    if (cells == 0) throw InvalidArgument("at least one (m, p) cell is required");
    std::vector<std::pair<unsigned, unsigned>> list;
    for (std::size_t i = 0; i < cells; ++i) list.emplace_back(mv[i], pv[i]);
    std::optional<unsigned> lv;
    if (level >= 0) lv = static_cast<unsigned>(level);
    return cone_report(m->value, list, lv, s);
  });
}

arcdet_status arcdet_patterson(const arcdet_context* ctx, const arcdet_configuration* cfg, unsigned max_m,
                               arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings& s) {
    require_ptr(cfg, "configuration");
    std::optional<unsigned> mm;
    if (max_m > 0) mm = max_m;
    return patterson_report(cfg->value, mm, s);
  });
}

arcdet_status arcdet_matroid(const arcdet_context* ctx, const arcdet_configuration* cfg, arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings&) {
    require_ptr(cfg, "configuration");
    return matroid_report(cfg->value);
  });
}

arcdet_status arcdet_one_generic_configuration(const arcdet_context* ctx, const arcdet_configuration* cfg,
                                               arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings& s) {
    require_ptr(cfg, "configuration");
    return one_generic_report(cfg->value, s);
  });
}

arcdet_status arcdet_one_generic_matrix(const arcdet_context* ctx, const arcdet_matrix* m, arcdet_report** out) {
  return make_report(ctx, out, [&](const RunSettings& s) {
    require_ptr(m, "matrix");
    return one_generic_report(m->value, s);
  });
}

arcdet_status arcdet_campaign_from_json(const char* json, arcdet_campaign** out) {
  return from_text(json, out, Campaign::from_json);
}

arcdet_status arcdet_campaign_from_file(const char* path, arcdet_campaign** out) {
  return from_file(path, out, Campaign::from_json);
}

arcdet_status arcdet_campaign_builtin(const char* name, arcdet_campaign** out) {
  if (!name || !out) return fail(ARCDET_ERR_NULL_ARGUMENT, "name or output pointer is NULL");
  *out = nullptr;
  return guard([&] { *out = new arcdet_campaign{Campaign::from_json(builtin_campaign(name))}; });
}

arcdet_status arcdet_builtin_names(char** out) {
  if (!out) return fail(ARCDET_ERR_NULL_ARGUMENT, "output pointer is NULL");
  *out = nullptr;
  return guard([&] { *out = copy_string(Json(builtin_campaign_names()).dump()); });
}

arcdet_status arcdet_campaign_task_count(const arcdet_campaign* campaign, size_t* count) {
  if (!campaign || !count) return fail(ARCDET_ERR_NULL_ARGUMENT, "campaign or output pointer is NULL");
  *count = campaign->value.tasks().size();
  return ARCDET_OK;
}

void arcdet_campaign_free(arcdet_campaign* campaign) { delete campaign; }

arcdet_status arcdet_run_campaign(const arcdet_context* ctx, const arcdet_campaign* campaign, arcdet_report** out) {
  if (!ctx || !campaign || !out) return fail(ARCDET_ERR_NULL_ARGUMENT, "context, campaign or output pointer is NULL");
  *out = nullptr;
  return guard([&] {
    Campaign c = campaign->value;
    if (ctx->primes_set) c.override_primes(ctx->settings.primes);
    if (ctx->budget_set) c.set_budget(ctx->settings.budget);
    if (ctx->seed_set) c.set_seed(ctx->settings.seed);
    CampaignOptions options;
    options.threads = ctx->threads;
    options.timings = ctx->settings.timings;
    *out = new arcdet_report{run_campaign(c, options)};
  });
}

arcdet_verdict arcdet_report_verdict(const arcdet_report* report) {
  if (!report) return ARCDET_VERDICT_FAIL;
  switch (report->value.status) {
    case Status::Pass: return ARCDET_VERDICT_PASS;
    case Status::Fail: return ARCDET_VERDICT_FAIL;
    case Status::Ambiguous: return ARCDET_VERDICT_AMBIGUOUS;
    case Status::Computed: return ARCDET_VERDICT_COMPUTED;
    case Status::SkippedBudget: return ARCDET_VERDICT_SKIPPED_BUDGET;
  }
  return ARCDET_VERDICT_FAIL;
}

arcdet_status arcdet_report_render(const arcdet_report* report, arcdet_format format, char** out) {
  if (!report || !out) return fail(ARCDET_ERR_NULL_ARGUMENT, "report or output pointer is NULL");
  *out = nullptr;
  return guard([&] {
    Format f;
    switch (format) {
      case ARCDET_FORMAT_JSON: f = Format::Json; break;
      case ARCDET_FORMAT_CSV: f = Format::Csv; break;
      case ARCDET_FORMAT_TEXT: f = Format::Text; break;
      default: throw InvalidArgument("unknown format");
    }
    *out = copy_string(render(report->value, f));
  });
}

void arcdet_report_free(arcdet_report* report) { delete report; }

}  // extern "C"
