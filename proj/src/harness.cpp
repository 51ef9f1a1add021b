#include "arcdet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>
#include <variant>

#include "arcdet/errors.hpp"

namespace arcdet {

namespace {

constexpr unsigned kMaxCampaignLevel = 62;

using InputValue = std::variant<PolyMatrix, IdealGens, ConfigurationMatrix>;
using InputPtr = std::shared_ptr<const InputValue>;

const char* input_kind(const InputValue& v) {
  switch (v.index()) {
    case 0: return "matrix";
    case 1: return "ideal";
    default: return "configuration";
  }
}

// Reads typed fields out of one JSON object, recording problems instead of throwing.
class Fields {
 public:
  Fields(const Json& obj, std::string where, std::vector<std::string>& errors)
      : obj_(obj), where_(std::move(where)), errors_(errors) {}

  void error(const std::string& message) { errors_.push_back(where_ + ": " + message); }
  bool has(const char* key) const { return obj_.contains(key); }
  const std::string& where() const { return where_; }

  void only(std::initializer_list<std::string_view> keys) {
    for (const auto& [k, _] : obj_.items()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) error("unknown field '" + k + "'");
    }
  }

  std::optional<std::uint64_t> uint(const char* key, bool required = false) {
    if (!has(key)) {
      if (required) error("missing field '" + std::string(key) + "'");
      return std::nullopt;
    }
    const Json& v = obj_[key];
    if (!v.is_number_unsigned()) {
      error("'" + std::string(key) + "' must be a nonnegative integer");
      return std::nullopt;
    }
    return v.get<std::uint64_t>();
  }

  std::optional<unsigned> level(const char* key, bool required = false, unsigned min = 0) {
    auto v = uint(key, required);
    if (!v) return std::nullopt;
    if (*v < min || *v > kMaxCampaignLevel) {
      error("'" + std::string(key) + "' must lie in [" + std::to_string(min) + ", " + std::to_string(kMaxCampaignLevel) + "]");
      return std::nullopt;
    }
    return static_cast<unsigned>(*v);
  }

  // A single value or a list of values.
  std::optional<std::vector<unsigned>> levels(const char* key) {
    if (!has(key)) return std::nullopt;
    const Json& v = obj_[key];
    std::vector<unsigned> out;
    auto take = [&](const Json& x) {
      if (!x.is_number_unsigned() || x.get<std::uint64_t>() > kMaxCampaignLevel) return false;
      out.push_back(static_cast<unsigned>(x.get<std::uint64_t>()));
      return true;
    };
    bool ok = v.is_array() ? !v.empty() && std::all_of(v.begin(), v.end(), take) : take(v);
    if (!ok) {
      error("'" + std::string(key) + "' must be an integer in [0, " + std::to_string(kMaxCampaignLevel) + "] or a nonempty list of them");
      return std::nullopt;
    }
    return out;
  }

  std::optional<Rational> rational(const char* key) {
    if (!has(key)) return std::nullopt;
    try {
      return rational_from_json(obj_[key], where_ + "." + key);
    } catch (const ValidationError& e) {
      errors_.push_back(e.what());
      return std::nullopt;
    }
  }

  bool flag(const char* key) {
    if (!has(key)) return false;
    if (!obj_[key].is_boolean()) {
      error("'" + std::string(key) + "' must be true or false");
      return false;
    }
    return obj_[key].get<bool>();
  }

  std::optional<std::string> string(const char* key, bool required = false) {
    if (!has(key)) {
      if (required) error("missing field '" + std::string(key) + "'");
      return std::nullopt;
    }
    if (!obj_[key].is_string()) {
      error("'" + std::string(key) + "' must be a string");
      return std::nullopt;
    }
    return obj_[key].get<std::string>();
  }

  std::optional<std::vector<std::uint32_t>> primes(const char* key) {
    if (!has(key)) return std::nullopt;
    const Json& v = obj_[key];
    std::vector<std::uint32_t> out;
    std::set<std::uint64_t> seen;
    bool ok = v.is_array() && !v.empty();
    if (ok) {
      for (const auto& p : v) {
        if (!p.is_number_unsigned() || !is_prime(p.get<std::uint64_t>()) || p.get<std::uint64_t>() > kMaxModulus ||
            !seen.insert(p.get<std::uint64_t>()).second) {
          ok = false;
          break;
        }
        out.push_back(static_cast<std::uint32_t>(p.get<std::uint64_t>()));
      }
    }
    if (!ok) {
      error("'" + std::string(key) + "' must be a nonempty list of distinct primes");
      return std::nullopt;
    }
    return out;
  }

  const Json& raw(const char* key) const { return obj_[key]; }

 private:
  const Json& obj_;
  std::string where_;
  std::vector<std::string>& errors_;
};

std::optional<InputValue> parse_input(const std::string& name, const Json& doc, std::vector<std::string>& errors) {
  const std::string where = "inputs." + name;
  if (!doc.is_object()) {
    errors.push_back(where + ": expected an object");
    return std::nullopt;
  }
  try {
    if (doc.contains("rows")) return InputValue(matrix_from_json(doc));
    if (doc.contains("generators")) return InputValue(ideal_from_json(doc));
    if (doc.contains("d_matrix") || doc.contains("graph")) return InputValue(configuration_from_json(doc));
    errors.push_back(where + ": expected a matrix (vars, rows), an ideal (vars, generators) or a configuration (d_matrix | graph)");
  } catch (const Error& e) {
    errors.push_back(where + ": " + e.what());
  }
  return std::nullopt;
}

// Profiles of length r with largest part <= max_part, in weight order.
std::vector<LambdaProfile> profiles_up_to(std::size_t r, unsigned max_part) {
  std::vector<LambdaProfile> out;
  for (unsigned w = 0; w <= r * max_part; ++w) {
    for (auto& l : profiles_of_weight(r, w, max_part)) out.push_back(std::move(l));
  }
  return out;
}

struct TaskContext {
  Fields& f;
  const std::map<std::string, InputPtr>& inputs;
  InputPtr input;  // resolved "input" (may be null)
};

const PolyMatrix* need_matrix(TaskContext& c, bool square) {
  if (!c.input) {
    c.f.error("needs an 'input' naming a matrix");
    return nullptr;
  }
  const auto* a = std::get_if<PolyMatrix>(c.input.get());
  if (!a) {
    c.f.error("input must be a matrix, got " + std::string(input_kind(*c.input)));
    return nullptr;
  }
  if (square && a->rows() != a->cols()) {
    c.f.error("needs a square matrix, got " + std::to_string(a->rows()) + "x" + std::to_string(a->cols()));
    return nullptr;
  }
  try {
    DeterminantalPair pair(*a);
  } catch (const Error& e) {
    c.f.error(e.what());
    return nullptr;
  }
  return a;
}

const ConfigurationMatrix* need_configuration(TaskContext& c) {
  if (!c.input) {
    c.f.error("needs an 'input' naming a configuration");
    return nullptr;
  }
  const auto* cfg = std::get_if<ConfigurationMatrix>(c.input.get());
  if (!cfg) c.f.error("input must be a configuration, got " + std::string(input_kind(*c.input)));
  return cfg;
}

std::optional<unsigned> need_max_m(Fields& f) { return f.level("max_m", true, 1); }

using Runner = std::function<Report(const RunSettings&)>;

Runner bind_stratification(TaskContext& c) {
  c.f.only({"kind", "label", "input", "primes", "budget", "m", "max_m", "level"});
  const PolyMatrix* a = need_matrix(c, false);
  std::optional<std::vector<unsigned>> ms = c.f.levels("m");
  if (!ms && c.f.has("max_m")) {
    if (auto mm = need_max_m(c.f)) {
      ms.emplace();
      for (unsigned m = 1; m <= *mm; ++m) ms->push_back(m);
    }
  }
  if (!ms && !c.f.has("m") && !c.f.has("max_m")) c.f.error("needs 'm' or 'max_m'");
  std::optional<unsigned> level = c.f.level("level");
  if (ms && level) {
    for (unsigned m : *ms) {
      if (m > *level) c.f.error("m=" + std::to_string(m) + " exceeds level " + std::to_string(*level));
    }
  }
  if (!a || !ms) return {};
  return [a = *a, ms = *ms, level, input = c.input](const RunSettings& s) { return strata_report(a, ms, level, s); };
}

Runner bind_fiber(TaskContext& c) {
  c.f.only({"kind", "label", "primes", "budget", "r", "max_part", "lambda", "m", "max_m", "level"});
  std::vector<LambdaProfile> profiles;
  unsigned largest = 0;
  if (c.f.has("lambda")) {
    const Json& l = c.f.raw("lambda");
    bool ok = l.is_array() && !l.empty();
    for (std::size_t i = 0; ok && i < l.size(); ++i) {
      if (!l[i].is_array() || l[i].empty()) {
        ok = false;
        break;
      }
      std::vector<unsigned> parts;
      for (const auto& x : l[i]) {
        if (!x.is_number_unsigned() || x.get<std::uint64_t>() > kMaxCampaignLevel) ok = false;
        else parts.push_back(static_cast<unsigned>(x.get<std::uint64_t>()));
      }
      if (!ok || !std::is_sorted(parts.begin(), parts.end())) {
        ok = false;
        break;
      }
      largest = std::max(largest, parts.back());
      profiles.emplace_back(std::move(parts));
    }
    if (!ok) c.f.error("'lambda' must be a nonempty list of nondecreasing profiles");
    if (c.f.has("r") || c.f.has("max_part")) c.f.error("give either 'lambda' or 'r'/'max_part', not both");
  } else {
    auto rs = c.f.levels("r");
    auto max_part = c.f.level("max_part");
    if (!c.f.has("r")) c.f.error("needs 'r' or 'lambda'");
    unsigned mp = max_part.value_or(3);
    if (rs) {
      for (unsigned r : *rs) {
        if (r == 0 || r > 6) {
          c.f.error("r must lie in [1, 6]");
          continue;
        }
        for (auto& l : profiles_up_to(r, mp)) profiles.push_back(std::move(l));
      }
    }
    largest = mp;
  }
  std::optional<std::vector<unsigned>> ms = c.f.levels("m");
  if (!ms && c.f.has("max_m")) {
    if (auto mm = c.f.level("max_m")) {
      ms.emplace();
      for (unsigned m = 0; m <= *mm; ++m) ms->push_back(m);
    }
  }
  if (!c.f.has("m") && !c.f.has("max_m")) c.f.error("needs 'm' or 'max_m'");
  unsigned level = largest;
  if (ms) level = std::max(level, *std::max_element(ms->begin(), ms->end()));
  if (auto l = c.f.level("level")) {
    if (*l < level) c.f.error("level " + std::to_string(*l) + " is below max(m, lambda_r) = " + std::to_string(level));
    level = std::max(level, *l);
  }
  if (profiles.empty() || !ms) return {};
  return [profiles, ms = *ms, level](const RunSettings& s) { return fiber_report(profiles, ms, level, s); };
}

LctExpectation lct_expectation(Fields& f) {
  LctExpectation e;
  e.value = f.rational("expect");
  e.exact = f.flag("exact");
  e.require_consensus = f.flag("require_consensus");
  return e;
}

Runner bind_lct_z(TaskContext& c) {
  c.f.only({"kind", "label", "input", "primes", "budget", "max_m", "expect", "exact", "require_consensus"});
  auto max_m = need_max_m(c.f);
  LctExpectation expect = lct_expectation(c.f);
  std::optional<IdealGens> gens;
  if (!c.input) {
    c.f.error("needs an 'input' naming a matrix or an ideal");
  } else if (const auto* ideal = std::get_if<IdealGens>(c.input.get())) {
    gens = *ideal;
  } else if (std::holds_alternative<PolyMatrix>(*c.input)) {
    if (const PolyMatrix* a = need_matrix(c, false)) gens = DeterminantalPair(*a).z_gens();
  } else {
    c.f.error("input must be a matrix or an ideal, got configuration");
  }
  if (!gens || !max_m) return {};
  return [gens = *gens, m = *max_m, expect](const RunSettings& s) { return lct_report(gens, m, s, expect); };
}

Runner bind_lct_w(TaskContext& c) {
  c.f.only({"kind", "label", "input", "primes", "budget", "max_m", "expect", "exact"});
  auto max_m = need_max_m(c.f);
  LctExpectation expect = lct_expectation(c.f);
  const PolyMatrix* a = need_matrix(c, false);
  if (!a || !max_m) return {};
  return [a = *a, m = *max_m, expect](const RunSettings& s) { return lct_w_report(a, m, s, expect); };
}

CorollaryExpectation corollary_expectation(Fields& f) {
  CorollaryExpectation e;
  e.lct_z = f.rational("expect_z");
  e.lct_w = f.rational("expect_w");
  e.forward_equality = f.flag("forward_equality");
  return e;
}

Runner bind_corollary(TaskContext& c) {
  c.f.only({"kind", "label", "input", "primes", "budget", "max_m", "expect_z", "expect_w", "forward_equality"});
  auto max_m = need_max_m(c.f);
  CorollaryExpectation expect = corollary_expectation(c.f);
  const PolyMatrix* a = need_matrix(c, true);
  if (!a || !max_m) return {};
  return [a = *a, m = *max_m, expect](const RunSettings& s) { return corollary_report(a, m, s, expect); };
}

Runner bind_cone(TaskContext& c) {
  c.f.only({"kind", "label", "input", "primes", "budget", "m", "p", "max_m", "level"});
  const PolyMatrix* a = need_matrix(c, true);
  std::vector<std::pair<unsigned, unsigned>> cells;
  auto level = c.f.level("level");
  if (c.f.has("max_m")) {
    if (c.f.has("m") || c.f.has("p")) c.f.error("give either 'max_m' or 'm' with 'p'");
    if (auto mm = c.f.level("max_m")) {
      for (unsigned m = 0; m <= *mm; ++m) {
        for (unsigned p = 0; p <= m; ++p) cells.emplace_back(m, p);
      }
    }
  } else {
    auto m = c.f.level("m", true);
    auto ps = c.f.levels("p");
    if (!c.f.has("p")) c.f.error("needs 'p' (or 'max_m' for the full grid)");
    if (m && ps) {
      for (unsigned p : *ps) {
        if (p > *m) c.f.error("p=" + std::to_string(p) + " exceeds m=" + std::to_string(*m));
        else cells.emplace_back(*m, p);
      }
    }
  }
  if (level) {
    for (auto [m, p] : cells) {
      if (m > *level) {
        c.f.error("m=" + std::to_string(m) + " exceeds level " + std::to_string(*level));
        break;
      }
    }
  }
  if (!a || cells.empty()) return {};
  return [a = *a, cells, level](const RunSettings& s) { return cone_report(a, cells, level, s); };
}

Runner bind_configuration(TaskContext& c) {
  c.f.only({"kind", "label", "input", "primes", "budget", "max_m", "expect_z", "expect_w", "expect_determinant"});
  auto max_m = need_max_m(c.f);
  CorollaryExpectation expect = corollary_expectation(c.f);
  const ConfigurationMatrix* cfg = need_configuration(c);
  std::optional<MultiPoly> det;
  if (auto text = c.f.string("expect_determinant"); text && cfg) {
    try {
      det = parse_poly(*text, make_indexed_vars("x", cfg->ground_size()));
    } catch (const Error& e) {
      c.f.error(std::string("expect_determinant: ") + e.what());
    }
  }
  if (!cfg || !max_m) return {};
  return [cfg = *cfg, m = *max_m, expect, det](const RunSettings& s) {
    return patterson_report(cfg, m, s, expect, det);
  };
}

Runner bind_one_generic(TaskContext& c) {
  c.f.only({"kind", "label", "input", "primes", "budget"});
  if (!c.input) {
    c.f.error("needs an 'input' naming a configuration or a matrix, or a 'sweep'");
    return {};
  }
  if (const auto* cfg = std::get_if<ConfigurationMatrix>(c.input.get())) {
    return [cfg = *cfg](const RunSettings& s) { return one_generic_report(cfg, s); };
  }
  if (const auto* a = std::get_if<PolyMatrix>(c.input.get())) {
    if (a->rows() != a->cols()) {
      c.f.error("needs a square matrix");
      return {};
    }
    return [a = *a](const RunSettings& s) { return one_generic_report(a, s); };
  }
  c.f.error("input must be a configuration or a matrix, got ideal");
  return {};
}

Runner bind_snf_roundtrip(TaskContext& c) {
  c.f.only({"kind", "label", "primes", "budget", "samples", "level", "prime", "shapes"});
  auto samples = c.f.uint("samples");
  auto level = c.f.level("level");
  auto prime = c.f.uint("prime");
  if (prime && (!is_prime(*prime) || *prime > kMaxModulus)) c.f.error("'prime' must be a prime");
  std::vector<std::pair<std::size_t, std::size_t>> shapes{{2, 2}, {3, 2}};
  if (c.f.has("shapes")) {
    shapes.clear();
    const Json& sh = c.f.raw("shapes");
    bool ok = sh.is_array() && !sh.empty();
    for (std::size_t i = 0; ok && i < sh.size(); ++i) {
      ok = sh[i].is_array() && sh[i].size() == 2 && sh[i][0].is_number_unsigned() && sh[i][1].is_number_unsigned();
      if (!ok) break;
      std::size_t rows = sh[i][0].get<std::size_t>(), cols = sh[i][1].get<std::size_t>();
      ok = cols >= 1 && rows >= cols && rows <= 6;
      shapes.emplace_back(rows, cols);
    }
    if (!ok) c.f.error("'shapes' must be a nonempty list of [rows, cols] with rows >= cols >= 1, rows <= 6");
  }
  return [n = samples.value_or(200), level = level.value_or(6), q = static_cast<std::uint32_t>(prime.value_or(5)),
          shapes](const RunSettings& s) { return snf_roundtrip_report(n, level, q, shapes, s); };
}

Runner bind_sweep(const Json& sw, const std::string& where, std::vector<std::string>& errors) {
  Fields g(sw, where, errors);
  g.only({"r", "max_n", "entries"});
  auto r = g.uint("r", true);
  auto max_n = g.uint("max_n", true);
  std::vector<int> entries{-1, 0, 1};
  if (g.has("entries")) {
    entries.clear();
    const Json& e = g.raw("entries");
    bool ok = e.is_array() && !e.empty();
    for (const auto& x : e) {
      if (!x.is_number_integer() || std::abs(x.get<std::int64_t>()) > 100) {
        ok = false;
        break;
      }
      entries.push_back(static_cast<int>(x.get<std::int64_t>()));
    }
    if (!ok) g.error("'entries' must be a nonempty list of small integers");
  }
  if (r && max_n && (*r == 0 || *max_n < *r || *max_n > 8)) g.error("needs 1 <= r <= max_n <= 8");
  if (!r || !max_n) return {};
  return [r = *r, n = *max_n, entries](const RunSettings& s) { return one_generic_sweep_report(r, n, entries, s); };
}

}  // namespace

void Campaign::override_primes(std::vector<std::uint32_t> primes) {
  primes_ = std::move(primes);
  for (auto& t : tasks_) t.primes.reset();
}

Campaign Campaign::from_json(const Json& doc) {
  std::vector<std::string> errors;
  Campaign c;
  if (!doc.is_object()) throw ValidationError("campaign: expected an object");
  Fields top(doc, "campaign", errors);
  top.only({"name", "version", "seed", "budget", "primes", "inputs", "tasks"});
  if (auto n = top.string("name", true)) c.name_ = *n;
  top.string("version");
  if (auto s = top.uint("seed")) c.seed_ = *s;
  if (auto b = top.uint("budget")) c.budget_ = *b;
  if (auto p = top.primes("primes")) c.primes_ = *p;

  std::map<std::string, InputPtr> inputs;
  if (doc.contains("inputs")) {
    if (!doc["inputs"].is_object()) {
      top.error("'inputs' must be an object of named inputs");
    } else {
      for (const auto& [name, value] : doc["inputs"].items()) {
        if (auto v = parse_input(name, value, errors)) inputs[name] = std::make_shared<const InputValue>(std::move(*v));
      }
    }
  }
  if (!doc.contains("tasks") || !doc["tasks"].is_array()) {
    top.error("'tasks' must be a list");
  } else {
    std::set<std::string> labels;
    const Json& tasks = doc["tasks"];
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const std::string where = "tasks[" + std::to_string(i) + "]";
      if (!tasks[i].is_object()) {
        errors.push_back(where + ": expected an object");
        continue;
      }
      Fields f(tasks[i], where, errors);
      Task task;
      auto kind = f.string("kind", true);
      if (!kind) continue;
      task.kind = *kind;
      task.label = f.string("label").value_or(*kind + "#" + std::to_string(i + 1));
      if (!labels.insert(task.label).second) f.error("duplicate label '" + task.label + "'");
      task.primes = f.primes("primes");
      task.budget = f.uint("budget");
      InputPtr input;
      if (auto name = f.string("input")) {
        task.input = *name;
        auto it = inputs.find(*name);
        if (it != inputs.end()) {
          input = it->second;
        } else if (!doc.contains("inputs") || !doc["inputs"].is_object() || !doc["inputs"].contains(*name)) {
          f.error("references undeclared input '" + *name + "'");
        }
      }
      TaskContext ctx{f, inputs, input};
      const std::size_t before = errors.size();
      Runner run;
      if (task.kind == "stratification") run = bind_stratification(ctx);
      else if (task.kind == "fiber_formula") run = bind_fiber(ctx);
      else if (task.kind == "lct_z") run = bind_lct_z(ctx);
      else if (task.kind == "lct_w") run = bind_lct_w(ctx);
      else if (task.kind == "corollary") run = bind_corollary(ctx);
      else if (task.kind == "cone") run = bind_cone(ctx);
      else if (task.kind == "configuration") run = bind_configuration(ctx);
      else if (task.kind == "one_generic" && tasks[i].contains("sweep")) {
        f.only({"kind", "label", "primes", "budget", "sweep"});
        if (tasks[i]["sweep"].is_object()) run = bind_sweep(tasks[i]["sweep"], where + ".sweep", errors);
        else f.error("'sweep' must be an object");
      } else if (task.kind == "one_generic") run = bind_one_generic(ctx);
      else if (task.kind == "snf_roundtrip") run = bind_snf_roundtrip(ctx);
      else {
        f.error("unknown task kind '" + task.kind +
                "' (expected stratification, fiber_formula, lct_z, lct_w, corollary, cone, configuration, one_generic, snf_roundtrip)");
      }
      if (errors.size() == before && !run) f.error("task could not be prepared");
      task.run = std::move(run);
      c.tasks_.push_back(std::move(task));
    }
  }
  if (!errors.empty()) {
    std::ostringstream os;
    os << errors.size() << " validation error" << (errors.size() == 1 ? "" : "s") << ":";
    for (const auto& e : errors) os << "\n  " << e;
    throw ValidationError(os.str());
  }
  return c;
}

Report run_campaign(const Campaign& campaign, const CampaignOptions& options) {
  const auto& tasks = campaign.tasks();
  std::vector<Report> results(tasks.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& task = tasks[i];
      RunSettings s;
      s.primes = task.primes.value_or(campaign.primes());
      s.budget = task.budget.value_or(campaign.budget());
      s.seed = campaign.seed();
      s.strategy = CountStrategy::Lift;
      auto start = std::chrono::steady_clock::now();
      Report r;
      try {
        r = task.run(s);
      } catch (const BudgetExceeded& e) {
        r = Report{};
        r.kind = task.kind;
        r.status = Status::SkippedBudget;
        r.payload = {{"reason", e.what()}};
      } catch (const std::exception& e) {
        r = Report{};
        r.kind = task.kind;
        r.identity_checks.push_back({"execution", Status::Fail, {{"error", e.what()}}});
        r.status = Status::Fail;
      }
      if (r.environment.primes.empty() && r.environment.budget == 0) {
        r.environment.primes = s.primes;
        r.environment.seed = s.seed;
        r.environment.budget = s.budget;
      }
      r.environment.budget = s.budget;
      if (options.timings) {
        r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
      results[i] = std::move(r);
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
  auto start = std::chrono::steady_clock::now();
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Report out;
  out.kind = "campaign";
  Json task_list = Json::array();
  std::set<std::uint32_t> primes;
  std::set<unsigned> levels;
  bool fail = false, ambiguous = false, skipped = false;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Report& r = results[i];
    fail |= r.status == Status::Fail;
    ambiguous |= r.status == Status::Ambiguous;
    skipped |= r.status == Status::SkippedBudget;
    primes.insert(r.environment.primes.begin(), r.environment.primes.end());
    levels.insert(r.environment.levels.begin(), r.environment.levels.end());
    for (const auto* list : {&r.identity_checks, &r.estimates}) {
      for (const auto& c : *list) {
        Check tagged{tasks[i].label + ": " + c.name, c.status, c.detail};
        tagged.detail["task"] = i + 1;
        (list == &r.identity_checks ? out.identity_checks : out.estimates).push_back(std::move(tagged));
      }
    }
    Json t = {{"index", i + 1},
              {"label", tasks[i].label},
              {"kind", tasks[i].kind},
              {"input", tasks[i].input ? Json(*tasks[i].input) : Json(nullptr)},
              {"status", to_string(r.status)},
              {"primes", r.environment.primes},
              {"levels", r.environment.levels},
              {"budget", r.environment.budget},
              {"payload", r.payload}};
    if (r.wall_time_ms) t["wall_time_ms"] = *r.wall_time_ms;
    task_list.push_back(std::move(t));
  }
  out.status = fail ? Status::Fail : ambiguous ? Status::Ambiguous : skipped ? Status::SkippedBudget : Status::Pass;
  out.payload = {{"name", campaign.name()}, {"task_count", tasks.size()}, {"tasks", std::move(task_list)}};
  out.environment = {std::vector<std::uint32_t>(primes.begin(), primes.end()),
                     std::vector<unsigned>(levels.begin(), levels.end()), campaign.seed(), campaign.budget()};
  if (options.timings) {
    out.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

namespace {

const char* const kGeneric2x2 = R"J({"vars": ["x1", "x2", "x3", "x4"], "rows": [["x1", "x2"], ["x3", "x4"]]})J";

struct Builtin {
  const char* name;
  std::string document;
};

std::vector<Builtin> builtins() {
  const std::string g = kGeneric2x2;
  return {
      {"stratification-generic-2x2",
       R"J({"name": "stratification-generic-2x2", "version": "1", "seed": 1, "primes": [2, 3],
           "inputs": {"generic": )J" + g + R"J(},
           "tasks": [{"kind": "stratification", "label": "generic 2x2", "input": "generic", "m": [1, 2, 3]}]})J"},
      {"fiber-formula-grid",
       R"J({"name": "fiber-formula-grid", "version": "1", "seed": 1, "primes": [2, 3],
           "tasks": [{"kind": "fiber_formula", "label": "r=2", "r": 2, "max_part": 3, "max_m": 3, "level": 3},
                     {"kind": "fiber_formula", "label": "r=3", "r": 3, "max_part": 3, "max_m": 3, "level": 3}]})J"},
      {"configuration-triangle",
       R"J({"name": "configuration-triangle", "version": "1", "seed": 1, "primes": [3, 5],
           "inputs": {"triangle": {"d_matrix": [[1, -1, 0], [0, 1, -1]]}},
           "tasks": [{"kind": "configuration", "label": "triangle", "input": "triangle", "max_m": 3,
                      "expect_z": 1, "expect_w": 2, "expect_determinant": "x1*x2 + x1*x3 + x2*x3"}]})J"},
      {"corollary-generic-2x2",
       R"J({"name": "corollary-generic-2x2", "version": "1", "seed": 1, "primes": [3, 5],
           "inputs": {"generic": )J" + g + R"J(},
           "tasks": [{"kind": "corollary", "label": "generic 2x2", "input": "generic", "max_m": 4,
                      "expect_z": 1, "expect_w": 2}]})J"},
      {"corollary-diag",
       R"J({"name": "corollary-diag", "version": "1", "seed": 1, "primes": [3, 5],
           "inputs": {"diag": {"vars": ["x1"], "rows": [["x1", "0"], ["0", "x1"]]}},
           "tasks": [{"kind": "corollary", "label": "diag(x1,x1)", "input": "diag", "max_m": 4,
                      "expect_z": "1/2", "expect_w": 1, "forward_equality": true}]})J"},
      {"cone-comparison",
       R"J({"name": "cone-comparison", "version": "1", "seed": 1, "primes": [2, 3],
           "inputs": {"line": {"vars": ["x1"], "rows": [["x1"]]}, "generic": )J" + g + R"J(},
           "tasks": [{"kind": "cone", "label": "[x1]", "input": "line", "max_m": 3},
                     {"kind": "cone", "label": "generic 2x2", "input": "generic", "max_m": 3}]})J"},
      {"lct-known-values",
       R"J({"name": "lct-known-values", "version": "1", "seed": 1, "primes": [2, 3],
           "inputs": {"x1": {"vars": ["x1"], "generators": ["x1"]},
                      "x1^2": {"vars": ["x1"], "generators": ["x1^2"]},
                      "x1^3": {"vars": ["x1"], "generators": ["x1^3"]},
                      "x1*x2": {"vars": ["x1", "x2"], "generators": ["x1*x2"]},
                      "generic": )J" + g + R"J(},
           "tasks": [{"kind": "lct_z", "label": "x1", "input": "x1", "max_m": 2, "expect": 1, "exact": true},
                     {"kind": "lct_z", "label": "x1^2", "input": "x1^2", "max_m": 4, "expect": "1/2", "exact": true},
                     {"kind": "lct_z", "label": "x1^3", "input": "x1^3", "max_m": 6, "expect": "1/3", "exact": true},
                     {"kind": "lct_z", "label": "x1*x2", "input": "x1*x2", "max_m": 4, "expect": 1, "exact": true},
                     {"kind": "lct_z", "label": "generic 2x2 determinant", "input": "generic", "max_m": 4,
                      "primes": [3, 5], "expect": 1, "require_consensus": true}]})J"},
      {"snf-roundtrip",
       R"J({"name": "snf-roundtrip", "version": "1", "seed": 1,
           "tasks": [{"kind": "snf_roundtrip", "label": "random 2x2 and 3x2", "samples": 200, "level": 6, "prime": 5,
                      "shapes": [[2, 2], [3, 2]]}]})J"},
      {"one-generic-cross",
       R"J({"name": "one-generic-cross", "version": "1", "seed": 1, "primes": [3, 5, 7],
           "tasks": [{"kind": "one_generic", "label": "r=2, n<=4, entries -1..1",
                      "sweep": {"r": 2, "max_n": 4, "entries": [-1, 0, 1]}}]})J"},
  };
}

}  // namespace

std::vector<std::string> builtin_campaign_names() {
  std::vector<std::string> out;
  for (const auto& b : builtins()) out.push_back(b.name);
  return out;
}

Json builtin_campaign(const std::string& name) {
  for (const auto& b : builtins()) {
    if (name == b.name) return parse_json_text(b.document);
  }
  std::string known;
  for (const auto& n : builtin_campaign_names()) known += (known.empty() ? "" : ", ") + n;
  throw ValidationError("unknown built-in campaign '" + name + "' (known: " + known + ")");
}

}  // namespace arcdet
