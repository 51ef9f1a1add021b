#include "arcdet/report.hpp"

#include <cmath>
#include <sstream>

#include "arcdet/errors.hpp"

namespace arcdet {

const char* to_string(Status status) {
  switch (status) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Ambiguous: return "AMBIGUOUS";
    case Status::Computed: return "COMPUTED";
    case Status::SkippedBudget: return "SKIPPED_BUDGET";
  }
  return "?";
}

Status status_of(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return Status::Pass;
    case Verdict::Fail: return Status::Fail;
    case Verdict::Ambiguous: return Status::Ambiguous;
  }
  return Status::Ambiguous;
}

Status aggregate_status(const std::vector<Check>& identity, const std::vector<Check>& estimates, Status fallback) {
  bool any = false, fail = false, ambiguous = false, skipped = false;
  for (const auto* list : {&identity, &estimates}) {
    for (const auto& c : *list) {
      any = true;
      fail |= c.status == Status::Fail;
      ambiguous |= c.status == Status::Ambiguous;
      skipped |= c.status == Status::SkippedBudget;
    }
  }
  if (fail) return Status::Fail;
  if (ambiguous) return Status::Ambiguous;
  if (skipped) return Status::SkippedBudget;
  return any ? Status::Pass : fallback;
}

namespace {

Json checks_json(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) {
    out.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  }
  return out;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw InternalInvariant("emitted report violates the schema: " + what);
}

bool is_status(const Json& v, bool check_level) {
  if (!v.is_string()) return false;
  const std::string s = v.get<std::string>();
  if (s == "PASS" || s == "FAIL" || s == "AMBIGUOUS" || s == "SKIPPED_BUDGET") return true;
  return !check_level && s == "COMPUTED";
}

void validate_checks(const Json& list, const std::string& where) {
  require(list.is_array(), where + " must be an array");
  for (const auto& c : list) {
    require(c.is_object() && c.size() == 3, where + " entries must have name, status, detail");
    require(c.contains("name") && c["name"].is_string(), where + ".name must be a string");
    require(c.contains("status") && is_status(c["status"], true), where + ".status out of range");
    require(c.contains("detail") && c["detail"].is_object(), where + ".detail must be an object");
  }
}

// Rationals are {"value": "p/q", "decimal": x}; the decimal must match the value.
void validate_rationals(const Json& v, const std::string& path) {
  if (v.is_object()) {
    if (v.size() == 2 && v.contains("value") && v.contains("decimal") && v["value"].is_string()) {
      Rational q;
      try {
        q = parse_rational(v["value"].get<std::string>());
      } catch (const Error&) {
        require(false, path + ".value is not a rational");
      }
      require(v["decimal"].is_number() && std::fabs(v["decimal"].get<double>() - q.get_d()) <=
                                              1e-12 * std::max(1.0, std::fabs(q.get_d())),
              path + ".decimal disagrees with the exact value");
      return;
    }
    for (const auto& [k, child] : v.items()) validate_rationals(child, path + "." + k);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) validate_rationals(v[i], path + "[" + std::to_string(i) + "]");
  } else if (v.is_number_float()) {
    require(std::isfinite(v.get<double>()), path + " is not finite");
  }
}

std::string leaf_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void flatten_into(const Json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object() && !v.empty()) {
    for (const auto& [k, child] : v.items()) flatten_into(child, path.empty() ? k : path + "." + k, out);
  } else if (v.is_array() && !v.empty()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten_into(v[i], path + "[" + std::to_string(i) + "]", out);
  } else if (v.is_object() || v.is_array()) {
    out.emplace_back(path, v.dump());
  } else {
    out.emplace_back(path, leaf_text(v));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_text(const Json& doc) {
  std::ostringstream os;
  os << doc["kind"].get<std::string>() << ": " << doc["status"].get<std::string>() << "\n";
  for (const char* section : {"identity_checks", "estimates"}) {
    if (doc[section].empty()) continue;
    os << (std::string(section) == "estimates" ? "estimates" : "identity checks") << ":\n";
    for (const auto& c : doc[section]) {
      os << "  [" << c["status"].get<std::string>() << "] " << c["name"].get<std::string>();
      if (!c["detail"].empty()) os << "  " << c["detail"].dump();
      os << "\n";
    }
  }
  auto rows = flatten_json(doc["payload"]);
  if (!rows.empty()) os << "payload:\n";
  for (const auto& [path, value] : rows) os << "  " << path << " = " << value << "\n";
  const Json& env = doc["environment"];
  os << "environment: primes=" << env["primes"].dump() << " levels=" << env["levels"].dump()
     << " seed=" << env["seed"].dump() << " budget=" << env["budget"].dump() << " version=" << env["version"].get<std::string>()
     << "\n";
  if (doc.contains("wall_time_ms")) os << "wall time: " << doc["wall_time_ms"].dump() << " ms\n";
  return os.str();
}

Json optional_uint(const std::optional<unsigned>& v) { return v ? Json(*v) : Json(nullptr); }

Json optional_rational(const std::optional<Rational>& v) { return v ? rational_json(*v) : Json(nullptr); }

Json indices_json(const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_to_string(x));
  return out;
}

}  // namespace

Json to_json(const Report& report) {
  Json env = {{"version", kLibraryVersion},
              {"primes", report.environment.primes},
              {"levels", report.environment.levels},
              {"seed", report.environment.seed},
              {"budget", report.environment.budget}};
  Json doc = {{"schema_version", kReportSchemaVersion},
              {"kind", report.kind},
              {"status", to_string(report.status)},
              {"identity_checks", checks_json(report.identity_checks)},
              {"estimates", checks_json(report.estimates)},
              {"payload", report.payload},
              {"environment", env}};
  if (report.wall_time_ms) doc["wall_time_ms"] = *report.wall_time_ms;
  return doc;
}

void validate_report_json(const Json& doc) {
  require(doc.is_object(), "top level must be an object");
  for (const auto& [k, _] : doc.items()) {
    require(k == "schema_version" || k == "kind" || k == "status" || k == "identity_checks" || k == "estimates" ||
                k == "payload" || k == "environment" || k == "wall_time_ms",
            "unknown top-level key '" + k + "'");
  }
  require(doc.contains("schema_version") && doc["schema_version"] == kReportSchemaVersion, "schema_version");
  require(doc.contains("kind") && doc["kind"].is_string() && !doc["kind"].get<std::string>().empty(), "kind");
  require(doc.contains("status") && is_status(doc["status"], false), "status");
  require(doc.contains("identity_checks"), "identity_checks missing");
  require(doc.contains("estimates"), "estimates missing");
  validate_checks(doc["identity_checks"], "identity_checks");
  validate_checks(doc["estimates"], "estimates");
  require(doc.contains("payload") && doc["payload"].is_object(), "payload must be an object");
  require(doc.contains("environment") && doc["environment"].is_object(), "environment must be an object");
  const Json& env = doc["environment"];
  require(env.size() == 5, "environment has exactly version, primes, levels, seed, budget");
  require(env.contains("version") && env["version"].is_string(), "environment.version");
  require(env.contains("primes") && env["primes"].is_array(), "environment.primes");
  for (const auto& p : env["primes"]) require(p.is_number_unsigned() && is_prime(p.get<std::uint64_t>()), "environment.primes entries");
  require(env.contains("levels") && env["levels"].is_array(), "environment.levels");
  for (const auto& l : env["levels"]) require(l.is_number_unsigned(), "environment.levels entries");
  require(env.contains("seed") && env["seed"].is_number_unsigned(), "environment.seed");
  require(env.contains("budget") && env["budget"].is_number_unsigned(), "environment.budget");
  if (doc.contains("wall_time_ms")) require(doc["wall_time_ms"].is_number() && doc["wall_time_ms"].get<double>() >= 0, "wall_time_ms");
  validate_rationals(doc["payload"], "payload");
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> flatten_json(const Json& doc) {
  std::vector<std::pair<std::string, std::string>> out;
  flatten_into(doc, "", out);
  return out;
}

std::string render(const Report& report, Format format) {
  Json doc = to_json(report);
  validate_report_json(doc);
  switch (format) {
    case Format::Json: return doc.dump(2) + "\n";
    case Format::Csv: {
      std::string out = "path,value\n";
      for (const auto& [path, value] : flatten_json(doc)) out += csv_field(path) + "," + csv_field(value) + "\n";
      return out;
    }
    case Format::Text: return render_text(doc);
  }
  return {};
}

Json rational_json(const Rational& value) {
  return {{"value", rational_to_string(value)}, {"decimal", value.get_d()}};
}

Json json_of(const LambdaProfile& lambda) {
  return {{"parts", lambda.parts()}, {"truncated", lambda.truncated()}, {"text", lambda.to_string()}};
}

Json json_of(const PolyMatrix& matrix) {
  return {{"vars", matrix.vars()->names()}, {"rows", matrix.to_strings()}};
}

Json json_of(const SeriesMatrix& matrix) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      Json coeffs = Json::array();
      for (const auto& c : matrix(i, j).coeffs()) coeffs.push_back(c.to_string());
      row.push_back(std::move(coeffs));
    }
    rows.push_back(std::move(row));
  }
  return {{"level", matrix.level()}, {"modulus", matrix(0, 0).modulus()}, {"entries", std::move(rows)}};
}

Json json_of(const CountReport& report) {
  Json primes = Json::array();
  for (const auto& p : report.per_prime) {
    Json e = {{"q", p.q},
              {"count", to_decimal(p.raw)},
              {"total", to_decimal(p.total)},
              {"log_q", p.raw > 0 ? Json(p.log_q) : Json(nullptr)},
              {"dim", optional_uint(p.dim)},
              {"within_guard", p.within_guard}};
    if (p.sample) {
      e["sample"] = {{"samples", p.sample->samples},
                     {"hits", p.sample->hits},
                     {"fraction_low", p.sample->fraction_low},
                     {"fraction_high", p.sample->fraction_high}};
    }
    primes.push_back(std::move(e));
  }
  return {{"status", to_string(report.status)},
          {"strategy", to_string(report.strategy)},
          {"ambient_dim", report.ambient_dim},
          {"codim", optional_uint(report.codim)},
          {"codim_interval", {report.codim_low, report.codim_high}},
          {"slope", report.slope ? Json(*report.slope) : Json(nullptr)},
          {"slope_dim", optional_uint(report.slope_dim)},
          {"per_prime", std::move(primes)}};
}

Json json_of(const LctEstimate& estimate) {
  Json per_m = Json::array();
  for (std::size_t i = 0; i < estimate.per_m.size(); ++i) {
    Json e = {{"m", i + 1}, {"level", i + 1}, {"best_codim", optional_uint(estimate.per_m[i].best_codim())}};
    e["count"] = json_of(estimate.per_m[i]);
    per_m.push_back(std::move(e));
  }
  return {{"estimate", optional_rational(estimate.estimate)},
          {"witness_m", estimate.witness_m},
          {"certified", estimate.certified_upper_bound},
          {"generator_bound_ok", estimate.generator_bound_ok},
          {"per_m", std::move(per_m)}};
}

Json json_of(const StratumReport& report) {
  Json strata = Json::array();
  for (const auto& s : report.strata) strata.push_back({{"lambda", json_of(s.lambda)}, {"count", to_decimal(s.count)}});
  return {{"m", report.m},
          {"level", report.level},
          {"q", report.q},
          {"cont_m", to_decimal(report.cont_m)},
          {"classified_total", to_decimal(report.classified_total)},
          {"residual", to_decimal(report.residual)},
          {"partition_ok", report.partition_ok},
          {"strata", std::move(strata)}};
}

Json json_of(const FiberCheck& check) {
  Json charts = Json::array();
  for (const auto& c : check.charts) {
    charts.push_back({{"q", c.q}, {"chart", c.chart + 1}, {"count", to_decimal(c.count)}, {"exponent", optional_uint(c.exponent)}});
  }
  return {{"lambda", json_of(check.lambda)},
          {"m", check.m},
          {"level", check.level},
          {"formula_codim", optional_uint(check.formula)},
          {"formula_empty", !check.formula.has_value()},
          {"counted_empty", check.counted_empty},
          {"counted_codim", optional_uint(check.counted_codim)},
          {"charts", std::move(charts)},
          {"quotient", json_of(check.quotient)},
          {"quotient_consistent", check.quotient_consistent},
          {"verdict", to_string(check.verdict)}};
}

Json json_of(const CorollaryCheck& check) {
  Json charts = Json::array();
  for (std::size_t i = 0; i < check.charts.size(); ++i) {
    Json c = json_of(check.charts[i]);
    c["chart"] = i + 1;
    charts.push_back(std::move(c));
  }
  return {{"r", check.r},
          {"max_m", check.max_m},
          {"epsilon", rational_json(check.epsilon)},
          {"lct_z", optional_rational(check.lct_z.estimate)},
          {"lct_w", optional_rational(check.lct_w)},
          {"forward_bound", optional_rational(check.forward_bound)},
          {"forward_ok", check.forward_ok},
          {"forward_equality", check.forward_equality},
          {"backward_applied", check.backward_applied},
          {"backward_bound", optional_rational(check.backward_bound)},
          {"backward_ok", check.backward_ok},
          {"z_is_one", check.z_is_one},
          {"w_is_r", check.w_is_r},
          {"biconditional_ok", check.biconditional_ok},
          {"chart_bound_ok", check.chart_bound_ok},
          {"certified", check.certified},
          {"verdict", to_string(check.verdict)},
          {"z_estimate", json_of(check.lct_z)},
          {"w_charts", std::move(charts)}};
}

Json json_of(const ConeCheck& check) {
  Json primes = Json::array();
  for (const auto& p : check.per_prime) {
    primes.push_back({{"q", p.q},
                      {"cone", to_decimal(p.cone)},
                      {"punctured", to_decimal(p.punctured)},
                      {"scale", to_decimal(p.scale)},
                      {"identity_ok", p.identity_ok}});
  }
  return {{"m", check.m},
          {"p", check.p},
          {"level", check.level},
          {"r", check.r},
          {"per_prime", std::move(primes)},
          {"codim_compared", check.codim_compared},
          {"codim_ok", check.codim_ok},
          {"cone_count", json_of(check.cone_report)},
          {"punctured_count", json_of(check.punctured_report)},
          {"verdict", to_string(check.verdict)}};
}

Json json_of(const SnfResult& result) {
  return {{"lambda", json_of(result.lambda)},
          {"valid_to_level", result.valid_to_level},
          {"p", json_of(result.p_transform)},
          {"q", json_of(result.q_transform)}};
}

Json json_of(const SupportExpansion& expansion) {
  Json terms = Json::array();
  for (const auto& [subset, c] : expansion.coefficients) {
    terms.push_back({{"subset", indices_json(subset)}, {"coefficient", rational_json(c)}});
  }
  return {{"polynomial", expansion.polynomial.to_string()},
          {"terms", std::move(terms)},
          {"matches_direct", expansion.matches_direct}};
}

Json json_of(const Matroid& matroid) {
  Json bases = Json::array();
  for (const auto& b : matroid.bases()) bases.push_back(indices_json(b));
  return {{"ground_size", matroid.ground_size()},
          {"rank", matroid.rank()},
          {"basis_count", matroid.bases().size()},
          {"bases", std::move(bases)}};
}

Json json_of(const HadamardResult& result) {
  Json out = {{"one_generic", result.one_generic}};
  if (!result.one_generic) {
    out["witness_set"] = indices_json(result.witness_set);
    out["v"] = rationals_json(result.v);
    out["w"] = rationals_json(result.w);
  }
  return out;
}

Json json_of(const LinearOneGenericResult& result) {
  Json out = {{"one_generic", result.one_generic},
              {"confirmation", to_string(result.confirmation)},
              {"primes_searched", result.primes_searched}};
  if (result.v) out["v"] = rationals_json(*result.v);
  if (result.w) out["w"] = rationals_json(*result.w);
  if (result.irrational_v_minpoly) out["irrational_v_minpoly"] = rationals_json(*result.irrational_v_minpoly);
  return out;
}

Json json_of(const ConfigurationReport& report) {
  return {{"patterson", json_of(report.patterson)},
          {"determinant", report.determinant.to_string()},
          {"expansion", json_of(report.expansion)},
          {"square_free", report.square_free},
          {"connected", report.connected},
          {"basis_count", report.basis_count},
          {"corollary", json_of(report.corollary)},
          {"verdict", to_string(report.verdict)}};
}

}  // namespace arcdet
