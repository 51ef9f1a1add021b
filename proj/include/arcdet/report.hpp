#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcdet/configurations.hpp"
#include "arcdet/io.hpp"

namespace arcdet {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kLibraryVersion = "0.1.0";

enum class Status { Pass, Fail, Ambiguous, Computed, SkippedBudget };

const char* to_string(Status status);
Status status_of(Verdict verdict);

/// One named check. Identity checks are exact equalities; estimate checks rest on
/// consensus rounding and may come out AMBIGUOUS.
struct Check {
  std::string name;
  Status status = Status::Pass;
  Json detail = Json::object();
};

struct Environment {
  std::vector<std::uint32_t> primes;
  std::vector<unsigned> levels;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
};

struct Report {
  std::string kind;
  Status status = Status::Computed;
  std::vector<Check> identity_checks;
  std::vector<Check> estimates;
  Json payload = Json::object();
  Environment environment;
  std::optional<double> wall_time_ms;  ///< only when timings are requested
};

/// FAIL if any check failed, else AMBIGUOUS/SKIPPED_BUDGET if any check is,
/// else PASS when there are checks and `fallback` otherwise.
Status aggregate_status(const std::vector<Check>& identity, const std::vector<Check>& estimates,
                        Status fallback = Status::Computed);

Json to_json(const Report& report);
/// Structural validation of an emitted report; throws InternalInvariant.
void validate_report_json(const Json& doc);

enum class Format { Json, Csv, Text };

std::optional<Format> parse_format(std::string_view name);
/// Validates the JSON form, then renders. JSON ends with a newline.
std::string render(const Report& report, Format format);

/// Leaves of a JSON document as (path, value) pairs in document order.
std::vector<std::pair<std::string, std::string>> flatten_json(const Json& doc);

// Encodings of library values.
Json rational_json(const Rational& value);
Json json_of(const LambdaProfile& lambda);
Json json_of(const PolyMatrix& matrix);
Json json_of(const SeriesMatrix& matrix);
Json json_of(const CountReport& report);
Json json_of(const LctEstimate& estimate);
Json json_of(const StratumReport& report);
Json json_of(const FiberCheck& check);
Json json_of(const CorollaryCheck& check);
Json json_of(const ConeCheck& check);
Json json_of(const SnfResult& result);
Json json_of(const SupportExpansion& expansion);
Json json_of(const Matroid& matroid);
Json json_of(const HadamardResult& result);
Json json_of(const LinearOneGenericResult& result);
Json json_of(const ConfigurationReport& report);

}  // namespace arcdet
