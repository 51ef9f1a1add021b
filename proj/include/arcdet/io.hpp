#pragma once

#include <string>
#include <string_view>

#include "arcdet/configurations.hpp"
#include "json.hpp"

namespace arcdet {

using Json = nlohmann::ordered_json;

/// Throws ParseError with the byte offset of the first syntax error.
Json parse_json_text(std::string_view text);
/// Throws IoError when the file cannot be read.
std::string read_text_file(const std::string& path);

/// Integer or "p/q" string.
Rational rational_from_json(const Json& value, const std::string& where);

/// {"vars": [...], "rows": [[poly, ...], ...]}
PolyMatrix matrix_from_json(const Json& doc);
/// {"vars": [...], "generators": [poly, ...]}
IdealGens ideal_from_json(const Json& doc);
/// {"d_matrix": [[rational, ...], ...]} or {"graph": {"vertices": n, "edges": [[u, v], ...]}}
ConfigurationMatrix configuration_from_json(const Json& doc);
/// {"level": N, "coefficients": [[c_0, ..., c_N], ...], "prime": q (optional)}
/// One coefficient row per coordinate; shorter rows are zero-padded.
JetPoint jet_from_json(const Json& doc);

/// Rejects keys outside `allowed`; `where` prefixes the message.
void require_only_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                       const std::string& where);

}  // namespace arcdet
