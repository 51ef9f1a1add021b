#include "arcdet/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "arcdet/errors.hpp"

namespace arcdet {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing field '" + key + "'");
  return *it;
}

void require_object(const Json& doc, const std::string& where) {
  if (!doc.is_object()) throw ValidationError(where + ": expected an object");
}

bool valid_var_name(const std::string& name) {
  if (name.size() < 2 || (name[0] != 'x' && name[0] != 'y')) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

VarListPtr vars_from_json(const Json& doc, const std::string& where) {
  const Json& v = field(doc, "vars", where);
  if (!v.is_array() || v.empty()) throw ValidationError(where + ".vars: expected a nonempty list of names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string() || !valid_var_name(v[i].get<std::string>())) {
      throw ValidationError(where + ".vars[" + std::to_string(i) + "]: variable names are x<k> or y<k>");
    }
    names.push_back(v[i].get<std::string>());
  }
  try {
    return make_vars(std::move(names));
  } catch (const InvalidArgument& e) {
    throw ValidationError(where + ".vars: " + e.what());
  }
}

std::string poly_text(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw ValidationError(where + ": expected a polynomial string");
}

MultiPoly poly_at(const Json& v, const VarListPtr& vars, const std::string& where) {
  try {
    return parse_poly(poly_text(v, where), vars);
  } catch (const ParseError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

std::uint64_t uint_at(const Json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ValidationError(where + ": expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

void require_only_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError(where + ": unknown field '" + key + "'");
    }
  }
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = e.what();
    auto colon = msg.find("parse error");
    throw ParseError(e.byte, colon == std::string::npos ? msg : msg.substr(colon));
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

Rational rational_from_json(const Json& value, const std::string& where) {
  if (value.is_number_integer()) return Rational(value.dump());
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const Error& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  throw ValidationError(where + ": expected an integer or a \"p/q\" string");
}

PolyMatrix matrix_from_json(const Json& doc) {
  require_object(doc, "matrix");
  require_only_keys(doc, {"vars", "rows"}, "matrix");
  VarListPtr vars = vars_from_json(doc, "matrix");
  const Json& rows = field(doc, "rows", "matrix");
  if (!rows.is_array() || rows.empty()) throw ValidationError("matrix.rows: expected a nonempty list of rows");
  std::vector<std::vector<MultiPoly>> entries;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string at = "matrix.rows[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].empty()) throw ValidationError(at + ": expected a nonempty list");
    if (rows[i].size() != rows[0].size()) throw ValidationError(at + ": row length differs from row 0");
    std::vector<MultiPoly> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      row.push_back(poly_at(rows[i][j], vars, at + "[" + std::to_string(j) + "]"));
    }
    entries.push_back(std::move(row));
  }
  if (entries.size() < entries[0].size()) {
    throw ValidationError("matrix: needs at least as many rows as columns (got " + std::to_string(entries.size()) +
                          "x" + std::to_string(entries[0].size()) + ")");
  }
  return PolyMatrix(vars, Matrix<MultiPoly>(std::move(entries)));
}

IdealGens ideal_from_json(const Json& doc) {
  require_object(doc, "ideal");
  require_only_keys(doc, {"vars", "generators"}, "ideal");
  VarListPtr vars = vars_from_json(doc, "ideal");
  const Json& gens = field(doc, "generators", "ideal");
  if (!gens.is_array() || gens.empty()) throw ValidationError("ideal.generators: expected a nonempty list");
  std::vector<MultiPoly> polys;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    polys.push_back(poly_at(gens[i], vars, "ideal.generators[" + std::to_string(i) + "]"));
  }
  try {
    return IdealGens(vars, std::move(polys));
  } catch (const InvalidArgument& e) {
    throw ValidationError(std::string("ideal: ") + e.what());
  }
}

ConfigurationMatrix configuration_from_json(const Json& doc) {
  require_object(doc, "configuration");
  require_only_keys(doc, {"d_matrix", "graph"}, "configuration");
  const bool has_d = doc.contains("d_matrix"), has_g = doc.contains("graph");
  if (has_d == has_g) throw ValidationError("configuration: give exactly one of 'd_matrix' or 'graph'");
  try {
    if (has_d) {
      const Json& d = doc["d_matrix"];
      if (!d.is_array() || d.empty()) throw ValidationError("configuration.d_matrix: expected a nonempty list of rows");
      std::vector<std::vector<Rational>> rows;
      for (std::size_t i = 0; i < d.size(); ++i) {
        std::string at = "configuration.d_matrix[" + std::to_string(i) + "]";
        if (!d[i].is_array()) throw ValidationError(at + ": expected a list");
        std::vector<Rational> row;
        for (std::size_t j = 0; j < d[i].size(); ++j) {
          row.push_back(rational_from_json(d[i][j], at + "[" + std::to_string(j) + "]"));
        }
        rows.push_back(std::move(row));
      }
      return ConfigurationMatrix(std::move(rows));
    }
    const Json& g = doc["graph"];
    require_object(g, "configuration.graph");
    require_only_keys(g, {"vertices", "edges"}, "configuration.graph");
    std::size_t vertices = uint_at(field(g, "vertices", "configuration.graph"), "configuration.graph.vertices");
    const Json& e = field(g, "edges", "configuration.graph");
    if (!e.is_array()) throw ValidationError("configuration.graph.edges: expected a list of [u, v] pairs");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < e.size(); ++i) {
      std::string at = "configuration.graph.edges[" + std::to_string(i) + "]";
      if (!e[i].is_array() || e[i].size() != 2) throw ValidationError(at + ": expected [u, v]");
      edges.emplace_back(uint_at(e[i][0], at), uint_at(e[i][1], at));
    }
    return ConfigurationMatrix::from_graph(vertices, edges);
  } catch (const InvalidArgument& ex) {
    throw ValidationError(std::string("configuration: ") + ex.what());
  }
}

JetPoint jet_from_json(const Json& doc) {
  require_object(doc, "jet");
  require_only_keys(doc, {"level", "coefficients", "prime"}, "jet");
  const std::uint64_t level = uint_at(field(doc, "level", "jet"), "jet.level");
  if (level > 62) throw ValidationError("jet.level: at most 62");
  std::uint32_t q = 0;
  if (doc.contains("prime")) {
    std::uint64_t p = uint_at(doc["prime"], "jet.prime");
    if (!is_prime(p) || p > kMaxModulus) throw ValidationError("jet.prime: expected a prime");
    q = static_cast<std::uint32_t>(p);
  }
  const Json& c = field(doc, "coefficients", "jet");
  if (!c.is_array() || c.empty()) throw ValidationError("jet.coefficients: expected a nonempty list of rows");
  std::vector<TruncSeries> coords;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::string at = "jet.coefficients[" + std::to_string(i) + "]";
    if (!c[i].is_array() || c[i].size() > level + 1) {
      throw ValidationError(at + ": expected a list of at most level+1 coefficients");
    }
    FieldElem zero = q ? FieldElem::modular(0, q) : FieldElem();
    std::vector<FieldElem> coeffs(level + 1, zero);
    for (std::size_t k = 0; k < c[i].size(); ++k) {
      FieldElem v(rational_from_json(c[i][k], at + "[" + std::to_string(k) + "]"));
      try {
        coeffs[k] = q ? v.reduce(q) : v;
      } catch (const DivisionByZero&) {
        throw ValidationError(at + "[" + std::to_string(k) + "]: denominator divisible by the prime");
      }
    }
    coords.emplace_back(static_cast<unsigned>(level), std::move(coeffs));
  }
  return JetPoint(std::move(coords));
}

}  // namespace arcdet
