#include "arcdet/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "arcdet/errors.hpp"

namespace arcdet {

VarList::VarList(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = i + 1; j < names_.size(); ++j) {
      if (names_[i] == names_[j]) throw InvalidArgument("duplicate variable '" + names_[i] + "'");
    }
  }
}

int VarList::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

VarListPtr make_vars(std::vector<std::string> names) {
  return std::make_shared<const VarList>(std::move(names));
}

VarListPtr make_indexed_vars(std::string_view prefix, std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return make_vars(std::move(names));
}

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  unsigned da = std::accumulate(a.begin(), a.end(), 0U);
  unsigned db = std::accumulate(b.begin(), b.end(), 0U);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly MultiPoly::constant(VarListPtr vars, const FieldElem& c) {
  MultiPoly p(std::move(vars));
  p.add_term(Exponents(p.num_vars(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(VarListPtr vars, std::size_t index) {
  Exponents e(vars->size(), 0);
  if (index >= e.size()) throw InvalidArgument("variable index out of range");
  e[index] = 1;
  return monomial(std::move(vars), std::move(e), FieldElem(1));
}

MultiPoly MultiPoly::monomial(VarListPtr vars, Exponents exps, const FieldElem& c) {
  MultiPoly p(std::move(vars));
  p.add_term(exps, c);
  return p;
}

std::uint32_t MultiPoly::modulus() const {
  return terms_.empty() ? 0 : terms_.begin()->second.modulus();
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.begin()->first;
  return static_cast<int>(std::accumulate(e.begin(), e.end(), 0U));
}

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

bool MultiPoly::is_constant() const { return total_degree() <= 0; }

bool MultiPoly::is_homogeneous(unsigned d) const {
  for (const auto& [e, c] : terms_) {
    if (std::accumulate(e.begin(), e.end(), 0U) != d) return false;
  }
  return true;
}

FieldElem MultiPoly::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? FieldElem() : it->second;
}

void MultiPoly::add_term(const Exponents& exps, const FieldElem& c) {
  if (exps.size() != num_vars()) throw InvalidArgument("exponent vector length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::require_same_ring(const MultiPoly& rhs) const {
  if (vars_ != rhs.vars_ && *vars_ != *rhs.vars_) {
    throw InvalidArgument("polynomials live over different variable lists");
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  require_same_ring(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  std::uint32_t q = rhs.modulus();
  if (q != 0) {
    for (auto& [e, c] : terms_) c = c.reduce(q);
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) { return *this += -rhs; }

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
  require_same_ring(rhs);
  MultiPoly out(vars_);
  Exponents e(num_vars());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const FieldElem& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ != b.vars_ && *a.vars_ != *b.vars_) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second != ib->second) return false;
  }
  return true;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(vars_, FieldElem(1));
  if (modulus() != 0) result = result.reduce(modulus());
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= num_vars()) throw InvalidArgument("variable index out of range");
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    out.add_term(d, c * FieldElem(static_cast<long>(e[var])));
  }
  return out;
}

MultiPoly MultiPoly::reduce(std::uint32_t q) const {
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) out.add_term(e, c.reduce(q));
  return out;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& values, const VarListPtr& target) const {
  if (values.size() != num_vars()) throw InvalidArgument("compose: wrong number of substitutions");
  MultiPoly out(target);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) term *= values[i].pow(e[i]);
    }
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::embed(const VarListPtr& target) const {
  std::vector<std::size_t> map(num_vars());
  for (std::size_t i = 0; i < num_vars(); ++i) {
    int j = target->index_of((*vars_)[i]);
    if (j < 0) throw InvalidArgument("variable '" + (*vars_)[i] + "' missing from target ring");
    map[i] = static_cast<std::size_t>(j);
  }
  MultiPoly out(target);
  for (const auto& [e, c] : terms_) {
    Exponents f(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) f[map[i]] = e[i];
    out.add_term(f, c);
  }
  return out;
}

MultiPoly MultiPoly::specialize(std::size_t var, const FieldElem& value) const {
  if (var >= num_vars()) throw InvalidArgument("variable index out of range");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < num_vars(); ++i) {
    if (i != var) names.push_back((*vars_)[i]);
  }
  MultiPoly out(make_vars(std::move(names)));
  for (const auto& [e, c] : terms_) {
    Exponents f;
    f.reserve(e.size() - 1);
    FieldElem coeff = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i == var) {
        for (unsigned k = 0; k < e[i]; ++k) coeff *= value;
      } else {
        f.push_back(e[i]);
      }
    }
    out.add_term(f, coeff);
  }
  return out;
}

FieldElem MultiPoly::evaluate(const std::vector<FieldElem>& point) const {
  if (point.size() != num_vars()) throw InvalidArgument("evaluate: point has wrong dimension");
  FieldElem sum;
  for (const auto& [e, c] : terms_) {
    FieldElem term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool negative = c.is_rational() && sgn(c.rational()) < 0;
    FieldElem mag = negative ? -c : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (*vars_)[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << mag;
    } else if (mag.is_one()) {
      os << mono;
    } else {
      os << mag << "*" << mono;
    }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarListPtr& vars) : text_(text), vars_(vars) {}

  MultiPoly parse() {
    MultiPoly result = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  MultiPoly expr() {
    bool negate = accept('-');
    MultiPoly acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (true) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        MultiPoly divisor = factor();
        if (!divisor.is_constant() || divisor.is_zero()) {
          throw ParseError(at, "division is only allowed by a nonzero constant");
        }
        acc *= divisor.terms().begin()->second.inverse();
      } else {
        return acc;
      }
    }
  }

  MultiPoly factor() {
    MultiPoly base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      std::string d = digits();
      if (d.empty()) fail("expected an exponent after '^'");
      if (d.size() > 4) throw ParseError(at, "exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(d)));
    }
    return base;
  }

  MultiPoly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string d = digits();
      return MultiPoly::constant(vars_, FieldElem(Rational(Integer(d))));
    }
    if (c == 'x' || c == 'y') {
      std::size_t start = pos_;
      ++pos_;
      std::string d = digits();
      if (d.empty()) throw ParseError(start, "variable name needs an index");
      std::string name = std::string(1, c) + d;
      int idx = vars_->index_of(name);
      if (idx < 0) throw ParseError(start, "undeclared variable '" + name + "'");
      return MultiPoly::variable(vars_, static_cast<std::size_t>(idx));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const VarListPtr& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const VarListPtr& vars) {
  return Parser(text, vars).parse();
}

TruncSeries substitute_jet(const MultiPoly& p, const std::vector<TruncSeries>& jet) {
  if (jet.size() != p.num_vars()) {
    throw InvalidArgument("jet has " + std::to_string(jet.size()) + " coordinates, polynomial has " +
                          std::to_string(p.num_vars()) + " variables");
  }
  if (jet.empty()) {
    throw InvalidArgument("substitute_jet needs at least one coordinate to fix the level");
  }
  unsigned level = jet.front().level();
  for (const auto& s : jet) {
    if (s.level() != level) throw InvalidArgument("jet coordinates have different levels");
  }
  const FieldElem& like = jet.front()[0];
  TruncSeries sum(level, like);
  for (const auto& [e, c] : p.terms()) {
    TruncSeries term = TruncSeries::constant(level, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= jet[i];
    }
    sum += term;
  }
  if (!like.is_rational()) sum = sum.reduce(like.modulus());
  return sum;
}

}  // namespace arcdet
