#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "arcdet/field.hpp"
#include "arcdet/series.hpp"

namespace arcdet {

using Exponents = std::vector<unsigned>;

/// Ordered variable names shared by every polynomial of one ring.
class VarList {
 public:
  VarList() = default;
  explicit VarList(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& operator[](std::size_t i) const { return names_.at(i); }
  /// Index of `name`, or -1.
  int index_of(std::string_view name) const;

  friend bool operator==(const VarList&, const VarList&) = default;

 private:
  std::vector<std::string> names_;
};

using VarListPtr = std::shared_ptr<const VarList>;

VarListPtr make_vars(std::vector<std::string> names);
/// {prefix1, ..., prefixN}
VarListPtr make_indexed_vars(std::string_view prefix, std::size_t count);

/// Graded-lex, larger monomials first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse polynomial over Q or F_q with canonical graded-lex term order.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, FieldElem, GrlexGreater>;

  MultiPoly() : MultiPoly(make_vars({})) {}
  explicit MultiPoly(VarListPtr vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(VarListPtr vars, const FieldElem& c);
  static MultiPoly variable(VarListPtr vars, std::size_t index);
  static MultiPoly monomial(VarListPtr vars, Exponents exps, const FieldElem& c);

  const VarListPtr& vars() const noexcept { return vars_; }
  std::size_t num_vars() const noexcept { return vars_->size(); }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  /// Field modulus of the coefficients (0 for Q; 0 for the zero polynomial).
  std::uint32_t modulus() const;

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool is_constant() const;
  /// Every term has total degree exactly `d` (the zero polynomial qualifies).
  bool is_homogeneous(unsigned d) const;
  /// Coefficient of the given monomial (zero if absent).
  FieldElem coefficient(const Exponents& exps) const;

  void add_term(const Exponents& exps, const FieldElem& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  MultiPoly& operator*=(const FieldElem& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
  friend MultiPoly operator*(MultiPoly a, const FieldElem& c) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned e) const;
  MultiPoly derivative(std::size_t var) const;
  MultiPoly reduce(std::uint32_t q) const;

  /// Substitutes `values[i]` (polynomials over a common target ring) for variable i.
  MultiPoly compose(const std::vector<MultiPoly>& values, const VarListPtr& target) const;
  /// Same polynomial viewed in a larger ring; every variable must exist in `target`.
  MultiPoly embed(const VarListPtr& target) const;
  /// Sets variable `var` to the constant `value` and drops it from the ring.
  MultiPoly specialize(std::size_t var, const FieldElem& value) const;
  FieldElem evaluate(const std::vector<FieldElem>& point) const;

  /// Canonical text in the input grammar, e.g. "x1*x2 + 3*x3^2".
  std::string to_string() const;

 private:
  void require_same_ring(const MultiPoly& rhs) const;

  VarListPtr vars_;
  TermMap terms_;
};

/// Parses text in the polynomial grammar over the declared variables:
///   expr := ['-'] term (('+'|'-') term)* ; term := factor (('*'|'/') factor)*
///   factor := atom ('^' UINT)? ; atom := INT | VAR | '(' expr ')' ; VAR := ('x'|'y') UINT
/// Division is only allowed by nonzero integer constants.
MultiPoly parse_poly(std::string_view text, const VarListPtr& vars);

/// p(gamma(t)) mod t^{N+1}; `jet` has one series per variable, at a common level.
TruncSeries substitute_jet(const MultiPoly& p, const std::vector<TruncSeries>& jet);

}  // namespace arcdet
