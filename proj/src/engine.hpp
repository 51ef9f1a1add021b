#pragma once

// Modular evaluation kernel shared by the counting routes. Jets are flat digit
// arrays: coefficient k of coordinate i lives at i * L + k, L = level + 1.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "arcdet/counting.hpp"

namespace arcdet::detail {

using u128 = unsigned __int128;

u128 pow_u128(std::uint64_t base, unsigned exp);
Integer to_integer(u128 value);

class ModPoly {
 public:
  struct Factor {
    std::uint16_t var;
    std::uint16_t exp;
  };
  struct Term {
    std::vector<Factor> factors;
    std::vector<std::uint32_t> coeff;  // length L
    unsigned coeff_ord;                // first nonzero index of coeff
  };

  ModPoly(const SeriesPoly& p, unsigned level, std::uint32_t q);

  const std::vector<Term>& terms() const noexcept { return terms_; }

 private:
  std::vector<Term> terms_;
};

class Kernel {
 public:
  Kernel(std::size_t n, unsigned level, std::uint32_t q);

  std::size_t n() const noexcept { return n_; }
  unsigned levels() const noexcept { return L_; }
  std::uint32_t q() const noexcept { return q_; }

  /// Coefficients 0..upto-1 of p(gamma(t)).
  void eval(const ModPoly& p, const std::uint32_t* jet, unsigned upto, std::uint32_t* out) const;
  /// t-order of p(gamma), or L when all L coefficients vanish.
  unsigned order(const ModPoly& p, const std::uint32_t* jet) const;
  /// dp/dx_var at t = 0 and gamma_0.
  std::uint32_t partial_at_origin(const ModPoly& p, std::size_t var, const std::uint32_t* jet) const;

 private:
  void mul_into(std::uint32_t* acc, const std::uint32_t* series, unsigned upto, std::uint32_t* scratch) const;

  std::size_t n_;
  unsigned L_;
  std::uint32_t q_;
  bool lazy_reduce_;
};

/// Conditions compiled against one prime: each condition references a list of
/// polynomial indices into `polys`.
struct CompiledConditions {
  std::vector<ModPoly> polys;
  struct Entry {
    std::vector<std::size_t> poly_idx;
    ContactMode mode;
    unsigned order;
  };
  std::vector<Entry> entries;

  CompiledConditions(std::span<const ContactCondition> conditions, unsigned level, std::uint32_t q);
  /// True when the jet satisfies every condition (orders computed from scratch).
  bool satisfied(const Kernel& kernel, const std::uint32_t* jet) const;
};

/// Number of jets whose generator pullbacks have vanishing t^k coefficients for
/// every k < thresholds[g]. Level-by-level search: coefficient k >= 1 of g(gamma)
/// is J(gamma_0) . a_k plus a function of lower levels.
class LiftCounter {
 public:
  LiftCounter(const Kernel& kernel, const std::vector<ModPoly>& polys, std::uint64_t budget);

  u128 count(const std::vector<unsigned>& thresholds);
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  u128 level_zero();
  u128 descend(unsigned k);
  void tick();

  const Kernel& kernel_;
  const std::vector<ModPoly>& polys_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<unsigned> thresholds_;
  unsigned max_threshold_ = 0;
  std::vector<std::uint32_t> jet_;
  std::vector<std::uint32_t> jacobian_;  // polys x n at gamma_0
  std::vector<std::uint32_t> scratch_;
};

/// Exact count through inclusion-exclusion over at-least conjunctions.
Integer lift_count(const Kernel& kernel, const CompiledConditions& compiled, std::uint64_t budget);

/// Exact count by visiting all q^{nL} jets.
Integer enumerate_count(const Kernel& kernel, const CompiledConditions& compiled, std::uint64_t budget);

/// Visits every jet whose listed polynomials vanish below their thresholds
/// (pruned depth-first search; each jet of the cylinder is visited once).
void for_each_in_cylinder(const Kernel& kernel, const std::vector<ModPoly>& polys,
                          const std::vector<unsigned>& thresholds, std::uint64_t budget,
                          const std::function<void(const std::uint32_t*)>& visit);

}  // namespace arcdet::detail
