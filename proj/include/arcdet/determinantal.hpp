#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arcdet/counting.hpp"
#include "arcdet/snf.hpp"

namespace arcdet {

enum class Verdict { Pass, Fail, Ambiguous };

const char* to_string(Verdict verdict);

/// Entry l-1 holds the l-minors of A with zero minors dropped (possibly the zero ideal).
std::vector<IdealGens> minor_ideal_tower(const PolyMatrix& a);

/// Profile from minor-ideal orders: lambda_1 + ... + lambda_l = ord of the l-minors.
/// Truncated partial sums cut the profile short and set the flag.
LambdaProfile lambda_profile(const PolyMatrix& a, const JetPoint& jet);

/// A together with its maximal minors and incidence forms sum_j a_ij y_j.
class DeterminantalPair {
 public:
  /// Throws InvalidArgument when every maximal minor vanishes identically or a
  /// matrix variable collides with the y-names.
  explicit DeterminantalPair(PolyMatrix a);

  const PolyMatrix& matrix() const noexcept { return matrix_; }
  std::size_t r() const noexcept { return matrix_.cols(); }
  std::size_t n() const noexcept { return matrix_.vars()->size(); }
  const IdealGens& z_gens() const noexcept { return z_gens_; }
  /// Variables x..., y1..yr.
  const VarListPtr& xy_vars() const noexcept { return xy_vars_; }
  const IdealGens& w_gens() const noexcept { return w_gens_; }
  /// Incidence forms on the chart y_i = 1 (i zero-based), over the remaining variables.
  IdealGens chart(std::size_t i) const;

 private:
  PolyMatrix matrix_;
  IdealGens z_gens_;
  VarListPtr xy_vars_;
  IdealGens w_gens_;
};

struct StratumCount {
  LambdaProfile lambda;
  Integer count;
};

struct StratumReport {
  unsigned m = 0;
  unsigned level = 0;
  std::uint32_t q = 0;
  std::vector<StratumCount> strata;  ///< sorted by lambda
  Integer residual;                  ///< jets with a truncated profile
  Integer classified_total;          ///< sum over strata
  Integer cont_m;                    ///< |Cont^m(Z_A)| from the independent lift count
  bool partition_ok = false;
};

/// Classifies every jet of Cont^m(Z_A) at level N by its profile (pruned
/// enumeration) and compares the total with an independent count of Cont^m.
StratumReport stratum_counts(const DeterminantalPair& pair, unsigned m, unsigned level, std::uint32_t q,
                             const CountOptions& options = {});

/// Sum over lambda_j < m of (m - lambda_j); nullopt (EMPTY) when lambda_r < m.
std::optional<unsigned> fiber_codim_formula(const LambdaProfile& lambda, unsigned m);

struct ChartCount {
  std::uint32_t q = 0;
  std::size_t chart = 0;
  Integer count;
  std::optional<unsigned> exponent;  ///< d with count == q^d; nullopt if not a pure power
};

struct FiberCheck {
  LambdaProfile lambda;
  unsigned m = 0;
  unsigned level = 0;
  std::optional<unsigned> formula;
  std::vector<ChartCount> charts;
  bool counted_empty = false;
  std::optional<unsigned> counted_codim;  ///< minimum over nonempty charts, equal across primes
  CountReport quotient;                   ///< unit-group quotient route
  bool quotient_consistent = true;
  Verdict verdict = Verdict::Ambiguous;
};

/// Counts the fiber Cont^{>=m}(W_A) over diag(t^lambda) in the projective jet
/// space, chart by chart (u_i = 1) and through the unit-group quotient.
FiberCheck fiber_count_check(const LambdaProfile& lambda, unsigned m, unsigned level,
                             const std::vector<std::uint32_t>& primes, const CountOptions& options = {});

/// min(r c, r - 1 + c)
Rational transform_bound_forward(const Rational& c, std::size_t r);
/// min(c', (c' - 1)/r + 1)
Rational transform_bound_backward(const Rational& c_prime, std::size_t r);

struct CorollaryCheck {
  std::size_t r = 0;
  unsigned max_m = 0;
  Rational epsilon;
  LctEstimate lct_z;
  std::vector<LctEstimate> charts;
  std::optional<Rational> lct_w;
  std::optional<Rational> forward_bound;
  bool forward_ok = false;
  bool forward_equality = false;  ///< lct_w == forward(lct_z, r) exactly
  bool backward_applied = false;
  std::optional<Rational> backward_bound;
  bool backward_ok = true;
  bool z_is_one = false;
  bool w_is_r = false;
  bool biconditional_ok = false;
  bool chart_bound_ok = true;
  bool certified = false;
  Verdict verdict = Verdict::Ambiguous;
};

/// lct(Z_A) from the maximal minors, lct(W_A) as the minimum over the charts
/// y_i = 1, then the transform bounds and the lct_Z = 1 <=> lct_W = r check.
CorollaryCheck corollary_check(const PolyMatrix& a, unsigned max_m, const std::vector<std::uint32_t>& primes,
                               const CountOptions& options = {});

struct ConePrime {
  std::uint32_t q = 0;
  Integer cone;         ///< Cont^m(cone) meet Cont^p(zero section) at level N
  Integer punctured;    ///< Cont^{m-p}(punctured model) at level N - p
  Integer scale;        ///< q^{n p}
  bool identity_ok = false;
};

struct ConeCheck {
  unsigned m = 0, p = 0, level = 0;
  std::size_t r = 0;
  std::vector<ConePrime> per_prime;
  CountReport cone_report;
  CountReport punctured_report;
  bool codim_compared = false;
  bool codim_ok = true;
  Verdict verdict = Verdict::Ambiguous;
};

/// codim(Cont^m(cone) meet Cont^p(X x 0)) = p r + codim(Cont^{m-p}(punctured)).
ConeCheck cone_comparison_check(const PolyMatrix& a, unsigned m, unsigned p, unsigned level,
                                const std::vector<std::uint32_t>& primes, const CountOptions& options = {});

}  // namespace arcdet
