#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcdet/jets.hpp"
#include "arcdet/matrix.hpp"

namespace arcdet {

/// Polynomial in jet variables whose coefficients are truncated series in t.
/// Plain polynomials embed with constant coefficients; incidence forms with a
/// fixed base jet substituted carry genuine series coefficients.
struct SeriesTerm {
  Exponents exps;
  TruncSeries coeff;
};

class SeriesPoly {
 public:
  SeriesPoly(std::size_t num_vars, std::vector<SeriesTerm> terms);
  static SeriesPoly from_poly(const MultiPoly& p, unsigned level);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const std::vector<SeriesTerm>& terms() const noexcept { return terms_; }
  unsigned level() const;

 private:
  std::size_t num_vars_;
  std::vector<SeriesTerm> terms_;
};

struct SeriesIdeal {
  std::size_t num_vars = 0;
  std::vector<SeriesPoly> gens;

  static SeriesIdeal from(const IdealGens& ideal, unsigned level);
  /// The ideal (x_{first}, ..., x_{first+count-1}).
  static SeriesIdeal coordinates(std::size_t num_vars, std::size_t first, std::size_t count,
                                 unsigned level);
};

enum class ContactMode { AtLeast, Exactly, Below };

const char* to_string(ContactMode mode);

/// ord_I(gamma) >= order, == order or < order. The truncation sentinel counts as
/// order level+1: it satisfies AtLeast e for e <= level+1, never Exactly.
struct ContactCondition {
  SeriesIdeal ideal;
  ContactMode mode;
  unsigned order;
};

enum class CountStrategy {
  Auto,       ///< lift; sampling if the lift exceeds the budget and sampling is allowed
  Lift,       ///< exact, level by level over t-degree with linear-algebra shortcuts
  Enumerate,  ///< exact, every jet visited (independent oracle)
  Sample,     ///< uniform random jets
};

const char* to_string(CountStrategy strategy);

struct CountOptions {
  std::uint64_t budget = 1ULL << 28;  ///< jets (enumerate) or search nodes (lift)
  CountStrategy strategy = CountStrategy::Auto;
  bool allow_sampling = true;
  std::uint64_t seed = 1;
  std::uint64_t sample_size = 1ULL << 16;
};

/// Exact number of jets in (A^n)_N over F_q satisfying every condition.
Integer count_jets(std::size_t n, std::span<const ContactCondition> conditions, unsigned level,
                   std::uint32_t q, const CountOptions& options,
                   CountStrategy strategy = CountStrategy::Lift);

struct SampleResult {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double fraction_low = 0;   ///< Wilson 95% interval on the hit fraction
  double fraction_high = 0;
};

SampleResult sample_jets(std::size_t n, std::span<const ContactCondition> conditions, unsigned level,
                         std::uint32_t q, const CountOptions& options);

enum class CountStatus { ExactEmpty, Consensus, Ambiguous, Sampled };

const char* to_string(CountStatus status);

struct PrimeCount {
  std::uint32_t q = 0;
  Integer raw;
  Integer total;
  double log_q = 0;                ///< log_q(raw); meaningless when raw == 0
  std::optional<unsigned> dim;     ///< round(log_q raw) when raw > 0
  bool within_guard = false;       ///< |log_q raw - dim| < kGuardBand
  std::optional<SampleResult> sample;
};

inline constexpr double kGuardBand = 0.45;

/// Counts per prime with the dimension read off as the degree in q.
struct CountReport {
  std::vector<PrimeCount> per_prime;
  unsigned ambient_dim = 0;
  CountStatus status = CountStatus::Ambiguous;
  /// d log(count) / d log(q) between the two largest primes with nonzero
  /// counts; insensitive to the number of top-dimensional components.
  std::optional<double> slope;
  std::optional<unsigned> slope_dim;
  std::optional<unsigned> codim;            ///< set for CONSENSUS
  unsigned codim_low = 0, codim_high = 0;   ///< interval for AMBIGUOUS / SAMPLED
  CountStrategy strategy = CountStrategy::Lift;

  bool empty() const noexcept { return status == CountStatus::ExactEmpty; }
  /// Codimension for downstream use: the consensus value, else the slope
  /// estimate, else the largest prime with a nonzero count; nullopt when empty.
  std::optional<unsigned> best_codim() const;
};

struct RawCount {
  std::uint32_t q;
  Integer raw;
  Integer total;
};

/// Consensus rounding across primes (0.45 guard band). CONSENSUS also needs the
/// slope estimate to land within the guard band of the common dimension.
CountReport codim_consensus(std::span<const RawCount> counts, unsigned ambient_dim);

/// Named side-conditions intersected with a contact query.
///   "y-unit"            some coordinate of the trailing y-block is a unit
///   "y-order:p"         the trailing y-block has minimal order exactly p
///   "stratum:l1,..,lr"  the jet lies in the lambda-stratum of `matrix`
struct ConstraintContext {
  const PolyMatrix* matrix = nullptr;  ///< over the leading variables of the query ring
  std::size_t y_count = 0;             ///< size of the trailing y-block
};

std::vector<ContactCondition> resolve_constraint(const std::string& name, std::size_t num_vars,
                                                 unsigned level, const ConstraintContext& context);

struct ContactQuery {
  ContactMode mode = ContactMode::AtLeast;
  unsigned m = 0;
  unsigned level = 0;
  std::vector<std::uint32_t> primes{2, 3, 5};
  std::optional<std::string> constraint;
};

void validate_query(const ContactQuery& query);

CountReport count_contact(const IdealGens& gens, const ContactQuery& query,
                          const CountOptions& options = {}, const ConstraintContext& context = {});

/// Projective count: tuples u in (F_q[t]/t^{N+1})^r with a unit coordinate whose
/// incidence forms sum_j base(i,j) u_j satisfy the contact query, divided by the
/// unit group q^N(q-1). Codimension is taken in the (r-1)(N+1)-dim jet space.
CountReport proj_count_contact(const SeriesMatrix& base, const ContactQuery& query,
                               const CountOptions& options = {});

/// Same, with the incidence forms still symbolic: the trailing `r` variables of
/// `incidence` are the projective coordinates, the others are affine.
CountReport proj_count_contact(const IdealGens& incidence, std::size_t r, const ContactQuery& query,
                               const CountOptions& options = {});

/// Raw tuple count before the unit-group quotient (exposed for the divisibility invariant).
Integer proj_cone_count(const SeriesMatrix& base, const ContactQuery& query, std::uint32_t q,
                        const CountOptions& options = {});

struct LctEstimate {
  std::vector<CountReport> per_m;   ///< index m-1: Cont^{>=m} at level m
  std::optional<Rational> estimate; ///< min codim(m)/m over finite codims
  unsigned witness_m = 0;
  bool certified_upper_bound = false;
  bool generator_bound_ok = true;   ///< estimate <= number of generators
};

/// Jet-theoretic lct: min over m <= max_m of codim(Cont^{>=m}(Z))/m.
LctEstimate lct_estimate(const IdealGens& gens, unsigned max_m, const std::vector<std::uint32_t>& primes,
                         const CountOptions& options = {});

std::string to_decimal(const Integer& value);

}  // namespace arcdet
