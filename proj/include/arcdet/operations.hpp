#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "arcdet/report.hpp"

namespace arcdet {

struct RunSettings {
  std::vector<std::uint32_t> primes{2, 3};
  std::uint64_t budget = 1ULL << 28;
  std::uint64_t seed = 1;
  CountStrategy strategy = CountStrategy::Auto;
  bool timings = false;

  CountOptions count_options() const;
};

struct LctExpectation {
  std::optional<Rational> value;
  bool exact = false;              ///< otherwise within 1/(2M)
  bool require_consensus = false;  ///< every m must reach CONSENSUS
};

Report lct_report(const IdealGens& gens, unsigned max_m, const RunSettings& settings,
                  const LctExpectation& expect = {});
/// Minimum over the charts y_i = 1 of the incidence forms.
Report lct_w_report(const PolyMatrix& a, unsigned max_m, const RunSettings& settings,
                    const LctExpectation& expect = {});

struct CorollaryExpectation {
  std::optional<Rational> lct_z, lct_w;
  bool forward_equality = false;
};

Report corollary_report(const PolyMatrix& a, unsigned max_m, const RunSettings& settings,
                        const CorollaryExpectation& expect = {});

/// `matrix` (optional) supplies the stratum constraint context.
Report count_report(const IdealGens& gens, const ContactQuery& query, const RunSettings& settings,
                    const PolyMatrix* matrix = nullptr);

Report profile_report(const PolyMatrix& a, const JetPoint& jet);
Report snf_report(const PolyMatrix& a, const JetPoint& jet);

/// Level per cell: `level` if given, else m.
Report strata_report(const PolyMatrix& a, const std::vector<unsigned>& ms, std::optional<unsigned> level,
                     const RunSettings& settings);

Report fiber_report(const std::vector<LambdaProfile>& profiles, const std::vector<unsigned>& ms, unsigned level,
                    const RunSettings& settings);

/// Cells (m, p); level per cell: `level` if given, else m.
Report cone_report(const PolyMatrix& a, const std::vector<std::pair<unsigned, unsigned>>& cells,
                   std::optional<unsigned> level, const RunSettings& settings);

/// Without max_m: the Patterson matrix and its support expansion only.
Report patterson_report(const ConfigurationMatrix& cfg, std::optional<unsigned> max_m, const RunSettings& settings,
                        const CorollaryExpectation& expect = {},
                        const std::optional<MultiPoly>& expected_determinant = std::nullopt);

Report matroid_report(const ConfigurationMatrix& cfg);

/// Hadamard criterion against the linear search on the Patterson matrix.
Report one_generic_report(const ConfigurationMatrix& cfg, const RunSettings& settings);
Report one_generic_report(const PolyMatrix& a, const RunSettings& settings);

/// Every full-rank r x n D (r <= n <= max_n) with entries from `entries`, both
/// criteria compared on each Patterson matrix.
Report one_generic_sweep_report(std::size_t r, std::size_t max_n, const std::vector<int>& entries,
                                const RunSettings& settings);

/// Random series matrices with planted profiles over F_prime; P M Q is compared
/// with diag(t^lambda), det P and det Q with units, lambda with minor orders.
Report snf_roundtrip_report(std::size_t samples, unsigned level, std::uint32_t prime,
                            const std::vector<std::pair<std::size_t, std::size_t>>& shapes,
                            const RunSettings& settings);

/// lambda from minor orders of a series matrix: partial sums are the minimal
/// orders of the l-minors. Truncated at the first undetermined partial sum.
LambdaProfile profile_from_minors(const SeriesMatrix& m);

}  // namespace arcdet
