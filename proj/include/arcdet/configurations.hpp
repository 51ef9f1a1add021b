#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcdet/determinantal.hpp"

namespace arcdet {

/// r x n rational matrix of full row rank; its rows span the configuration.
class ConfigurationMatrix {
 public:
  explicit ConfigurationMatrix(std::vector<std::vector<Rational>> rows);
  /// Reduced incidence matrix of a graph on vertices 1..vertex_count: edge (u, v)
  /// with u < v has +1 at u and -1 at v; the row of the last vertex is deleted.
  static ConfigurationMatrix from_graph(std::size_t vertex_count,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t ground_size() const noexcept { return rows_.front().size(); }
  const std::vector<std::vector<Rational>>& rows() const noexcept { return rows_; }
  /// Rank of the column submatrix D|_S.
  std::size_t column_rank(const std::vector<std::size_t>& columns) const;
  /// det(D|_I) for an r-subset I.
  Rational maximal_minor(const std::vector<std::size_t>& columns) const;

 private:
  std::vector<std::vector<Rational>> rows_;
};

/// D diag(x_1..x_n) D^T over the variables x1..xn.
PolyMatrix patterson_matrix(const ConfigurationMatrix& cfg);

struct SupportExpansion {
  std::map<std::vector<std::size_t>, Rational> coefficients;  ///< I (zero-based) -> det(D|_I)^2, nonzero only
  MultiPoly polynomial;                                       ///< sum_I c_I x^I
  bool matches_direct = false;
};

/// Cauchy-Binet support expansion, cross-checked term by term against the
/// direct symbolic determinant (mismatch throws InternalInvariant).
SupportExpansion cauchy_binet_expansion(const ConfigurationMatrix& cfg);

class Matroid {
 public:
  Matroid(std::size_t ground_size, std::size_t rank, std::vector<std::vector<std::size_t>> bases);

  std::size_t ground_size() const noexcept { return n_; }
  std::size_t rank() const noexcept { return r_; }
  const std::vector<std::vector<std::size_t>>& bases() const noexcept { return bases_; }
  bool is_basis(const std::vector<std::size_t>& set) const;
  /// Largest intersection of S with a basis.
  std::size_t rank_of(const std::vector<std::size_t>& set) const;

 private:
  std::size_t n_;
  std::size_t r_;
  std::vector<std::vector<std::size_t>> bases_;
};

Matroid matroid_from_columns(const ConfigurationMatrix& cfg);

/// No proper nonempty S with rank(S) + rank(E - S) = rank(E). A single element is connected.
bool is_connected(const Matroid& m);

/// Every exponent is at most 1.
bool is_square_free(const MultiPoly& p);

struct HadamardResult {
  bool one_generic = true;
  std::vector<std::size_t> witness_set;   ///< S (zero-based) when not 1-generic
  std::vector<Rational> v, w;             ///< nonzero vectors of U with v * w = 0
};

HadamardResult hadamard_one_generic(const ConfigurationMatrix& cfg, std::size_t max_ground = 20);

enum class Confirmation { Confirmed, Unconfirmed };

const char* to_string(Confirmation c);

struct LinearOneGenericResult {
  bool one_generic = true;
  Confirmation confirmation = Confirmation::Unconfirmed;
  std::optional<std::vector<Rational>> v, w;  ///< rational witness, exactly re-checked
  /// Witness over an algebraic extension only: v = (1, s) with s a root of this
  /// polynomial (coefficients low to high); no rational witness exists.
  std::optional<std::vector<Rational>> irrational_v_minpoly;
  std::vector<std::uint32_t> primes_searched;
};

/// v^T A w = 0 search over F_q with exact lifting; for r <= 2 the verdict is
/// decided exactly through the gcd of the 2-minors of the pencil in v.
LinearOneGenericResult linear_one_generic(const PolyMatrix& a, const std::vector<std::uint32_t>& primes,
                                          bool symbolic_confirm = true);

/// [A | B(y)] over the variables x..., y1..yr: the Jacobian of the incidence
/// forms, with B(y)_{ik} = sum_j d a_ij / d x_k * y_j.
Matrix<MultiPoly> incidence_jacobian(const PolyMatrix& a);

struct ConfigurationReport {
  PolyMatrix patterson;
  MultiPoly determinant;
  SupportExpansion expansion;
  bool square_free = false;
  bool connected = false;
  std::size_t basis_count = 0;
  CorollaryCheck corollary;
  Verdict verdict = Verdict::Ambiguous;
};

ConfigurationReport configuration_lct_campaign(const ConfigurationMatrix& cfg, unsigned max_m,
                                               const std::vector<std::uint32_t>& primes,
                                               const CountOptions& options = {});

}  // namespace arcdet
