#include "arcdet/configurations.hpp"

#include <algorithm>

#include "arcdet/errors.hpp"

namespace arcdet {

namespace {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

std::size_t rank_q(const QMat& rows, std::size_t cols) {
  if (rows.empty() || cols == 0) return 0;
  Matrix<FieldElem> m(rows.size(), cols, FieldElem());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = FieldElem(rows[i][j]);
  }
  return rank_of(std::move(m));
}

// Basis of {x : rows * x = 0} over Q.
std::vector<QVec> nullspace_q(QMat a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    QVec v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Same over F_q with residues.
std::vector<std::vector<std::uint32_t>> nullspace_mod(std::vector<std::vector<std::uint32_t>> a, std::size_t cols,
                                                      std::uint32_t q) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    std::uint64_t inv = mod_inverse(a[r][c], q);
    for (auto& x : a[r]) x = static_cast<std::uint32_t>(x * inv % q);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint64_t f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = static_cast<std::uint32_t>((a[i][j] + q - f * a[r][j] % q) % q);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<std::uint32_t> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = a[i][f] == 0 ? 0 : q - a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational lift_symmetric(std::uint32_t x, std::uint32_t q) {
  long v = static_cast<long>(x);
  if (v > static_cast<long>(q / 2)) v -= static_cast<long>(q);
  return Rational(v);
}

// Univariate polynomials over Q, coefficients low to high, no trailing zeros.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly poly_mod(UPoly a, const UPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

UPoly poly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  Integer num = x.get_num(), den = x.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

// A rational root of a monic polynomial of degree 1 or 2.
std::optional<Rational> rational_root(const UPoly& g) {
  if (g.size() == 2) return -g[0] / g[1];
  if (g.size() == 3) {
    Rational disc = g[1] * g[1] - 4 * g[0] * g[2];
    auto s = rational_sqrt(disc);
    if (!s) return std::nullopt;
    return (-g[1] + *s) / (2 * g[2]);
  }
  throw InternalInvariant("rank-drop polynomial of unexpected degree");
}

// Coefficient matrices A_k of a matrix of linear forms: A_k[i][j] = coeff of x_k in a_ij.
std::vector<QMat> linear_coefficients(const PolyMatrix& a) {
  const std::size_t n = a.vars()->size();
  std::vector<QMat> coeffs(n, QMat(a.rows(), QVec(a.cols(), 0)));
  bool nonzero = false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const MultiPoly& p = a(i, j);
      if (!p.is_homogeneous(1)) {
        throw InvalidArgument("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") is not a homogeneous linear form: " + p.to_string());
      }
      if (p.modulus() != 0) throw InvalidArgument("linear forms must have rational coefficients");
      for (const auto& [e, c] : p.terms()) {
        std::size_t k = static_cast<std::size_t>(std::find(e.begin(), e.end(), 1U) - e.begin());
        coeffs[k][i][j] = c.rational();
        nonzero = true;
      }
    }
  }
  if (!nonzero) throw InvalidArgument("the zero matrix is not a matrix of linear forms");
  return coeffs;
}

// Rows v^T A_k (one row per variable).
QMat pencil(const std::vector<QMat>& coeffs, const QVec& v) {
  QMat m;
  for (const auto& ak : coeffs) {
    QVec row(ak.front().size(), 0);
    for (std::size_t i = 0; i < ak.size(); ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < row.size(); ++j) row[j] += v[i] * ak[i][j];
    }
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace

ConfigurationMatrix::ConfigurationMatrix(std::vector<std::vector<Rational>> rows) : rows_(std::move(rows)) {
  if (rows_.empty() || rows_.front().empty()) throw InvalidArgument("configuration matrix must be nonempty");
  for (const auto& r : rows_) {
    if (r.size() != rows_.front().size()) throw InvalidArgument("configuration matrix rows differ in length");
  }
  if (rows_.size() > rows_.front().size() || rank_q(rows_, rows_.front().size()) != rows_.size()) {
    throw InvalidArgument("configuration matrix is rank deficient (rank must equal the row count " +
                          std::to_string(rows_.size()) + ")");
  }
}

ConfigurationMatrix ConfigurationMatrix::from_graph(std::size_t vertex_count,
                                                    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (vertex_count < 2) throw InvalidArgument("graph needs at least two vertices");
  if (edges.empty()) throw InvalidArgument("graph needs at least one edge");
  std::vector<std::vector<Rational>> rows(vertex_count - 1, std::vector<Rational>(edges.size(), 0));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u < 1 || v < 1 || u > vertex_count || v > vertex_count || u == v) {
      throw InvalidArgument("invalid edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    if (u > v) std::swap(u, v);
    if (u < vertex_count) rows[u - 1][e] = 1;
    if (v < vertex_count) rows[v - 1][e] = -1;
  }
  return ConfigurationMatrix(std::move(rows));
}

std::size_t ConfigurationMatrix::column_rank(const std::vector<std::size_t>& columns) const {
  QMat sub;
  for (const auto& row : rows_) {
    QVec r;
    for (auto c : columns) r.push_back(row.at(c));
    sub.push_back(std::move(r));
  }
  return rank_q(sub, columns.size());
}

Rational ConfigurationMatrix::maximal_minor(const std::vector<std::size_t>& columns) const {
  if (columns.size() != rank()) throw InvalidArgument("maximal minor needs r columns");
  Matrix<FieldElem> m(rank(), rank(), FieldElem());
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = 0; j < rank(); ++j) m(i, j) = FieldElem(rows_[i].at(columns[j]));
  }
  return det_division_free(m, FieldElem(0), FieldElem(1)).rational();
}

PolyMatrix patterson_matrix(const ConfigurationMatrix& cfg) {
  const std::size_t r = cfg.rank(), n = cfg.ground_size();
  VarListPtr vars = make_indexed_vars("x", n);
  Matrix<MultiPoly> entries(r, r, MultiPoly(vars));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t e = 0; e < n; ++e) {
        Rational c = cfg.rows()[i][e] * cfg.rows()[j][e];
        if (c != 0) entries(i, j) += MultiPoly::variable(vars, e) * FieldElem(c);
      }
    }
  }
  return PolyMatrix(vars, std::move(entries));
}

SupportExpansion cauchy_binet_expansion(const ConfigurationMatrix& cfg) {
  const std::size_t n = cfg.ground_size();
  VarListPtr vars = make_indexed_vars("x", n);
  SupportExpansion out{{}, MultiPoly(vars), false};
  for (const auto& subset : k_subsets(n, cfg.rank())) {
    Rational det = cfg.maximal_minor(subset);
    if (det == 0) continue;
    Rational c = det * det;
    out.coefficients[subset] = c;
    Exponents e(n, 0);
    for (auto i : subset) e[i] = 1;
    out.polynomial.add_term(e, FieldElem(c));
  }
  MultiPoly direct = patterson_matrix(cfg).determinant();
  out.matches_direct = direct == out.polynomial;
  if (!out.matches_direct) {
    throw InternalInvariant("Cauchy-Binet expansion " + out.polynomial.to_string() +
                            " differs from the direct determinant " + direct.to_string());
  }
  return out;
}

Matroid::Matroid(std::size_t ground_size, std::size_t rank, std::vector<std::vector<std::size_t>> bases)
    : n_(ground_size), r_(rank), bases_(std::move(bases)) {
  if (bases_.empty()) throw InvalidArgument("matroid needs at least one basis");
  for (auto& b : bases_) {
    std::sort(b.begin(), b.end());
    if (b.size() != r_) throw InvalidArgument("basis of the wrong size");
  }
  std::sort(bases_.begin(), bases_.end());
}

bool Matroid::is_basis(const std::vector<std::size_t>& set) const {
  std::vector<std::size_t> s(set);
  std::sort(s.begin(), s.end());
  return std::binary_search(bases_.begin(), bases_.end(), s);
}

std::size_t Matroid::rank_of(const std::vector<std::size_t>& set) const {
  std::vector<bool> in(n_, false);
  for (auto e : set) in.at(e) = true;
  std::size_t best = 0;
  for (const auto& b : bases_) {
    std::size_t k = 0;
    for (auto e : b) k += in[e] ? 1 : 0;
    best = std::max(best, k);
    if (best == r_) break;
  }
  return best;
}

Matroid matroid_from_columns(const ConfigurationMatrix& cfg) {
  std::vector<std::vector<std::size_t>> bases;
  for (auto& subset : k_subsets(cfg.ground_size(), cfg.rank())) {
    if (cfg.maximal_minor(subset) != 0) bases.push_back(std::move(subset));
  }
  return Matroid(cfg.ground_size(), cfg.rank(), std::move(bases));
}

bool is_connected(const Matroid& m) {
  const std::size_t n = m.ground_size();
  if (n <= 1) return true;
  if (n > 24) throw BudgetExceeded("connectivity scan limited to 24 elements");
  // Splits with element 0 in S cover every unordered pair {S, E - S}.
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n) - 1; mask += 2) {
    std::vector<std::size_t> s, rest;
    for (std::size_t e = 0; e < n; ++e) ((mask >> e) & 1U ? s : rest).push_back(e);
    if (m.rank_of(s) + m.rank_of(rest) == m.rank()) return false;
  }
  return true;
}

bool is_square_free(const MultiPoly& p) {
  for (const auto& [e, c] : p.terms()) {
    for (auto x : e) {
      if (x > 1) return false;
    }
  }
  return true;
}

HadamardResult hadamard_one_generic(const ConfigurationMatrix& cfg, std::size_t max_ground) {
  const std::size_t n = cfg.ground_size(), r = cfg.rank();
  if (n > max_ground || n > 30) {
    throw BudgetExceeded("Hadamard scan over 2^" + std::to_string(n) + " subsets exceeds the limit n <= " +
                         std::to_string(max_ground));
  }
  HadamardResult out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n) - 1; ++mask) {
    std::vector<std::size_t> s, rest;
    for (std::size_t e = 0; e < n; ++e) ((mask >> e) & 1U ? s : rest).push_back(e);
    if (cfg.column_rank(s) >= r || cfg.column_rank(rest) >= r) continue;
    out.one_generic = false;
    out.witness_set = s;
    // c with c^T D|_S = 0 gives a vector of U vanishing on S.
    auto vector_vanishing_on = [&](const std::vector<std::size_t>& cols) {
      QMat transposed;
      for (auto c : cols) {
        QVec row;
        for (std::size_t i = 0; i < r; ++i) row.push_back(cfg.rows()[i][c]);
        transposed.push_back(std::move(row));
      }
      QVec c = nullspace_q(transposed, r).at(0);
      QVec u(n, 0);
      for (std::size_t e = 0; e < n; ++e) {
        for (std::size_t i = 0; i < r; ++i) u[e] += c[i] * cfg.rows()[i][e];
      }
      return u;
    };
    out.v = vector_vanishing_on(s);
    out.w = vector_vanishing_on(rest);
    return out;
  }
  return out;
}

const char* to_string(Confirmation c) { return c == Confirmation::Confirmed ? "CONFIRMED" : "UNCONFIRMED"; }

LinearOneGenericResult linear_one_generic(const PolyMatrix& a, const std::vector<std::uint32_t>& primes,
                                          bool symbolic_confirm) {
  if (a.rows() != a.cols()) throw InvalidArgument("1-genericity check needs a square matrix");
  const std::size_t r = a.rows();
  const auto coeffs = linear_coefficients(a);
  LinearOneGenericResult out;

  auto confirm = [&](const QVec& v) -> std::optional<QVec> {
    auto kernel = nullspace_q(pencil(coeffs, v), r);
    if (kernel.empty()) return std::nullopt;
    return kernel.front();
  };

  for (auto q : primes) {
    require_prime(q);
    std::vector<std::vector<std::vector<std::uint32_t>>> reduced;
    try {
      for (const auto& ak : coeffs) {
        std::vector<std::vector<std::uint32_t>> m(r, std::vector<std::uint32_t>(r));
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t j = 0; j < r; ++j) m[i][j] = reduce_mod(ak[i][j], q);
        }
        reduced.push_back(std::move(m));
      }
    } catch (const DivisionByZero&) {
      continue;
    }
    out.primes_searched.push_back(q);
    // Projective representatives: first nonzero coordinate equal to 1.
    for (std::size_t lead = 0; lead < r; ++lead) {
      std::vector<std::uint32_t> tail(r - lead - 1, 0);
      while (true) {
        std::vector<std::uint32_t> v(r, 0);
        v[lead] = 1;
        for (std::size_t i = 0; i < tail.size(); ++i) v[lead + 1 + i] = tail[i];
        std::vector<std::vector<std::uint32_t>> m;
        for (const auto& ak : reduced) {
          std::vector<std::uint32_t> row(r, 0);
          for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) row[j] = static_cast<std::uint32_t>((row[j] + std::uint64_t{v[i]} * ak[i][j]) % q);
          }
          m.push_back(std::move(row));
        }
        if (!nullspace_mod(m, r, q).empty()) {
          QVec vq;
          for (auto x : v) vq.push_back(lift_symmetric(x, q));
          if (auto w = confirm(vq)) {
            out.one_generic = false;
            out.confirmation = Confirmation::Confirmed;
            out.v = vq;
            out.w = *w;
            return out;
          }
        }
        std::size_t i = tail.size();
        while (i > 0) {
          if (++tail[i - 1] < q) break;
          tail[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
    }
  }

  if (!symbolic_confirm || r > 2) return out;
  if (r == 1) {
    out.confirmation = Confirmation::Confirmed;
    return out;
  }
  if (auto w = confirm({0, 1})) {
    out.one_generic = false;
    out.confirmation = Confirmation::Confirmed;
    out.v = QVec{0, 1};
    out.w = *w;
    return out;
  }
  // v = (1, s): the pencil rows are p_k + s q_k; its 2-minors are quadratics in s.
  UPoly g;
  const std::size_t n = coeffs.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      auto entry = [&](std::size_t row, std::size_t j) {
        return UPoly{coeffs[row][0][j], coeffs[row][1][j]};
      };
      UPoly a0 = entry(k, 0), a1 = entry(k, 1), b0 = entry(l, 0), b1 = entry(l, 1);
      UPoly minor(3, 0);
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) minor[i + j] += a0[i] * b1[j] - a1[i] * b0[j];
      }
      g = poly_gcd(g, minor);
    }
  }
  out.confirmation = Confirmation::Confirmed;
  std::optional<Rational> s;
  if (g.empty()) {
    s = Rational(0);
  } else if (g.size() == 1) {
    return out;
  } else {
    s = rational_root(g);
  }
  if (s) {
    QVec v{1, *s};
    auto w = confirm(v);
    if (!w) throw InternalInvariant("rank-drop parameter without a kernel vector");
    out.one_generic = false;
    out.v = v;
    out.w = *w;
  } else {
    out.one_generic = false;
    out.irrational_v_minpoly = g;
  }
  return out;
}

Matrix<MultiPoly> incidence_jacobian(const PolyMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("incidence Jacobian needs a square matrix");
  linear_coefficients(a);
  const std::size_t r = a.cols(), n = a.vars()->size();
  std::vector<std::string> names = a.vars()->names();
  for (std::size_t j = 1; j <= r; ++j) {
    std::string y = "y" + std::to_string(j);
    if (a.vars()->index_of(y) >= 0) throw InvalidArgument("matrix variable '" + y + "' collides with y-names");
    names.push_back(y);
  }
  VarListPtr xy = make_vars(std::move(names));
  Matrix<MultiPoly> out(a.rows(), r + n, MultiPoly(xy));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < r; ++j) out(i, j) = a(i, j).embed(xy);
    for (std::size_t k = 0; k < n; ++k) {
      MultiPoly entry(xy);
      for (std::size_t j = 0; j < r; ++j) {
        entry += a(i, j).derivative(k).embed(xy) * MultiPoly::variable(xy, n + j);
      }
      out(i, r + k) = std::move(entry);
    }
  }
  return out;
}

ConfigurationReport configuration_lct_campaign(const ConfigurationMatrix& cfg, unsigned max_m,
                                               const std::vector<std::uint32_t>& primes,
                                               const CountOptions& options) {
  PolyMatrix patterson = patterson_matrix(cfg);
  MultiPoly det = patterson.determinant();
  SupportExpansion expansion = cauchy_binet_expansion(cfg);
  Matroid matroid = matroid_from_columns(cfg);
  ConfigurationReport report{patterson, det, expansion, false, false, 0, {}, Verdict::Ambiguous};
  report.square_free = is_square_free(det);
  report.connected = is_connected(matroid);
  report.basis_count = matroid.bases().size();
  report.corollary = corollary_check(patterson, max_m, primes, options);
  const auto& c = report.corollary;
  if (c.verdict == Verdict::Fail) {
    report.verdict = Verdict::Fail;
  } else if (c.verdict == Verdict::Ambiguous) {
    report.verdict = Verdict::Ambiguous;
  } else {
    report.verdict = c.z_is_one && c.w_is_r && expansion.matches_direct && report.square_free ? Verdict::Pass
                                                                                              : Verdict::Fail;
  }
  return report;
}

}  // namespace arcdet
