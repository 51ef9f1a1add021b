#include <gtest/gtest.h>

#include <set>

#include "arcdet/configurations.hpp"
#include "arcdet/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace arcdet;

namespace {

using QMat = std::vector<std::vector<Rational>>;

QMat random_full_rank(gen::Rng& rng, std::size_t r, std::size_t n, int bound) {
  while (true) {
    QMat d(r, std::vector<Rational>(n));
    for (auto& row : d) {
      for (auto& v : row) v = rng.between(-bound, bound);
    }
    if (oracle::rank_q(d) == r) return d;
  }
}

QMat times(const QMat& g, const QMat& d) {
  QMat out(g.size(), std::vector<Rational>(d[0].size(), 0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t k = 0; k < d.size(); ++k) {
      for (std::size_t j = 0; j < d[0].size(); ++j) out[i][j] += g[i][k] * d[k][j];
    }
  }
  return out;
}

std::set<std::vector<std::size_t>> basis_set(const Matroid& m) {
  return {m.bases().begin(), m.bases().end()};
}

}  // namespace

TEST(Configuration, GraphIngestion) {
  auto cfg = ConfigurationMatrix::from_graph(3, {{1, 2}, {2, 3}, {1, 3}});
  EXPECT_EQ(cfg.rank(), 2u);
  EXPECT_EQ(cfg.ground_size(), 3u);
  EXPECT_EQ(cfg.rows()[0], (std::vector<Rational>{1, 0, 1}));
  EXPECT_EQ(cfg.rows()[1], (std::vector<Rational>{-1, 1, 0}));
  EXPECT_EQ(patterson_matrix(cfg).determinant().to_string(), "x1*x2 + x1*x3 + x2*x3");
  EXPECT_THROW(ConfigurationMatrix({{1, 2}, {2, 4}}), InvalidArgument);
}

TEST(Configuration, SupportEqualsBasesWithPositiveCoefficients) {
  gen::Rng rng(71);
  for (int t = 0; t < gen::kTrials; ++t) {
    const std::size_t r = static_cast<std::size_t>(rng.between(1, 3));
    const std::size_t n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(r), 6));
    ConfigurationMatrix cfg(random_full_rank(rng, r, n, 2));
    auto ex = cauchy_binet_expansion(cfg);
    EXPECT_TRUE(ex.matches_direct);
    auto bases = basis_set(matroid_from_columns(cfg));
    std::set<std::vector<std::size_t>> support;
    for (const auto& [set, c] : ex.coefficients) {
      EXPECT_GT(c, 0);
      support.insert(set);
    }
    EXPECT_EQ(support, bases);
    EXPECT_TRUE(is_square_free(ex.polynomial));
    EXPECT_TRUE(is_square_free(patterson_matrix(cfg).determinant()));
  }
}

TEST(Configuration, PermutationSymmetry) {
  gen::Rng rng(72);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 4;
    auto d = random_full_rank(rng, 2, n, 2);
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    QMat permuted(2, std::vector<Rational>(n));
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < n; ++j) permuted[i][j] = d[i][perm[j]];
    }
    // Column j of the permuted D is column perm[j] of D, so x_j there plays x_{perm[j]}.
    auto vars = make_indexed_vars("x", n);
    std::vector<MultiPoly> rename(n, MultiPoly(vars));
    for (std::size_t j = 0; j < n; ++j) rename[perm[j]] = MultiPoly::variable(vars, j);
    auto original = patterson_matrix(ConfigurationMatrix(d)).determinant();
    EXPECT_EQ(original.compose(rename, vars), patterson_matrix(ConfigurationMatrix(permuted)).determinant());
  }
}

TEST(Configuration, ChangeOfBasisInvariance) {
  gen::Rng rng(73);
  for (int t = 0; t < 30; ++t) {
    const std::size_t r = static_cast<std::size_t>(rng.between(1, 2));
    const std::size_t n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(r), 4));
    auto d = random_full_rank(rng, r, n, 1);
    auto g = random_full_rank(rng, r, r, 2);
    ConfigurationMatrix a(d), b(times(g, d));
    const Rational scale = oracle::det_q(g) * oracle::det_q(g);
    EXPECT_EQ(patterson_matrix(b).determinant(), patterson_matrix(a).determinant() * FieldElem(scale));
    EXPECT_EQ(basis_set(matroid_from_columns(a)), basis_set(matroid_from_columns(b)));
    EXPECT_EQ(is_connected(matroid_from_columns(a)), is_connected(matroid_from_columns(b)));
    EXPECT_EQ(hadamard_one_generic(a).one_generic, hadamard_one_generic(b).one_generic);
  }
}

TEST(Matroid, RankAndConnectivity) {
  ConfigurationMatrix identity({{1, 0}, {0, 1}});
  auto m = matroid_from_columns(identity);
  EXPECT_EQ(m.bases().size(), 1u);
  EXPECT_FALSE(is_connected(m));
  auto triangle = matroid_from_columns(ConfigurationMatrix::from_graph(3, {{1, 2}, {2, 3}, {1, 3}}));
  EXPECT_TRUE(is_connected(triangle));
  EXPECT_EQ(triangle.rank_of({0, 1, 2}), 2u);
  EXPECT_EQ(triangle.rank_of({0}), 1u);
  EXPECT_TRUE(is_connected(matroid_from_columns(ConfigurationMatrix(QMat{{1}}))));
}

TEST(Matroid, BasisExchange) {
  gen::Rng rng(74);
  for (int t = 0; t < 20; ++t) {
    auto m = matroid_from_columns(ConfigurationMatrix(random_full_rank(rng, 2, 5, 2)));
    const auto& bases = m.bases();
    for (const auto& a : bases) {
      for (const auto& b : bases) {
        for (auto x : a) {
          if (std::count(b.begin(), b.end(), x)) continue;
          bool found = false;
          for (auto y : b) {
            if (std::count(a.begin(), a.end(), y)) continue;
            std::vector<std::size_t> swapped;
            for (auto e : a) {
              if (e != x) swapped.push_back(e);
            }
            swapped.push_back(y);
            std::sort(swapped.begin(), swapped.end());
            found = found || m.is_basis(swapped);
          }
          EXPECT_TRUE(found);
        }
      }
    }
  }
}

TEST(OneGeneric, HadamardWitnessIsGenuine) {
  // U = span{(1,1,0,0), (0,0,1,1)} contains (1,1,0,0) * (0,0,1,1) = 0.
  ConfigurationMatrix cfg({{1, 1, 0, 0}, {0, 0, 1, 1}});
  auto h = hadamard_one_generic(cfg);
  ASSERT_FALSE(h.one_generic);
  ASSERT_EQ(h.v.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(h.v[i] * h.w[i], 0);
  EXPECT_TRUE(std::any_of(h.v.begin(), h.v.end(), [](const Rational& x) { return x != 0; }));
  auto l = linear_one_generic(patterson_matrix(cfg), {3, 5});
  EXPECT_FALSE(l.one_generic);
  EXPECT_EQ(l.confirmation, Confirmation::Confirmed);
}

TEST(OneGeneric, OraclesAgreeOnRandomSmallConfigurations) {
  gen::Rng rng(75);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.between(2, 4));
    ConfigurationMatrix cfg(random_full_rank(rng, 2, n, 1));
    auto l = linear_one_generic(patterson_matrix(cfg), {3, 5, 7});
    EXPECT_EQ(hadamard_one_generic(cfg).one_generic, l.one_generic);
    EXPECT_EQ(l.confirmation, Confirmation::Confirmed);
  }
}

TEST(Campaign, TriangleIsSquareFreeAndConnected) {
  auto report = configuration_lct_campaign(ConfigurationMatrix::from_graph(3, {{1, 2}, {2, 3}, {1, 3}}), 3, {3, 5});
  EXPECT_TRUE(report.square_free);
  EXPECT_TRUE(report.connected);
  EXPECT_EQ(report.basis_count, 3u);
  EXPECT_EQ(report.verdict, Verdict::Pass);
}
