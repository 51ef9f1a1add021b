#include <gtest/gtest.h>

#include "arcdet/determinantal.hpp"
#include "arcdet/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace arcdet;

namespace {

PolyMatrix generic(std::size_t rows, std::size_t cols) {
  auto vars = make_indexed_vars("x", rows * cols);
  std::vector<std::vector<std::string>> text(rows, std::vector<std::string>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) text[i][j] = "x" + std::to_string(i * cols + j + 1);
  }
  return PolyMatrix::parse(vars, text);
}

JetPoint random_jet(gen::Rng& rng, std::size_t n, unsigned level, std::uint32_t q) {
  std::vector<TruncSeries> coords;
  for (std::size_t i = 0; i < n; ++i) {
    coords.push_back(gen::series(rng, level, q, static_cast<unsigned>(rng.between(0, 2))));
  }
  return JetPoint(std::move(coords));
}

}  // namespace

TEST(Profile, SnfAgreesWithMinorOrders) {
  gen::Rng rng(61);
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {3, 3}}) {
    auto a = generic(rows, cols);
    int determined = 0;
    for (int t = 0; t < gen::kTrials; ++t) {
      auto jet = random_jet(rng, rows * cols, 5, 3);
      auto lambda = lambda_profile(a, jet);
      if (lambda.truncated()) continue;
      ++determined;
      auto snf = smith_normal_form(pullback(a, jet.coords()));
      EXPECT_EQ(snf.lambda, lambda);
    }
    EXPECT_GT(determined, gen::kTrials / 2);
  }
}

TEST(Profile, UnimodularInvariance) {
  gen::Rng rng(62);
  auto a = generic(3, 2);
  for (int t = 0; t < gen::kTrials; ++t) {
    auto jet = random_jet(rng, 6, 5, 5);
    auto m = pullback(a, jet.coords());
    auto base = lambda_profile(a, jet);
    if (base.truncated()) continue;
    auto moved = gen::unimodular(rng, 3, 5, 5) * m * gen::unimodular(rng, 2, 5, 5);
    EXPECT_EQ(smith_normal_form(moved).lambda, base);
  }
}

TEST(Profile, StratumLiesInContactLocusOfWeight) {
  gen::Rng rng(63);
  auto a = generic(2, 2);
  DeterminantalPair pair(a);
  for (int t = 0; t < gen::kTrials; ++t) {
    auto jet = random_jet(rng, 4, 5, 2);
    auto lambda = lambda_profile(a, jet);
    if (lambda.truncated()) continue;
    EXPECT_EQ(ord_along_ideal(pair.z_gens(), jet).value(), lambda.weight());
  }
}

TEST(Pair, GeneratorsAndCharts) {
  DeterminantalPair pair(generic(3, 2));
  EXPECT_EQ(pair.r(), 2u);
  EXPECT_EQ(pair.z_gens().size(), 3u);
  ASSERT_EQ(pair.w_gens().size(), 3u);
  const auto& vars = *pair.xy_vars();
  EXPECT_EQ(vars[vars.size() - 2], "y1");
  for (const auto& w : pair.w_gens().generators()) {
    for (const auto& [exps, c] : w.terms()) EXPECT_EQ(exps[vars.size() - 2] + exps[vars.size() - 1], 1u);
  }
  EXPECT_EQ(pair.chart(0).num_vars(), vars.size() - 1);
  auto z = make_indexed_vars("x", 1);
  EXPECT_THROW(DeterminantalPair(PolyMatrix::parse(z, {{"x1", "x1"}, {"x1", "x1"}})), InvalidArgument);
}

TEST(Strata, PartitionIsExact) {
  for (auto [rows, cols, m, q] : {std::tuple<std::size_t, std::size_t, unsigned, std::uint32_t>{2, 2, 1, 3},
                                  {2, 2, 2, 2},
                                  {3, 2, 1, 2},
                                  {2, 1, 2, 3}}) {
    DeterminantalPair pair(generic(rows, cols));
    auto report = stratum_counts(pair, m, m, q);
    EXPECT_TRUE(report.partition_ok);
    EXPECT_EQ(report.residual, 0);
    Integer total = 0;
    for (const auto& s : report.strata) {
      EXPECT_EQ(s.lambda.weight(), m);
      total += s.count;
    }
    EXPECT_EQ(total, report.cont_m);
  }
}

TEST(Fiber, FormulaValues) {
  EXPECT_EQ(fiber_codim_formula(LambdaProfile({0, 1}), 1), 1u);
  EXPECT_EQ(fiber_codim_formula(LambdaProfile({0, 3}), 2), 2u);
  EXPECT_EQ(fiber_codim_formula(LambdaProfile({1, 2, 3}), 3), 3u);
  EXPECT_FALSE(fiber_codim_formula(LambdaProfile({0, 1}), 2).has_value());
  EXPECT_EQ(fiber_codim_formula(LambdaProfile({0, 0}), 0), 0u);
}

TEST(Fiber, CountsMatchFormula) {
  for (const auto& parts : std::vector<std::vector<unsigned>>{{0, 2}, {1, 1}, {0, 1, 3}}) {
    for (unsigned m = 0; m <= 3; ++m) {
      auto check = fiber_count_check(LambdaProfile(parts), m, 3, {2, 3});
      EXPECT_EQ(check.verdict, Verdict::Pass) << LambdaProfile(parts).to_string() << " m=" << m;
      EXPECT_EQ(check.counted_empty, parts.back() < m);
    }
  }
}

TEST(Transforms, FixedPointAndRoundTrip) {
  gen::Rng rng(64);
  for (std::size_t r = 1; r <= 4; ++r) {
    EXPECT_EQ(transform_bound_forward(1, r), Rational(r));
    EXPECT_EQ(transform_bound_backward(transform_bound_forward(1, r) - Rational(r - 1), r), 1);
    for (int t = 0; t < gen::kTrials; ++t) {
      const Rational c(rng.between(1, 12), 12);
      const Rational back = transform_bound_backward(transform_bound_forward(c, r) - Rational(r - 1), r);
      EXPECT_LE(back, c);
      EXPECT_EQ(transform_bound_forward(c, r), std::min(Rational(r * c), Rational(r - 1 + c)));
    }
  }
}

TEST(Corollary, GenericAndDiagonal) {
  auto g = corollary_check(generic(2, 2), 4, {3, 5});
  ASSERT_TRUE(g.lct_z.estimate && g.lct_w);
  EXPECT_EQ(*g.lct_z.estimate, 1);
  EXPECT_EQ(*g.lct_w, 2);
  EXPECT_TRUE(g.biconditional_ok);
  // lct_W >= forward(lct_Z - eps, r)
  EXPECT_GE(*g.lct_w, transform_bound_forward(*g.lct_z.estimate - g.epsilon, 2));

  auto x = make_indexed_vars("x", 1);
  auto d = corollary_check(PolyMatrix::parse(x, {{"x1", "0"}, {"0", "x1"}}), 4, {3, 5});
  ASSERT_TRUE(d.lct_z.estimate && d.lct_w);
  EXPECT_EQ(*d.lct_z.estimate, Rational(1, 2));
  EXPECT_EQ(*d.lct_w, 1);
  EXPECT_TRUE(d.forward_equality);
  EXPECT_NE(d.verdict, Verdict::Fail);
}

TEST(Cone, IdentityHolds) {
  auto x = make_indexed_vars("x", 1);
  auto single = PolyMatrix::parse(x, {{"x1"}});
  for (unsigned m = 0; m <= 3; ++m) {
    for (unsigned p = 0; p <= m; ++p) {
      auto check = cone_comparison_check(single, m, p, m, {2, 3});
      for (const auto& cp : check.per_prime) {
        EXPECT_TRUE(cp.identity_ok);
        EXPECT_EQ(cp.cone, (cp.q - 1) * (cp.q - 1) * oracle::ipow(cp.q, m));
      }
      EXPECT_NE(check.verdict, Verdict::Fail);
    }
  }
  EXPECT_THROW(cone_comparison_check(single, 1, 2, 1, {2}), InvalidArgument);
}
