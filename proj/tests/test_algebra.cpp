#include <gtest/gtest.h>

#include "arcdet/errors.hpp"
#include "arcdet/matrix.hpp"
#include "arcdet/multipoly.hpp"
#include "arcdet/snf.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace arcdet;

namespace {

const std::uint32_t kFields[] = {0, 2, 5, 7};

oracle::SMat to_oracle(const SeriesMatrix& m) {
  oracle::SMat out(m.rows(), std::vector<oracle::Series>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (const auto& c : m(i, j).coeffs()) out[i][j].push_back(c.residue());
    }
  }
  return out;
}

}  // namespace

TEST(Field, ModularArithmetic) {
  EXPECT_EQ(mod_inverse(3, 7), 5u);
  EXPECT_EQ(mod_pow(2, 10, 1000003), 1024u);
  EXPECT_EQ(reduce_mod(Rational(1, 2), 5), 3u);
  EXPECT_THROW(reduce_mod(Rational(1, 5), 5), DivisionByZero);
  auto a = FieldElem::modular(4, 7);
  EXPECT_EQ((a * a.inverse()).residue(), 1u);
  EXPECT_THROW(FieldElem::modular(0, 7).inverse(), DivisionByZero);
  EXPECT_THROW(FieldElem::modular(1, 5) + FieldElem::modular(1, 7), FieldMismatch);
  EXPECT_THROW(require_prime(9), InvalidArgument);
  EXPECT_THROW(require_prime((1ULL << 31) + 11), InvalidArgument);
}

TEST(Field, RationalMapsIntoPrimeField) {
  auto mixed = FieldElem(Rational(2, 3)) + FieldElem::modular(1, 5);
  EXPECT_EQ(mixed.modulus(), 5u);
  EXPECT_EQ(mixed.residue(), (reduce_mod(Rational(2, 3), 5) + 1) % 5);
}

TEST(Field, RationalTextRoundTrip) {
  for (const char* text : {"0", "-3", "7/2", "-5/12"}) EXPECT_EQ(rational_to_string(parse_rational(text)), text);
  EXPECT_EQ(rational_to_string(parse_rational("4/6")), "2/3");
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Series, RingAxiomsOnRandomTriples) {
  gen::Rng rng(11);
  for (auto q : kFields) {
    for (int t = 0; t < gen::kTrials; ++t) {
      const unsigned n = static_cast<unsigned>(rng.between(0, 6));
      auto a = gen::series(rng, n, q), b = gen::series(rng, n, q), c = gen::series(rng, n, q);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_TRUE((a + (-a)).is_zero());
      EXPECT_TRUE((a - a).is_zero());
      EXPECT_EQ(a * b, b * a);
    }
  }
}

TEST(Series, ValuationBelowTruncation) {
  gen::Rng rng(12);
  for (auto q : kFields) {
    for (int t = 0; t < gen::kTrials; ++t) {
      const unsigned n = 6;
      auto a = gen::series(rng, n, q, static_cast<unsigned>(rng.between(0, 3)));
      auto b = gen::series(rng, n, q, static_cast<unsigned>(rng.between(0, 3)));
      const auto oa = a.ord(), ob = b.ord();
      if (oa.is_truncated() || ob.is_truncated() || oa.value() + ob.value() > n) continue;
      EXPECT_EQ((a * b).ord().value(), oa.value() + ob.value());
    }
  }
}

TEST(Series, TruncationSentinelIsNeverFinite) {
  TruncSeries z(3);
  EXPECT_TRUE(z.ord().is_truncated());
  EXPECT_EQ(z.ord().lower_bound(), 4u);
  EXPECT_THROW(z.ord().value(), TruncationInsufficient);
  auto t3 = TruncSeries::monomial(3, 3, FieldElem(1));
  EXPECT_EQ(t3.ord().value(), 3u);
  EXPECT_TRUE((t3 * t3).ord().is_truncated());
}

TEST(Series, InverseOfUnit) {
  gen::Rng rng(13);
  for (int t = 0; t < gen::kTrials; ++t) {
    auto a = gen::series(rng, 5, 7);
    if (a[0].is_zero()) continue;
    EXPECT_EQ(a * a.inverse(), TruncSeries::constant(5, FieldElem::modular(1, 7)));
  }
  EXPECT_THROW(TruncSeries::monomial(3, 1, FieldElem(1)).inverse(), Error);
}

TEST(MultiPoly, RingAxiomsOnRandomTriples) {
  gen::Rng rng(21);
  auto vars = make_indexed_vars("x", 3);
  for (auto q : kFields) {
    for (int t = 0; t < gen::kTrials; ++t) {
      auto a = gen::poly(rng, vars, q), b = gen::poly(rng, vars, q), c = gen::poly(rng, vars, q);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_TRUE((a + (-a)).is_zero());
      EXPECT_EQ(a + b, b + a);
    }
  }
}

TEST(MultiPoly, ParsePrintRoundTrip) {
  gen::Rng rng(22);
  auto vars = make_vars({"x1", "x2", "y1"});
  for (int t = 0; t < gen::kTrials; ++t) {
    auto p = gen::poly(rng, vars, 0, 5, 3);
    const auto text = p.to_string();
    EXPECT_EQ(parse_poly(text, vars), p) << text;
    EXPECT_EQ(parse_poly(text, vars).to_string(), text);
  }
  EXPECT_EQ(parse_poly("-(x1 - x2)^2 + 2*x1*x2", vars).to_string(), "-x1^2 + 4*x1*x2 - x2^2");
}

TEST(MultiPoly, ParseErrorsCarryPositions) {
  auto vars = make_vars({"x1", "x2"});
  try {
    parse_poly("x1 + x3", vars);
    FAIL() << "undeclared variable accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse_poly("x1 +", vars), ParseError);
  EXPECT_THROW(parse_poly("(x1", vars), ParseError);
  EXPECT_THROW(parse_poly("x1/x2", vars), ParseError);
  EXPECT_THROW(parse_poly("x1/0", vars), Error);
}

TEST(MultiPoly, SubstituteJetMatchesCompose) {
  gen::Rng rng(23);
  auto vars = make_indexed_vars("x", 2);
  for (int t = 0; t < gen::kTrials; ++t) {
    auto p = gen::poly(rng, vars, 5);
    std::vector<TruncSeries> jet{gen::series(rng, 4, 5), gen::series(rng, 4, 5)};
    // Evaluating the constant terms must agree with the t^0 coefficient.
    auto value = p.reduce(5).evaluate({jet[0][0], jet[1][0]});
    EXPECT_EQ(substitute_jet(p, jet)[0], value);
  }
}

TEST(Matrix, DivisionFreeDeterminantIsMultiplicative) {
  gen::Rng rng(31);
  for (std::uint32_t q : {2u, 3u, 7u}) {
    for (std::size_t n : {2u, 3u}) {
      for (int t = 0; t < gen::kTrials; ++t) {
        Matrix<FieldElem> a(n, n, FieldElem()), b(n, n, FieldElem());
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = gen::scalar(rng, q);
            b(i, j) = gen::scalar(rng, q);
          }
        }
        const auto zero = FieldElem::modular(0, q), one = FieldElem::modular(1, q);
        EXPECT_EQ(det_division_free(multiply(a, b, zero), zero, one),
                  det_division_free(a, zero, one) * det_division_free(b, zero, one));
      }
    }
  }
}

TEST(Matrix, SeriesDeterminantMatchesLeibniz) {
  gen::Rng rng(32);
  for (int t = 0; t < gen::kTrials; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 4));
    auto m = gen::series_matrix(rng, n, n, 4, 3);
    oracle::Series expected = oracle::det(to_oracle(m), 3);
    const auto det = m.determinant();
    oracle::Series got;
    for (const auto& c : det.coeffs()) got.push_back(c.residue());
    EXPECT_EQ(got, expected);
  }
}

TEST(Matrix, RankAndShapeErrors) {
  Matrix<FieldElem> m(std::vector<std::vector<FieldElem>>{{1, 2, 3}, {2, 4, 6}});
  EXPECT_EQ(rank_of(m), 1u);
  EXPECT_THROW(det_division_free(m, FieldElem(0), FieldElem(1)), InvalidArgument);
  EXPECT_THROW((Matrix<FieldElem>(std::vector<std::vector<FieldElem>>{{1, 2}, {3}})), InvalidArgument);
}

TEST(Snf, InvariantsOnRandomMatrices) {
  gen::Rng rng(41);
  const unsigned level = 6;
  const std::uint32_t q = 3;
  for (int t = 0; t < 2 * gen::kTrials; ++t) {
    const std::size_t cols = static_cast<std::size_t>(rng.between(1, 3));
    const std::size_t rows = cols + static_cast<std::size_t>(rng.between(0, 1));
    // Planted profile scrambled by unimodular factors.
    std::vector<unsigned> lambda(cols);
    for (auto& l : lambda) l = static_cast<unsigned>(rng.between(0, 2));
    std::sort(lambda.begin(), lambda.end());
    auto d = SeriesMatrix::diagonal(rows, lambda, level, FieldElem::modular(0, q));
    auto m = gen::unimodular(rng, rows, level, q) * d * gen::unimodular(rng, cols, level, q);
    const auto orders = oracle::minor_orders(to_oracle(m), q);
    const auto expected = oracle::profile_from_minor_orders(orders, level + 1);
    auto res = smith_normal_form(m);
    EXPECT_EQ(res.p_transform * m * res.q_transform,
              SeriesMatrix::diagonal(rows, res.lambda.parts(), level, FieldElem::modular(0, q)));
    EXPECT_FALSE(res.p_transform.determinant()[0].is_zero());
    EXPECT_FALSE(res.q_transform.determinant()[0].is_zero());
    EXPECT_TRUE(std::is_sorted(res.lambda.parts().begin(), res.lambda.parts().end()));
    EXPECT_EQ(res.lambda.parts(), expected);
    EXPECT_EQ(res.lambda.parts(), lambda);
  }
}

TEST(Snf, UndeterminedProfileThrows) {
  auto zero = SeriesMatrix::diagonal(2, {3, 3}, 2, FieldElem::modular(0, 5));
  EXPECT_THROW(smith_normal_form(zero), TruncationInsufficient);
}

TEST(Snf, ProfilesOfWeight) {
  auto ps = profiles_of_weight(2, 3, 3);
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].to_string(), "(0,3)");
  EXPECT_EQ(ps[1].to_string(), "(1,2)");
  EXPECT_TRUE(profiles_of_weight(2, 7, 3).empty());
}
