#include <gtest/gtest.h>

#include "arcdet/counting.hpp"
#include "arcdet/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace arcdet;

namespace {

std::int64_t residue_of(const Rational& c, std::int64_t q) {
  mpz_class num = c.get_num() % q, den = c.get_den() % q, inv;
  if (num < 0) num += q;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(q).get_mpz_t());
  return mpz_class(num * inv % q).get_si();
}

oracle::Series pull(const MultiPoly& p, const std::vector<oracle::Series>& jet, std::int64_t q) {
  const std::size_t len = jet[0].size();
  oracle::Series out = oracle::zero_series(len);
  for (const auto& [exps, c] : p.terms()) {
    oracle::Series term = oracle::monomial(len, 0, residue_of(c.rational(), q));
    for (std::size_t i = 0; i < exps.size(); ++i) {
      for (unsigned e = 0; e < exps[i]; ++e) term = oracle::mul(term, jet[i], q);
    }
    out = oracle::add(out, term, q);
  }
  return out;
}

// ord of the ideal along every jet, len = level + 1 meaning "beyond the level".
std::map<std::size_t, mpz_class> order_histogram(const IdealGens& ideal, unsigned level, std::int64_t q) {
  std::map<std::size_t, mpz_class> hist;
  oracle::for_each_series_tuple(ideal.num_vars(), level + 1, q, [&](const std::vector<oracle::Series>& jet) {
    std::size_t best = level + 1;
    for (const auto& g : ideal.generators()) best = std::min(best, oracle::ord(pull(g, jet, q)));
    hist[best] += 1;
  });
  return hist;
}

Integer count_one(const IdealGens& ideal, ContactMode mode, unsigned m, unsigned level, std::uint32_t q,
                  CountStrategy strategy = CountStrategy::Lift) {
  ContactQuery query;
  query.mode = mode;
  query.m = m;
  query.level = level;
  query.primes = {q};
  CountOptions options;
  options.strategy = strategy;
  options.allow_sampling = false;
  return count_contact(ideal, query, options).per_prime.at(0).raw;
}

IdealGens random_ideal(gen::Rng& rng, std::size_t n) {
  auto vars = make_indexed_vars("x", n);
  while (true) {
    std::vector<MultiPoly> gens;
    const int count = static_cast<int>(rng.between(1, 2));
    for (int i = 0; i < count; ++i) {
      MultiPoly p(vars);
      const int terms = static_cast<int>(rng.between(1, 3));
      for (int t = 0; t < terms; ++t) {
        Exponents e(n);
        for (auto& x : e) x = static_cast<unsigned>(rng.between(0, 2));
        if (std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; })) e[0] = 1;
        p.add_term(e, FieldElem(rng.between(1, 2) * (rng.coin() ? 1 : -1)));
      }
      gens.push_back(p);
    }
    IdealGens ideal(vars, gens, true);
    if (!ideal.is_zero_ideal()) return ideal;
  }
}

}  // namespace

TEST(Jets, OdometerVisitsEveryJet) {
  JetOdometer odo(2, 1, 3);
  EXPECT_EQ(odo.total(), 81u);
  std::uint64_t seen = 0;
  while (odo.next()) ++seen;
  EXPECT_EQ(seen, 81u);
  EXPECT_THROW(JetOdometer(4, 6, 5, 1000), BudgetExceeded);
}

TEST(Jets, OrderAlongIdeal) {
  auto vars = make_indexed_vars("x", 2);
  IdealGens ideal(vars, {parse_poly("x1*x2", vars)});
  auto jet = JetPoint::from_coefficients({{0, 1, 0}, {0, 0, 1}}, 2, 5);
  EXPECT_TRUE(ord_along_ideal(ideal, jet).is_truncated());
  auto jet2 = JetPoint::from_coefficients({{0, 1, 0, 0}, {0, 0, 1, 0}}, 3, 5);
  EXPECT_EQ(ord_along_ideal(ideal, jet2).value(), 3u);
  EXPECT_THROW(IdealGens(vars, {MultiPoly(vars)}), InvalidArgument);
}

TEST(Counting, ExactStrategiesAgreeWithBruteForce) {
  gen::Rng rng(51);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 2));
    const unsigned level = static_cast<unsigned>(rng.between(1, 2));
    const std::uint32_t q = rng.coin() ? 2 : 3;
    auto ideal = random_ideal(rng, n);
    auto hist = order_histogram(ideal, level, q);
    for (unsigned m = 0; m <= level; ++m) {
      mpz_class exact = hist.count(m) ? hist[m] : mpz_class(0);
      EXPECT_EQ(count_one(ideal, ContactMode::Exactly, m, level, q, CountStrategy::Lift), exact);
      EXPECT_EQ(count_one(ideal, ContactMode::Exactly, m, level, q, CountStrategy::Enumerate), exact);
      mpz_class at_least = 0;
      for (const auto& [o, c] : hist) at_least += o >= m ? c : mpz_class(0);
      EXPECT_EQ(count_one(ideal, ContactMode::AtLeast, m, level, q), at_least);
      EXPECT_EQ(count_one(ideal, ContactMode::Below, m, level, q), oracle::ipow(q, n * (level + 1)) - at_least);
    }
  }
}

TEST(Counting, PartitionOfCounts) {
  gen::Rng rng(52);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 3));
    const unsigned level = static_cast<unsigned>(rng.between(0, 3));
    const std::uint32_t q = rng.coin() ? 3 : 5;
    auto ideal = random_ideal(rng, n);
    mpz_class total = count_one(ideal, ContactMode::AtLeast, level + 1, level, q);
    for (unsigned m = 0; m <= level; ++m) total += count_one(ideal, ContactMode::Exactly, m, level, q);
    EXPECT_EQ(total, oracle::ipow(q, n * (level + 1)));
  }
}

TEST(Counting, Monotonicity) {
  gen::Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 3));
    const unsigned level = 3;
    const std::uint32_t q = 3;
    auto ideal = random_ideal(rng, n);
    const mpz_class beyond = count_one(ideal, ContactMode::AtLeast, level + 1, level, q);
    for (unsigned m = 0; m <= level; ++m) {
      const mpz_class here = count_one(ideal, ContactMode::AtLeast, m, level, q);
      EXPECT_LE(count_one(ideal, ContactMode::AtLeast, m + 1, level, q), here);
      mpz_class tail = beyond;
      for (unsigned k = m; k <= level; ++k) tail += count_one(ideal, ContactMode::Exactly, k, level, q);
      EXPECT_EQ(here, tail);
    }
  }
}

TEST(Counting, CoordinateInvariance) {
  gen::Rng rng(54);
  auto vars = make_indexed_vars("x", 2);
  int compared = 0;
  for (int t = 0; t < 15; ++t) {
    const std::uint32_t q = 3;
    auto ideal = random_ideal(rng, 2);
    std::int64_t a, b, c, d;
    do {
      a = rng.between(-2, 2), b = rng.between(-2, 2), c = rng.between(-2, 2), d = rng.between(-2, 2);
    } while (oracle::mod(a * d - b * c, q) == 0);
    std::vector<MultiPoly> sub{MultiPoly::variable(vars, 0) * FieldElem(a) + MultiPoly::variable(vars, 1) * FieldElem(b),
                               MultiPoly::variable(vars, 0) * FieldElem(c) + MultiPoly::variable(vars, 1) * FieldElem(d)};
    std::vector<MultiPoly> moved;
    for (const auto& g : ideal.generators()) moved.push_back(g.compose(sub, vars).reduce(q));
    IdealGens changed(vars, moved, true);
    if (changed.is_zero_ideal()) continue;
    for (unsigned m = 0; m <= 2; ++m) {
      EXPECT_EQ(count_one(ideal, ContactMode::AtLeast, m, 2, q), count_one(changed, ContactMode::AtLeast, m, 2, q));
    }
    ++compared;
  }
  EXPECT_GE(compared, 10);
}

TEST(Counting, DeterminantOverTwoAtLevelZero) {
  auto vars = make_indexed_vars("x", 4);
  IdealGens det(vars, {parse_poly("x1*x4 - x2*x3", vars)});
  EXPECT_EQ(count_one(det, ContactMode::AtLeast, 1, 0, 2), 10);
}

TEST(Counting, MonomialLctIsExact) {
  auto vars = make_indexed_vars("x", 1);
  for (unsigned a = 1; a <= 3; ++a) {
    IdealGens ideal(vars, {MultiPoly::variable(vars, 0).pow(a)});
    auto est = lct_estimate(ideal, 2 * a, {2, 3, 5});
    ASSERT_TRUE(est.estimate.has_value());
    EXPECT_EQ(*est.estimate, Rational(1, a));
    EXPECT_TRUE(est.certified_upper_bound);
    for (const auto& r : est.per_m) EXPECT_EQ(r.status, CountStatus::Consensus);
  }
}

TEST(Counting, EstimateBoundedByEveryComputedRatio) {
  auto vars = make_indexed_vars("x", 2);
  IdealGens cusp(vars, {parse_poly("x1^2", vars), parse_poly("x2^3", vars)});
  auto est = lct_estimate(cusp, 6, {2, 3});
  ASSERT_TRUE(est.estimate.has_value());
  EXPECT_EQ(*est.estimate, Rational(5, 6));
  for (std::size_t i = 0; i < est.per_m.size(); ++i) {
    if (auto c = est.per_m[i].best_codim()) {
      EXPECT_LE(*est.estimate, Rational(*c, i + 1));
    }
  }
  EXPECT_LE(*est.estimate, Rational(2));
}

TEST(Counting, ProjectiveConeCountDivisibleByUnitGroup) {
  gen::Rng rng(55);
  for (int t = 0; t < 20; ++t) {
    const std::uint32_t q = rng.coin() ? 2 : 3;
    const unsigned level = static_cast<unsigned>(rng.between(0, 2));
    const std::size_t r = static_cast<std::size_t>(rng.between(1, 2));
    auto base = gen::series_matrix(rng, r, r, level, q);
    ContactQuery query;
    query.m = static_cast<unsigned>(rng.between(0, level));
    query.level = level;
    query.primes = {q};
    const Integer raw = proj_cone_count(base, query, q);
    const Integer unit = oracle::ipow(q, level) * (q - 1);
    EXPECT_EQ(raw % unit, 0);
    EXPECT_EQ(proj_count_contact(base, query).per_prime.at(0).raw * unit, raw);
  }
}

TEST(Counting, QueryValidation) {
  ContactQuery bad;
  bad.mode = ContactMode::Exactly;
  bad.m = 3;
  bad.level = 2;
  EXPECT_THROW(validate_query(bad), InvalidArgument);
  ContactQuery at_least = bad;
  at_least.mode = ContactMode::AtLeast;
  EXPECT_NO_THROW(validate_query(at_least));
  at_least.primes = {4};
  EXPECT_THROW(validate_query(at_least), InvalidArgument);
  ContactQuery empty_primes;
  empty_primes.primes.clear();
  EXPECT_THROW(validate_query(empty_primes), InvalidArgument);
}

TEST(Consensus, RoundingRules) {
  std::vector<RawCount> pure{{2, 8, 64}, {3, 27, 729}};
  auto c = codim_consensus(pure, 6);
  EXPECT_EQ(c.status, CountStatus::Consensus);
  EXPECT_EQ(c.codim, 3u);
  std::vector<RawCount> empty{{2, 0, 64}, {3, 0, 729}};
  EXPECT_EQ(codim_consensus(empty, 6).status, CountStatus::ExactEmpty);
  // log_2 10 = 3.32 and log_3 10 = 2.10 round to different dimensions.
  std::vector<RawCount> split{{2, 10, 64}, {3, 10, 729}};
  auto s = codim_consensus(split, 6);
  EXPECT_EQ(s.status, CountStatus::Ambiguous);
  EXPECT_FALSE(s.codim.has_value());
  EXPECT_LE(s.codim_low, s.codim_high);
}

TEST(Counting, BudgetFallsBackToSampling) {
  auto vars = make_indexed_vars("x", 4);
  IdealGens det(vars, {parse_poly("x1*x4 - x2*x3", vars)});
  ContactQuery query;
  query.m = 2;
  query.level = 2;
  query.primes = {3};
  CountOptions tiny;
  tiny.budget = 10;
  tiny.strategy = CountStrategy::Enumerate;
  tiny.allow_sampling = false;
  EXPECT_THROW(count_contact(det, query, tiny), BudgetExceeded);
  tiny.strategy = CountStrategy::Sample;
  tiny.allow_sampling = true;
  tiny.sample_size = 2000;
  auto sampled = count_contact(det, query, tiny);
  EXPECT_EQ(sampled.status, CountStatus::Sampled);
  ASSERT_TRUE(sampled.per_prime[0].sample.has_value());
  EXPECT_LE(sampled.per_prime[0].sample->fraction_low, sampled.per_prime[0].sample->fraction_high);
}
