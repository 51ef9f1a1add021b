#include "arcdet/determinantal.hpp"

#include <algorithm>
#include <map>

#include "arcdet/errors.hpp"
#include "engine.hpp"

namespace arcdet {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Ambiguous: return "AMBIGUOUS";
  }
  return "?";
}

std::vector<IdealGens> minor_ideal_tower(const PolyMatrix& a) {
  std::vector<IdealGens> tower;
  for (std::size_t ell = 1; ell <= a.cols(); ++ell) tower.emplace_back(a.vars(), a.minors(ell), true);
  return tower;
}

LambdaProfile lambda_profile(const PolyMatrix& a, const JetPoint& jet) {
  if (jet.dimension() != a.vars()->size()) {
    throw InvalidArgument("jet has " + std::to_string(jet.dimension()) + " coordinates, matrix has " +
                          std::to_string(a.vars()->size()) + " variables");
  }
  std::vector<unsigned> parts;
  unsigned previous = 0;
  for (const auto& ideal : minor_ideal_tower(a)) {
    if (ideal.is_zero_ideal()) return LambdaProfile(parts, true);
    SeriesOrder ord = ord_along_ideal(ideal, jet);
    if (ord.is_truncated()) return LambdaProfile(parts, true);
    unsigned s = ord.value();
    if (s < previous) throw InternalInvariant("minor orders decreased along the tower");
    parts.push_back(s - previous);
    previous = s;
  }
  return LambdaProfile(parts);
}

namespace {

VarListPtr with_y_block(const VarListPtr& x, std::size_t r) {
  std::vector<std::string> names = x->names();
  for (std::size_t j = 1; j <= r; ++j) {
    std::string y = "y" + std::to_string(j);
    if (x->index_of(y) >= 0) throw InvalidArgument("matrix variable '" + y + "' collides with the incidence variables");
    names.push_back(y);
  }
  return make_vars(std::move(names));
}

IdealGens build_z(const PolyMatrix& a) {
  IdealGens z(a.vars(), a.minors(a.cols()), true);
  if (z.is_zero_ideal()) throw InvalidArgument("every maximal minor vanishes identically; Z_A is not proper");
  return z;
}

IdealGens build_w(const PolyMatrix& a, const VarListPtr& xy) {
  const std::size_t n = a.vars()->size();
  std::vector<MultiPoly> forms;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    MultiPoly f(xy);
    for (std::size_t j = 0; j < a.cols(); ++j) f += a(i, j).embed(xy) * MultiPoly::variable(xy, n + j);
    forms.push_back(std::move(f));
  }
  return IdealGens(xy, std::move(forms), true);
}

std::optional<unsigned> pure_power(const Integer& value, std::uint32_t q) {
  if (value <= 0) return std::nullopt;
  Integer v = value;
  unsigned d = 0;
  while (v % q == 0) {
    v /= q;
    ++d;
  }
  if (v != 1) return std::nullopt;
  return d;
}

Integer ipow(std::uint32_t q, unsigned e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), q, e);
  return out;
}

bool within(const Rational& a, const Rational& b, const Rational& eps) { return abs(a - b) <= eps; }

}  // namespace

DeterminantalPair::DeterminantalPair(PolyMatrix a)
    : matrix_(std::move(a)),
      z_gens_(build_z(matrix_)),
      xy_vars_(with_y_block(matrix_.vars(), matrix_.cols())),
      w_gens_(build_w(matrix_, xy_vars_)) {}

IdealGens DeterminantalPair::chart(std::size_t i) const {
  if (i >= r()) throw InvalidArgument("chart index out of range");
  const std::size_t var = n() + i;
  std::vector<MultiPoly> gens;
  VarListPtr vars;
  for (const auto& g : w_gens_.generators()) {
    gens.push_back(g.specialize(var, FieldElem(1)));
    vars = gens.back().vars();
  }
  if (gens.empty()) {
    std::vector<std::string> names = xy_vars_->names();
    names.erase(names.begin() + static_cast<std::ptrdiff_t>(var));
    vars = make_vars(std::move(names));
  }
  return IdealGens(vars, std::move(gens), true);
}

StratumReport stratum_counts(const DeterminantalPair& pair, unsigned m, unsigned level, std::uint32_t q,
                             const CountOptions& options) {
  if (m > level) throw InvalidArgument("stratum counts need m <= N");
  const std::size_t n = pair.n();
  const std::size_t r = pair.r();
  detail::Kernel kernel(n, level, q);

  std::vector<detail::ModPoly> z_polys;
  for (const auto& g : pair.z_gens().generators()) z_polys.emplace_back(SeriesPoly::from_poly(g, level), level, q);
  std::vector<std::vector<detail::ModPoly>> tower;
  for (const auto& ideal : minor_ideal_tower(pair.matrix())) {
    std::vector<detail::ModPoly> polys;
    for (const auto& g : ideal.generators()) polys.emplace_back(SeriesPoly::from_poly(g, level), level, q);
    tower.push_back(std::move(polys));
  }

  const unsigned L = kernel.levels();
  std::map<std::vector<unsigned>, std::uint64_t> buckets;
  std::uint64_t residual = 0;
  std::vector<unsigned> thresholds(z_polys.size(), m);
  detail::for_each_in_cylinder(kernel, z_polys, thresholds, options.budget, [&](const std::uint32_t* jet) {
    unsigned ord = L;
    for (const auto& p : z_polys) ord = std::min(ord, kernel.order(p, jet));
    if (ord != m) return;
    std::vector<unsigned> parts;
    unsigned previous = 0;
    for (const auto& polys : tower) {
      unsigned s = L;
      for (const auto& p : polys) s = std::min(s, kernel.order(p, jet));
      if (s == L) {
        ++residual;
        return;
      }
      parts.push_back(s - previous);
      previous = s;
    }
    ++buckets[parts];
  });

  StratumReport report;
  report.m = m;
  report.level = level;
  report.q = q;
  report.residual = Integer(static_cast<unsigned long>(residual));
  for (const auto& lambda : profiles_of_weight(r, m, level)) report.strata.push_back({lambda, 0});
  for (const auto& [parts, count] : buckets) {
    LambdaProfile lambda(parts);
    auto it = std::find_if(report.strata.begin(), report.strata.end(),
                           [&](const StratumCount& s) { return s.lambda == lambda; });
    if (it == report.strata.end()) {
      throw InternalInvariant("jet classified into profile " + lambda.to_string() + " of weight != m");
    }
    it->count = Integer(static_cast<unsigned long>(count));
  }
  report.classified_total = 0;
  for (const auto& s : report.strata) report.classified_total += s.count;

  std::vector<ContactCondition> conditions{
      {SeriesIdeal::from(pair.z_gens(), level), ContactMode::Exactly, m}};
  report.cont_m = count_jets(n, conditions, level, q, options, CountStrategy::Lift);
  report.partition_ok = report.cont_m == report.classified_total && report.residual == 0;
  return report;
}

std::optional<unsigned> fiber_codim_formula(const LambdaProfile& lambda, unsigned m) {
  if (lambda.truncated()) throw TruncationInsufficient("fiber formula needs a fully determined profile");
  if (lambda.size() == 0) throw InvalidArgument("empty profile");
  if (lambda.largest() < m) return std::nullopt;
  unsigned sum = 0;
  for (auto part : lambda.parts()) {
    if (part < m) sum += m - part;
  }
  return sum;
}

namespace {

// Cont^{>=m} of the incidence forms of `base` on the chart u_chart = 1.
Integer chart_count(const SeriesMatrix& base, std::size_t chart, unsigned m, unsigned level, std::uint32_t q,
                    const CountOptions& options) {
  const std::size_t r = base.cols();
  if (r == 1) {
    SeriesOrder best = SeriesOrder::truncated(level);
    for (std::size_t i = 0; i < base.rows(); ++i) best = min_order(best, base(i, 0).reduce(q).ord());
    return best.at_least(m) ? 1 : 0;
  }
  const std::size_t n = r - 1;
  SeriesIdeal ideal;
  ideal.num_vars = n;
  for (std::size_t i = 0; i < base.rows(); ++i) {
    std::vector<SeriesTerm> terms;
    for (std::size_t j = 0; j < r; ++j) {
      if (base(i, j).is_zero()) continue;
      Exponents e(n, 0);
      if (j != chart) e[j < chart ? j : j - 1] = 1;
      terms.push_back({std::move(e), base(i, j)});
    }
    if (!terms.empty()) ideal.gens.emplace_back(n, std::move(terms));
  }
  std::vector<ContactCondition> conditions{{std::move(ideal), ContactMode::AtLeast, m}};
  return count_jets(n, conditions, level, q, options, CountStrategy::Lift);
}

}  // namespace

FiberCheck fiber_count_check(const LambdaProfile& lambda, unsigned m, unsigned level,
                             const std::vector<std::uint32_t>& primes, const CountOptions& options) {
  if (lambda.truncated() || lambda.size() == 0) throw InvalidArgument("fiber check needs a full profile");
  if (m > level) throw InvalidArgument("fiber check needs m <= N");
  if (lambda.largest() > level) throw InvalidArgument("fiber check needs lambda_r <= N");
  const std::size_t r = lambda.size();
  FiberCheck check;
  check.lambda = lambda;
  check.m = m;
  check.level = level;
  check.formula = fiber_codim_formula(lambda, m);

  SeriesMatrix base = SeriesMatrix::diagonal(r, lambda.parts(), level);
  const unsigned chart_dim = static_cast<unsigned>((r - 1) * (level + 1));
  bool pure = true, consistent = true;
  std::optional<bool> empty_seen;
  std::optional<std::optional<unsigned>> codim_seen;
  for (auto q : primes) {
    require_prime(q);
    std::optional<unsigned> best;
    bool empty = true;
    for (std::size_t c = 0; c < r; ++c) {
      ChartCount cc{q, c, chart_count(base, c, m, level, q, options), std::nullopt};
      if (cc.count != 0) {
        empty = false;
        cc.exponent = pure_power(cc.count, q);
        if (!cc.exponent || *cc.exponent > chart_dim) {
          pure = false;
        } else {
          unsigned codim = chart_dim - *cc.exponent;
          best = best ? std::min(*best, codim) : codim;
        }
      }
      check.charts.push_back(std::move(cc));
    }
    if (empty_seen && (*empty_seen != empty || *codim_seen != best)) consistent = false;
    empty_seen = empty;
    codim_seen = best;
  }
  check.counted_empty = empty_seen.value_or(true);
  if (codim_seen) check.counted_codim = *codim_seen;

  ContactQuery query;
  query.mode = ContactMode::AtLeast;
  query.m = m;
  query.level = level;
  query.primes = primes;
  check.quotient = proj_count_contact(base, query, options);
  if (check.quotient.status == CountStatus::ExactEmpty) {
    check.quotient_consistent = !check.formula.has_value();
  } else if (!check.formula) {
    check.quotient_consistent = false;
  } else if (check.quotient.status == CountStatus::Consensus) {
    check.quotient_consistent = *check.quotient.codim == *check.formula;
  }

  bool matches = pure && consistent && check.counted_empty == !check.formula.has_value() &&
                 (check.counted_empty || check.counted_codim == check.formula);
  check.verdict = matches && check.quotient_consistent ? Verdict::Pass : Verdict::Fail;
  return check;
}

Rational transform_bound_forward(const Rational& c, std::size_t r) {
  if (r == 0) throw InvalidArgument("r must be at least 1");
  Rational rr(static_cast<long>(r));
  return std::min(Rational(rr * c), Rational(rr - 1 + c));
}

Rational transform_bound_backward(const Rational& c_prime, std::size_t r) {
  if (r == 0) throw InvalidArgument("r must be at least 1");
  Rational rr(static_cast<long>(r));
  return std::min(c_prime, Rational((c_prime - 1) / rr + 1));
}

CorollaryCheck corollary_check(const PolyMatrix& a, unsigned max_m, const std::vector<std::uint32_t>& primes,
                               const CountOptions& options) {
  if (a.rows() != a.cols()) {
    throw InvalidArgument("corollary check needs a square matrix, got " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()));
  }
  DeterminantalPair pair(a);
  CorollaryCheck check;
  check.r = pair.r();
  check.max_m = max_m;
  check.epsilon = Rational(1, 2 * static_cast<long>(max_m));
  check.lct_z = lct_estimate(pair.z_gens(), max_m, primes, options);
  bool certified = check.lct_z.certified_upper_bound;
  const Rational rr(static_cast<long>(check.r));
  for (std::size_t i = 0; i < check.r; ++i) {
    IdealGens chart = pair.chart(i);
    if (chart.is_zero_ideal()) throw InvalidArgument("incidence forms vanish on chart y" + std::to_string(i + 1));
    LctEstimate est = lct_estimate(chart, max_m, primes, options);
    certified = certified && est.certified_upper_bound;
    if (est.estimate) {
      if (*est.estimate > rr) check.chart_bound_ok = false;
      if (!check.lct_w || *est.estimate < *check.lct_w) check.lct_w = est.estimate;
    }
    check.charts.push_back(std::move(est));
  }
  check.certified = certified && check.lct_z.estimate && check.lct_w;
  if (!check.lct_z.estimate || !check.lct_w) {
    check.verdict = Verdict::Ambiguous;
    return check;
  }
  const Rational& z = *check.lct_z.estimate;
  const Rational& w = *check.lct_w;
  const Rational& eps = check.epsilon;

  Rational c = z - eps;
  check.forward_ok = true;
  if (c > 0) {
    check.forward_bound = transform_bound_forward(c, check.r);
    check.forward_ok = w >= *check.forward_bound;
  }
  check.forward_equality = w == transform_bound_forward(z, check.r);

  Rational c_prime = w - (rr - 1) - eps;
  if (c_prime > 0) {
    check.backward_applied = true;
    check.backward_bound = transform_bound_backward(c_prime, check.r);
    check.backward_ok = z + eps >= *check.backward_bound;
  }
  check.z_is_one = within(z, 1, eps);
  check.w_is_r = within(w, rr, eps);
  check.biconditional_ok = check.z_is_one == check.w_is_r;

  bool ok = check.forward_ok && check.backward_ok && check.biconditional_ok && check.chart_bound_ok;
  if (ok) {
    check.verdict = check.certified ? Verdict::Pass : Verdict::Ambiguous;
  } else {
    check.verdict = check.certified ? Verdict::Fail : Verdict::Ambiguous;
  }
  return check;
}

ConeCheck cone_comparison_check(const PolyMatrix& a, unsigned m, unsigned p, unsigned level,
                                const std::vector<std::uint32_t>& primes, const CountOptions& options) {
  if (a.rows() != a.cols()) throw InvalidArgument("cone comparison needs a square matrix");
  if (!(p <= m && m <= level)) throw InvalidArgument("cone comparison needs p <= m <= N");
  DeterminantalPair pair(a);
  const std::size_t n = pair.n();
  ConeCheck check;
  check.m = m;
  check.p = p;
  check.level = level;
  check.r = pair.r();

  ConstraintContext ctx;
  ctx.y_count = check.r;
  ContactQuery cone_query;
  cone_query.mode = ContactMode::Exactly;
  cone_query.m = m;
  cone_query.level = level;
  cone_query.primes = primes;
  cone_query.constraint = "y-order:" + std::to_string(p);
  ContactQuery punct_query = cone_query;
  punct_query.m = m - p;
  punct_query.level = level - p;
  punct_query.constraint = "y-unit";

  CountOptions exact = options;
  if (exact.strategy == CountStrategy::Auto || exact.strategy == CountStrategy::Sample) {
    exact.strategy = CountStrategy::Lift;
  }
  check.cone_report = count_contact(pair.w_gens(), cone_query, exact, ctx);
  check.punctured_report = count_contact(pair.w_gens(), punct_query, exact, ctx);

  bool identity = true;
  for (std::size_t i = 0; i < check.cone_report.per_prime.size(); ++i) {
    ConePrime cp;
    cp.q = check.cone_report.per_prime[i].q;
    cp.cone = check.cone_report.per_prime[i].raw;
    cp.punctured = check.punctured_report.per_prime[i].raw;
    cp.scale = ipow(cp.q, static_cast<unsigned>(n * p));
    cp.identity_ok = cp.cone == cp.scale * cp.punctured;
    identity = identity && cp.identity_ok;
    check.per_prime.push_back(std::move(cp));
  }
  const auto& cr = check.cone_report;
  const auto& pr = check.punctured_report;
  if (cr.status == CountStatus::Consensus && pr.status == CountStatus::Consensus) {
    check.codim_compared = true;
    check.codim_ok = *cr.codim == p * check.r + *pr.codim;
  } else if (cr.empty() != pr.empty()) {
    check.codim_ok = false;
  }
  check.verdict = identity && check.codim_ok ? Verdict::Pass : Verdict::Fail;
  return check;
}

}  // namespace arcdet
