#include "arcdet/operations.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "arcdet/errors.hpp"

namespace arcdet {

CountOptions RunSettings::count_options() const {
  CountOptions o;
  o.budget = budget;
  o.strategy = strategy;
  o.allow_sampling = strategy == CountStrategy::Auto || strategy == CountStrategy::Sample;
  o.seed = seed;
  return o;
}

namespace {

Environment environment_of(const RunSettings& s, std::vector<unsigned> levels) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<std::uint32_t> primes = s.primes;
  std::sort(primes.begin(), primes.end());
  return {primes, levels, s.seed, s.budget};
}

std::vector<unsigned> one_to(unsigned max_m) {
  std::vector<unsigned> out;
  for (unsigned m = 1; m <= max_m; ++m) out.push_back(m);
  return out;
}

Json ideal_json(const IdealGens& gens) {
  Json g = Json::array();
  for (const auto& p : gens.generators()) g.push_back(p.to_string());
  return {{"vars", gens.vars()->names()}, {"generators", g}};
}

void finish(Report& r) { r.status = aggregate_status(r.identity_checks, r.estimates); }

Check expectation_check(const std::string& name, const std::optional<Rational>& estimate, const Rational& expected,
                        const Rational& tolerance, bool certified) {
  Check c{name, Status::Pass, {{"expected", rational_json(expected)}, {"tolerance", rational_json(tolerance)}}};
  c.detail["estimate"] = estimate ? rational_json(*estimate) : Json(nullptr);
  c.detail["certified"] = certified;
  bool ok = false;
  if (estimate) {
    Rational diff = *estimate - expected;
    ok = abs(diff) <= tolerance;
  }
  if (!ok) c.status = certified ? Status::Fail : Status::Ambiguous;
  return c;
}

Check flag_check(const std::string& name, bool ok, Json detail = Json::object()) {
  return Check{name, ok ? Status::Pass : Status::Fail, std::move(detail)};
}

Status consensus_status(const CountReport& r) {
  return r.status == CountStatus::Consensus || r.status == CountStatus::ExactEmpty ? Status::Pass
                                                                                   : Status::Ambiguous;
}

void merge_into(Json& target, const Json& source) {
  for (const auto& [k, v] : source.items()) target[k] = v;
}

bool is_unit(const TruncSeries& s) {
  SeriesOrder o = s.ord();
  return !o.is_truncated() && o.value() == 0;
}

}  // namespace

LambdaProfile profile_from_minors(const SeriesMatrix& m) {
  const std::size_t r = std::min(m.rows(), m.cols());
  std::vector<unsigned> parts;
  unsigned previous = 0;
  for (std::size_t ell = 1; ell <= r; ++ell) {
    std::optional<unsigned> best;
    for (const auto& minor : m.minors(ell)) {
      SeriesOrder o = minor.ord();
      if (!o.is_truncated() && (!best || o.value() < *best)) best = o.value();
    }
    if (!best) return LambdaProfile(parts, true);
    if (*best < previous) throw InternalInvariant("minor orders decreased");
    parts.push_back(*best - previous);
    previous = *best;
  }
  if (!std::is_sorted(parts.begin(), parts.end())) throw InternalInvariant("minor-order profile is not monotone");
  return LambdaProfile(parts);
}

Report lct_report(const IdealGens& gens, unsigned max_m, const RunSettings& settings, const LctExpectation& expect) {
  LctEstimate est = lct_estimate(gens, max_m, settings.primes, settings.count_options());
  Report r;
  r.kind = "lct";
  r.payload = {{"ideal", ideal_json(gens)}, {"max_m", max_m}};
  merge_into(r.payload, json_of(est));
  if (expect.require_consensus) {
    for (std::size_t i = 0; i < est.per_m.size(); ++i) {
      Status s = consensus_status(est.per_m[i]);
      r.estimates.push_back({"consensus m=" + std::to_string(i + 1), s == Status::Pass ? s : Status::Fail,
                             {{"m", i + 1}, {"count_status", to_string(est.per_m[i].status)}}});
    }
  }
  if (!est.generator_bound_ok) {
    r.estimates.push_back({"generator bound", Status::Ambiguous, {{"generators", gens.size()}}});
  }
  if (expect.value) {
    Rational tol = expect.exact ? Rational(0) : Rational(1, 2 * max_m);
    r.estimates.push_back(expectation_check("lct", est.estimate, *expect.value, tol, est.certified_upper_bound));
  }
  r.environment = environment_of(settings, one_to(max_m));
  finish(r);
  return r;
}

Report lct_w_report(const PolyMatrix& a, unsigned max_m, const RunSettings& settings, const LctExpectation& expect) {
  DeterminantalPair pair(a);
  Report r;
  r.kind = "lct_w";
  Json charts = Json::array();
  std::optional<Rational> best;
  bool certified = true;
  for (std::size_t i = 0; i < pair.r(); ++i) {
    IdealGens chart = pair.chart(i);
    if (chart.is_zero_ideal()) throw InvalidArgument("incidence forms vanish on chart y" + std::to_string(i + 1));
    LctEstimate est = lct_estimate(chart, max_m, settings.primes, settings.count_options());
    certified = certified && est.certified_upper_bound;
    if (est.estimate && (!best || *est.estimate < *best)) best = est.estimate;
    Json c = json_of(est);
    c["chart"] = i + 1;
    charts.push_back(std::move(c));
  }
  r.payload = {{"matrix", json_of(a)},
               {"max_m", max_m},
               {"lct_w", best ? rational_json(*best) : Json(nullptr)},
               {"certified", certified},
               {"charts", std::move(charts)}};
  if (expect.value) {
    Rational tol = expect.exact ? Rational(0) : Rational(1, 2 * max_m);
    r.estimates.push_back(expectation_check("lct_w", best, *expect.value, tol, certified));
  }
  r.environment = environment_of(settings, one_to(max_m));
  finish(r);
  return r;
}

Report corollary_report(const PolyMatrix& a, unsigned max_m, const RunSettings& settings,
                        const CorollaryExpectation& expect) {
  CorollaryCheck c = corollary_check(a, max_m, settings.primes, settings.count_options());
  Report r;
  r.kind = "corollary";
  r.payload = {{"matrix", json_of(a)}};
  merge_into(r.payload, json_of(c));
  r.estimates.push_back({"transform bounds and biconditional", status_of(c.verdict),
                         {{"forward_ok", c.forward_ok},
                          {"backward_ok", c.backward_ok},
                          {"biconditional_ok", c.biconditional_ok},
                          {"chart_bound_ok", c.chart_bound_ok},
                          {"certified", c.certified}}});
  if (expect.lct_z) r.estimates.push_back(expectation_check("lct_z", c.lct_z.estimate, *expect.lct_z, c.epsilon, c.certified));
  if (expect.lct_w) r.estimates.push_back(expectation_check("lct_w", c.lct_w, *expect.lct_w, c.epsilon, c.certified));
  if (expect.forward_equality) {
    Check eq{"forward bound attained", Status::Pass, {{"forward_bound", c.forward_bound ? rational_json(*c.forward_bound) : Json(nullptr)}}};
    if (!c.forward_equality) eq.status = c.certified ? Status::Fail : Status::Ambiguous;
    r.estimates.push_back(std::move(eq));
  }
  r.environment = environment_of(settings, one_to(max_m));
  finish(r);
  return r;
}

Report count_report(const IdealGens& gens, const ContactQuery& query, const RunSettings& settings,
                    const PolyMatrix* matrix) {
  ConstraintContext ctx;
  ctx.matrix = matrix;
  CountReport cr = count_contact(gens, query, settings.count_options(), ctx);
  Report r;
  r.kind = "count";
  r.payload = {{"ideal", ideal_json(gens)},
               {"query",
                {{"mode", to_string(query.mode)},
                 {"m", query.m},
                 {"level", query.level},
                 {"constraint", query.constraint ? Json(*query.constraint) : Json(nullptr)}}}};
  merge_into(r.payload, json_of(cr));
  r.estimates.push_back({"codim consensus", consensus_status(cr), {{"count_status", to_string(cr.status)}}});
  r.environment = environment_of(settings, {query.level});
  finish(r);
  return r;
}

Report profile_report(const PolyMatrix& a, const JetPoint& jet) {
  LambdaProfile by_minors = lambda_profile(a, jet);
  Report r;
  r.kind = "profile";
  r.payload = {{"matrix", json_of(a)}, {"level", jet.level()}, {"lambda", json_of(by_minors)}};
  try {
    SnfResult snf = smith_normal_form(pullback(a, jet.coords()));
    r.payload["snf_lambda"] = json_of(snf.lambda);
    r.identity_checks.push_back(flag_check("snf profile equals minor orders", snf.lambda == by_minors,
                                           {{"snf", snf.lambda.to_string()}, {"minors", by_minors.to_string()}}));
  } catch (const TruncationInsufficient&) {
    r.payload["snf_lambda"] = nullptr;
  }
  r.environment = Environment{{}, {jet.level()}, 1, 0};
  const std::uint32_t q = jet[0].modulus();
  if (q) r.environment.primes = {q};
  finish(r);
  return r;
}

Report snf_report(const PolyMatrix& a, const JetPoint& jet) {
  SeriesMatrix m = pullback(a, jet.coords());
  SnfResult snf = smith_normal_form(m);
  Report r;
  r.kind = "snf";
  r.payload = {{"matrix", json_of(a)}, {"pullback", json_of(m)}};
  merge_into(r.payload, json_of(snf));
  SeriesMatrix diag = SeriesMatrix::diagonal(m.rows(), snf.lambda.parts(), m.level(), m.like());
  r.identity_checks.push_back(flag_check("P M Q equals diag(t^lambda)", snf.p_transform * m * snf.q_transform == diag));
  r.identity_checks.push_back(flag_check("transforms are invertible",
                                         is_unit(snf.p_transform.determinant()) && is_unit(snf.q_transform.determinant())));
  LambdaProfile oracle = profile_from_minors(m);
  r.identity_checks.push_back(flag_check("profile equals minor orders", oracle == snf.lambda,
                                         {{"minors", oracle.to_string()}, {"snf", snf.lambda.to_string()}}));
  r.environment = Environment{{}, {m.level()}, 1, 0};
  if (m.like().modulus()) r.environment.primes = {m.like().modulus()};
  finish(r);
  return r;
}

Report strata_report(const PolyMatrix& a, const std::vector<unsigned>& ms, std::optional<unsigned> level,
                     const RunSettings& settings) {
  DeterminantalPair pair(a);
  Report r;
  r.kind = "strata";
  Json cells = Json::array();
  std::vector<unsigned> levels;
  for (unsigned m : ms) {
    for (std::uint32_t q : settings.primes) {
      const unsigned n = level.value_or(m);
      levels.push_back(n);
      StratumReport s = stratum_counts(pair, m, n, q, settings.count_options());
      r.identity_checks.push_back(flag_check(
          "partition m=" + std::to_string(m) + " q=" + std::to_string(q), s.partition_ok,
          {{"cont_m", to_decimal(s.cont_m)}, {"classified_total", to_decimal(s.classified_total)}, {"residual", to_decimal(s.residual)}}));
      cells.push_back(json_of(s));
    }
  }
  r.payload = {{"matrix", json_of(a)}, {"cells", std::move(cells)}};
  r.environment = environment_of(settings, levels);
  finish(r);
  return r;
}

Report fiber_report(const std::vector<LambdaProfile>& profiles, const std::vector<unsigned>& ms, unsigned level,
                    const RunSettings& settings) {
  Report r;
  r.kind = "fiber";
  Json cells = Json::array();
  for (const auto& lambda : profiles) {
    for (unsigned m : ms) {
      FiberCheck f = fiber_count_check(lambda, m, level, settings.primes, settings.count_options());
      Json detail = {{"formula_codim", f.formula ? Json(*f.formula) : Json(nullptr)},
                     {"counted_codim", f.counted_codim ? Json(*f.counted_codim) : Json(nullptr)},
                     {"counted_empty", f.counted_empty}};
      r.identity_checks.push_back(
          {"fiber " + lambda.to_string() + " m=" + std::to_string(m), status_of(f.verdict), std::move(detail)});
      cells.push_back(json_of(f));
    }
  }
  r.payload = {{"level", level}, {"cells", std::move(cells)}};
  r.environment = environment_of(settings, {level});
  finish(r);
  return r;
}

Report cone_report(const PolyMatrix& a, const std::vector<std::pair<unsigned, unsigned>>& cells,
                   std::optional<unsigned> level, const RunSettings& settings) {
  Report r;
  r.kind = "cone";
  Json out = Json::array();
  std::vector<unsigned> levels;
  for (auto [m, p] : cells) {
    const unsigned n = level.value_or(m);
    levels.push_back(n);
    ConeCheck k = cone_comparison_check(a, m, p, n, settings.primes, settings.count_options());
    const std::string tag = " m=" + std::to_string(m) + " p=" + std::to_string(p);
    bool identity = std::all_of(k.per_prime.begin(), k.per_prime.end(), [](const ConePrime& c) { return c.identity_ok; });
    r.identity_checks.push_back(flag_check("cone count identity" + tag, identity));
    if (k.codim_compared || !k.codim_ok) {
      r.estimates.push_back(flag_check("cone codim" + tag, k.codim_ok,
                                       {{"cone_codim", k.cone_report.codim ? Json(*k.cone_report.codim) : Json(nullptr)},
                                        {"punctured_codim", k.punctured_report.codim ? Json(*k.punctured_report.codim) : Json(nullptr)}}));
    }
    out.push_back(json_of(k));
  }
  r.payload = {{"matrix", json_of(a)}, {"cells", std::move(out)}};
  r.environment = environment_of(settings, levels);
  finish(r);
  return r;
}

Report patterson_report(const ConfigurationMatrix& cfg, std::optional<unsigned> max_m, const RunSettings& settings,
                        const CorollaryExpectation& expect, const std::optional<MultiPoly>& expected_determinant) {
  Report r;
  Matroid matroid = matroid_from_columns(cfg);
  Json d = Json::array();
  for (const auto& row : cfg.rows()) {
    Json jr = Json::array();
    for (const auto& x : row) jr.push_back(rational_to_string(x));
    d.push_back(std::move(jr));
  }
  std::optional<ConfigurationReport> full;
  PolyMatrix patterson = patterson_matrix(cfg);
  MultiPoly det = patterson.determinant();
  SupportExpansion expansion = cauchy_binet_expansion(cfg);
  if (max_m) {
    full = configuration_lct_campaign(cfg, *max_m, settings.primes, settings.count_options());
    r.kind = "configuration";
    r.payload = {{"d_matrix", d}};
    merge_into(r.payload, json_of(*full));
  } else {
    r.kind = "patterson";
    r.payload = {{"d_matrix", d},
                 {"patterson", json_of(patterson)},
                 {"determinant", det.to_string()},
                 {"expansion", json_of(expansion)},
                 {"square_free", is_square_free(det)},
                 {"connected", is_connected(matroid)},
                 {"basis_count", matroid.bases().size()}};
  }
  r.payload["coefficient_convention"] = "det(D|_I)^2";

  r.identity_checks.push_back(flag_check("Cauchy-Binet expansion", expansion.matches_direct));
  std::set<std::vector<std::size_t>> support, bases(matroid.bases().begin(), matroid.bases().end());
  for (const auto& [subset, _] : expansion.coefficients) support.insert(subset);
  r.identity_checks.push_back(flag_check("support equals bases", support == bases));
  r.identity_checks.push_back(flag_check("square-free determinant", is_square_free(det)));
  if (expected_determinant) {
    r.identity_checks.push_back(flag_check("determinant", det == expected_determinant->embed(det.vars()),
                                           {{"expected", expected_determinant->to_string()}, {"actual", det.to_string()}}));
  }
  std::vector<unsigned> levels;
  if (full) {
    const CorollaryCheck& c = full->corollary;
    r.estimates.push_back({"transform bounds and biconditional", status_of(c.verdict), {{"certified", c.certified}}});
    r.estimates.push_back(expectation_check("lct_z", c.lct_z.estimate, expect.lct_z.value_or(Rational(1)), c.epsilon, c.certified));
    r.estimates.push_back(expectation_check("lct_w", c.lct_w, expect.lct_w.value_or(Rational(static_cast<long>(cfg.rank()))),
                                            c.epsilon, c.certified));
    levels = one_to(*max_m);
  }
  r.environment = environment_of(settings, levels);
  if (!max_m) r.environment.primes.clear();
  finish(r);
  return r;
}

Report matroid_report(const ConfigurationMatrix& cfg) {
  Matroid matroid = matroid_from_columns(cfg);
  Report r;
  r.kind = "matroid";
  r.payload = json_of(matroid);
  r.payload["connected"] = is_connected(matroid);
  r.environment = Environment{{}, {}, 1, 0};
  finish(r);
  return r;
}

Report one_generic_report(const ConfigurationMatrix& cfg, const RunSettings& settings) {
  HadamardResult h = hadamard_one_generic(cfg);
  PolyMatrix patterson = patterson_matrix(cfg);
  LinearOneGenericResult l = linear_one_generic(patterson, settings.primes);
  Report r;
  r.kind = "one_generic";
  r.payload = {{"patterson", json_of(patterson)}, {"hadamard", json_of(h)}, {"linear", json_of(l)}};
  Check agree{"Hadamard criterion agrees with linear search", Status::Pass,
              {{"hadamard", h.one_generic}, {"linear", l.one_generic}, {"confirmation", to_string(l.confirmation)}}};
  if (h.one_generic != l.one_generic) agree.status = l.confirmation == Confirmation::Confirmed ? Status::Fail : Status::Ambiguous;
  r.identity_checks.push_back(std::move(agree));
  r.environment = environment_of(settings, {});
  finish(r);
  return r;
}

Report one_generic_report(const PolyMatrix& a, const RunSettings& settings) {
  LinearOneGenericResult l = linear_one_generic(a, settings.primes);
  Report r;
  r.kind = "one_generic";
  r.payload = {{"matrix", json_of(a)}, {"linear", json_of(l)}};
  if (l.confirmation == Confirmation::Unconfirmed) {
    r.estimates.push_back({"linear search confirmed", Status::Ambiguous, {{"one_generic", l.one_generic}}});
  }
  r.environment = environment_of(settings, {});
  finish(r);
  return r;
}

Report one_generic_sweep_report(std::size_t r_rows, std::size_t max_n, const std::vector<int>& entries,
                                const RunSettings& settings) {
  if (r_rows == 0 || max_n < r_rows) throw InvalidArgument("sweep needs 1 <= r <= max_n");
  if (entries.empty()) throw InvalidArgument("sweep needs at least one entry value");
  std::uint64_t matrices = 0, agree = 0, generic = 0, unconfirmed = 0;
  Json first_disagreement = nullptr;
  Json per_n = Json::array();
  for (std::size_t n = r_rows; n <= max_n; ++n) {
    const std::size_t cells = r_rows * n;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < cells; ++i) {
      total *= entries.size();
      if (total > settings.budget) throw BudgetExceeded("sweep over " + std::to_string(n) + " columns exceeds the budget");
    }
    std::uint64_t full_rank = 0;
    std::vector<std::size_t> digit(cells, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t v = idx;
      for (std::size_t c = 0; c < cells; ++c) {
        digit[c] = v % entries.size();
        v /= entries.size();
      }
      std::vector<std::vector<Rational>> rows(r_rows, std::vector<Rational>(n));
      for (std::size_t c = 0; c < cells; ++c) rows[c / n][c % n] = entries[digit[c]];
      std::optional<ConfigurationMatrix> cfg;
      try {
        cfg.emplace(rows);
      } catch (const InvalidArgument&) {
        continue;
      }
      ++full_rank;
      HadamardResult h = hadamard_one_generic(*cfg);
      LinearOneGenericResult l = linear_one_generic(patterson_matrix(*cfg), settings.primes);
      ++matrices;
      generic += h.one_generic;
      if (l.confirmation == Confirmation::Unconfirmed) ++unconfirmed;
      if (h.one_generic == l.one_generic) {
        ++agree;
      } else if (first_disagreement.is_null()) {
        Json d = Json::array();
        for (const auto& row : rows) {
          Json jr = Json::array();
          for (const auto& x : row) jr.push_back(rational_to_string(x));
          d.push_back(std::move(jr));
        }
        first_disagreement = {{"d_matrix", d}, {"hadamard", h.one_generic}, {"linear", l.one_generic}};
      }
    }
    per_n.push_back({{"n", n}, {"full_rank", full_rank}});
  }
  Report r;
  r.kind = "one_generic_sweep";
  r.payload = {{"r", r_rows},
               {"max_n", max_n},
               {"entries", entries},
               {"matrices", matrices},
               {"one_generic", generic},
               {"agreements", agree},
               {"unconfirmed", unconfirmed},
               {"per_n", std::move(per_n)},
               {"first_disagreement", first_disagreement}};
  Check c{"Hadamard criterion agrees with linear search", Status::Pass,
          {{"matrices", matrices}, {"agreements", agree}}};
  if (agree != matrices) c.status = Status::Fail;
  else if (unconfirmed) c.status = Status::Ambiguous;
  r.identity_checks.push_back(std::move(c));
  r.environment = environment_of(settings, {});
  finish(r);
  return r;
}

Report snf_roundtrip_report(std::size_t samples, unsigned level, std::uint32_t prime,
                            const std::vector<std::pair<std::size_t, std::size_t>>& shapes,
                            const RunSettings& settings) {
  require_prime(prime);
  if (shapes.empty()) throw InvalidArgument("snf round trip needs at least one shape");
  for (auto [s, c] : shapes) {
    if (c == 0 || s < c) throw InvalidArgument("snf shapes need rows >= cols >= 1");
  }
  std::mt19937_64 rng(settings.seed);
  std::uniform_int_distribution<std::uint32_t> coeff(0, prime - 1);
  std::uniform_int_distribution<unsigned> part(0, level);
  auto random_series = [&] {
    std::vector<FieldElem> c(level + 1);
    for (auto& x : c) x = FieldElem::modular(coeff(rng), prime);
    return TruncSeries(level, std::move(c));
  };
  auto random_invertible = [&](std::size_t n) {
    for (;;) {
      Matrix<TruncSeries> e(n, n, TruncSeries(level, FieldElem::modular(0, prime)));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) e(i, j) = random_series();
      }
      SeriesMatrix m(level, std::move(e));
      if (is_unit(m.determinant())) return m;
    }
  };

  std::uint64_t reconstruct_fail = 0, unit_fail = 0, oracle_fail = 0, planted_fail = 0;
  Json first_failure = nullptr;
  std::map<std::string, std::uint64_t> profile_histogram;
  for (std::size_t k = 0; k < samples; ++k) {
    auto [s, c] = shapes[k % shapes.size()];
    std::vector<unsigned> lambda;
    do {
      lambda.assign(c, 0);
      for (auto& x : lambda) x = part(rng) / 2;
      std::sort(lambda.begin(), lambda.end());
    } while (std::accumulate(lambda.begin(), lambda.end(), 0U) > level);
    const FieldElem like = FieldElem::modular(0, prime);
    SeriesMatrix m = random_invertible(s) * SeriesMatrix::diagonal(s, lambda, level, like) * random_invertible(c);
    SnfResult snf = smith_normal_form(m);
    ++profile_histogram[snf.lambda.to_string()];
    bool rec = snf.p_transform * m * snf.q_transform == SeriesMatrix::diagonal(s, snf.lambda.parts(), level, like);
    bool units = is_unit(snf.p_transform.determinant()) && is_unit(snf.q_transform.determinant());
    bool oracle = profile_from_minors(m) == snf.lambda;
    bool planted = snf.lambda == LambdaProfile(lambda);
    reconstruct_fail += !rec;
    unit_fail += !units;
    oracle_fail += !oracle;
    planted_fail += !planted;
    if ((!rec || !units || !oracle || !planted) && first_failure.is_null()) {
      first_failure = {{"sample", k}, {"matrix", json_of(m)}, {"planted", lambda}, {"snf", json_of(snf.lambda)}};
    }
  }
  Report r;
  r.kind = "snf_roundtrip";
  Json hist = Json::object();
  for (const auto& [k, v] : profile_histogram) hist[k] = v;
  r.payload = {{"samples", samples},
               {"level", level},
               {"prime", prime},
               {"shapes", shapes},
               {"profiles", std::move(hist)},
               {"first_failure", first_failure}};
  auto failures = [&](std::uint64_t f) { return Json{{"samples", samples}, {"failures", f}}; };
  r.identity_checks.push_back(flag_check("P M Q equals diag(t^lambda)", reconstruct_fail == 0, failures(reconstruct_fail)));
  r.identity_checks.push_back(flag_check("transforms are invertible", unit_fail == 0, failures(unit_fail)));
  r.identity_checks.push_back(flag_check("profile equals minor orders", oracle_fail == 0, failures(oracle_fail)));
  r.identity_checks.push_back(flag_check("profile equals planted profile", planted_fail == 0, failures(planted_fail)));
  RunSettings env = settings;
  env.primes = {prime};
  r.environment = environment_of(env, {level});
  finish(r);
  return r;
}

}  // namespace arcdet
