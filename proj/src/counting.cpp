#include "arcdet/counting.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "arcdet/errors.hpp"
#include "engine.hpp"

namespace arcdet {

namespace {

constexpr unsigned kMaxLevel = 62;

Integer ipow(std::uint32_t q, unsigned e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), q, e);
  return out;
}

double log_base(const Integer& value, std::uint32_t q) {
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  return (std::log(mant) + static_cast<double>(exp2) * std::log(2.0)) / std::log(static_cast<double>(q));
}

SeriesPoly pad_poly(const MultiPoly& p, std::size_t num_vars, unsigned level) {
  if (p.num_vars() > num_vars) throw InvalidArgument("polynomial has more variables than the query ring");
  std::vector<SeriesTerm> terms;
  for (const auto& [exps, c] : p.terms()) {
    Exponents padded(exps);
    padded.resize(num_vars, 0);
    terms.push_back({std::move(padded), TruncSeries::constant(level, c)});
  }
  return SeriesPoly(num_vars, std::move(terms));
}

std::vector<unsigned> parse_uint_list(const std::string& text, const std::string& what) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 6) {
      throw InvalidArgument("malformed " + what + " '" + text + "'");
    }
    out.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  if (out.empty()) throw InvalidArgument("empty " + what);
  return out;
}

}  // namespace

SeriesPoly::SeriesPoly(std::size_t num_vars, std::vector<SeriesTerm> terms)
    : num_vars_(num_vars), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.exps.size() != num_vars_) throw InvalidArgument("series term has the wrong number of exponents");
  }
}

SeriesPoly SeriesPoly::from_poly(const MultiPoly& p, unsigned level) { return pad_poly(p, p.num_vars(), level); }

unsigned SeriesPoly::level() const { return terms_.empty() ? 0 : terms_.front().coeff.level(); }

SeriesIdeal SeriesIdeal::from(const IdealGens& ideal, unsigned level) {
  SeriesIdeal out;
  out.num_vars = ideal.num_vars();
  for (const auto& g : ideal.generators()) out.gens.push_back(SeriesPoly::from_poly(g, level));
  return out;
}

SeriesIdeal SeriesIdeal::coordinates(std::size_t num_vars, std::size_t first, std::size_t count,
                                     unsigned level) {
  if (first + count > num_vars || count == 0) throw InvalidArgument("coordinate block out of range");
  SeriesIdeal out;
  out.num_vars = num_vars;
  for (std::size_t i = first; i < first + count; ++i) {
    Exponents e(num_vars, 0);
    e[i] = 1;
    out.gens.emplace_back(num_vars, std::vector<SeriesTerm>{{e, TruncSeries::constant(level, FieldElem(1))}});
  }
  return out;
}

const char* to_string(ContactMode mode) {
  switch (mode) {
    case ContactMode::AtLeast: return "at-least";
    case ContactMode::Exactly: return "exact";
    case ContactMode::Below: return "below";
  }
  return "?";
}

const char* to_string(CountStrategy strategy) {
  switch (strategy) {
    case CountStrategy::Auto: return "auto";
    case CountStrategy::Lift: return "lift";
    case CountStrategy::Enumerate: return "enumerate";
    case CountStrategy::Sample: return "sample";
  }
  return "?";
}

const char* to_string(CountStatus status) {
  switch (status) {
    case CountStatus::ExactEmpty: return "EXACT_EMPTY";
    case CountStatus::Consensus: return "CONSENSUS";
    case CountStatus::Ambiguous: return "AMBIGUOUS";
    case CountStatus::Sampled: return "SAMPLED";
  }
  return "?";
}

static void check_conditions(std::size_t n, std::span<const ContactCondition> conditions, unsigned level) {
  if (n == 0) throw InvalidArgument("jet space needs at least one coordinate");
  if (level > kMaxLevel) throw InvalidArgument("level exceeds " + std::to_string(kMaxLevel));
  for (const auto& c : conditions) {
    if (c.ideal.num_vars != n) throw InvalidArgument("condition ideal over a different number of variables");
  }
}

Integer count_jets(std::size_t n, std::span<const ContactCondition> conditions, unsigned level,
                   std::uint32_t q, const CountOptions& options, CountStrategy strategy) {
  check_conditions(n, conditions, level);
  detail::Kernel kernel(n, level, q);
  detail::CompiledConditions compiled(conditions, level, q);
  switch (strategy) {
    case CountStrategy::Auto:
    case CountStrategy::Lift:
      return detail::lift_count(kernel, compiled, options.budget);
    case CountStrategy::Enumerate:
      return detail::enumerate_count(kernel, compiled, options.budget);
    case CountStrategy::Sample:
      break;
  }
  throw InvalidArgument("sampling does not produce exact counts");
}

SampleResult sample_jets(std::size_t n, std::span<const ContactCondition> conditions, unsigned level,
                         std::uint32_t q, const CountOptions& options) {
  check_conditions(n, conditions, level);
  if (options.sample_size == 0) throw InvalidArgument("sample size must be positive");
  detail::Kernel kernel(n, level, q);
  detail::CompiledConditions compiled(conditions, level, q);
  std::mt19937_64 rng(options.seed ^ (std::uint64_t{q} << 32));
  std::uniform_int_distribution<std::uint32_t> digit(0, q - 1);
  std::vector<std::uint32_t> jet(n * (level + 1));
  SampleResult out;
  out.samples = options.sample_size;
  for (std::uint64_t s = 0; s < options.sample_size; ++s) {
    for (auto& d : jet) d = digit(rng);
    if (compiled.satisfied(kernel, jet.data())) ++out.hits;
  }
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(out.samples);
  const double p = static_cast<double>(out.hits) / nn;
  const double denom = 1 + z * z / nn;
  const double centre = (p + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  out.fraction_low = std::max(0.0, centre - half);
  out.fraction_high = std::min(1.0, centre + half);
  return out;
}

std::optional<unsigned> CountReport::best_codim() const {
  if (status == CountStatus::Consensus) return codim;
  if (slope_dim) return ambient_dim >= *slope_dim ? ambient_dim - *slope_dim : 0;
  for (auto it = per_prime.rbegin(); it != per_prime.rend(); ++it) {
    if (it->dim) return ambient_dim >= *it->dim ? ambient_dim - *it->dim : 0;
  }
  return std::nullopt;
}

CountReport codim_consensus(std::span<const RawCount> counts, unsigned ambient_dim) {
  CountReport report;
  report.ambient_dim = ambient_dim;
  if (counts.empty()) throw InvalidArgument("consensus needs at least one prime");
  std::vector<RawCount> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end(), [](const RawCount& a, const RawCount& b) { return a.q < b.q; });

  bool all_zero = true, any_zero = false, all_guard = true, all_full = true;
  std::set<unsigned> dims;
  for (const auto& c : sorted) {
    if (c.raw < 0 || c.raw > c.total) throw InternalInvariant("raw count outside [0, total]");
    PrimeCount pc;
    pc.q = c.q;
    pc.raw = c.raw;
    pc.total = c.total;
    if (c.raw == 0) {
      any_zero = true;
      all_full = false;
    } else {
      all_zero = false;
      pc.log_q = log_base(c.raw, c.q);
      long d = std::lround(pc.log_q);
      pc.dim = static_cast<unsigned>(std::max(0L, d));
      pc.within_guard = std::fabs(pc.log_q - static_cast<double>(d)) < kGuardBand;
      all_guard = all_guard && pc.within_guard;
      all_full = all_full && c.raw == c.total;
      dims.insert(*pc.dim);
    }
    report.per_prime.push_back(std::move(pc));
  }
  if (all_zero) {
    report.status = CountStatus::ExactEmpty;
    return report;
  }
  auto codim_of = [&](unsigned d) { return ambient_dim >= d ? ambient_dim - d : 0U; };
  const PrimeCount* upper = nullptr;
  const PrimeCount* lower = nullptr;
  for (auto it = report.per_prime.rbegin(); it != report.per_prime.rend(); ++it) {
    if (!it->dim) continue;
    if (!upper) {
      upper = &*it;
    } else if (!lower) {
      lower = &*it;
    }
  }
  bool slope_ok = true;
  if (upper && lower) {
    double s = (upper->log_q * std::log(static_cast<double>(upper->q)) -
                lower->log_q * std::log(static_cast<double>(lower->q))) /
               std::log(static_cast<double>(upper->q) / static_cast<double>(lower->q));
    report.slope = s;
    report.slope_dim = static_cast<unsigned>(std::clamp(std::lround(s), 0L, static_cast<long>(ambient_dim)));
    slope_ok = dims.size() == 1 && std::fabs(s - static_cast<double>(*dims.begin())) < kGuardBand;
  }
  const bool quorum = sorted.size() >= 2 || all_full;
  if (!any_zero && dims.size() == 1 && all_guard && slope_ok && quorum) {
    report.status = CountStatus::Consensus;
    report.codim = codim_of(*dims.begin());
    report.codim_low = report.codim_high = *report.codim;
    return report;
  }
  report.status = CountStatus::Ambiguous;
  report.codim_low = codim_of(*dims.rbegin());
  report.codim_high = codim_of(*dims.begin());
  return report;
}

std::vector<ContactCondition> resolve_constraint(const std::string& name, std::size_t num_vars,
                                                 unsigned level, const ConstraintContext& context) {
  std::vector<ContactCondition> out;
  auto y_block = [&]() {
    if (context.y_count == 0 || context.y_count > num_vars) {
      throw InvalidArgument("constraint '" + name + "' needs a trailing y-block");
    }
    return SeriesIdeal::coordinates(num_vars, num_vars - context.y_count, context.y_count, level);
  };
  if (name == "y-unit") {
    out.push_back({y_block(), ContactMode::Below, 1});
  } else if (name.rfind("y-order:", 0) == 0) {
    auto p = parse_uint_list(name.substr(8), "y-order");
    if (p.size() != 1) throw InvalidArgument("y-order takes one value");
    if (p[0] > level) throw InvalidArgument("y-order exceeds the level");
    out.push_back({y_block(), ContactMode::Exactly, p[0]});
  } else if (name.rfind("stratum:", 0) == 0) {
    if (context.matrix == nullptr) throw InvalidArgument("stratum constraint needs a matrix");
    auto lambda = parse_uint_list(name.substr(8), "stratum profile");
    const auto& a = *context.matrix;
    if (lambda.size() != a.cols()) throw InvalidArgument("stratum profile length must equal the column count");
    if (!std::is_sorted(lambda.begin(), lambda.end())) throw InvalidArgument("stratum profile must be nondecreasing");
    unsigned partial = 0;
    for (std::size_t ell = 1; ell <= a.cols(); ++ell) {
      partial += lambda[ell - 1];
      if (partial > level) throw InvalidArgument("stratum partial sum exceeds the level");
      SeriesIdeal ideal;
      ideal.num_vars = num_vars;
      for (const auto& g : a.minors(ell)) {
        if (!g.is_zero()) ideal.gens.push_back(pad_poly(g, num_vars, level));
      }
      if (ideal.gens.empty()) throw InvalidArgument("minor ideal vanishes; stratum is undetermined");
      out.push_back({std::move(ideal), ContactMode::Exactly, partial});
    }
  } else {
    throw InvalidArgument("unknown constraint '" + name + "' (expected y-unit, y-order:p, stratum:l1,..)");
  }
  return out;
}

void validate_query(const ContactQuery& query) {
  if (query.level > kMaxLevel) throw InvalidArgument("--level must be at most " + std::to_string(kMaxLevel));
  if (query.mode == ContactMode::Exactly && query.m > query.level) {
    throw InvalidArgument("exact contact order m=" + std::to_string(query.m) + " exceeds level N=" +
                          std::to_string(query.level));
  }
  if (query.m > query.level + 1) {
    throw InvalidArgument("contact order m=" + std::to_string(query.m) + " exceeds level N+1=" +
                          std::to_string(query.level + 1));
  }
  if (query.primes.empty()) throw InvalidArgument("at least one prime is required");
  std::set<std::uint32_t> seen;
  for (auto q : query.primes) {
    require_prime(q);
    if (!seen.insert(q).second) throw InvalidArgument("duplicate prime " + std::to_string(q));
  }
}

namespace {

struct PrimeOutcome {
  RawCount raw;
  std::optional<SampleResult> sample;
};

PrimeOutcome count_for_prime(std::size_t n, const std::vector<ContactCondition>& conditions, unsigned level,
                             std::uint32_t q, const CountOptions& options) {
  PrimeOutcome out{{q, 0, ipow(q, static_cast<unsigned>(n * (level + 1)))}, std::nullopt};
  if (options.strategy == CountStrategy::Sample) {
    out.sample = sample_jets(n, conditions, level, q, options);
  } else {
    try {
      out.raw.raw = count_jets(n, conditions, level, q, options,
                               options.strategy == CountStrategy::Enumerate ? CountStrategy::Enumerate
                                                                            : CountStrategy::Lift);
      return out;
    } catch (const BudgetExceeded&) {
      if (options.strategy != CountStrategy::Auto || !options.allow_sampling) throw;
    }
    out.sample = sample_jets(n, conditions, level, q, options);
  }
  mpq_class frac(static_cast<long>(out.sample->hits), static_cast<long>(out.sample->samples));
  mpq_class est = frac * out.raw.total;
  out.raw.raw = est.get_num() / est.get_den();
  return out;
}

CountReport assemble(std::vector<PrimeOutcome> outcomes, unsigned ambient_dim, CountStrategy strategy) {
  std::vector<RawCount> raws;
  bool sampled = false;
  for (const auto& o : outcomes) {
    raws.push_back(o.raw);
    sampled = sampled || o.sample.has_value();
  }
  CountReport report = codim_consensus(raws, ambient_dim);
  report.strategy = strategy;
  if (!sampled) return report;
  std::sort(outcomes.begin(), outcomes.end(),
            [](const PrimeOutcome& a, const PrimeOutcome& b) { return a.raw.q < b.raw.q; });
  report.status = CountStatus::Sampled;
  report.strategy = CountStrategy::Sample;
  report.codim.reset();
  unsigned low = ambient_dim, high = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    report.per_prime[i].sample = o.sample;
    if (!o.sample) {
      if (report.per_prime[i].dim) {
        unsigned c = ambient_dim - std::min(ambient_dim, *report.per_prime[i].dim);
        low = std::min(low, c);
        high = std::max(high, c);
      }
      continue;
    }
    double total_log = static_cast<double>(ambient_dim);
    double lo = o.sample->fraction_low, hi = o.sample->fraction_high;
    double c_hi = lo > 0 ? -std::log(lo) / std::log(static_cast<double>(o.raw.q)) : total_log;
    double c_lo = -std::log(hi) / std::log(static_cast<double>(o.raw.q));
    low = std::min(low, static_cast<unsigned>(std::max(0.0, std::floor(c_lo))));
    high = std::max(high, static_cast<unsigned>(std::min(total_log, std::ceil(c_hi))));
  }
  report.codim_low = std::min(low, high);
  report.codim_high = high;
  return report;
}

}  // namespace

CountReport count_contact(const IdealGens& gens, const ContactQuery& query, const CountOptions& options,
                          const ConstraintContext& context) {
  validate_query(query);
  const std::size_t n = gens.num_vars();
  std::vector<ContactCondition> conditions;
  conditions.push_back({SeriesIdeal::from(gens, query.level), query.mode, query.m});
  if (query.constraint) {
    for (auto& c : resolve_constraint(*query.constraint, n, query.level, context)) conditions.push_back(std::move(c));
  }
  std::vector<PrimeOutcome> outcomes;
  for (auto q : query.primes) outcomes.push_back(count_for_prime(n, conditions, query.level, q, options));
  CountStrategy used = options.strategy == CountStrategy::Enumerate ? CountStrategy::Enumerate : CountStrategy::Lift;
  return assemble(std::move(outcomes), static_cast<unsigned>(n * (query.level + 1)), used);
}

namespace {

CountReport projective_report(std::size_t affine, std::size_t r, const std::vector<ContactCondition>& conditions,
                              const ContactQuery& query, const CountOptions& options) {
  const unsigned L = query.level + 1;
  const std::size_t n = affine + r;
  std::vector<RawCount> raws;
  for (auto q : query.primes) {
    Integer raw = count_jets(n, conditions, query.level, q, options,
                             options.strategy == CountStrategy::Enumerate ? CountStrategy::Enumerate
                                                                          : CountStrategy::Lift);
    Integer unit_group = ipow(q, query.level) * (q - 1);
    if (raw % unit_group != 0) {
      throw InternalInvariant("projective cone count " + raw.get_str() + " is not divisible by q^N(q-1) = " +
                              unit_group.get_str() + " (condition is not scaling invariant)");
    }
    Integer cone_total = ipow(q, static_cast<unsigned>(affine * L)) *
                         (ipow(q, static_cast<unsigned>(r * L)) - ipow(q, static_cast<unsigned>(r * (L - 1))));
    raws.push_back({q, raw / unit_group, cone_total / unit_group});
  }
  CountReport report = codim_consensus(raws, static_cast<unsigned>((affine + r - 1) * L));
  report.strategy = options.strategy == CountStrategy::Enumerate ? CountStrategy::Enumerate : CountStrategy::Lift;
  return report;
}

std::vector<ContactCondition> incidence_conditions(const SeriesMatrix& base, const ContactQuery& query) {
  if (base.level() < query.level) throw InvalidArgument("base matrix level is below the query level");
  const std::size_t r = base.cols();
  SeriesIdeal forms;
  forms.num_vars = r;
  for (std::size_t i = 0; i < base.rows(); ++i) {
    std::vector<SeriesTerm> terms;
    for (std::size_t j = 0; j < r; ++j) {
      TruncSeries c = base(i, j).truncate(query.level);
      if (c.is_zero()) continue;
      Exponents e(r, 0);
      e[j] = 1;
      terms.push_back({std::move(e), std::move(c)});
    }
    forms.gens.emplace_back(r, std::move(terms));
  }
  std::vector<ContactCondition> conditions;
  conditions.push_back({std::move(forms), query.mode, query.m});
  conditions.push_back({SeriesIdeal::coordinates(r, 0, r, query.level), ContactMode::Below, 1});
  return conditions;
}

}  // namespace

CountReport proj_count_contact(const SeriesMatrix& base, const ContactQuery& query, const CountOptions& options) {
  validate_query(query);
  if (query.constraint) throw InvalidArgument("projective counts take no constraint");
  return projective_report(0, base.cols(), incidence_conditions(base, query), query, options);
}

CountReport proj_count_contact(const IdealGens& incidence, std::size_t r, const ContactQuery& query,
                               const CountOptions& options) {
  validate_query(query);
  if (query.constraint) throw InvalidArgument("projective counts take no constraint");
  const std::size_t n = incidence.num_vars();
  if (r == 0 || r > n) throw InvalidArgument("projective block size out of range");
  std::vector<ContactCondition> conditions;
  conditions.push_back({SeriesIdeal::from(incidence, query.level), query.mode, query.m});
  conditions.push_back({SeriesIdeal::coordinates(n, n - r, r, query.level), ContactMode::Below, 1});
  return projective_report(n - r, r, conditions, query, options);
}

Integer proj_cone_count(const SeriesMatrix& base, const ContactQuery& query, std::uint32_t q,
                        const CountOptions& options) {
  validate_query(query);
  auto conditions = incidence_conditions(base, query);
  return count_jets(base.cols(), conditions, query.level, q, options,
                    options.strategy == CountStrategy::Enumerate ? CountStrategy::Enumerate : CountStrategy::Lift);
}

LctEstimate lct_estimate(const IdealGens& gens, unsigned max_m, const std::vector<std::uint32_t>& primes,
                         const CountOptions& options) {
  if (max_m == 0) throw InvalidArgument("--max-m must be at least 1");
  LctEstimate out;
  bool certified = true;
  for (unsigned m = 1; m <= max_m; ++m) {
    ContactQuery query;
    query.mode = ContactMode::AtLeast;
    query.m = m;
    query.level = m;
    query.primes = primes;
    CountReport report = count_contact(gens, query, options);
    if (report.status == CountStatus::Ambiguous || report.status == CountStatus::Sampled) certified = false;
    if (auto c = report.best_codim()) {
      Rational ratio(static_cast<long>(*c), static_cast<long>(m));
      ratio.canonicalize();
      if (!out.estimate || ratio <= *out.estimate) {
        out.estimate = ratio;
        out.witness_m = m;
      }
    }
    out.per_m.push_back(std::move(report));
  }
  out.certified_upper_bound = certified && out.estimate.has_value();
  if (out.estimate && *out.estimate > Rational(static_cast<long>(gens.size()))) {
    if (out.certified_upper_bound) {
      throw InternalInvariant("certified lct estimate " + rational_to_string(*out.estimate) +
                              " exceeds the number of generators " + std::to_string(gens.size()));
    }
    out.generator_bound_ok = false;
  }
  return out;
}

std::string to_decimal(const Integer& value) { return value.get_str(); }

}  // namespace arcdet
