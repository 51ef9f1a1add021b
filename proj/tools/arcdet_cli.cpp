#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arcdet/arcdet.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError {
  std::string message;
};

struct ApiError {
  arcdet_status status;
  std::string message;
};

void check(arcdet_status s) {
  if (s != ARCDET_OK) throw ApiError{s, arcdet_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Owned {
  T* ptr = nullptr;
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Context = Owned<arcdet_context, arcdet_context_free>;
using MatrixH = Owned<arcdet_matrix, arcdet_matrix_free>;
using IdealH = Owned<arcdet_ideal, arcdet_ideal_free>;
using ConfigH = Owned<arcdet_configuration, arcdet_configuration_free>;
using JetH = Owned<arcdet_jet, arcdet_jet_free>;
using CampaignH = Owned<arcdet_campaign, arcdet_campaign_free>;
using ReportH = Owned<arcdet_report, arcdet_report_free>;

std::vector<unsigned long long> parse_list(const std::string& flag, const std::string& text, const char* domain) {
  std::vector<unsigned long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    bool ok = !item.empty() && item.find_first_not_of("0123456789") == std::string::npos;
    if (ok) {
      try {
        v = std::stoull(item, &used);
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) throw UsageError{flag + ": expected " + domain + ", got '" + text + "'"};
    out.push_back(v);
  }
  if (out.empty()) throw UsageError{flag + ": expected " + domain + ", got an empty list"};
  return out;
}

bool is_prime(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<uint32_t> parse_primes(const std::string& text) {
  const char* domain = "a comma-separated list of distinct primes below 2^31 (e.g. 2,3)";
  std::vector<uint32_t> out;
  for (auto v : parse_list("--primes", text, domain)) {
    if (!is_prime(v) || v > (1ULL << 31)) throw UsageError{"--primes: " + std::to_string(v) + " is not a prime below 2^31"};
    for (auto p : out) {
      if (p == v) throw UsageError{"--primes: duplicate prime " + std::to_string(v)};
    }
    out.push_back(static_cast<uint32_t>(v));
  }
  return out;
}

std::vector<unsigned> parse_uints(const std::string& flag, const std::string& text) {
  std::vector<unsigned> out;
  for (auto v : parse_list(flag, text, "a comma-separated list of integers in [0, 62]")) {
    if (v > 62) throw UsageError{flag + ": " + std::to_string(v) + " exceeds 62"};
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ApiError{ARCDET_ERR_IO, "cannot write '" + path + "'"};
  out << text;
  if (!out) throw ApiError{ARCDET_ERR_IO, "error while writing '" + path + "'"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jet counting, contact loci and threshold estimates for determinantal varieties"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(arcdet_version()));

  std::string primes_text, out_path, format = "json", strategy = "auto";
  std::optional<unsigned long long> budget, seed;
  unsigned threads = 0;
  bool timings = false;
  app.add_option("--primes", primes_text, "Comma-separated primes, e.g. 2,3 (default 2,3)");
  app.add_option("--budget", budget, "Work budget: jets enumerated or search nodes (default 2^28)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Random seed for sampling and randomized checks (default 1)");
  app.add_option("--out", out_path, "Write the report here instead of standard output");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--strategy", strategy, "Counting strategy")
      ->check(CLI::IsMember({"auto", "lift", "enumerate", "sample"}));
  app.add_option("--threads", threads, "Worker threads for campaigns (0: all cores)");
  app.add_flag("--timings", timings, "Record wall times (reports are then not reproducible byte for byte)");

  std::string ideal_path, matrix_path, config_path, jet_path, campaign_ref, target = "auto", mode = "at-least";
  std::string m_text, p_text, lambda_text, expect;
  std::optional<unsigned> level, max_m;
  std::optional<std::string> constraint;
  bool list = false;

  auto* lct = app.add_subcommand("lct", "Threshold estimate min_m codim(Cont^{>=m})/m");
  auto* lct_ideal = lct->add_option("--ideal", ideal_path, "Ideal document")->check(CLI::ExistingFile);
  lct->add_option("--matrix", matrix_path, "Matrix document (ideal of maximal minors and incidence forms)")
      ->check(CLI::ExistingFile)
      ->excludes(lct_ideal);
  lct->add_option("--max-m", max_m, "Largest contact order M")->required()->check(CLI::Range(1, 62));
  lct->add_option("--target", target, "With --matrix: z (minors), w (incidence forms) or both")
      ->check(CLI::IsMember({"auto", "z", "w", "both"}));

  auto* count = app.add_subcommand("count", "Count jets in a contact locus over each prime");
  auto* count_ideal = count->add_option("--ideal", ideal_path, "Ideal document")->check(CLI::ExistingFile);
  count->add_option("--matrix", matrix_path, "Matrix document (counts against its maximal minors)")
      ->check(CLI::ExistingFile)
      ->excludes(count_ideal);
  count->add_option("--m", m_text, "Contact order")->required();
  count->add_option("--level", level, "Jet level N")->required()->check(CLI::Range(0, 62));
  count->add_option("--mode", mode, "Order condition")->check(CLI::IsMember({"at-least", "exactly", "below"}));
  count->add_option("--constraint", constraint, "y-unit, y-order:p or stratum:l1,..,lr");

  auto* profile = app.add_subcommand("profile", "Elementary-divisor profile of a matrix along a jet");
  profile->add_option("--matrix", matrix_path, "Matrix document")->required()->check(CLI::ExistingFile);
  profile->add_option("--jet", jet_path, "Jet document")->required()->check(CLI::ExistingFile);

  auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix pulled back along a jet");
  snf->add_option("--matrix", matrix_path, "Matrix document")->required();
  snf->add_option("--jet", jet_path, "Jet document")->required();

  auto* strata = app.add_subcommand("strata", "Profile stratification of Cont^m of the maximal minors");
  strata->add_option("--matrix", matrix_path, "Matrix document")->required()->check(CLI::ExistingFile);
  strata->add_option("--m", m_text, "Contact orders, comma separated")->required();
  strata->add_option("--level", level, "Jet level (default: m)")->check(CLI::Range(0, 62));

  auto* fiber = app.add_subcommand("fiber", "Fiber codimension over diag(t^lambda) against the closed formula");
  fiber->add_option("--lambda", lambda_text, "Nondecreasing profile, comma separated")->required();
  fiber->add_option("--m", m_text, "Contact orders, comma separated")->required();
  fiber->add_option("--level", level, "Jet level (default: max(m, lambda_r))")->check(CLI::Range(0, 62));

  auto* cone = app.add_subcommand("cone", "Affine cone against punctured model count identity");
  cone->add_option("--matrix", matrix_path, "Square matrix document")->required()->check(CLI::ExistingFile);
  auto* cone_max = cone->add_option("--max-m", max_m, "Every cell p <= m <= M")->check(CLI::Range(0, 62));
  auto* cone_m = cone->add_option("--m", m_text, "Contact order m")->excludes(cone_max);
  cone->add_option("--p", p_text, "Orders p along the zero section, comma separated")->needs(cone_m);
  cone->add_option("--level", level, "Jet level (default: m)")->check(CLI::Range(0, 62));

  auto* patterson = app.add_subcommand("patterson", "Patterson matrix, support expansion and optional lct campaign");
  patterson->add_option("--config", config_path, "Configuration document")->required()->check(CLI::ExistingFile);
  patterson->add_option("--max-m", max_m, "Run the threshold campaign up to M")->check(CLI::Range(1, 62));

  auto* matroid = app.add_subcommand("matroid", "Bases, rank and connectivity of a configuration");
  matroid->add_option("--config", config_path, "Configuration document")->required()->check(CLI::ExistingFile);

  auto* one_generic = app.add_subcommand("one-generic", "1-genericity of a configuration or a matrix of linear forms");
  auto* og_config = one_generic->add_option("--config", config_path, "Configuration document")->check(CLI::ExistingFile);
  one_generic->add_option("--matrix", matrix_path, "Square matrix of linear forms")
      ->check(CLI::ExistingFile)
      ->excludes(og_config);

  auto* verify = app.add_subcommand("verify", "Run a campaign document or a built-in (corpus:NAME)");
  verify->add_option("--campaign", campaign_ref, "Campaign path or corpus:NAME");
  verify->add_flag("--list", list, "List the built-in campaigns");

  // CLI11 reports a stray word only as a missing subcommand; name it instead.
  const std::set<std::string> valued{"--primes", "--budget", "--seed", "--out", "--format", "--strategy", "--threads"};
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (valued.count(arg)) {
      ++i;
      continue;
    }
    if (arg.empty() || arg[0] == '-') continue;
    if (!app.get_subcommand_no_throw(arg)) {
      std::string names;
      for (const auto* sub : app.get_subcommands({})) names += (names.empty() ? "" : ", ") + sub->get_name();
      std::cerr << "error: unknown subcommand '" << arg << "' (expected one of: " << names << ")\n";
      return kExitUsage;
    }
    break;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    Context ctx;
    check(arcdet_context_new(ctx.out()));
    if (!primes_text.empty()) {
      auto primes = parse_primes(primes_text);
      check(arcdet_context_set_primes(ctx.get(), primes.data(), primes.size()));
    }
    if (budget) check(arcdet_context_set_budget(ctx.get(), *budget));
    if (seed) check(arcdet_context_set_seed(ctx.get(), *seed));
    const arcdet_strategy strat = strategy == "lift"        ? ARCDET_STRATEGY_LIFT
                                  : strategy == "enumerate" ? ARCDET_STRATEGY_ENUMERATE
                                  : strategy == "sample"    ? ARCDET_STRATEGY_SAMPLE
                                                            : ARCDET_STRATEGY_AUTO;
    check(arcdet_context_set_strategy(ctx.get(), strat));
    check(arcdet_context_set_threads(ctx.get(), threads));
    check(arcdet_context_set_timings(ctx.get(), timings ? 1 : 0));
    const arcdet_format fmt = format == "csv" ? ARCDET_FORMAT_CSV : format == "text" ? ARCDET_FORMAT_TEXT : ARCDET_FORMAT_JSON;

    ReportH report;
    if (lct->parsed()) {
      if (ideal_path.empty() && matrix_path.empty()) throw UsageError{"lct: give --ideal or --matrix"};
      if (!ideal_path.empty()) {
        if (target != "auto") throw UsageError{"--target: only meaningful with --matrix"};
        IdealH ideal;
        check(arcdet_ideal_from_file(ideal_path.c_str(), ideal.out()));
        check(arcdet_lct(ctx.get(), ideal.get(), *max_m, report.out()));
      } else {
        MatrixH m;
        check(arcdet_matrix_from_file(matrix_path.c_str(), m.out()));
        size_t rows = 0, cols = 0;
        check(arcdet_matrix_shape(m.get(), &rows, &cols));
        if (target == "auto") target = rows == cols ? "both" : "z";
        if (target == "both" && rows != cols) throw UsageError{"--target both: needs a square matrix"};
        if (target == "z") {
          IdealH ideal;
          check(arcdet_ideal_from_matrix(m.get(), ideal.out()));
          check(arcdet_lct(ctx.get(), ideal.get(), *max_m, report.out()));
        } else if (target == "w") {
          check(arcdet_lct_w(ctx.get(), m.get(), *max_m, report.out()));
        } else {
          check(arcdet_corollary(ctx.get(), m.get(), *max_m, report.out()));
        }
      }
    } else if (count->parsed()) {
      if (ideal_path.empty() && matrix_path.empty()) throw UsageError{"count: give --ideal or --matrix"};
      auto ms = parse_uints("--m", m_text);
      if (ms.size() != 1) throw UsageError{"--m: count takes a single contact order"};
      const arcdet_contact_mode md = mode == "exactly" ? ARCDET_MODE_EXACTLY
                                     : mode == "below" ? ARCDET_MODE_BELOW
                                                       : ARCDET_MODE_AT_LEAST;
      IdealH ideal;
      MatrixH m;
      if (!matrix_path.empty()) {
        check(arcdet_matrix_from_file(matrix_path.c_str(), m.out()));
        check(arcdet_ideal_from_matrix(m.get(), ideal.out()));
      } else {
        check(arcdet_ideal_from_file(ideal_path.c_str(), ideal.out()));
      }
      check(arcdet_count(ctx.get(), ideal.get(), md, ms[0], *level, constraint ? constraint->c_str() : nullptr, m.get(),
                         report.out()));
    } else if (profile->parsed() || snf->parsed()) {
      MatrixH m;
      JetH jet;
      check(arcdet_matrix_from_file(matrix_path.c_str(), m.out()));
      check(arcdet_jet_from_file(jet_path.c_str(), jet.out()));
      if (profile->parsed()) check(arcdet_profile(ctx.get(), m.get(), jet.get(), report.out()));
      else check(arcdet_snf(ctx.get(), m.get(), jet.get(), report.out()));
    } else if (strata->parsed()) {
      auto ms = parse_uints("--m", m_text);
      MatrixH m;
      check(arcdet_matrix_from_file(matrix_path.c_str(), m.out()));
      check(arcdet_strata(ctx.get(), m.get(), ms.data(), ms.size(), level ? static_cast<int>(*level) : -1, report.out()));
    } else if (fiber->parsed()) {
      auto lambda = parse_uints("--lambda", lambda_text);
      auto ms = parse_uints("--m", m_text);
      unsigned lv = 0;
      for (auto x : lambda) lv = std::max(lv, x);
      for (auto x : ms) lv = std::max(lv, x);
      if (level) {
        if (*level < lv) throw UsageError{"--level: must be at least max(m, lambda_r) = " + std::to_string(lv)};
        lv = *level;
      }
      check(arcdet_fiber(ctx.get(), lambda.data(), lambda.size(), ms.data(), ms.size(), lv, report.out()));
    } else if (cone->parsed()) {
      std::vector<unsigned> ms, ps;
      if (max_m) {
        for (unsigned m = 0; m <= *max_m; ++m) {
          for (unsigned p = 0; p <= m; ++p) {
            ms.push_back(m);
            ps.push_back(p);
          }
        }
      } else {
        if (m_text.empty() || p_text.empty()) throw UsageError{"cone: give --max-m, or --m with --p"};
        auto mv = parse_uints("--m", m_text);
        if (mv.size() != 1) throw UsageError{"--m: cone takes a single contact order"};
        for (auto p : parse_uints("--p", p_text)) {
          ms.push_back(mv[0]);
          ps.push_back(p);
        }
      }
      MatrixH m;
      check(arcdet_matrix_from_file(matrix_path.c_str(), m.out()));
      check(arcdet_cone(ctx.get(), m.get(), ms.data(), ps.data(), ms.size(), level ? static_cast<int>(*level) : -1,
                        report.out()));
    } else if (patterson->parsed() || matroid->parsed()) {
      ConfigH cfg;
      check(arcdet_configuration_from_file(config_path.c_str(), cfg.out()));
      if (patterson->parsed()) check(arcdet_patterson(ctx.get(), cfg.get(), max_m.value_or(0), report.out()));
      else check(arcdet_matroid(ctx.get(), cfg.get(), report.out()));
    } else if (one_generic->parsed()) {
      if (config_path.empty() && matrix_path.empty()) throw UsageError{"one-generic: give --config or --matrix"};
      if (!config_path.empty()) {
        ConfigH cfg;
        check(arcdet_configuration_from_file(config_path.c_str(), cfg.out()));
        check(arcdet_one_generic_configuration(ctx.get(), cfg.get(), report.out()));
      } else {
        MatrixH m;
        check(arcdet_matrix_from_file(matrix_path.c_str(), m.out()));
        check(arcdet_one_generic_matrix(ctx.get(), m.get(), report.out()));
      }
    } else if (verify->parsed()) {
      if (list) {
        char* names = nullptr;
        check(arcdet_builtin_names(&names));
        std::string text = std::string(names) + "\n";
        arcdet_string_free(names);
        write_output(text, out_path);
        return kExitOk;
      }
      if (campaign_ref.empty()) throw UsageError{"verify: give --campaign PATH or --campaign corpus:NAME (or --list)"};
      CampaignH campaign;
      const std::string prefix = "corpus:";
      if (campaign_ref.rfind(prefix, 0) == 0) {
        check(arcdet_campaign_builtin(campaign_ref.substr(prefix.size()).c_str(), campaign.out()));
      } else {
        check(arcdet_campaign_from_file(campaign_ref.c_str(), campaign.out()));
      }
      check(arcdet_run_campaign(ctx.get(), campaign.get(), report.out()));
    }

    char* text = nullptr;
    check(arcdet_report_render(report.get(), fmt, &text));
    std::string rendered(text);
    arcdet_string_free(text);
    write_output(rendered, out_path);
    return arcdet_report_verdict(report.get()) == ARCDET_VERDICT_FAIL ? kExitFail : kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const ApiError& e) {
    std::cerr << "error (" << arcdet_status_name(e.status) << "): " << e.message << "\n";
    if (e.status == ARCDET_ERR_BUDGET) std::cerr << "hint: raise --budget or use --strategy sample\n";
    return kExitUsage;
  }
}
