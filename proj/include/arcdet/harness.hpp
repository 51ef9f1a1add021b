#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arcdet/operations.hpp"

namespace arcdet {

/// A validated campaign: every input parsed and every task bound to its
/// operation. Construction lists all validation problems at once.
class Campaign {
 public:
  struct Task {
    std::string label;
    std::string kind;
    std::optional<std::string> input;
    std::optional<std::vector<std::uint32_t>> primes;
    std::optional<std::uint64_t> budget;
    std::function<Report(const RunSettings&)> run;
  };

  /// Throws ValidationError whose message lists every problem, one per line.
  static Campaign from_json(const Json& doc);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Task>& tasks() const noexcept { return tasks_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t budget() const noexcept { return budget_; }
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void set_budget(std::uint64_t budget) { budget_ = budget; }
  /// Replaces the campaign-wide primes and drops per-task prime lists.
  void override_primes(std::vector<std::uint32_t> primes);

 private:
  std::string name_;
  std::uint64_t seed_ = 1;
  std::uint64_t budget_ = 1ULL << 28;
  std::vector<std::uint32_t> primes_{2, 3};
  std::vector<Task> tasks_;
};

struct CampaignOptions {
  unsigned threads = 0;  ///< 0: hardware concurrency
  bool timings = false;  ///< wall times make reports run-dependent
};

/// Runs the tasks on a bounded pool; the report lists them in declaration order.
/// A task that exceeds its budget is SKIPPED_BUDGET.
Report run_campaign(const Campaign& campaign, const CampaignOptions& options = {});

/// Names of the built-in campaigns.
std::vector<std::string> builtin_campaign_names();
/// Campaign document of a built-in; throws ValidationError for unknown names.
Json builtin_campaign(const std::string& name);

}  // namespace arcdet
