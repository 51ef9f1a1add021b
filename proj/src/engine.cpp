#include "engine.hpp"

#include <algorithm>

#include "arcdet/errors.hpp"

namespace arcdet::detail {

u128 pow_u128(std::uint64_t base, unsigned exp) {
  u128 out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (out > (~u128{0}) / base) throw InvalidArgument("count exceeds 128-bit range");
    out *= base;
  }
  return out;
}

Integer to_integer(u128 value) {
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(value >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(value)));
  mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), 64);
  return hi + lo;
}

ModPoly::ModPoly(const SeriesPoly& p, unsigned level, std::uint32_t q) {
  const unsigned L = level + 1;
  for (const auto& t : p.terms()) {
    Term term;
    for (std::size_t v = 0; v < t.exps.size(); ++v) {
      if (t.exps[v] > 0) {
        term.factors.push_back({static_cast<std::uint16_t>(v), static_cast<std::uint16_t>(t.exps[v])});
      }
    }
    term.coeff.assign(L, 0);
    term.coeff_ord = L;
    for (unsigned k = 0; k < L && k <= t.coeff.level(); ++k) {
      FieldElem c = t.coeff[k].reduce(q);
      term.coeff[k] = c.residue();
      if (term.coeff[k] != 0 && term.coeff_ord == L) term.coeff_ord = k;
    }
    if (term.coeff_ord < L) terms_.push_back(std::move(term));
  }
}

Kernel::Kernel(std::size_t n, unsigned level, std::uint32_t q) : n_(n), L_(level + 1), q_(q) {
  require_prime(q);
  u128 bound = u128{q - 1} * (q - 1) * L_;
  lazy_reduce_ = bound < (u128{1} << 64);
}

void Kernel::mul_into(std::uint32_t* acc, const std::uint32_t* series, unsigned upto,
                      std::uint32_t* scratch) const {
  for (unsigned k = 0; k < upto; ++k) {
    std::uint64_t sum = 0;
    if (lazy_reduce_) {
      for (unsigned i = 0; i <= k; ++i) sum += std::uint64_t{acc[i]} * series[k - i];
      scratch[k] = static_cast<std::uint32_t>(sum % q_);
    } else {
      for (unsigned i = 0; i <= k; ++i) sum = (sum + std::uint64_t{acc[i]} * series[k - i] % q_) % q_;
      scratch[k] = static_cast<std::uint32_t>(sum);
    }
  }
  std::copy(scratch, scratch + upto, acc);
}

void Kernel::eval(const ModPoly& p, const std::uint32_t* jet, unsigned upto, std::uint32_t* out) const {
  std::uint32_t acc[64];
  std::uint32_t scratch[64];
  if (upto > 64) throw InvalidArgument("level too large for the modular kernel (max 63)");
  std::fill(out, out + upto, 0U);
  for (const auto& term : p.terms()) {
    if (term.coeff_ord >= upto) continue;
    std::copy(term.coeff.begin(), term.coeff.begin() + upto, acc);
    for (const auto& f : term.factors) {
      const std::uint32_t* s = jet + f.var * L_;
      for (unsigned e = 0; e < f.exp; ++e) mul_into(acc, s, upto, scratch);
    }
    for (unsigned k = 0; k < upto; ++k) {
      std::uint32_t v = out[k] + acc[k];
      out[k] = v >= q_ ? v - q_ : v;
    }
  }
}

unsigned Kernel::order(const ModPoly& p, const std::uint32_t* jet) const {
  std::uint32_t out[64];
  eval(p, jet, L_, out);
  for (unsigned k = 0; k < L_; ++k) {
    if (out[k] != 0) return k;
  }
  return L_;
}

std::uint32_t Kernel::partial_at_origin(const ModPoly& p, std::size_t var, const std::uint32_t* jet) const {
  std::uint64_t total = 0;
  for (const auto& term : p.terms()) {
    if (term.coeff[0] == 0) continue;
    std::uint64_t value = term.coeff[0];
    bool has_var = false;
    for (const auto& f : term.factors) {
      unsigned e = f.exp;
      if (f.var == var) {
        has_var = true;
        value = value * (e % q_) % q_;
        --e;
      }
      std::uint64_t base = jet[f.var * L_];
      for (unsigned i = 0; i < e; ++i) value = value * base % q_;
    }
    if (has_var) total = (total + value) % q_;
  }
  return static_cast<std::uint32_t>(total);
}

CompiledConditions::CompiledConditions(std::span<const ContactCondition> conditions, unsigned level,
                                       std::uint32_t q) {
  for (const auto& c : conditions) {
    Entry e{{}, c.mode, c.order};
    for (const auto& g : c.ideal.gens) {
      e.poly_idx.push_back(polys.size());
      polys.emplace_back(g, level, q);
    }
    entries.push_back(std::move(e));
  }
}

bool CompiledConditions::satisfied(const Kernel& kernel, const std::uint32_t* jet) const {
  for (const auto& e : entries) {
    unsigned ord = kernel.levels();
    for (auto idx : e.poly_idx) {
      ord = std::min(ord, kernel.order(polys[idx], jet));
      if (ord == 0) break;
    }
    switch (e.mode) {
      case ContactMode::AtLeast:
        if (ord < e.order) return false;
        break;
      case ContactMode::Exactly:
        if (ord != e.order) return false;
        break;
      case ContactMode::Below:
        if (ord >= e.order) return false;
        break;
    }
  }
  return true;
}

namespace {

struct LinearSolution {
  bool consistent = true;
  unsigned rank = 0;
  std::vector<std::uint32_t> particular;
  std::vector<std::vector<std::uint32_t>> kernel;
};

// Solves rows x n system (augmented column n) over F_q.
LinearSolution solve_mod(std::vector<std::uint32_t>& a, std::size_t rows, std::size_t n, std::uint32_t q) {
  const std::size_t w = n + 1;
  LinearSolution sol;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && a[piv * w + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < w; ++j) std::swap(a[piv * w + j], a[r * w + j]);
    }
    std::uint64_t inv = mod_inverse(a[r * w + col], q);
    for (std::size_t j = col; j < w; ++j) a[r * w + j] = static_cast<std::uint32_t>(a[r * w + j] * inv % q);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i * w + col] == 0) continue;
      std::uint64_t f = a[i * w + col];
      for (std::size_t j = col; j < w; ++j) {
        std::uint64_t sub = f * a[r * w + j] % q;
        a[i * w + j] = static_cast<std::uint32_t>((a[i * w + j] + q - sub) % q);
      }
    }
    pivot_cols.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (a[i * w + n] != 0) {
      sol.consistent = false;
      return sol;
    }
  }
  sol.rank = static_cast<unsigned>(r);
  sol.particular.assign(n, 0);
  for (std::size_t i = 0; i < r; ++i) sol.particular[pivot_cols[i]] = a[i * w + n];
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint32_t> v(n, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < r; ++i) {
      std::uint32_t c = a[i * w + f];
      v[pivot_cols[i]] = c == 0 ? 0 : q - c;
    }
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

}  // namespace

LiftCounter::LiftCounter(const Kernel& kernel, const std::vector<ModPoly>& polys, std::uint64_t budget)
    : kernel_(kernel), polys_(polys), budget_(budget) {}

void LiftCounter::tick() {
  if (++nodes_ > budget_) {
    throw BudgetExceeded("lift search exceeded the budget of " + std::to_string(budget_) + " nodes");
  }
}

u128 LiftCounter::count(const std::vector<unsigned>& thresholds) {
  const unsigned L = kernel_.levels();
  const std::size_t n = kernel_.n();
  thresholds_ = thresholds;
  max_threshold_ = 0;
  for (auto t : thresholds_) {
    if (t > L) throw InvalidArgument("contact order exceeds level + 1");
    max_threshold_ = std::max(max_threshold_, t);
  }
  const u128 free_factor = pow_u128(kernel_.q(), static_cast<unsigned>(n * (L - max_threshold_)));
  if (max_threshold_ == 0) return free_factor;
  jet_.assign(n * L, 0);
  jacobian_.assign(polys_.size() * n, 0);
  scratch_.assign(L, 0);
  return level_zero() * free_factor;
}

u128 LiftCounter::level_zero() {
  const std::size_t n = kernel_.n();
  const unsigned L = kernel_.levels();
  const std::uint32_t q = kernel_.q();
  std::vector<std::uint32_t> digits(n, 0);
  u128 total = 0;
  while (true) {
    tick();
    for (std::size_t i = 0; i < n; ++i) jet_[i * L] = digits[i];
    bool ok = true;
    for (std::size_t g = 0; g < polys_.size() && ok; ++g) {
      if (thresholds_[g] == 0) continue;
      kernel_.eval(polys_[g], jet_.data(), 1, scratch_.data());
      ok = scratch_[0] == 0;
    }
    if (ok) {
      if (max_threshold_ == 1) {
        total += 1;
      } else {
        for (std::size_t g = 0; g < polys_.size(); ++g) {
          for (std::size_t i = 0; i < n; ++i) {
            jacobian_[g * n + i] = kernel_.partial_at_origin(polys_[g], i, jet_.data());
          }
        }
        total += descend(1);
      }
    }
    std::size_t i = n;
    while (i > 0) {
      if (++digits[i - 1] < q) break;
      digits[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  for (std::size_t i = 0; i < n; ++i) jet_[i * L] = 0;
  return total;
}

u128 LiftCounter::descend(unsigned k) {
  const std::size_t n = kernel_.n();
  const unsigned L = kernel_.levels();
  const std::uint32_t q = kernel_.q();

  std::vector<std::size_t> active;
  for (std::size_t g = 0; g < polys_.size(); ++g) {
    if (thresholds_[g] > k) active.push_back(g);
  }
  for (std::size_t i = 0; i < n; ++i) jet_[i * L + k] = 0;

  const std::size_t w = n + 1;
  std::vector<std::uint32_t> system(active.size() * w);
  for (std::size_t r = 0; r < active.size(); ++r) {
    std::size_t g = active[r];
    for (std::size_t i = 0; i < n; ++i) system[r * w + i] = jacobian_[g * n + i];
    kernel_.eval(polys_[g], jet_.data(), k + 1, scratch_.data());
    system[r * w + n] = scratch_[k] == 0 ? 0 : q - scratch_[k];
  }
  LinearSolution sol = solve_mod(system, active.size(), n, q);
  if (!sol.consistent) return 0;
  const unsigned free_dims = static_cast<unsigned>(n) - sol.rank;
  if (k + 1 == max_threshold_) return pow_u128(q, free_dims);
  if (sol.rank == active.size()) {
    // Independent rows stay independent on the shrinking active sets below.
    unsigned exponent = 0;
    for (unsigned j = k; j < max_threshold_; ++j) {
      std::size_t count = 0;
      for (auto t : thresholds_) count += t > j ? 1 : 0;
      exponent += static_cast<unsigned>(n - count);
    }
    return pow_u128(q, exponent);
  }

  u128 total = 0;
  std::vector<std::uint32_t> coeffs(free_dims, 0);
  while (true) {
    tick();
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t v = sol.particular[i];
      for (unsigned b = 0; b < free_dims; ++b) v += std::uint64_t{coeffs[b]} * sol.kernel[b][i];
      jet_[i * L + k] = static_cast<std::uint32_t>(v % q);
    }
    total += descend(k + 1);
    unsigned b = free_dims;
    while (b > 0) {
      if (++coeffs[b - 1] < q) break;
      coeffs[b - 1] = 0;
      --b;
    }
    if (b == 0) break;
  }
  for (std::size_t i = 0; i < n; ++i) jet_[i * L + k] = 0;
  return total;
}

Integer lift_count(const Kernel& kernel, const CompiledConditions& compiled, std::uint64_t budget) {
  struct Atom {
    std::size_t entry;
    unsigned order;
  };
  std::vector<Atom> positive, negative;
  const unsigned L = kernel.levels();
  for (std::size_t i = 0; i < compiled.entries.size(); ++i) {
    const auto& e = compiled.entries[i];
    switch (e.mode) {
      case ContactMode::AtLeast:
        if (e.order > L) throw InvalidArgument("at-least order exceeds level + 1");
        if (e.order > 0) positive.push_back({i, e.order});
        break;
      case ContactMode::Exactly:
        if (e.order + 1 > L) throw InvalidArgument("exact order must not exceed the level");
        if (e.order > 0) positive.push_back({i, e.order});
        negative.push_back({i, e.order + 1});
        break;
      case ContactMode::Below:
        if (e.order > L) throw InvalidArgument("below order exceeds level + 1");
        if (e.order == 0) return Integer(0);
        negative.push_back({i, e.order});
        break;
    }
  }
  if (negative.size() > 16) throw InvalidArgument("too many negated contact conditions");

  LiftCounter counter(kernel, compiled.polys, budget);
  Integer total = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << negative.size()); ++mask) {
    std::vector<unsigned> thresholds(compiled.polys.size(), 0);
    auto apply = [&](const Atom& a) {
      for (auto idx : compiled.entries[a.entry].poly_idx) thresholds[idx] = std::max(thresholds[idx], a.order);
    };
    for (const auto& a : positive) apply(a);
    unsigned bits = 0;
    for (std::size_t j = 0; j < negative.size(); ++j) {
      if ((mask >> j) & 1U) {
        apply(negative[j]);
        ++bits;
      }
    }
    Integer term = to_integer(counter.count(thresholds));
    if (bits % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

Integer enumerate_count(const Kernel& kernel, const CompiledConditions& compiled, std::uint64_t budget) {
  const std::size_t digits = kernel.n() * kernel.levels();
  long double size = 1;
  for (std::size_t i = 0; i < digits; ++i) size *= kernel.q();
  if (size > static_cast<long double>(budget)) {
    throw BudgetExceeded("enumerating " + std::to_string(kernel.q()) + "^" + std::to_string(digits) +
                         " jets exceeds the budget of " + std::to_string(budget));
  }
  for (const auto& e : compiled.entries) {
    if (e.order > kernel.levels() || (e.mode == ContactMode::Exactly && e.order + 1 > kernel.levels())) {
      throw InvalidArgument("contact order not determined at this level");
    }
  }
  std::vector<std::uint32_t> jet(digits, 0);
  std::uint64_t hits = 0;
  const std::uint32_t q = kernel.q();
  while (true) {
    if (compiled.satisfied(kernel, jet.data())) ++hits;
    std::size_t i = digits;
    while (i > 0) {
      if (++jet[i - 1] < q) break;
      jet[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return Integer(static_cast<unsigned long>(hits));
}

void for_each_in_cylinder(const Kernel& kernel, const std::vector<ModPoly>& polys,
                          const std::vector<unsigned>& thresholds, std::uint64_t budget,
                          const std::function<void(const std::uint32_t*)>& visit) {
  const std::size_t n = kernel.n();
  const unsigned L = kernel.levels();
  const std::uint32_t q = kernel.q();
  std::vector<std::uint32_t> jet(n * L, 0);
  std::vector<std::uint32_t> out(L, 0);
  std::uint64_t nodes = 0;

  std::function<void(unsigned)> dfs = [&](unsigned k) {
    std::vector<std::uint32_t> digits(n, 0);
    while (true) {
      if (++nodes > budget) {
        throw BudgetExceeded("cylinder enumeration exceeded the budget of " + std::to_string(budget));
      }
      for (std::size_t i = 0; i < n; ++i) jet[i * L + k] = digits[i];
      bool ok = true;
      for (std::size_t g = 0; g < polys.size() && ok; ++g) {
        if (thresholds[g] <= k) continue;
        kernel.eval(polys[g], jet.data(), k + 1, out.data());
        ok = out[k] == 0;
      }
      if (ok) {
        if (k + 1 == L) {
          visit(jet.data());
        } else {
          dfs(k + 1);
        }
      }
      std::size_t i = n;
      while (i > 0) {
        if (++digits[i - 1] < q) break;
        digits[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
    for (std::size_t i = 0; i < n; ++i) jet[i * L + k] = 0;
  };
  dfs(0);
}

}  // namespace arcdet::detail
