#include "arcdet/snf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace arcdet {

LambdaProfile::LambdaProfile(std::vector<unsigned> parts, bool truncated)
    : parts_(std::move(parts)), truncated_(truncated) {
  if (!std::is_sorted(parts_.begin(), parts_.end())) {
    throw InvalidArgument("lambda profile must be nondecreasing");
  }
}

unsigned LambdaProfile::weight() const noexcept {
  return std::accumulate(parts_.begin(), parts_.end(), 0U);
}

unsigned LambdaProfile::largest() const {
  if (parts_.empty()) throw InvalidArgument("empty lambda profile");
  return parts_.back();
}

std::string LambdaProfile::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  if (truncated_) os << (parts_.empty() ? "" : ",") << "...";
  os << ")";
  return os.str();
}

namespace {

void fill_profiles(std::size_t r, unsigned remaining, unsigned min_part, unsigned max_part,
                   std::vector<unsigned>& cur, std::vector<LambdaProfile>& out) {
  if (cur.size() + 1 == r) {
    if (remaining >= min_part && remaining <= max_part) {
      cur.push_back(remaining);
      out.emplace_back(cur);
      cur.pop_back();
    }
    return;
  }
  std::size_t slots = r - cur.size();
  for (unsigned part = min_part; part <= max_part && part * slots <= remaining; ++part) {
    cur.push_back(part);
    fill_profiles(r, remaining - part, part, max_part, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<LambdaProfile> profiles_of_weight(std::size_t r, unsigned weight, unsigned max_part) {
  std::vector<LambdaProfile> out;
  if (r == 0) return out;
  std::vector<unsigned> cur;
  fill_profiles(r, weight, 0, max_part, cur, out);
  return out;
}

SnfResult smith_normal_form(const SeriesMatrix& m) {
  const std::size_t s = m.rows();
  const std::size_t r = m.cols();
  const unsigned level = m.level();
  if (s < r) throw InvalidArgument("smith_normal_form expects rows >= cols");

  Matrix<TruncSeries> w = m.entries();
  Matrix<TruncSeries> p = SeriesMatrix::identity(s, level, m.like()).entries();
  Matrix<TruncSeries> q = SeriesMatrix::identity(r, level, m.like()).entries();
  std::vector<unsigned> lambda;
  unsigned total = 0;

  for (std::size_t k = 0; k < r; ++k) {
    std::size_t pi = s, pj = r;
    unsigned best = level + 1;
    for (std::size_t i = k; i < s; ++i) {
      for (std::size_t j = k; j < r; ++j) {
        SeriesOrder o = w(i, j).ord();
        if (!o.is_truncated() && o.value() < best) {
          best = o.value();
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == s) {
      throw TruncationInsufficient("lambda profile not determined at level " + std::to_string(level) +
                                   ": remaining block vanishes mod t^" + std::to_string(level + 1));
    }
    total += best;
    if (total > level) {
      throw TruncationInsufficient("|lambda| exceeds level " + std::to_string(level));
    }
    if (pi != k) {
      for (std::size_t j = 0; j < r; ++j) std::swap(w(pi, j), w(k, j));
      for (std::size_t j = 0; j < s; ++j) std::swap(p(pi, j), p(k, j));
    }
    if (pj != k) {
      for (std::size_t i = 0; i < s; ++i) std::swap(w(i, pj), w(i, k));
      for (std::size_t i = 0; i < r; ++i) std::swap(q(i, pj), q(i, k));
    }

    TruncSeries unit_inv = w(k, k).shift_down(best).inverse();
    for (std::size_t j = 0; j < r; ++j) w(k, j) *= unit_inv;
    for (std::size_t j = 0; j < s; ++j) p(k, j) *= unit_inv;
    w(k, k) = TruncSeries::monomial(level, best, FieldElem::one_like(m.like()));

    for (std::size_t i = k + 1; i < s; ++i) {
      if (w(i, k).is_zero()) continue;
      TruncSeries c = w(i, k).shift_down(best);
      for (std::size_t j = k; j < r; ++j) w(i, j) -= c * w(k, j);
      for (std::size_t j = 0; j < s; ++j) p(i, j) -= c * p(k, j);
    }
    for (std::size_t j = k + 1; j < r; ++j) {
      if (w(k, j).is_zero()) continue;
      TruncSeries c = w(k, j).shift_down(best);
      // rows below k already vanish in column k
      w(k, j) -= c * w(k, k);
      for (std::size_t i = 0; i < r; ++i) q(i, j) -= c * q(i, k);
    }
    lambda.push_back(best);
  }

  return SnfResult{SeriesMatrix(level, std::move(p)), SeriesMatrix(level, std::move(q)),
                   LambdaProfile(std::move(lambda)), level};
}

}  // namespace arcdet
