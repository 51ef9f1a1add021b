#include "arcdet/field.hpp"

#include <ostream>

#include "arcdet/errors.hpp"

namespace arcdet {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_prime(std::uint64_t q) {
  if (q > kMaxModulus || !is_prime(q)) {
    throw InvalidArgument("modulus " + std::to_string(q) + " is not a prime <= 2^31");
  }
}

std::uint32_t mod_pow(std::uint32_t base, std::uint64_t exp, std::uint32_t q) {
  std::uint64_t result = 1 % q;
  std::uint64_t b = base % q;
  while (exp > 0) {
    if (exp & 1U) result = result * b % q;
    b = b * b % q;
    exp >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t q) {
  a %= q;
  if (a == 0) throw DivisionByZero();
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = q, new_r = a;
  while (new_r != 0) {
    std::int64_t quotient = r / new_r;
    t -= quotient * new_t;
    std::swap(t, new_t);
    r -= quotient * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += q;
  return static_cast<std::uint32_t>(t);
}

std::uint32_t reduce_mod(const Rational& value, std::uint32_t q) {
  Integer num = value.get_num() % q;
  if (num < 0) num += q;
  Integer den = value.get_den() % q;
  auto n = static_cast<std::uint32_t>(num.get_ui());
  auto d = static_cast<std::uint32_t>(den.get_ui());
  return static_cast<std::uint32_t>(std::uint64_t{n} * mod_inverse(d, q) % q);
}

std::string rational_to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw DivisionByZero();
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw InvalidArgument("not a rational number: '" + s + "'");
  }
}

FieldElem FieldElem::modular(std::int64_t value, std::uint32_t q) {
  if (q < 2) throw InvalidArgument("prime-field modulus must be >= 2");
  FieldElem out;
  out.modulus_ = q;
  std::int64_t r = value % static_cast<std::int64_t>(q);
  if (r < 0) r += q;
  out.residue_ = static_cast<std::uint32_t>(r);
  return out;
}

FieldElem FieldElem::zero_like(const FieldElem& other) {
  return other.is_rational() ? FieldElem() : modular(0, other.modulus_);
}

FieldElem FieldElem::one_like(const FieldElem& other) {
  return other.is_rational() ? FieldElem(1) : modular(1, other.modulus_);
}

bool FieldElem::is_zero() const noexcept {
  return modulus_ == 0 ? sgn(rational_) == 0 : residue_ == 0;
}

bool FieldElem::is_one() const noexcept {
  return modulus_ == 0 ? rational_ == 1 : residue_ == 1 % modulus_;
}

const Rational& FieldElem::rational() const {
  if (modulus_ != 0) throw FieldMismatch("element of F_" + std::to_string(modulus_) + " is not rational");
  return rational_;
}

std::uint32_t FieldElem::residue() const {
  if (modulus_ == 0) throw FieldMismatch("rational element has no residue");
  return residue_;
}

FieldElem FieldElem::reduce(std::uint32_t q) const {
  if (modulus_ == q) return *this;
  if (modulus_ != 0) {
    throw FieldMismatch("cannot move an element of F_" + std::to_string(modulus_) + " to F_" +
                        std::to_string(q));
  }
  FieldElem out;
  out.modulus_ = q;
  out.residue_ = reduce_mod(rational_, q);
  return out;
}

std::uint32_t FieldElem::unify(const FieldElem& rhs) {
  if (modulus_ == rhs.modulus_) return modulus_;
  if (modulus_ == 0) {
    *this = reduce(rhs.modulus_);
    return modulus_;
  }
  if (rhs.modulus_ == 0) return modulus_;
  throw FieldMismatch("mixing F_" + std::to_string(modulus_) + " and F_" + std::to_string(rhs.modulus_));
}

FieldElem FieldElem::operator-() const {
  FieldElem out = *this;
  if (modulus_ == 0) {
    out.rational_ = -rational_;
  } else {
    out.residue_ = residue_ == 0 ? 0 : modulus_ - residue_;
  }
  return out;
}

FieldElem& FieldElem::operator+=(const FieldElem& rhs) {
  std::uint32_t q = unify(rhs);
  if (q == 0) {
    rational_ += rhs.rational_;
  } else {
    std::uint32_t r = rhs.modulus_ == 0 ? reduce_mod(rhs.rational_, q) : rhs.residue_;
    residue_ = static_cast<std::uint32_t>((std::uint64_t{residue_} + r) % q);
  }
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& rhs) { return *this += -rhs; }

FieldElem& FieldElem::operator*=(const FieldElem& rhs) {
  std::uint32_t q = unify(rhs);
  if (q == 0) {
    rational_ *= rhs.rational_;
  } else {
    std::uint32_t r = rhs.modulus_ == 0 ? reduce_mod(rhs.rational_, q) : rhs.residue_;
    residue_ = static_cast<std::uint32_t>(std::uint64_t{residue_} * r % q);
  }
  return *this;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw DivisionByZero();
  FieldElem out = *this;
  if (modulus_ == 0) {
    out.rational_ = 1 / rational_;
    out.rational_.canonicalize();
  } else {
    out.residue_ = mod_inverse(residue_, modulus_);
  }
  return out;
}

FieldElem& FieldElem::operator/=(const FieldElem& rhs) {
  FieldElem divisor = rhs;
  if (modulus_ != 0 && divisor.modulus_ == 0) divisor = divisor.reduce(modulus_);
  return *this *= divisor.inverse();
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.modulus_ == b.modulus_) {
    return a.modulus_ == 0 ? a.rational_ == b.rational_ : a.residue_ == b.residue_;
  }
  if (a.modulus_ != 0 && b.modulus_ != 0) return false;
  // A rational compares equal to its image in F_q.
  const FieldElem& rat = a.modulus_ == 0 ? a : b;
  const FieldElem& mod = a.modulus_ == 0 ? b : a;
  try {
    return reduce_mod(rat.rational_, mod.modulus_) == mod.residue_;
  } catch (const DivisionByZero&) {
    return false;
  }
}

std::string FieldElem::to_string() const {
  return modulus_ == 0 ? rational_to_string(rational_) : std::to_string(residue_);
}

std::ostream& operator<<(std::ostream& os, const FieldElem& value) { return os << value.to_string(); }

}  // namespace arcdet
