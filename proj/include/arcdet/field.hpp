#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <string>
#include <string_view>

namespace arcdet {

using Rational = mpq_class;
using Integer = mpz_class;

/// Largest admissible prime-field modulus.
inline constexpr std::uint64_t kMaxModulus = 1ULL << 31;

bool is_prime(std::uint64_t n);

/// Throws InvalidArgument unless q is a prime not exceeding kMaxModulus.
void require_prime(std::uint64_t q);

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t q);
std::uint32_t mod_pow(std::uint32_t base, std::uint64_t exp, std::uint32_t q);

/// Image of a rational in F_q; throws DivisionByZero when q divides the denominator.
std::uint32_t reduce_mod(const Rational& value, std::uint32_t q);

/// "p/q" for non-integers, plain integer text otherwise.
std::string rational_to_string(const Rational& value);
Rational parse_rational(std::string_view text);

/// Element of Q (modulus 0) or of F_q (modulus q, residue in [0, q)).
///
/// Mixed arithmetic between a rational and a prime-field operand maps the
/// rational through Z_(q) -> F_q; two different prime moduli never mix.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long value) : rational_(value) {}  // NOLINT(google-explicit-constructor)
  explicit FieldElem(Rational value) : rational_(std::move(value)) { rational_.canonicalize(); }

  static FieldElem modular(std::int64_t value, std::uint32_t q);
  static FieldElem zero_like(const FieldElem& other);
  static FieldElem one_like(const FieldElem& other);

  std::uint32_t modulus() const noexcept { return modulus_; }
  bool is_rational() const noexcept { return modulus_ == 0; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  const Rational& rational() const;
  std::uint32_t residue() const;

  /// Reinterprets this element in F_q (identity if already there).
  FieldElem reduce(std::uint32_t q) const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& rhs);
  FieldElem& operator-=(const FieldElem& rhs);
  FieldElem& operator*=(const FieldElem& rhs);
  FieldElem& operator/=(const FieldElem& rhs);
  FieldElem inverse() const;

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
  friend bool operator==(const FieldElem& a, const FieldElem& b);
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  std::string to_string() const;

 private:
  // Brings both operands into a common field; returns the common modulus.
  std::uint32_t unify(const FieldElem& rhs);

  std::uint32_t modulus_ = 0;
  std::uint32_t residue_ = 0;
  Rational rational_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& value);

}  // namespace arcdet
