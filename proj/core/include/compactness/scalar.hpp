#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/gmp.hpp>

#include "compactness/errors.hpp"

namespace compactness {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// The coefficient field: either the rationals or a prime field GF(p).
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field{}; }

  /// Throws InvalidInput when `p` is not prime or does not fit the residue width.
  static Field prime(std::uint64_t p);

  /// Accepts "Q" or "GF(p)".
  static Field parse(std::string_view text);

  bool is_rational() const noexcept { return p_ == 0; }
  bool is_finite() const noexcept { return p_ != 0; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const noexcept { return p_; }

  std::string name() const;

  friend bool operator==(Field, Field) = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// An exact field element. Rationals are kept in lowest terms with a positive
/// denominator; residues lie in [0, p).
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Field field, long long value);
  Scalar(Field field, const Rational& value);
  explicit Scalar(const Rational& value) : value_(value) {}

  static Scalar zero(Field field) { return Scalar(field, 0); }
  static Scalar one(Field field) { return Scalar(field, 1); }
  /// "n", "n/d", "-1.25" (rationals only) or "k mod p".
  static Scalar parse(std::string_view text, Field field);

  Field field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  const Rational& rational() const;
  std::uint32_t residue() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  Scalar inverse() const;

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  /// Order comparison; only defined over the rationals.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  int sign() const;
  double to_double() const;
  /// "num/den" for rationals, "k mod p" for residues.
  std::string to_string() const;

 private:
  void require_same_field(const Scalar& other) const;

  Field field_;
  std::variant<Rational, std::uint32_t> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace compactness
