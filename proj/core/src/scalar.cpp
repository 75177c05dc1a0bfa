#include "compactness/scalar.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace compactness {

namespace {

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t reduce_mod(const BigInt& v, std::uint32_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint32_t>();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw InvalidInput("empty integer literal");
  std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
  if (start == s.size()) throw InvalidInput("malformed integer '" + std::string(s) + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw InvalidInput("malformed integer '" + std::string(s) + "'");
  }
  const bool negative = s.front() == '-';
  std::string_view body = s.substr(start);
  // A leading zero would make the string constructor read octal.
  while (body.size() > 1 && body.front() == '0') body.remove_prefix(1);
  BigInt v(std::string{body});
  return negative ? BigInt(-v) : v;
}

// "12", "-3/4", "1.25" and "2.5e-3".
Rational parse_rational(std::string_view s) {
  s = trim(s);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(s.substr(0, slash));
    BigInt den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    Rational r = parse_rational(s.substr(0, e));
    const BigInt exponent = parse_integer(s.substr(e + 1));
    if (abs(exponent) > 4096) throw InvalidInput("exponent out of range in '" + std::string(s) + "'");
    Rational scale = 1;
    for (BigInt i = 0; i < abs(exponent); ++i) scale *= 10;
    return exponent < 0 ? Rational(r / scale) : Rational(r * scale);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    std::string digits = std::string(whole) + std::string(frac);
    if (digits.empty() || digits == "-" || digits == "+")
      throw InvalidInput("malformed decimal '" + std::string(s) + "'");
    BigInt num = parse_integer(digits);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational r(num, den);
    if (negative && r > 0) r = -r;
    return r;
  }
  return Rational(parse_integer(s));
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p > std::numeric_limits<std::int32_t>::max())
    throw InvalidInput("prime modulus too large: " + std::to_string(p));
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  return Field(static_cast<std::uint32_t>(p));
}

Field Field::parse(std::string_view text) {
  text = trim(text);
  if (text == "Q") return rationals();
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
    std::string_view digits = text.substr(3, text.size() - 4);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
      throw InvalidInput("malformed field '" + std::string(text) + "'");
    return prime(p);
  }
  throw InvalidInput("unknown field '" + std::string(text) + "'");
}

std::string Field::name() const {
  return is_rational() ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
}

Scalar::Scalar(Field field, long long value) : field_(field) {
  if (field.is_rational()) {
    value_ = Rational(value);
  } else {
    long long p = field.characteristic();
    long long r = value % p;
    if (r < 0) r += p;
    value_ = static_cast<std::uint32_t>(r);
  }
}

Scalar::Scalar(Field field, const Rational& value) : field_(field) {
  if (field.is_rational()) {
    value_ = value;
    return;
  }
  const std::uint32_t p = field.characteristic();
  std::uint32_t num = reduce_mod(boost::multiprecision::numerator(value), p);
  std::uint32_t den = reduce_mod(boost::multiprecision::denominator(value), p);
  if (den == 0) throw InvalidInput("denominator not invertible in " + field.name());
  value_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(num) * mod_pow(den, p - 2, p) % p);
}

Scalar Scalar::parse(std::string_view text, Field field) {
  text = trim(text);
  if (auto pos = text.find(" mod "); pos != std::string_view::npos) {
    BigInt k = parse_integer(text.substr(0, pos));
    BigInt p = parse_integer(text.substr(pos + 5));
    if (field.is_rational() || p != field.characteristic())
      throw FieldMismatch("residue '" + std::string(text) + "' does not belong to " + field.name());
    return Scalar(field, Rational(k));
  }
  return Scalar(field, parse_rational(text));
}

bool Scalar::is_zero() const noexcept {
  if (field_.is_rational()) return std::get<Rational>(value_) == 0;
  return std::get<std::uint32_t>(value_) == 0;
}

bool Scalar::is_one() const noexcept {
  if (field_.is_rational()) return std::get<Rational>(value_) == 1;
  return std::get<std::uint32_t>(value_) == 1;
}

const Rational& Scalar::rational() const {
  if (!field_.is_rational()) throw FieldMismatch("scalar is a residue in " + field_.name());
  return std::get<Rational>(value_);
}

std::uint32_t Scalar::residue() const {
  if (field_.is_rational()) throw FieldMismatch("scalar is rational");
  return std::get<std::uint32_t>(value_);
}

void Scalar::require_same_field(const Scalar& other) const {
  if (field_ != other.field_)
    throw FieldMismatch("mixing " + field_.name() + " and " + other.field_.name());
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (field_.is_rational()) {
    auto& q = std::get<Rational>(out.value_);
    q = -q;
  } else {
    auto& r = std::get<std::uint32_t>(out.value_);
    if (r != 0) r = field_.characteristic() - r;
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_field(rhs);
  if (field_.is_rational()) {
    std::get<Rational>(value_) += std::get<Rational>(rhs.value_);
  } else {
    auto& r = std::get<std::uint32_t>(value_);
    std::uint64_t s = static_cast<std::uint64_t>(r) + std::get<std::uint32_t>(rhs.value_);
    r = static_cast<std::uint32_t>(s % field_.characteristic());
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same_field(rhs);
  if (field_.is_rational()) {
    std::get<Rational>(value_) -= std::get<Rational>(rhs.value_);
  } else {
    const std::uint64_t p = field_.characteristic();
    auto& r = std::get<std::uint32_t>(value_);
    r = static_cast<std::uint32_t>((r + p - std::get<std::uint32_t>(rhs.value_)) % p);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_field(rhs);
  if (field_.is_rational()) {
    std::get<Rational>(value_) *= std::get<Rational>(rhs.value_);
  } else {
    auto& r = std::get<std::uint32_t>(value_);
    r = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r) * std::get<std::uint32_t>(rhs.value_) %
                                   field_.characteristic());
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in " + field_.name());
  Scalar out = *this;
  if (field_.is_rational()) {
    auto& q = std::get<Rational>(out.value_);
    q = 1 / q;
  } else {
    const std::uint32_t p = field_.characteristic();
    out.value_ = mod_pow(std::get<std::uint32_t>(value_), p - 2, p);
  }
  return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  a.require_same_field(b);
  const Rational& x = a.rational();
  const Rational& y = b.rational();
  if (x < y) return std::strong_ordering::less;
  if (y < x) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int Scalar::sign() const {
  const Rational& q = rational();
  return q > 0 ? 1 : (q < 0 ? -1 : 0);
}

double Scalar::to_double() const {
  if (field_.is_rational()) return std::get<Rational>(value_).convert_to<double>();
  return static_cast<double>(std::get<std::uint32_t>(value_));
}

std::string Scalar::to_string() const {
  if (field_.is_rational()) {
    const auto& q = std::get<Rational>(value_);
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
  }
  return std::to_string(std::get<std::uint32_t>(value_)) + " mod " + std::to_string(field_.characteristic());
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace compactness
