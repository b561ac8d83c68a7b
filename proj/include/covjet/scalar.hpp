#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace covjet {

using Rational = mpq_class;
using BigInt = mpz_class;

enum class Backend { rational, float64 };

std::string_view to_string(Backend b);
Backend parse_backend(std::string_view name);

// A number in one of two backends: exact rationals (always canonical) or
// IEEE doubles. Binary operations and comparisons between different
// backends throw BackendMismatch; conversion is explicit via to_backend().
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  explicit Scalar(Rational r) : value_(std::move(r)) { std::get<Rational>(value_).canonicalize(); }
  explicit Scalar(double d) : value_(d) {}

  static Scalar from_int(long v, Backend b);
  static Scalar from_bigint(const BigInt& v, Backend b);
  static Scalar ratio(long num, long den, Backend b);
  static Scalar zero(Backend b) { return from_int(0, b); }
  static Scalar one(Backend b) { return from_int(1, b); }

  // Accepts integers, "p/q" and finite decimals ("1.25", "-3e-2").
  // The rational backend parses decimals exactly.
  static Scalar parse(std::string_view text, Backend b);

  Backend backend() const {
    return std::holds_alternative<Rational>(value_) ? Backend::rational : Backend::float64;
  }
  bool is_rational() const { return backend() == Backend::rational; }
  const Rational& rational() const;
  double to_double() const;

  bool is_zero() const;
  bool is_integer() const;
  // Only valid when is_integer() holds and the value fits in a long.
  long to_long() const;

  Scalar abs() const;
  Scalar to_backend(Backend b) const;

  // Canonical text: "p/q" (or "p" when the denominator is 1) for rationals,
  // shortest round-trip decimal for doubles.
  std::string str() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator<(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

 private:
  void require_same(const Scalar& o, const char* op) const;

  std::variant<Rational, double> value_;
};

}  // namespace covjet
