#include "covjet/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "covjet/errors.hpp"

namespace covjet {

std::string_view to_string(Backend b) {
  return b == Backend::rational ? "rational" : "float64";
}

Backend parse_backend(std::string_view name) {
  if (name == "rational") return Backend::rational;
  if (name == "float64") return Backend::float64;
  throw ParseError("unknown backend '" + std::string(name) + "'");
}

Scalar Scalar::from_int(long v, Backend b) {
  return b == Backend::rational ? Scalar(Rational(v)) : Scalar(static_cast<double>(v));
}

Scalar Scalar::from_bigint(const BigInt& v, Backend b) {
  return b == Backend::rational ? Scalar(Rational(v)) : Scalar(v.get_d());
}

Scalar Scalar::ratio(long num, long den, Backend b) {
  if (den == 0) throw DomainError("zero denominator");
  if (b == Backend::rational) return Scalar(Rational(num, den));
  return Scalar(static_cast<double>(num) / static_cast<double>(den));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::string_view strip_sign(std::string_view s, bool& negative) {
  negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  return s;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  s = strip_sign(s, neg);
  if (!all_digits(s)) throw ParseError("malformed scalar '" + std::string(whole) + "'");
  BigInt v(std::string(s), 10);
  return neg ? BigInt(-v) : v;
}

// Exact decimal: [sign] digits [. digits] [e|E [sign] digits]
Rational parse_decimal_exact(std::string_view whole) {
  bool neg = false;
  std::string_view s = strip_sign(whole, neg);
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view ep = s.substr(e + 1);
    bool eneg = false;
    ep = strip_sign(ep, eneg);
    if (!all_digits(ep) || ep.size() > 6) throw ParseError("malformed scalar '" + std::string(whole) + "'");
    exp10 = std::strtol(std::string(ep).c_str(), nullptr, 10);
    if (eneg) exp10 = -exp10;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw ParseError("malformed scalar '" + std::string(whole) + "'");
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw ParseError("malformed scalar '" + std::string(whole) + "'");
    digits = std::string(s);
  }
  BigInt mant(digits, 10);
  if (neg) mant = -mant;
  BigInt pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational r = exp10 < 0 ? Rational(mant, pow10) : Rational(BigInt(mant * pow10));
  r.canonicalize();
  return r;
}

}  // namespace

Scalar Scalar::parse(std::string_view text, Backend b) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty scalar");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    if (b == Backend::rational) return Scalar(r);
    return Scalar(r.get_d());
  }

  if (b == Backend::rational) return Scalar(parse_decimal_exact(text));

  double d = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(d)) {
    // from_chars rejects a leading '+'
    if (text.front() == '+') return parse(text.substr(1), b);
    throw ParseError("malformed scalar '" + std::string(text) + "'");
  }
  return Scalar(d);
}

const Rational& Scalar::rational() const {
  if (!is_rational()) throw BackendMismatch("expected a rational scalar");
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_rational()) return std::get<Rational>(value_).get_d();
  return std::get<double>(value_);
}

bool Scalar::is_zero() const {
  if (is_rational()) return sgn(std::get<Rational>(value_)) == 0;
  return std::get<double>(value_) == 0.0;
}

bool Scalar::is_integer() const {
  if (is_rational()) return std::get<Rational>(value_).get_den() == 1;
  double d = std::get<double>(value_);
  return std::isfinite(d) && std::floor(d) == d;
}

long Scalar::to_long() const {
  if (!is_integer()) throw DomainError("scalar " + str() + " is not an integer");
  if (is_rational()) {
    const BigInt& n = std::get<Rational>(value_).get_num();
    if (!n.fits_slong_p()) throw DomainError("integer " + str() + " out of range");
    return n.get_si();
  }
  return static_cast<long>(std::get<double>(value_));
}

Scalar Scalar::abs() const {
  if (is_rational()) return Scalar(Rational(::abs(std::get<Rational>(value_))));
  return Scalar(std::fabs(std::get<double>(value_)));
}

Scalar Scalar::to_backend(Backend b) const {
  if (b == backend()) return *this;
  if (b == Backend::float64) return Scalar(to_double());
  double d = std::get<double>(value_);
  if (!std::isfinite(d)) throw DomainError("non-finite value has no rational form");
  return Scalar(Rational(d));
}

std::string Scalar::str() const {
  if (is_rational()) return std::get<Rational>(value_).get_str();
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  return std::string(buf, ptr);
}

void Scalar::require_same(const Scalar& o, const char* op) const {
  if (backend() != o.backend())
    throw BackendMismatch(std::string("mixed backends in ") + op + ": " + std::string(to_string(backend())) +
                          " vs " + std::string(to_string(o.backend())));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same(o, "+");
  if (is_rational())
    std::get<Rational>(value_) += std::get<Rational>(o.value_);
  else
    std::get<double>(value_) += std::get<double>(o.value_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same(o, "-");
  if (is_rational())
    std::get<Rational>(value_) -= std::get<Rational>(o.value_);
  else
    std::get<double>(value_) -= std::get<double>(o.value_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same(o, "*");
  if (is_rational())
    std::get<Rational>(value_) *= std::get<Rational>(o.value_);
  else
    std::get<double>(value_) *= std::get<double>(o.value_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same(o, "/");
  if (o.is_zero()) throw DomainError("division by zero");
  if (is_rational())
    std::get<Rational>(value_) /= std::get<Rational>(o.value_);
  else
    std::get<double>(value_) /= std::get<double>(o.value_);
  return *this;
}

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(Rational(-std::get<Rational>(value_)));
  return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.require_same(b, "==");
  if (a.is_rational()) return std::get<Rational>(a.value_) == std::get<Rational>(b.value_);
  return std::get<double>(a.value_) == std::get<double>(b.value_);
}

bool operator<(const Scalar& a, const Scalar& b) {
  a.require_same(b, "<");
  if (a.is_rational()) return std::get<Rational>(a.value_) < std::get<Rational>(b.value_);
  return std::get<double>(a.value_) < std::get<double>(b.value_);
}

}  // namespace covjet
