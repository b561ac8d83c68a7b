#pragma once

#include <optional>
#include <span>
#include <vector>

#include "covjet/jet.hpp"
#include "covjet/scalar.hpp"

namespace covjet {

struct PowerTerm {
  Scalar exponent;
  Scalar coeff;

  friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

// Finite sum of c * s^beta with real exponents beta > -1, sorted strictly
// by exponent, zero coefficients dropped.
//
// A series may carry a horizon h: it is then only known modulo O(s^h), and
// no retained term sits at an exponent >= h. Series built from exact data
// have no horizon. Arithmetic propagates horizons so that a result never
// reports terms it cannot vouch for.
class GenPowerSeries {
 public:
  explicit GenPowerSeries(Backend backend);
  GenPowerSeries(std::vector<PowerTerm> terms, Backend backend, std::optional<Scalar> horizon = std::nullopt);

  static GenPowerSeries monomial(const Scalar& coeff, const Scalar& exponent);
  // Requires base point 0; term m is c_m s^m, horizon order + 1.
  static GenPowerSeries from_jet(const Jet& j);

  Backend backend() const { return backend_; }
  std::span<const PowerTerm> terms() const { return terms_; }
  const std::optional<Scalar>& horizon() const { return horizon_; }
  bool is_exact() const { return !horizon_.has_value(); }
  bool is_zero() const { return terms_.empty(); }

  // Coefficient of s^beta, zero when absent.
  Scalar coeff(const Scalar& exponent) const;
  double evaluate(double s) const;
  // Termwise derivative d/ds (integer order 1, no pole handling needed for
  // the constant term, which simply vanishes).
  GenPowerSeries derivative() const;
  // Sum of |c|; an upper bound for sup |f| on [0, 1].
  double l1_norm() const;
  double max_abs_coeff() const;

  GenPowerSeries with_horizon(const Scalar& h) const;
  // Reads off an integer-exponent series as a jet at s0 = 0. Throws when a
  // non-integer exponent is present or the horizon does not cover `order`.
  Jet to_jet(int order) const;

  GenPowerSeries& operator+=(const GenPowerSeries& o);
  GenPowerSeries& operator-=(const GenPowerSeries& o);
  GenPowerSeries& operator*=(const Scalar& c);
  GenPowerSeries operator-() const;
  friend GenPowerSeries operator+(GenPowerSeries a, const GenPowerSeries& b) { return a += b; }
  friend GenPowerSeries operator-(GenPowerSeries a, const GenPowerSeries& b) { return a -= b; }
  friend GenPowerSeries operator*(GenPowerSeries a, const Scalar& c) { return a *= c; }
  friend GenPowerSeries operator*(const Scalar& c, GenPowerSeries a) { return a *= c; }
  friend GenPowerSeries operator*(const GenPowerSeries& a, const GenPowerSeries& b);
  friend GenPowerSeries operator*(const Jet& a, const GenPowerSeries& b) { return from_jet(a) * b; }

  friend bool operator==(const GenPowerSeries& a, const GenPowerSeries& b);
  friend bool operator!=(const GenPowerSeries& a, const GenPowerSeries& b) { return !(a == b); }

 private:
  void normalize();
  void clip_to_horizon();
  std::optional<Scalar> lowest_order() const;

  std::vector<PowerTerm> terms_;
  Backend backend_;
  std::optional<Scalar> horizon_;
};

}  // namespace covjet
