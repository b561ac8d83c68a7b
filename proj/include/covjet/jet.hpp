#pragma once

#include <span>
#include <vector>

#include "covjet/scalar.hpp"

namespace covjet {

// Truncated Taylor series f(s) = sum_{m=0}^{K} c_m (s - s0)^m.
//
// Coefficients are raw Taylor coefficients, not derivative values. A jet of
// order K knows f exactly through (s - s0)^K and nothing beyond; every
// operation returns the order it can actually vouch for (products and sums
// take the minimum order, differentiation drops one).
class Jet {
 public:
  Jet(std::vector<Scalar> coeffs, Scalar base_point);

  static Jet constant(const Scalar& c, int order, const Scalar& base_point);
  static Jet zero(int order, const Scalar& base_point);
  // The identity function s, i.e. s0 + (s - s0).
  static Jet parameter(int order, const Scalar& base_point);
  // Taylor-shifts a polynomial given in ascending powers of s to the base
  // point and truncates it to `order`.
  static Jet from_polynomial(std::span<const Scalar> ascending, int order, const Scalar& base_point);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  Backend backend() const { return base_.backend(); }
  const Scalar& base_point() const { return base_; }
  std::span<const Scalar> coeffs() const { return coeffs_; }
  const Scalar& operator[](int m) const { return coeffs_[static_cast<std::size_t>(m)]; }

  Jet truncated(int order) const;
  bool is_zero() const;
  Scalar evaluate(const Scalar& s) const;
  // Expands the jet back into ascending powers of s.
  std::vector<Scalar> to_polynomial() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet operator-() const;
  Jet& operator*=(const Scalar& c);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, const Scalar& c) { return a *= c; }
  friend Jet operator*(const Scalar& c, Jet a) { return a *= c; }

  friend bool operator==(const Jet& a, const Jet& b);
  friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

 private:
  void require_compatible(const Jet& o) const;

  std::vector<Scalar> coeffs_;
  Scalar base_;
};

// d/ds; throws OrderExhausted on an order-0 jet.
Jet diff(const Jet& a);
Jet diff(const Jet& a, int times);

// True when both jets agree on every coefficient of degree <= order.
bool agree_through(const Jet& a, const Jet& b, int order);

}  // namespace covjet
