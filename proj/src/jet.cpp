#include "covjet/jet.hpp"

#include <algorithm>
#include <string>

#include "covjet/combinatorics.hpp"
#include "covjet/errors.hpp"

namespace covjet {

Jet::Jet(std::vector<Scalar> coeffs, Scalar base_point) : coeffs_(std::move(coeffs)), base_(std::move(base_point)) {
  if (coeffs_.empty()) throw InvariantViolation("a jet needs at least one coefficient");
  for (const Scalar& c : coeffs_)
    if (c.backend() != base_.backend()) throw BackendMismatch("jet coefficients and base point use different backends");
}

Jet Jet::constant(const Scalar& c, int order, const Scalar& base_point) {
  if (order < 0) throw OrderExhausted("negative jet order");
  std::vector<Scalar> cs(static_cast<std::size_t>(order) + 1, Scalar::zero(base_point.backend()));
  cs[0] = c;
  return Jet(std::move(cs), base_point);
}

Jet Jet::zero(int order, const Scalar& base_point) {
  return constant(Scalar::zero(base_point.backend()), order, base_point);
}

Jet Jet::parameter(int order, const Scalar& base_point) {
  Jet j = constant(base_point, order, base_point);
  if (order >= 1) j.coeffs_[1] = Scalar::one(base_point.backend());
  return j;
}

Jet Jet::from_polynomial(std::span<const Scalar> ascending, int order, const Scalar& base_point) {
  Jet j = zero(order, base_point);
  const Backend b = base_point.backend();
  // Coefficient of t^m in sum_n a_n (s0 + t)^n is sum_{n>=m} a_n C(n,m) s0^{n-m}.
  for (std::size_t n = 0; n < ascending.size(); ++n) {
    if (ascending[n].backend() != b) throw BackendMismatch("polynomial coefficient backend differs from base point");
    if (ascending[n].is_zero()) continue;
    Scalar s0pow = Scalar::one(b);
    for (int m = static_cast<int>(n); m >= 0; --m) {
      if (m <= order)
        j.coeffs_[static_cast<std::size_t>(m)] +=
            ascending[n] * Scalar::from_bigint(binom(static_cast<unsigned>(n), static_cast<unsigned>(m)), b) * s0pow;
      s0pow *= base_point;
    }
  }
  return j;
}

Jet Jet::truncated(int order) const {
  if (order < 0) throw OrderExhausted("cannot truncate a jet to a negative order");
  if (order > this->order())
    throw OrderExhausted("cannot extend a jet of order " + std::to_string(this->order()) + " to order " +
                         std::to_string(order));
  return Jet(std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + order + 1), base_);
}

bool Jet::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_zero(); });
}

Scalar Jet::evaluate(const Scalar& s) const {
  const Scalar t = s - base_;
  Scalar acc = coeffs_.back();
  for (int m = order() - 1; m >= 0; --m) acc = acc * t + coeffs_[static_cast<std::size_t>(m)];
  return acc;
}

std::vector<Scalar> Jet::to_polynomial() const {
  const Backend b = backend();
  std::vector<Scalar> out(coeffs_.size(), Scalar::zero(b));
  const Scalar neg_s0 = -base_;
  // (s - s0)^m = sum_n C(m,n) s^n (-s0)^{m-n}
  for (int m = 0; m <= order(); ++m) {
    if (coeffs_[static_cast<std::size_t>(m)].is_zero()) continue;
    Scalar pow = Scalar::one(b);
    for (int n = m; n >= 0; --n) {
      out[static_cast<std::size_t>(n)] += coeffs_[static_cast<std::size_t>(m)] *
                                          Scalar::from_bigint(binom(static_cast<unsigned>(m), static_cast<unsigned>(n)), b) *
                                          pow;
      pow *= neg_s0;
    }
  }
  return out;
}

void Jet::require_compatible(const Jet& o) const {
  if (backend() != o.backend()) throw BackendMismatch("jets use different backends");
  if (base_ != o.base_) throw BasePointMismatch("jets expanded at different base points");
}

Jet& Jet::operator+=(const Jet& o) {
  require_compatible(o);
  coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t m = 0; m < coeffs_.size(); ++m) coeffs_[m] += o.coeffs_[m];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_compatible(o);
  coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t m = 0; m < coeffs_.size(); ++m) coeffs_[m] -= o.coeffs_[m];
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (Scalar& c : r.coeffs_) c = -c;
  return r;
}

Jet& Jet::operator*=(const Scalar& c) {
  if (c.backend() != backend()) throw BackendMismatch("scaling a jet by a scalar of another backend");
  for (Scalar& x : coeffs_) x *= c;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.require_compatible(b);
  const int order = std::min(a.order(), b.order());
  std::vector<Scalar> out(static_cast<std::size_t>(order) + 1, Scalar::zero(a.backend()));
  for (int u = 0; u <= order; ++u) {
    const Scalar& au = a[u];
    if (au.is_zero()) continue;
    for (int v = 0; u + v <= order; ++v) out[static_cast<std::size_t>(u + v)] += au * b[v];
  }
  return Jet(std::move(out), a.base_point());
}

bool operator==(const Jet& a, const Jet& b) {
  return a.backend() == b.backend() && a.base_ == b.base_ && a.coeffs_ == b.coeffs_;
}

Jet diff(const Jet& a) {
  if (a.order() < 1) throw OrderExhausted("differentiating an order-0 jet");
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(a.order()));
  for (int m = 0; m < a.order(); ++m) out.push_back(Scalar::from_int(m + 1, a.backend()) * a[m + 1]);
  return Jet(std::move(out), a.base_point());
}

Jet diff(const Jet& a, int times) {
  if (times > a.order())
    throw OrderExhausted("jet of order " + std::to_string(a.order()) + " cannot be differentiated " +
                         std::to_string(times) + " times");
  Jet r = a;
  for (int i = 0; i < times; ++i) r = diff(r);
  return r;
}

bool agree_through(const Jet& a, const Jet& b, int order) {
  if (order > a.order() || order > b.order()) return false;
  for (int m = 0; m <= order; ++m)
    if (a[m] != b[m]) return false;
  return true;
}

}  // namespace covjet
