#include "covjet/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covjet/errors.hpp"

namespace covjet {

namespace {

constexpr double kExponentMergeTol = 1e-12;

bool same_exponent(const Scalar& a, const Scalar& b) {
  if (a.is_rational()) return a == b;
  const double x = a.to_double(), y = b.to_double();
  return std::fabs(x - y) <= kExponentMergeTol * std::max(1.0, std::fabs(x));
}

std::optional<Scalar> min_opt(const std::optional<Scalar>& a, const std::optional<Scalar>& b) {
  if (!a) return b;
  if (!b) return a;
  return *b < *a ? b : a;
}

}  // namespace

GenPowerSeries::GenPowerSeries(Backend backend) : backend_(backend) {}

GenPowerSeries::GenPowerSeries(std::vector<PowerTerm> terms, Backend backend, std::optional<Scalar> horizon)
    : terms_(std::move(terms)), backend_(backend), horizon_(std::move(horizon)) {
  const Scalar minus_one = -Scalar::one(backend_);
  for (const PowerTerm& t : terms_) {
    if (t.exponent.backend() != backend_ || t.coeff.backend() != backend_)
      throw BackendMismatch("power series term backend differs from series");
    if (!t.coeff.is_zero() && t.exponent <= minus_one)
      throw DomainError("power series exponent " + t.exponent.str() + " is not > -1");
  }
  if (horizon_ && horizon_->backend() != backend_) throw BackendMismatch("power series horizon backend differs");
  normalize();
}

GenPowerSeries GenPowerSeries::monomial(const Scalar& coeff, const Scalar& exponent) {
  return GenPowerSeries({{exponent, coeff}}, coeff.backend());
}

GenPowerSeries GenPowerSeries::from_jet(const Jet& j) {
  if (!j.base_point().is_zero())
    throw BasePointMismatch("power series are anchored at s = 0; jet is expanded at " + j.base_point().str());
  const Backend b = j.backend();
  std::vector<PowerTerm> terms;
  for (int m = 0; m <= j.order(); ++m)
    if (!j[m].is_zero()) terms.push_back({Scalar::from_int(m, b), j[m]});
  return GenPowerSeries(std::move(terms), b, Scalar::from_int(j.order() + 1, b));
}

void GenPowerSeries::normalize() {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
  std::vector<PowerTerm> merged;
  merged.reserve(terms_.size());
  for (PowerTerm& t : terms_) {
    if (!merged.empty() && same_exponent(merged.back().exponent, t.exponent))
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const PowerTerm& t) { return t.coeff.is_zero(); });
  terms_ = std::move(merged);
  clip_to_horizon();
}

void GenPowerSeries::clip_to_horizon() {
  if (!horizon_) return;
  std::erase_if(terms_, [&](const PowerTerm& t) { return t.exponent >= *horizon_; });
}

std::optional<Scalar> GenPowerSeries::lowest_order() const {
  if (!terms_.empty()) return terms_.front().exponent;
  return horizon_;
}

Scalar GenPowerSeries::coeff(const Scalar& exponent) const {
  for (const PowerTerm& t : terms_)
    if (same_exponent(t.exponent, exponent)) return t.coeff;
  return Scalar::zero(backend_);
}

double GenPowerSeries::evaluate(double s) const {
  double acc = 0.0;
  for (const PowerTerm& t : terms_) {
    const double e = t.exponent.to_double();
    acc += t.coeff.to_double() * (e == 0.0 ? 1.0 : std::pow(s, e));
  }
  return acc;
}

GenPowerSeries GenPowerSeries::derivative() const {
  std::vector<PowerTerm> out;
  const Scalar one = Scalar::one(backend_);
  for (const PowerTerm& t : terms_) {
    if (t.exponent.is_zero()) continue;
    out.push_back({t.exponent - one, t.coeff * t.exponent});
  }
  std::optional<Scalar> h;
  if (horizon_) h = *horizon_ - one;
  return GenPowerSeries(std::move(out), backend_, h);
}

double GenPowerSeries::l1_norm() const {
  double acc = 0.0;
  for (const PowerTerm& t : terms_) acc += std::fabs(t.coeff.to_double());
  return acc;
}

double GenPowerSeries::max_abs_coeff() const {
  double m = 0.0;
  for (const PowerTerm& t : terms_) m = std::max(m, std::fabs(t.coeff.to_double()));
  return m;
}

GenPowerSeries GenPowerSeries::with_horizon(const Scalar& h) const {
  GenPowerSeries r = *this;
  r.horizon_ = min_opt(horizon_, h);
  r.clip_to_horizon();
  return r;
}

Jet GenPowerSeries::to_jet(int order) const {
  if (horizon_ && Scalar::from_int(order, backend_) >= *horizon_)
    throw OrderExhausted("series known below s^" + horizon_->str() + " cannot fill a jet of order " +
                         std::to_string(order));
  std::vector<Scalar> cs(static_cast<std::size_t>(order) + 1, Scalar::zero(backend_));
  for (const PowerTerm& t : terms_) {
    if (!t.exponent.is_integer()) throw DomainError("non-integer exponent " + t.exponent.str() + " in jet conversion");
    const long m = t.exponent.to_long();
    if (m <= order) cs[static_cast<std::size_t>(m)] = t.coeff;
  }
  return Jet(std::move(cs), Scalar::zero(backend_));
}

GenPowerSeries& GenPowerSeries::operator+=(const GenPowerSeries& o) {
  if (o.backend_ != backend_) throw BackendMismatch("adding power series of different backends");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  horizon_ = min_opt(horizon_, o.horizon_);
  normalize();
  return *this;
}

GenPowerSeries& GenPowerSeries::operator-=(const GenPowerSeries& o) { return *this += -o; }

GenPowerSeries& GenPowerSeries::operator*=(const Scalar& c) {
  if (c.backend() != backend_) throw BackendMismatch("scaling a power series by a scalar of another backend");
  for (PowerTerm& t : terms_) t.coeff *= c;
  std::erase_if(terms_, [](const PowerTerm& t) { return t.coeff.is_zero(); });
  return *this;
}

GenPowerSeries GenPowerSeries::operator-() const {
  GenPowerSeries r = *this;
  for (PowerTerm& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

GenPowerSeries operator*(const GenPowerSeries& a, const GenPowerSeries& b) {
  if (a.backend_ != b.backend_) throw BackendMismatch("multiplying power series of different backends");
  // Unknown part of a*b starts at min(low(a) + h(b), low(b) + h(a)).
  std::optional<Scalar> h;
  const auto la = a.lowest_order(), lb = b.lowest_order();
  if (b.horizon_ && la) h = min_opt(h, *la + *b.horizon_);
  if (a.horizon_ && lb) h = min_opt(h, *lb + *a.horizon_);
  std::vector<PowerTerm> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const PowerTerm& x : a.terms_)
    for (const PowerTerm& y : b.terms_) out.push_back({x.exponent + y.exponent, x.coeff * y.coeff});
  return GenPowerSeries(std::move(out), a.backend_, h);
}

bool operator==(const GenPowerSeries& a, const GenPowerSeries& b) {
  if (a.backend_ != b.backend_ || a.terms_ != b.terms_) return false;
  if (a.horizon_.has_value() != b.horizon_.has_value()) return false;
  return !a.horizon_ || *a.horizon_ == *b.horizon_;
}

}  // namespace covjet
