#include "covjet/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "covjet/errors.hpp"

namespace covjet {

MultiPoly::MultiPoly(int n_vars, Backend backend) : n_vars_(n_vars), backend_(backend) {
  if (n_vars <= 0) throw DimensionMismatch("a polynomial needs at least one variable");
}

MultiPoly MultiPoly::constant(int n_vars, const Scalar& c) {
  MultiPoly p(n_vars, c.backend());
  p.add_term(Exponents(static_cast<std::size_t>(n_vars), 0u), c);
  return p;
}

MultiPoly MultiPoly::variable(int n_vars, int index, Backend backend) {
  if (index < 0 || index >= n_vars) throw DimensionMismatch("variable index out of range");
  MultiPoly p(n_vars, backend);
  Exponents e(static_cast<std::size_t>(n_vars), 0u);
  e[static_cast<std::size_t>(index)] = 1;
  p.add_term(e, Scalar::one(backend));
  return p;
}

void MultiPoly::add_term(const Exponents& e, const Scalar& c) {
  if (static_cast<int>(e.size()) != n_vars_)
    throw DimensionMismatch("exponent vector of length " + std::to_string(e.size()) + " for " +
                            std::to_string(n_vars_) + " variables");
  if (c.backend() != backend_) throw BackendMismatch("polynomial term backend differs from polynomial");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int MultiPoly::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  return d;
}

MultiPoly MultiPoly::partial(int var) const {
  if (var < 0 || var >= n_vars_) throw DimensionMismatch("partial derivative variable out of range");
  MultiPoly r(n_vars_, backend_);
  for (const auto& [e, c] : terms_) {
    const unsigned k = e[static_cast<std::size_t>(var)];
    if (k == 0) continue;
    Exponents de = e;
    de[static_cast<std::size_t>(var)] = k - 1;
    r.add_term(de, c * Scalar::from_int(k, backend_));
  }
  return r;
}

Scalar MultiPoly::evaluate(std::span<const Scalar> x) const {
  if (static_cast<int>(x.size()) != n_vars_) throw DimensionMismatch("polynomial evaluated at wrong arity");
  Scalar acc = Scalar::zero(backend_);
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

void MultiPoly::require_compatible(const MultiPoly& o) const {
  if (n_vars_ != o.n_vars_) throw DimensionMismatch("polynomials in different numbers of variables");
  if (backend_ != o.backend_) throw BackendMismatch("polynomials use different backends");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  require_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
  if (c.backend() != backend_) throw BackendMismatch("scaling a polynomial by a scalar of another backend");
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.require_compatible(b);
  MultiPoly r(a.n_vars_, a.backend_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      MultiPoly::Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

namespace {

// powers[i][k] = base_i^k, filled lazily up to the needed exponent.
template <class T, class Mul>
const T& cached_power(std::vector<std::vector<T>>& powers, std::size_t i, unsigned k, Mul mul) {
  auto& row = powers[i];
  while (row.size() <= k) row.push_back(mul(row.back(), row[1]));
  return row[k];
}

}  // namespace

Jet evaluate_on_jets(const MultiPoly& p, std::span<const Jet> args) {
  if (static_cast<int>(args.size()) != p.n_vars())
    throw DimensionMismatch("polynomial in " + std::to_string(p.n_vars()) + " variables evaluated on " +
                            std::to_string(args.size()) + " jets");
  const Jet& first = args.front();
  for (const Jet& a : args) {
    if (a.backend() != first.backend() || a.backend() != p.backend())
      throw BackendMismatch("polynomial and jets use different backends");
    if (a.base_point() != first.base_point()) throw BasePointMismatch("argument jets at different base points");
  }
  int order = first.order();
  for (const Jet& a : args) order = std::min(order, a.order());

  std::vector<std::vector<Jet>> powers;
  for (const Jet& a : args) powers.push_back({Jet::constant(Scalar::one(a.backend()), order, a.base_point()), a.truncated(order)});

  Jet acc = Jet::zero(order, first.base_point());
  for (const auto& [e, c] : p.terms()) {
    Jet t = Jet::constant(c, order, first.base_point());
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t = t * cached_power(powers, i, e[i], [](const Jet& x, const Jet& y) { return x * y; });
    acc += t;
  }
  return acc;
}

MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> subs) {
  if (static_cast<int>(subs.size()) != p.n_vars()) throw DimensionMismatch("composition arity mismatch");
  const int m = subs.front().n_vars();
  for (const MultiPoly& q : subs) {
    if (q.n_vars() != m) throw DimensionMismatch("substituted polynomials live in different spaces");
    if (q.backend() != p.backend()) throw BackendMismatch("composition across backends");
  }
  std::vector<std::vector<MultiPoly>> powers;
  for (const MultiPoly& q : subs) powers.push_back({MultiPoly::constant(m, Scalar::one(p.backend())), q});

  MultiPoly acc(m, p.backend());
  for (const auto& [e, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(m, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0)
        t = t * cached_power(powers, i, e[i], [](const MultiPoly& x, const MultiPoly& y) { return x * y; });
    acc += t;
  }
  return acc;
}

}  // namespace covjet
