#pragma once

#include <map>
#include <span>
#include <vector>

#include "covjet/jet.hpp"
#include "covjet/scalar.hpp"

namespace covjet {

// Sparse multivariate polynomial in n coordinates. Exponent vectors are
// unique keys and zero coefficients are never stored.
class MultiPoly {
 public:
  using Exponents = std::vector<unsigned>;

  MultiPoly(int n_vars, Backend backend);

  static MultiPoly constant(int n_vars, const Scalar& c);
  // The coordinate function x^{index} (0-based).
  static MultiPoly variable(int n_vars, int index, Backend backend);

  // Adds c * x^e to the polynomial, merging with an existing term.
  void add_term(const Exponents& e, const Scalar& c);

  int n_vars() const { return n_vars_; }
  Backend backend() const { return backend_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  MultiPoly partial(int var) const;
  Scalar evaluate(std::span<const Scalar> x) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Scalar& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Scalar& c) { return a *= c; }
  friend MultiPoly operator*(const Scalar& c, MultiPoly a) { return a *= c; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.n_vars_ == b.n_vars_ && a.backend_ == b.backend_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

 private:
  void require_compatible(const MultiPoly& o) const;

  int n_vars_;
  Backend backend_;
  std::map<Exponents, Scalar> terms_;
};

// The jet of p(x_1(s), ..., x_n(s)), correct to the common order of args.
Jet evaluate_on_jets(const MultiPoly& p, std::span<const Jet> args);

// p(q_1, ..., q_n): substitutes polynomials for the coordinates. The result
// lives in the variables of the q's.
MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> subs);

}  // namespace covjet
