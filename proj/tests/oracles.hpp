#pragma once

// Independent reference computations for the unit tests. Nothing here uses
// the library's arithmetic types beyond plain GMP rationals and doubles.

#include <gmpxx.h>

#include <cmath>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Poly = std::vector<Q>;  // ascending powers of s

inline Poly product(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Q(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Poly sum(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Q(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

inline Poly truncate(Poly a, std::size_t order) {
  a.resize(order + 1, Q(0));
  return a;
}

inline Poly derivative(const Poly& a) {
  Poly r;
  for (std::size_t m = 1; m < a.size(); ++m) r.push_back(a[m] * Q(static_cast<long>(m)));
  return r;
}

// p(x_1(s), .., x_n(s)) by expanding every monomial with schoolbook
// products; p maps exponent vectors to coefficients.
inline Poly compose_on_curves(const std::map<std::vector<unsigned>, Q>& p, const std::vector<Poly>& curves) {
  Poly acc;
  for (const auto& [e, c] : p) {
    Poly term{c};
    for (std::size_t v = 0; v < e.size(); ++v)
      for (unsigned k = 0; k < e[v]; ++k) term = product(term, curves[v]);
    acc = sum(acc, term);
  }
  return acc;
}

inline mpz_class factorial(unsigned n) {
  mpz_class r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// n! / (d_1! d_2! ...)
inline mpz_class factorial_ratio(unsigned n, const std::vector<unsigned>& ds) {
  mpz_class den = 1;
  for (unsigned d : ds) den *= factorial(d);
  return factorial(n) / den;
}

using Mat = std::vector<std::vector<Q>>;

inline Mat identity(std::size_t n) {
  Mat m(n, std::vector<Q>(n, Q(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat r(n, std::vector<Q>(n, Q(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline Mat matpow(const Mat& a, unsigned k) {
  Mat r = identity(a.size());
  for (unsigned i = 0; i < k; ++i) r = matmul(r, a);
  return r;
}

// Counts (slots)-tuples of nonnegative integers summing to total by brute
// force recursion.
inline long count_compositions(int slots, int total) {
  if (slots == 0) return total == 0 ? 1 : 0;
  long c = 0;
  for (int v = 0; v <= total; ++v) c += count_compositions(slots - 1, total - v);
  return c;
}

using Vec = std::vector<double>;
using Rhs = std::function<Vec(double, const Vec&)>;

// Classical fourth-order Runge-Kutta from y(t0) = y0; returns y at every
// multiple of `every` steps.
inline std::vector<Vec> rk4(const Rhs& f, Vec y, double t0, double h, int steps, int every) {
  std::vector<Vec> out{y};
  auto axpy = [](const Vec& a, double c, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += c * b[i];
    return r;
  };
  double t = t0;
  for (int n = 1; n <= steps; ++n) {
    const Vec k1 = f(t, y);
    const Vec k2 = f(t + h / 2, axpy(y, h / 2, k1));
    const Vec k3 = f(t + h / 2, axpy(y, h / 2, k2));
    const Vec k4 = f(t + h, axpy(y, h, k3));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    t = t0 + n * h;
    if (n % every == 0) out.push_back(y);
  }
  return out;
}

}  // namespace oracle
