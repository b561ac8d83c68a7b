#pragma once

#include <optional>
#include <vector>

#include "covjet/combinatorics.hpp"
#include "covjet/geometry.hpp"
#include "covjet/kernels.hpp"
#include "covjet/pq_symbols.hpp"

namespace covjet {

// One term index of the closed formula: m on the p upper slots, l on the q
// lower slots, sum(m) + sum(l) = a.
struct CompositionIndex {
  int a = 0;
  std::vector<int> m;
  std::vector<int> l;

  friend bool operator==(const CompositionIndex&, const CompositionIndex&) = default;
};

// All (p+q)-tuples of nonnegative integers summing to a, in lexicographic
// order. p + q = 0 yields the empty tuple for a = 0 and nothing otherwise.
std::vector<CompositionIndex> enumerate_compositions(int p, int q, int a);

// Derivatives of every component.
TensorFieldJet diff(const TensorFieldJet& a, int times = 1);

// dA/ds + P1 on each upper slot - P1^T on each lower slot.
TensorFieldJet covariant_derivative_once(const TensorFieldJet& a, const JetMatrix& p1, Exec exec = Exec::parallel);

// k-th covariant derivative by the closed multinomial formula.
TensorFieldJet covariant_derivative_k(const TensorFieldJet& a, const PQTable& p, const PQTable& q, int k,
                                      Exec exec = Exec::parallel);

// The same quantity by k applications of covariant_derivative_once.
TensorFieldJet iterate_covariant_oracle(const TensorFieldJet& a, const JetMatrix& p1, int k, Exec exec = Exec::parallel);

// The closed formula spelled out one composition at a time, without the
// shared-prefix recursion. Slow; kept as a cross-check.
TensorFieldJet covariant_derivative_k_by_enumeration(const TensorFieldJet& a, const PQTable& p, const PQTable& q, int k);

namespace detail {

template <class T>
Tensor<T> add(const Tensor<T>& x, const Tensor<T>& y) {
  return elementwise(x, y, [](const T& u, const T& v) { return u + v; });
}

template <class T>
Tensor<T> scaled(Tensor<T> x, const Scalar& c) {
  for (std::size_t f = 0; f < x.size(); ++f) x[f] *= c;
  return x;
}

template <class T>
void accumulate(const Tensor<T>& t, int slot, int remaining, const PQTable& p, const PQTable& q, Backend b, Exec exec,
                std::optional<Tensor<T>>& acc) {
  if (remaining == 0) {
    acc = acc ? add(*acc, t) : t;
    return;
  }
  if (slot == t.rank()) return;
  const bool upper = slot < t.p();
  const int first = slot == t.rank() - 1 ? remaining : 0;
  for (int m = first; m <= remaining; ++m) {
    if (m == 0) {
      accumulate(t, slot + 1, remaining, p, q, b, exec, acc);
      continue;
    }
    const unsigned um = static_cast<unsigned>(m);
    const Scalar w = inverse_factorial_product(std::span<const unsigned>(&um, 1), b);
    Tensor<T> next = upper ? apply_upper(p.level(m), t, slot, exec) : apply_lower(q.level(m), t, slot, exec);
    accumulate(scaled(std::move(next), w), slot + 1, remaining - m, p, q, b, exec, acc);
  }
}

// sum over compositions of a of prod(1/m!) prod(1/l!) applied to d: the
// level-m P symbol on every upper slot, the level-l Q symbol on every lower
// one. Empty when no composition exists (rank 0, a > 0).
template <class T>
std::optional<Tensor<T>> composition_sum(const Tensor<T>& d, const PQTable& p, const PQTable& q, int a, Backend b,
                                         Exec exec) {
  std::optional<Tensor<T>> acc;
  accumulate(d, 0, a, p, q, b, exec, acc);
  return acc;
}

}  // namespace detail

}  // namespace covjet
