#pragma once

#include <cstddef>
#include <exception>

#include "covjet/jet_matrix.hpp"
#include "covjet/tensor.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace covjet {

// Every kernel has a serial reference path and an OpenMP path. Both compute
// each output element with the same sequence of operations, so results are
// bit-identical regardless of thread count.
enum class Exec { serial, parallel };

template <class Body>
void parallel_for(std::size_t n, Exec exec, Body&& body) {
#if !defined(_OPENMP)
  exec = Exec::serial;
#endif
  if (exec == Exec::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#if defined(_OPENMP)
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(covjet_parallel_for_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
#endif
}

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// out[.. j ..] = sum_u m(j, u) * a[.. u ..] on an upper slot.
template <class T>
Tensor<T> apply_upper(const JetMatrix& m, const Tensor<T>& a, int slot, Exec exec) {
  if (m.dim() != a.dim()) throw DimensionMismatch("matrix and tensor dimensions differ");
  const std::size_t stride = a.stride(slot);
  const std::size_t n = static_cast<std::size_t>(a.dim());
  Tensor<T> out = a;
  parallel_for(a.size(), exec, [&](std::size_t f) {
    const int j = static_cast<int>((f / stride) % n);
    const std::size_t base = f - static_cast<std::size_t>(j) * stride;
    T acc = m(j, 0) * a[base];
    for (std::size_t u = 1; u < n; ++u) acc += m(j, static_cast<int>(u)) * a[base + u * stride];
    out[f] = std::move(acc);
  });
  return out;
}

// out[.. i ..] = sum_v m(v, i) * a[.. v ..] on a lower slot.
template <class T>
Tensor<T> apply_lower(const JetMatrix& m, const Tensor<T>& a, int slot, Exec exec) {
  if (m.dim() != a.dim()) throw DimensionMismatch("matrix and tensor dimensions differ");
  const std::size_t stride = a.stride(slot);
  const std::size_t n = static_cast<std::size_t>(a.dim());
  Tensor<T> out = a;
  parallel_for(a.size(), exec, [&](std::size_t f) {
    const int i = static_cast<int>((f / stride) % n);
    const std::size_t base = f - static_cast<std::size_t>(i) * stride;
    T acc = m(0, i) * a[base];
    for (std::size_t v = 1; v < n; ++v) acc += m(static_cast<int>(v), i) * a[base + v * stride];
    out[f] = std::move(acc);
  });
  return out;
}

// Contracts upper slot `up` with lower slot `low` (absolute slot numbers).
template <class T>
Tensor<T> contract(const Tensor<T>& a, int up, int low) {
  if (up < 0 || up >= a.p() || low < a.p() || low >= a.rank())
    throw DimensionMismatch("contraction needs one upper and one lower slot");
  Tensor<T> out(a.p() - 1, a.q() - 1, a.dim(), a[0]);
  for (std::size_t f = 0; f < out.size(); ++f) {
    std::vector<int> small = out.multi_index(f);
    std::vector<int> full;
    full.reserve(static_cast<std::size_t>(a.rank()));
    int k = 0;
    for (int r = 0; r < a.rank(); ++r) full.push_back(r == up || r == low ? 0 : small[static_cast<std::size_t>(k++)]);
    T acc = a.at(full);
    for (int t = 1; t < a.dim(); ++t) {
      full[static_cast<std::size_t>(up)] = t;
      full[static_cast<std::size_t>(low)] = t;
      acc += a.at(full);
    }
    out[f] = std::move(acc);
  }
  return out;
}

}  // namespace covjet
