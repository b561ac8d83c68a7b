#pragma once

#include <span>
#include <string>
#include <vector>

#include "covjet/errors.hpp"

namespace covjet {

// Components of a type (p, q) tensor along the curve. Slots 0..p-1 carry
// the upper indices, slots p..p+q-1 the lower ones; storage is row-major
// with slot 0 varying slowest. Indices are 0-based.
template <class T>
class Tensor {
 public:
  Tensor(int p, int q, int dim, const T& fill) : p_(p), q_(q), dim_(dim) {
    if (p < 0 || q < 0) throw DimensionMismatch("negative tensor valence");
    if (dim <= 0) throw DimensionMismatch("tensor dimension must be positive");
    std::size_t n = 1;
    for (int r = 0; r < p + q; ++r) n *= static_cast<std::size_t>(dim);
    comp_.assign(n, fill);
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return dim_; }
  int rank() const { return p_ + q_; }
  std::size_t size() const { return comp_.size(); }

  T& operator[](std::size_t flat) { return comp_[flat]; }
  const T& operator[](std::size_t flat) const { return comp_[flat]; }
  T& at(std::span<const int> idx) { return comp_[flat_index(idx)]; }
  const T& at(std::span<const int> idx) const { return comp_[flat_index(idx)]; }

  std::span<T> components() { return comp_; }
  std::span<const T> components() const { return comp_; }

  // Distance in flat storage between consecutive values of one slot.
  std::size_t stride(int slot) const {
    std::size_t s = 1;
    for (int r = slot + 1; r < rank(); ++r) s *= static_cast<std::size_t>(dim_);
    return s;
  }

  std::size_t flat_index(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank()) throw DimensionMismatch("index tuple has wrong length");
    std::size_t f = 0;
    for (int i : idx) {
      if (i < 0 || i >= dim_) throw DimensionMismatch("tensor index out of range");
      f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return f;
  }

  std::vector<int> multi_index(std::size_t flat) const {
    std::vector<int> idx(static_cast<std::size_t>(rank()));
    for (int r = rank() - 1; r >= 0; --r) {
      idx[static_cast<std::size_t>(r)] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
      flat /= static_cast<std::size_t>(dim_);
    }
    return idx;
  }

  bool same_shape(const Tensor& o) const { return p_ == o.p_ && q_ == o.q_ && dim_ == o.dim_; }

  friend bool operator==(const Tensor& a, const Tensor& b) { return a.same_shape(b) && a.comp_ == b.comp_; }

 private:
  int p_, q_, dim_;
  std::vector<T> comp_;
};

// Component key used in files: "j1,..,jp;i1,..,iq" with 1-based indices.
inline std::string component_key(std::span<const int> idx, int p) {
  std::string key;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (static_cast<int>(r) == p)
      key += ';';
    else if (r > 0)
      key += ',';
    key += std::to_string(idx[r] + 1);
  }
  if (static_cast<int>(idx.size()) == p) key += ';';
  return key;
}

template <class T, class F>
Tensor<T> elementwise(const Tensor<T>& a, const Tensor<T>& b, F op) {
  if (!a.same_shape(b)) throw DimensionMismatch("tensors of different shapes");
  Tensor<T> r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = op(a[i], b[i]);
  return r;
}

}  // namespace covjet
