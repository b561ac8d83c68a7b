#include "covjet/jet_matrix.hpp"

#include <algorithm>

#include "covjet/errors.hpp"

namespace covjet {

JetMatrix::JetMatrix(int dim, const Jet& fill)
    : dim_(dim), entries_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), fill) {
  if (dim <= 0) throw DimensionMismatch("matrix dimension must be positive");
}

JetMatrix JetMatrix::identity(int dim, int order, const Scalar& base_point) {
  JetMatrix m = zero(dim, order, base_point);
  for (int i = 0; i < dim; ++i) m(i, i) = Jet::constant(Scalar::one(base_point.backend()), order, base_point);
  return m;
}

JetMatrix JetMatrix::zero(int dim, int order, const Scalar& base_point) {
  return JetMatrix(dim, Jet::zero(order, base_point));
}

int JetMatrix::order() const {
  int o = entries_.front().order();
  for (const Jet& j : entries_) o = std::min(o, j.order());
  return o;
}

bool JetMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Jet& j) { return j.is_zero(); });
}

JetMatrix JetMatrix::truncated(int order) const {
  JetMatrix r = *this;
  for (Jet& j : r.entries_) j = j.truncated(order);
  return r;
}

JetMatrix& JetMatrix::operator+=(const JetMatrix& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("adding matrices of different sizes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

JetMatrix& JetMatrix::operator-=(const JetMatrix& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("subtracting matrices of different sizes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

JetMatrix& JetMatrix::operator*=(const Scalar& c) {
  for (Jet& j : entries_) j *= c;
  return *this;
}

JetMatrix JetMatrix::operator-() const {
  JetMatrix r = *this;
  for (Jet& j : r.entries_) j = -j;
  return r;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("multiplying matrices of different sizes");
  const int n = a.dim_;
  JetMatrix r(n, a(0, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet acc = a(i, 0) * b(0, j);
      for (int l = 1; l < n; ++l) acc += a(i, l) * b(l, j);
      r(i, j) = std::move(acc);
    }
  return r;
}

JetMatrix diff(const JetMatrix& m) {
  JetMatrix r = m;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r(i, j) = diff(m(i, j));
  return r;
}

JetMatrix diff(const JetMatrix& m, int times) {
  JetMatrix r = m;
  for (int t = 0; t < times; ++t) r = diff(r);
  return r;
}

}  // namespace covjet
