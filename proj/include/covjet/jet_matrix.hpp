#pragma once

#include <vector>

#include "covjet/jet.hpp"

namespace covjet {

// Square matrix of jets; (row, col) is (upper index, lower index) when the
// matrix holds a mixed (1,1) quantity such as a level of the P/Q symbols.
class JetMatrix {
 public:
  JetMatrix(int dim, const Jet& fill);

  static JetMatrix identity(int dim, int order, const Scalar& base_point);
  static JetMatrix zero(int dim, int order, const Scalar& base_point);

  int dim() const { return dim_; }
  Jet& operator()(int row, int col) { return entries_[index(row, col)]; }
  const Jet& operator()(int row, int col) const { return entries_[index(row, col)]; }

  // Minimum order over all entries.
  int order() const;
  bool is_zero() const;
  JetMatrix truncated(int order) const;

  JetMatrix& operator+=(const JetMatrix& o);
  JetMatrix& operator-=(const JetMatrix& o);
  JetMatrix& operator*=(const Scalar& c);
  JetMatrix operator-() const;
  friend JetMatrix operator+(JetMatrix a, const JetMatrix& b) { return a += b; }
  friend JetMatrix operator-(JetMatrix a, const JetMatrix& b) { return a -= b; }
  friend JetMatrix operator*(JetMatrix a, const Scalar& c) { return a *= c; }
  friend JetMatrix operator*(const Scalar& c, JetMatrix a) { return a *= c; }
  friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);

  friend bool operator==(const JetMatrix& a, const JetMatrix& b) { return a.dim_ == b.dim_ && a.entries_ == b.entries_; }

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(col);
  }

  int dim_;
  std::vector<Jet> entries_;
};

JetMatrix diff(const JetMatrix& m);
JetMatrix diff(const JetMatrix& m, int times);

}  // namespace covjet
