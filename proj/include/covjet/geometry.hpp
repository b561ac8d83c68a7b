#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "covjet/jet.hpp"
#include "covjet/jet_matrix.hpp"
#include "covjet/multipoly.hpp"
#include "covjet/tensor.hpp"

namespace covjet {

using TensorFieldJet = Tensor<Jet>;

// Affine connection Gamma^i_{jl}(x) with polynomial coefficients. Absent
// entries are zero; no symmetry in (j, l) is assumed. Indices are 0-based.
class Connection {
 public:
  Connection(int dim, Backend backend);

  int dim() const { return dim_; }
  Backend backend() const { return backend_; }

  void set(int i, int j, int l, MultiPoly poly);
  // nullptr when the entry is identically zero.
  const MultiPoly* find(int i, int j, int l) const;
  const std::map<std::array<int, 3>, MultiPoly>& entries() const { return gamma_; }
  bool is_flat() const { return gamma_.empty(); }

  friend bool operator==(const Connection& a, const Connection& b) {
    return a.dim_ == b.dim_ && a.backend_ == b.backend_ && a.gamma_ == b.gamma_;
  }

 private:
  int dim_;
  Backend backend_;
  std::map<std::array<int, 3>, MultiPoly> gamma_;
};

// x(s) as coordinate jets sharing one order, backend and base point.
class Curve {
 public:
  explicit Curve(std::vector<Jet> coords);
  static Curve from_polynomials(const std::vector<std::vector<Scalar>>& coords, int order, const Scalar& base_point);

  int dim() const { return static_cast<int>(coords_.size()); }
  int order() const { return coords_.front().order(); }
  Backend backend() const { return coords_.front().backend(); }
  const Scalar& base_point() const { return coords_.front().base_point(); }
  std::span<const Jet> coords() const { return coords_; }
  const Jet& operator[](int l) const { return coords_[static_cast<std::size_t>(l)]; }
  // dx^l/ds, one order shorter.
  std::vector<Jet> velocity() const;

  friend bool operator==(const Curve& a, const Curve& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Jet> coords_;
};

// Polynomial coordinate change x' = forward(x) with a supplied inverse
// x = inverse(x'). The inverse need only hold along the scene's curve to the
// truncation order; exact_inverse() reports whether it is a global one.
struct ChartTransition {
  int dim;
  std::vector<MultiPoly> forward;
  std::vector<MultiPoly> inverse;

  bool exact_inverse() const;

  friend bool operator==(const ChartTransition&, const ChartTransition&) = default;
};

enum class JacobianDirection { forward, inverse };

// How the primed-chart connection is obtained for transformation checks:
// as a polynomial (requires an exact inverse) or evaluated as jets along the
// pushed-forward curve.
enum class PrimedRoute { automatic, polynomial, along_curve };

struct Scene {
  int dim = 0;
  int order = 0;
  Backend backend = Backend::rational;
  Scalar base_point;
  Connection connection{1, Backend::rational};
  // Raw P^{i<1>}_j(s) jets supplied directly instead of polynomial Gamma.
  std::optional<JetMatrix> connection_form_override;
  Curve curve{{Jet::zero(1, Scalar())}};
  std::optional<TensorFieldJet> field;
  std::optional<ChartTransition> transition;

  // P^{i<1>}_j along the curve.
  JetMatrix connection_form() const;
  bool is_flat() const;
};

// P^{i<1>}_j = Gamma^i_{jl}(x(s)) dx^l/ds.
JetMatrix connection_form(const Connection& conn, const Curve& curve);

// Forward: entry (q, r) = dx'^q/dx^r along x(s). Inverse: entry (j, i) =
// dx^j/dx'^i along x'(s).
JetMatrix jacobian_along_curve(const ChartTransition& t, const Curve& c, JacobianDirection dir);

Curve pushforward_curve(const ChartTransition& t, const Curve& c);

// Checks inverse(forward(x(s))) = x(s) to the curve's order; throws
// InvariantViolation naming the first failing coordinate.
void validate_transition(const ChartTransition& t, const Curve& c);

// Gamma'^a_{bc} = (dx'^a/dx^i)(dx^j/dx'^b)(dx^k/dx'^c) Gamma^i_{jk}
//               + (dx'^a/dx^i) d^2x^i/dx'^b dx'^c, as polynomials in x'.
// Throws NonPolynomialTransform unless the inverse is exact.
Connection transform_connection(const ChartTransition& t, const Connection& conn);

// P'^{a<1>}_b in the primed chart along the pushed-forward curve.
JetMatrix transformed_connection_form(const ChartTransition& t, const Connection& conn, const Curve& c,
                                      PrimedRoute route = PrimedRoute::automatic);

// A'^{a..}_{b..} = (dx'^a/dx^j) .. (dx^i/dx'^b) .. A^{j..}_{i..} along the curve.
TensorFieldJet transform_tensor(const TensorFieldJet& a, const ChartTransition& t, const Curve& c);

}  // namespace covjet
