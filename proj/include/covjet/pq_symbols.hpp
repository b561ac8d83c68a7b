#pragma once

#include <vector>

#include "covjet/geometry.hpp"
#include "covjet/jet_matrix.hpp"
#include "covjet/kernels.hpp"

namespace covjet {

enum class SymbolKind { P, Q };

// Levels 0..k_max of the P or Q symbols along the curve; level(k)(i, j) is
// P^{i<k>}_j (resp. Q^{i<k>}_j). Level 0 is the identity and level 1 of Q is
// minus level 1 of P. Each recursion step costs one jet order.
class PQTable {
 public:
  PQTable(SymbolKind kind, std::vector<JetMatrix> levels);

  SymbolKind kind() const { return kind_; }
  int dim() const { return levels_.front().dim(); }
  int k_max() const { return static_cast<int>(levels_.size()) - 1; }
  // Throws OrderExhausted for k > k_max.
  const JetMatrix& level(int k) const;
  const Jet& entry(int i, int j, int k) const { return level(k)(i, j); }

 private:
  SymbolKind kind_;
  std::vector<JetMatrix> levels_;
};

// Runs the recursion from a given P^{<1>}:
//   P: level k+1 = d/ds level k + P1 * level k
//   Q: level k+1 = d/ds level k + level k * Q1,  Q1 = -P1
// Level 0 gets the order of P1 plus one.
PQTable build_from_level_one(SymbolKind kind, const JetMatrix& p1, int k_max, Exec exec = Exec::parallel);

PQTable build_P(const Connection& conn, const Curve& c, int k_max, Exec exec = Exec::parallel);
PQTable build_Q(const Connection& conn, const Curve& c, int k_max, Exec exec = Exec::parallel);
PQTable build_table(const Scene& s, SymbolKind kind, int k_max, Exec exec = Exec::parallel);

// sum_{r=0}^{k} C(k, r) P^{<k-r>} Q^{<r>} minus (identity if k = 0).
JetMatrix check_orthogonality(const PQTable& p, const PQTable& q, int k);

enum class ExpansionVariant {
  // d^k/ds^k P^{<l>} - sum_i C(k,i) Q^{<i>} P^{<l+k-i>}
  PQ,
  // d^k/ds^k Q^{<l>} - sum_i C(k,i) Q^{<l+k-i>} P^{<i>}
  QP,
};

JetMatrix check_derivative_expansion(const PQTable& p, const PQTable& q, int l, int k, ExpansionVariant variant);

// Rebuilds the symbols in the primed chart (pushed-forward curve and
// transformed connection) and returns
//   P: P^{<l>} - sum_p C(l,p) (dx/dx') P'^{<p>} (dx'/dx)^{(l-p)}
//   Q: Q^{<l>} - sum_p C(l,p) (dx/dx')^{(l-p)} Q'^{<p>} (dx'/dx)
JetMatrix check_transformation_law(const Scene& s, int l, SymbolKind kind, PrimedRoute route = PrimedRoute::automatic);

}  // namespace covjet
