#include "covjet/pq_symbols.hpp"

#include <string>

#include "covjet/combinatorics.hpp"
#include "covjet/errors.hpp"

namespace covjet {

PQTable::PQTable(SymbolKind kind, std::vector<JetMatrix> levels) : kind_(kind), levels_(std::move(levels)) {
  if (levels_.empty()) throw InvariantViolation("a symbol table needs level 0");
}

const JetMatrix& PQTable::level(int k) const {
  if (k < 0 || k > k_max())
    throw OrderExhausted(std::string(kind_ == SymbolKind::P ? "P" : "Q") + " table built to level " +
                         std::to_string(k_max()) + ", level " + std::to_string(k) + " requested");
  return levels_[static_cast<std::size_t>(k)];
}

PQTable build_from_level_one(SymbolKind kind, const JetMatrix& p1, int k_max, Exec exec) {
  const int n = p1.dim();
  const int order1 = p1.order();
  if (k_max < 0) throw OrderExhausted("negative table level");
  if (k_max > order1 + 1)
    throw OrderExhausted("jets of order " + std::to_string(order1 + 1) + " support symbol levels up to " +
                         std::to_string(order1 + 1) + ", level " + std::to_string(k_max) + " requested");
  const Scalar& s0 = p1(0, 0).base_point();
  const JetMatrix one = kind == SymbolKind::P ? p1.truncated(order1) : -p1.truncated(order1);

  std::vector<JetMatrix> levels;
  levels.push_back(JetMatrix::identity(n, order1 + 1, s0));
  if (k_max >= 1) levels.push_back(one);
  for (int k = 1; k < k_max; ++k) {
    const JetMatrix& cur = levels.back();
    JetMatrix next = JetMatrix::zero(n, 0, s0);
    parallel_for(static_cast<std::size_t>(n * n), exec, [&](std::size_t f) {
      const int i = static_cast<int>(f) / n, j = static_cast<int>(f) % n;
      Jet acc = diff(cur(i, j));
      for (int l = 0; l < n; ++l) {
        if (kind == SymbolKind::P)
          acc += cur(l, j) * one(i, l);
        else
          acc += cur(i, l) * one(l, j);
      }
      next(i, j) = std::move(acc);
    });
    levels.push_back(std::move(next));
  }
  return PQTable(kind, std::move(levels));
}

PQTable build_P(const Connection& conn, const Curve& c, int k_max, Exec exec) {
  return build_from_level_one(SymbolKind::P, connection_form(conn, c), k_max, exec);
}

PQTable build_Q(const Connection& conn, const Curve& c, int k_max, Exec exec) {
  return build_from_level_one(SymbolKind::Q, connection_form(conn, c), k_max, exec);
}

PQTable build_table(const Scene& s, SymbolKind kind, int k_max, Exec exec) {
  return build_from_level_one(kind, s.connection_form(), k_max, exec);
}

namespace {

Scalar binom_scalar(int k, int r, Backend b) {
  return Scalar::from_bigint(binom(static_cast<unsigned>(k), static_cast<unsigned>(r)), b);
}

void require_kinds(const PQTable& p, const PQTable& q) {
  if (p.kind() != SymbolKind::P || q.kind() != SymbolKind::Q) throw InvariantViolation("expected a P table and a Q table");
  if (p.dim() != q.dim()) throw DimensionMismatch("P and Q tables of different dimensions");
}

}  // namespace

JetMatrix check_orthogonality(const PQTable& p, const PQTable& q, int k) {
  require_kinds(p, q);
  const Backend b = p.level(0)(0, 0).backend();
  JetMatrix acc = p.level(k) * q.level(0);
  for (int r = 1; r <= k; ++r) acc += binom_scalar(k, r, b) * (p.level(k - r) * q.level(r));
  if (k == 0) acc -= JetMatrix::identity(p.dim(), acc.order(), acc(0, 0).base_point());
  return acc;
}

JetMatrix check_derivative_expansion(const PQTable& p, const PQTable& q, int l, int k, ExpansionVariant variant) {
  require_kinds(p, q);
  if (l < 0 || k < 0) throw OrderExhausted("negative level or derivative count");
  const Backend b = p.level(0)(0, 0).backend();
  const bool pq = variant == ExpansionVariant::PQ;
  JetMatrix lhs = diff(pq ? p.level(l) : q.level(l), k);
  for (int i = 0; i <= k; ++i) {
    const JetMatrix term = pq ? q.level(i) * p.level(l + k - i) : q.level(l + k - i) * p.level(i);
    lhs -= binom_scalar(k, i, b) * term;
  }
  return lhs;
}

JetMatrix check_transformation_law(const Scene& s, int l, SymbolKind kind, PrimedRoute route) {
  if (!s.transition) throw InvariantViolation("scene has no chart transition");
  if (s.connection_form_override)
    throw InvariantViolation("transformation laws need polynomial Christoffel symbols, not a raw connection form");
  const ChartTransition& t = *s.transition;
  const Backend b = s.backend;

  const PQTable here = build_P(s.connection, s.curve, l);
  const JetMatrix p1_primed = transformed_connection_form(t, s.connection, s.curve, route);
  const PQTable there = build_from_level_one(kind, p1_primed, l);
  const JetMatrix jf = jacobian_along_curve(t, s.curve, JacobianDirection::forward);
  const JetMatrix jg = jacobian_along_curve(t, s.curve, JacobianDirection::inverse);

  if (kind == SymbolKind::P) {
    JetMatrix residual = here.level(l);
    for (int p = 0; p <= l; ++p) residual -= binom_scalar(l, p, b) * (jg * there.level(p) * diff(jf, l - p));
    return residual;
  }
  JetMatrix residual = build_Q(s.connection, s.curve, l).level(l);
  for (int p = 0; p <= l; ++p) residual -= binom_scalar(l, p, b) * (diff(jg, l - p) * there.level(p) * jf);
  return residual;
}

}  // namespace covjet
