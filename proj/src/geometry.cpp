#include "covjet/geometry.hpp"

#include <algorithm>
#include <string>

#include "covjet/errors.hpp"
#include "covjet/kernels.hpp"

namespace covjet {

Connection::Connection(int dim, Backend backend) : dim_(dim), backend_(backend) {
  if (dim <= 0) throw DimensionMismatch("connection dimension must be positive");
}

void Connection::set(int i, int j, int l, MultiPoly poly) {
  for (int x : {i, j, l})
    if (x < 0 || x >= dim_) throw DimensionMismatch("Christoffel index out of range for dimension " + std::to_string(dim_));
  if (poly.n_vars() != dim_)
    throw DimensionMismatch("Christoffel polynomial in " + std::to_string(poly.n_vars()) + " variables for dimension " +
                            std::to_string(dim_));
  if (poly.backend() != backend_) throw BackendMismatch("Christoffel polynomial backend differs from connection");
  if (poly.is_zero())
    gamma_.erase({i, j, l});
  else
    gamma_.insert_or_assign({i, j, l}, std::move(poly));
}

const MultiPoly* Connection::find(int i, int j, int l) const {
  auto it = gamma_.find({i, j, l});
  return it == gamma_.end() ? nullptr : &it->second;
}

Curve::Curve(std::vector<Jet> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DimensionMismatch("a curve needs at least one coordinate");
  for (const Jet& j : coords_) {
    if (j.order() != coords_.front().order()) throw InvariantViolation("curve coordinates have different orders");
    if (j.backend() != coords_.front().backend()) throw BackendMismatch("curve coordinates use different backends");
    if (j.base_point() != coords_.front().base_point())
      throw BasePointMismatch("curve coordinates expanded at different base points");
  }
}

Curve Curve::from_polynomials(const std::vector<std::vector<Scalar>>& coords, int order, const Scalar& base_point) {
  std::vector<Jet> jets;
  for (const auto& c : coords) jets.push_back(Jet::from_polynomial(c, order, base_point));
  return Curve(std::move(jets));
}

std::vector<Jet> Curve::velocity() const {
  std::vector<Jet> v;
  for (const Jet& x : coords_) v.push_back(diff(x));
  return v;
}

bool ChartTransition::exact_inverse() const {
  const Backend b = forward.front().backend();
  for (int i = 0; i < dim; ++i) {
    const MultiPoly id = MultiPoly::variable(dim, i, b);
    if (compose(inverse[static_cast<std::size_t>(i)], forward) != id) return false;
    if (compose(forward[static_cast<std::size_t>(i)], inverse) != id) return false;
  }
  return true;
}

JetMatrix Scene::connection_form() const {
  if (connection_form_override) return *connection_form_override;
  return covjet::connection_form(connection, curve);
}

bool Scene::is_flat() const {
  if (connection_form_override) return connection_form_override->is_zero();
  return connection.is_flat();
}

JetMatrix connection_form(const Connection& conn, const Curve& curve) {
  if (conn.dim() != curve.dim())
    throw DimensionMismatch("connection of dimension " + std::to_string(conn.dim()) + " on a curve of dimension " +
                            std::to_string(curve.dim()));
  if (conn.backend() != curve.backend()) throw BackendMismatch("connection and curve use different backends");
  const int n = conn.dim();
  const std::vector<Jet> v = curve.velocity();
  const int order = v.front().order();
  JetMatrix p1 = JetMatrix::zero(n, order, curve.base_point());
  for (const auto& [idx, poly] : conn.entries()) {
    const auto [i, j, l] = idx;
    p1(i, j) += evaluate_on_jets(poly, curve.coords()) * v[static_cast<std::size_t>(l)];
  }
  return p1;
}

namespace {

void require_dims(const ChartTransition& t, int dim) {
  if (t.dim != dim || static_cast<int>(t.forward.size()) != dim || static_cast<int>(t.inverse.size()) != dim)
    throw DimensionMismatch("chart transition dimension does not match the scene");
  for (const auto* maps : {&t.forward, &t.inverse})
    for (const MultiPoly& p : *maps)
      if (p.n_vars() != dim) throw DimensionMismatch("chart transition polynomial has the wrong number of variables");
}

std::vector<Jet> evaluate_all(const std::vector<MultiPoly>& polys, std::span<const Jet> args) {
  std::vector<Jet> out;
  for (const MultiPoly& p : polys) out.push_back(evaluate_on_jets(p, args));
  return out;
}

}  // namespace

JetMatrix jacobian_along_curve(const ChartTransition& t, const Curve& c, JacobianDirection dir) {
  require_dims(t, c.dim());
  const int n = c.dim();
  const bool fwd = dir == JacobianDirection::forward;
  const std::vector<MultiPoly>& maps = fwd ? t.forward : t.inverse;
  const std::vector<Jet> at = fwd ? std::vector<Jet>(c.coords().begin(), c.coords().end())
                                  : evaluate_all(t.forward, c.coords());
  JetMatrix jac = JetMatrix::zero(n, c.order(), c.base_point());
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col)
      jac(row, col) = evaluate_on_jets(maps[static_cast<std::size_t>(row)].partial(col), at);
  return jac;
}

Curve pushforward_curve(const ChartTransition& t, const Curve& c) {
  require_dims(t, c.dim());
  return Curve(evaluate_all(t.forward, c.coords()));
}

void validate_transition(const ChartTransition& t, const Curve& c) {
  require_dims(t, c.dim());
  const std::vector<Jet> primed = evaluate_all(t.forward, c.coords());
  const std::vector<Jet> back = evaluate_all(t.inverse, primed);
  for (int i = 0; i < c.dim(); ++i)
    if (back[static_cast<std::size_t>(i)] != c[i])
      throw InvariantViolation("transition.inverse[" + std::to_string(i + 1) +
                               "] does not invert transition.forward along the curve to order " +
                               std::to_string(c.order()));
}

Connection transform_connection(const ChartTransition& t, const Connection& conn) {
  require_dims(t, conn.dim());
  if (!t.exact_inverse())
    throw NonPolynomialTransform(
        "transition inverse is not an exact polynomial inverse; the transformed connection is not polynomial");
  const int n = conn.dim();
  const Backend b = conn.backend();

  // Everything as polynomials in x'.
  std::vector<std::vector<MultiPoly>> jf(static_cast<std::size_t>(n));  // dx'^a/dx^i at x(x')
  std::vector<std::vector<MultiPoly>> jg(static_cast<std::size_t>(n));  // dx^j/dx'^b
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) {
      jf[static_cast<std::size_t>(a)].push_back(compose(t.forward[static_cast<std::size_t>(a)].partial(i), t.inverse));
      jg[static_cast<std::size_t>(a)].push_back(t.inverse[static_cast<std::size_t>(a)].partial(i));
    }
  std::map<std::array<int, 3>, MultiPoly> gamma_at;
  for (const auto& [idx, poly] : conn.entries()) gamma_at.emplace(idx, compose(poly, t.inverse));

  Connection out(n, b);
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int cc = 0; cc < n; ++cc) {
        MultiPoly acc(n, b);
        for (const auto& [idx, g] : gamma_at) {
          const auto [i, j, k] = idx;
          acc += jf[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
                 jg[static_cast<std::size_t>(j)][static_cast<std::size_t>(bb)] *
                 jg[static_cast<std::size_t>(k)][static_cast<std::size_t>(cc)] * g;
        }
        for (int i = 0; i < n; ++i)
          acc += jf[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
                 t.inverse[static_cast<std::size_t>(i)].partial(bb).partial(cc);
        out.set(a, bb, cc, std::move(acc));
      }
  return out;
}

JetMatrix transformed_connection_form(const ChartTransition& t, const Connection& conn, const Curve& c,
                                      PrimedRoute route) {
  require_dims(t, c.dim());
  if (route == PrimedRoute::automatic) route = t.exact_inverse() ? PrimedRoute::polynomial : PrimedRoute::along_curve;
  const Curve primed = pushforward_curve(t, c);
  if (route == PrimedRoute::polynomial) return connection_form(transform_connection(t, conn), primed);

  const int n = c.dim();
  const JetMatrix jf = jacobian_along_curve(t, c, JacobianDirection::forward);
  const JetMatrix jg = jacobian_along_curve(t, c, JacobianDirection::inverse);
  const std::vector<Jet> vprime = primed.velocity();

  // hess[i][b][c] = d^2 x^i / dx'^b dx'^c along x'(s)
  std::vector<Jet> hess;
  for (int i = 0; i < n; ++i)
    for (int bb = 0; bb < n; ++bb)
      for (int cc = 0; cc < n; ++cc)
        hess.push_back(evaluate_on_jets(t.inverse[static_cast<std::size_t>(i)].partial(bb).partial(cc), primed.coords()));
  auto h = [&](int i, int bb, int cc) -> const Jet& {
    return hess[static_cast<std::size_t>((i * n + bb) * n + cc)];
  };
  std::map<std::array<int, 3>, Jet> gamma_s;
  for (const auto& [idx, poly] : conn.entries()) gamma_s.emplace(idx, evaluate_on_jets(poly, c.coords()));

  JetMatrix p1 = JetMatrix::zero(n, vprime.front().order(), c.base_point());
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int cc = 0; cc < n; ++cc) {
        Jet g = Jet::zero(c.order(), c.base_point());
        for (const auto& [idx, gam] : gamma_s) {
          const auto [i, j, k] = idx;
          g += jf(a, i) * jg(j, bb) * jg(k, cc) * gam;
        }
        for (int i = 0; i < n; ++i) g += jf(a, i) * h(i, bb, cc);
        p1(a, bb) += g * vprime[static_cast<std::size_t>(cc)];
      }
  return p1;
}

TensorFieldJet transform_tensor(const TensorFieldJet& a, const ChartTransition& t, const Curve& c) {
  const JetMatrix jf = jacobian_along_curve(t, c, JacobianDirection::forward);
  const JetMatrix jg = jacobian_along_curve(t, c, JacobianDirection::inverse);
  TensorFieldJet out = a;
  for (int r = 0; r < a.p(); ++r) out = apply_upper(jf, out, r, Exec::serial);
  for (int r = a.p(); r < a.rank(); ++r) out = apply_lower(jg, out, r, Exec::serial);
  return out;
}

}  // namespace covjet
