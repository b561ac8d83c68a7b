#include "covjet/random_scene.hpp"

#include <functional>

namespace covjet {

long SceneRng::uniform_int(long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(eng_() % span);
}

bool SceneRng::chance(int numerator, int denominator) { return uniform_int(0, denominator - 1) < numerator; }

Scalar SceneRng::small_rational(Backend b) {
  long n = uniform_int(-3, 2);
  if (n >= 0) ++n;
  const long d = uniform_int(1, 3);
  return Scalar::ratio(n, d, b);
}

double SceneRng::small_double() {
  const long d = uniform_int(1, 4);
  const long n = uniform_int(-d, d);
  return static_cast<double>(n) / static_cast<double>(d);
}

namespace {

// All exponent vectors in n variables of total degree <= max_degree,
// in a fixed order.
std::vector<MultiPoly::Exponents> monomials(int n, int max_degree) {
  std::vector<MultiPoly::Exponents> out;
  MultiPoly::Exponents e(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == n) {
      out.push_back(e);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[static_cast<std::size_t>(var)] = static_cast<unsigned>(d);
      rec(var + 1, left - d);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  rec(0, max_degree);
  return out;
}

}  // namespace

MultiPoly random_poly(SceneRng& rng, int n_vars, int max_degree, Backend b, int density_num, int density_den) {
  MultiPoly p(n_vars, b);
  for (const auto& e : monomials(n_vars, max_degree))
    if (rng.chance(density_num, density_den)) p.add_term(e, rng.small_rational(b));
  return p;
}

Scene random_scene(SceneRng& rng, const SceneOptions& opt) {
  const Backend b = opt.backend;
  Scene s;
  s.dim = opt.dim;
  s.order = opt.order;
  s.backend = b;
  s.base_point = Scalar::zero(b);
  if (opt.random_base_point) s.base_point = Scalar::ratio(rng.uniform_int(-2, 2), 2, b);
  s.connection = Connection(opt.dim, b);
  if (!opt.flat)
    for (int i = 0; i < opt.dim; ++i)
      for (int j = 0; j < opt.dim; ++j)
        for (int l = 0; l < opt.dim; ++l)
          if (rng.chance(1, 2)) s.connection.set(i, j, l, random_poly(rng, opt.dim, opt.gamma_degree, b, 1, 3));
  std::vector<std::vector<Scalar>> coords;
  for (int i = 0; i < opt.dim; ++i) {
    std::vector<Scalar> c;
    for (int d = 0; d <= opt.curve_degree; ++d) c.push_back(rng.chance(2, 3) ? rng.small_rational(b) : Scalar::zero(b));
    coords.push_back(std::move(c));
  }
  s.curve = Curve::from_polynomials(coords, opt.order, s.base_point);
  return s;
}

TensorFieldJet random_field(SceneRng& rng, int p, int q, int dim, int order, const Scalar& base_point, int degree) {
  const Backend b = base_point.backend();
  TensorFieldJet a(p, q, dim, Jet::zero(order, base_point));
  for (std::size_t f = 0; f < a.size(); ++f) {
    std::vector<Scalar> c;
    for (int d = 0; d <= degree; ++d) c.push_back(rng.chance(2, 3) ? rng.small_rational(b) : Scalar::zero(b));
    a[f] = Jet::from_polynomial(c, order, base_point);
  }
  return a;
}

ChartTransition random_linear_transition(SceneRng& rng, int dim, Backend b) {
  // M = L U with unit diagonals; M^{-1} = U^{-1} L^{-1}, each inverted by
  // substitution.
  using Mat = std::vector<std::vector<Scalar>>;
  auto identity = [&] {
    Mat m(static_cast<std::size_t>(dim), std::vector<Scalar>(static_cast<std::size_t>(dim), Scalar::zero(b)));
    for (int i = 0; i < dim; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar::one(b);
    return m;
  };
  auto mul = [&](const Mat& x, const Mat& y) {
    Mat r = identity();
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Scalar acc = Scalar::zero(b);
        for (int k = 0; k < dim; ++k)
          acc += x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
      }
    return r;
  };
  // Inverse of a unit triangular matrix via the finite Neumann series of its
  // nilpotent part: (I + N)^{-1} = sum_k (-N)^k.
  auto unit_inverse = [&](const Mat& t) {
    Mat n = t;
    for (int i = 0; i < dim; ++i) n[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar::zero(b);
    for (auto& row : n)
      for (auto& x : row) x = -x;
    Mat acc = identity(), pw = identity();
    for (int k = 1; k < dim; ++k) {
      pw = mul(pw, n);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return acc;
  };
  Mat lo = identity(), up = identity();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (i > j && rng.chance(2, 3)) lo[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rng.small_rational(b);
      if (i < j && rng.chance(2, 3)) up[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rng.small_rational(b);
    }
  // A random nonzero scale on the diagonal keeps dim 1 non-trivial.
  Mat diag = identity(), diag_inv = identity();
  for (int i = 0; i < dim; ++i) {
    const Scalar d = rng.small_rational(b);
    diag[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = d;
    diag_inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar::one(b) / d;
  }
  const Mat m = mul(mul(lo, diag), up);
  const Mat minv = mul(mul(unit_inverse(up), diag_inv), unit_inverse(lo));
  auto linear = [&](const Mat& a) {
    std::vector<MultiPoly> out;
    for (int i = 0; i < dim; ++i) {
      MultiPoly p(dim, b);
      for (int j = 0; j < dim; ++j)
        p += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * MultiPoly::variable(dim, j, b);
      out.push_back(std::move(p));
    }
    return out;
  };
  return ChartTransition{dim, linear(m), linear(minv)};
}

ChartTransition random_triangular_transition(SceneRng& rng, int dim, Backend b) {
  std::vector<MultiPoly> fwd, inv;
  for (int i = 0; i < dim; ++i) {
    MultiPoly c(dim, b);
    if (i > 0) {
      // Random polynomial in x^1..x^{i-1} only.
      const MultiPoly r = random_poly(rng, i, 2, b, 1, 2);
      std::vector<MultiPoly> embed;
      for (int v = 0; v < i; ++v) embed.push_back(MultiPoly::variable(dim, v, b));
      c = compose(r, embed);
    }
    fwd.push_back(MultiPoly::variable(dim, i, b) + c);
    // x^i = x'^i - c_i(x^1(x'), .., x^{i-1}(x')), with the earlier inverses
    // substituted; the unused trailing slots keep their own coordinate.
    std::vector<MultiPoly> subs = inv;
    for (int v = i; v < dim; ++v) subs.push_back(MultiPoly::variable(dim, v, b));
    inv.push_back(MultiPoly::variable(dim, i, b) - compose(c, subs));
  }
  return ChartTransition{dim, fwd, inv};
}

}  // namespace covjet
