// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "covjet/errors.hpp"
#include "covjet/fractional.hpp"
#include "helpers.hpp"

using namespace th;

namespace {

struct Outcome {
  bool pass = true;
  long checks = 0;
  std::string note;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      note = what;
    }
  }
};

Scalar F(double v) { return Scalar(v); }

bool agree(const TensorFieldJet& x, const TensorFieldJet& y) {
  if (!x.same_shape(y)) return false;
  for (std::size_t f = 0; f < x.size(); ++f)
    if (!agree_through(x[f], y[f], std::min(x[f].order(), y[f].order()))) return false;
  return true;
}

bool all_zero(const TensorSeries& x) {
  for (std::size_t f = 0; f < x.size(); ++f)
    if (!x[f].is_zero()) return false;
  return true;
}

double max_abs(const TensorSeries& x) {
  double m = 0.0;
  for (std::size_t f = 0; f < x.size(); ++f) m = std::max(m, x[f].max_abs_coeff());
  return m;
}

LinearSystem constant_system(const std::vector<std::vector<double>>& f, std::vector<GenPowerSeries> g, int order,
                             int trunc) {
  LinearSystem sys;
  sys.dim = static_cast<int>(f.size());
  sys.order_of_system = order;
  sys.backend = Backend::float64;
  sys.f = JetMatrix::zero(sys.dim, trunc + 2, F(0));
  for (int i = 0; i < sys.dim; ++i)
    for (int j = 0; j < sys.dim; ++j)
      sys.f(i, j) = Jet::constant(F(f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]), trunc + 2, F(0));
  sys.g = std::move(g);
  return sys;
}

std::vector<std::vector<double>> random_matrix(SceneRng& rng) {
  std::vector<std::vector<double>> f(2, std::vector<double>(2));
  for (auto& row : f)
    for (double& x : row) x = rng.small_double();
  return f;
}

// x' = x + x^2; the inverse is the alternating Catalan series truncated at
// the given degree.
ChartTransition quadratic_1d(unsigned degree) {
  MultiPoly fwd(1, Backend::rational), inv(1, Backend::rational);
  fwd.add_term({1}, R(1));
  fwd.add_term({2}, R(1));
  mpz_class cat = 1;
  for (unsigned n = 1; n <= degree; ++n) {
    const unsigned m = n - 1;
    if (m > 0) cat = cat * 2 * (2 * m - 1) / (m + 1);
    inv.add_term({n}, Scalar::from_bigint(n % 2 == 1 ? cat : mpz_class(-cat), Backend::rational));
  }
  return ChartTransition{1, {fwd}, {inv}};
}

ChartTransition identity_transition(int dim) {
  ChartTransition t{dim, {}, {}};
  for (int i = 0; i < dim; ++i) {
    t.forward.push_back(MultiPoly::variable(dim, i, Backend::rational));
    t.inverse.push_back(MultiPoly::variable(dim, i, Backend::rational));
  }
  return t;
}

Outcome orthogonality() {
  Outcome o;
  SceneRng rng(1001);
  for (int t = 0; t < 200; ++t) {
    const int dim = 1 + t % 3;
    const Scene s = random_scene(rng, {.dim = dim, .order = 7, .gamma_degree = 2, .random_base_point = t % 2 == 1});
    const PQTable p = build_table(s, SymbolKind::P, 6), q = build_table(s, SymbolKind::Q, 6);
    for (int k = 0; k <= 6; ++k)
      o.expect(check_orthogonality(p, q, k).is_zero(), "scene " + std::to_string(t) + " k=" + std::to_string(k));
  }
  return o;
}

Outcome closed_formula() {
  Outcome o;
  SceneRng rng(1002);
  for (int t = 0; t < 100; ++t) {
    const int dim = static_cast<int>(rng.uniform_int(1, 3));
    const int pp = static_cast<int>(rng.uniform_int(0, 2)), qq = static_cast<int>(rng.uniform_int(0, 2));
    const Scene s = random_scene(rng, {.dim = dim, .order = 6, .random_base_point = true});
    const TensorFieldJet a = random_field(rng, pp, qq, dim, 6, s.base_point);
    const PQTable p = build_table(s, SymbolKind::P, 4), q = build_table(s, SymbolKind::Q, 4);
    for (int k = 0; k <= 4; ++k) {
      const TensorFieldJet closed = covariant_derivative_k(a, p, q, k);
      const std::string where = "scene " + std::to_string(t) + " k=" + std::to_string(k);
      o.expect(closed[0].order() == 6 - k, where + " order");
      o.expect(agree(closed, iterate_covariant_oracle(a, s.connection_form(), k)), where);
    }
  }
  return o;
}

Outcome expansions() {
  Outcome o;
  SceneRng rng(1003);
  for (int t = 0; t < 50; ++t) {
    const Scene s = random_scene(rng, {.dim = 1 + t % 3, .order = 7});
    const PQTable p = build_table(s, SymbolKind::P, 6), q = build_table(s, SymbolKind::Q, 6);
    for (int l = 0; l <= 6; ++l)
      for (int k = 0; l + k <= 6; ++k) {
        const std::string where = "scene " + std::to_string(t) + " l=" + std::to_string(l) + " k=" + std::to_string(k);
        o.expect(check_derivative_expansion(p, q, l, k, ExpansionVariant::PQ).is_zero(), where + " PQ");
        o.expect(check_derivative_expansion(p, q, l, k, ExpansionVariant::QP).is_zero(), where + " QP");
      }
  }
  return o;
}

Outcome transformation_laws() {
  Outcome o;
  SceneRng rng(1004);
  for (int t = 0; t < 20; ++t) {
    const int dim = 1 + t % 3;
    Scene s = random_scene(rng, {.dim = dim, .order = 6});
    s.transition = t < 10 ? identity_transition(dim) : random_linear_transition(rng, dim, Backend::rational);
    for (int l = 0; l <= 5; ++l) {
      const std::string where = "scene " + std::to_string(t) + " l=" + std::to_string(l);
      o.expect(check_transformation_law(s, l, SymbolKind::P).is_zero(), where + " P");
      o.expect(check_transformation_law(s, l, SymbolKind::Q).is_zero(), where + " Q");
    }
  }
  // One-dimensional quadratic map; the transformed connection is rebuilt
  // in the primed chart along the curve.
  const int order = 6;
  for (int variant = 0; variant < 2; ++variant) {
    Scene s;
    s.dim = 1;
    s.order = order;
    s.connection = Connection(1, Backend::rational);
    if (variant == 1) {
      MultiPoly g(1, Backend::rational);
      g.add_term({0}, R(1));
      g.add_term({1}, R("-1/2"));
      s.connection.set(0, 0, 0, g);
    }
    s.curve = Curve::from_polynomials({{R(0), R(1), R("1/3")}}, order, R(0));
    s.transition = quadratic_1d(order + 2);
    for (int l = 0; l <= 4; ++l) {
      const JetMatrix rp = check_transformation_law(s, l, SymbolKind::P);
      const std::string where = "quadratic variant " + std::to_string(variant) + " l=" + std::to_string(l);
      o.expect(rp.order() == order - l && rp.is_zero(), where + " P");
      o.expect(check_transformation_law(s, l, SymbolKind::Q).is_zero(), where + " Q");
    }
  }
  return o;
}

Outcome semigroup() {
  Outcome o;
  SceneRng rng(1005);
  for (int t = 0; t < 25; ++t) {
    const int dim = 1 + t % 3;
    const Scene s = random_scene(rng, {.dim = dim, .order = 6});
    const TensorSeries a = to_series(random_field(rng, 1, 1, dim, 6, R(0)));
    const PQTable p = build_table(s, SymbolKind::P, 4), q = build_table(s, SymbolKind::Q, 4);
    for (int x = 0; x <= 4; ++x)
      for (int y = 0; x + y <= 4; ++y) {
        const TensorSeries r = check_semigroup(a, p, q, R(x), R(y), 4);
        o.expect(all_zero(r), "scene " + std::to_string(t) + " alpha=" + std::to_string(x) + " beta=" + std::to_string(y));
      }
  }
  // d^(1/2) d^(1/2) s = 1.
  SceneRng frng(1006);
  const Scene s = random_scene(frng, {.dim = 1, .order = 4, .backend = Backend::float64, .flat = true});
  const PQTable p = build_table(s, SymbolKind::P, 4), q = build_table(s, SymbolKind::Q, 4);
  TensorSeries a(1, 0, 1, GenPowerSeries(Backend::float64));
  a[0] = GenPowerSeries::monomial(F(1), F(1));
  const TensorSeries twice = frac_covariant(frac_covariant(a, p, q, F(0.5), 4).value, p, q, F(0.5), 4).value;
  const auto& terms = twice[0].terms();
  o.expect(terms.size() == 1 && terms[0].exponent.to_double() == 0.0 && std::fabs(terms[0].coeff.to_double() - 1.0) <= 1e-12,
           "half order twice on s");
  return o;
}

// (alpha + beta) falling total over prod of factorials, computed directly.
mpq_class identity_rhs(const mpq_class& alpha, const mpq_class& beta, const std::vector<int>& parts) {
  int total = 0;
  mpq_class r = 1;
  for (int x : parts) {
    total += x;
    r /= oracle::factorial(x);
  }
  for (int i = 0; i < total; ++i) r *= alpha + beta - i;
  return r;
}

void identity_case(Outcome& o, const Scalar& a, const Scalar& b, const std::vector<int>& k, const std::vector<int>& l) {
  const auto [lhs, rhs] = vandermonde_multinomial_check(a, b, k, l);
  std::vector<int> parts = k;
  parts.insert(parts.end(), l.begin(), l.end());
  o.expect(lhs == rhs && rhs.rational() == identity_rhs(a.rational(), b.rational(), parts),
           "alpha=" + a.str() + " beta=" + b.str());
}

Outcome multinomial_identity() {
  Outcome o;
  // Every split of a total <= 5 into k (up to 2 parts) and l (up to 2 parts).
  std::vector<std::pair<std::vector<int>, std::vector<int>>> shapes;
  for (int np = 0; np <= 2; ++np)
    for (int nq = 0; nq <= 2; ++nq) {
      const int slots = np + nq;
      std::vector<int> v(static_cast<std::size_t>(slots), 0);
      while (true) {
        int sum = 0;
        for (int x : v) sum += x;
        if (sum <= 5) shapes.push_back({std::vector<int>(v.begin(), v.begin() + np), std::vector<int>(v.begin() + np, v.end())});
        std::size_t i = 0;
        while (i < v.size() && v[i] == 5) v[i++] = 0;
        if (i == v.size()) break;
        ++v[i];
      }
    }
  for (int x = 0; x <= 4; ++x)
    for (int y = 0; y <= 4; ++y)
      for (const auto& [k, l] : shapes) identity_case(o, R(x), R(y), k, l);
  SceneRng rng(1007);
  for (int t = 0; t < 20; ++t) {
    const Scalar a = Scalar::ratio(rng.uniform_int(-20, 20), rng.uniform_int(1, 7), Backend::rational);
    const Scalar b = Scalar::ratio(rng.uniform_int(-20, 20), rng.uniform_int(1, 7), Backend::rational);
    for (const auto& [k, l] : shapes) identity_case(o, a, b, k, l);
  }
  return o;
}

Outcome first_order_systems() {
  Outcome o;
  {
    const LinearSystem sys = constant_system({{1.0}}, {GenPowerSeries::monomial(F(1), F(0))}, 1, 20);
    const SolveResult r = solve(sys, 20);
    double err = 0.0;
    for (std::size_t t = 0; t < r.grid.size(); ++t)
      err = std::max(err, std::fabs(r.samples[0][t] - (1.0 - std::exp(-r.grid[t]))));
    o.expect(r.grid.size() == 11 && err <= 1e-9, "f=1 g=1 error " + std::to_string(err));
  }
  SceneRng rng(1008);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_matrix(rng);
    std::vector<GenPowerSeries> g;
    std::vector<std::vector<double>> gc;
    for (int i = 0; i < 2; ++i) {
      std::vector<double> c{rng.small_double(), rng.small_double(), rng.small_double()};
      g.push_back(GenPowerSeries({{F(0), F(c[0])}, {F(1), F(c[1])}, {F(2), F(c[2])}}, Backend::float64));
      gc.push_back(c);
    }
    const SolveResult r = solve(constant_system(f, g, 1, 20), 20);
    const auto rk = oracle::rk4(
        [&](double s, const oracle::Vec& y) {
          oracle::Vec d(2);
          for (std::size_t i = 0; i < 2; ++i)
            d[i] = gc[i][0] + gc[i][1] * s + gc[i][2] * s * s - f[i][0] * y[0] - f[i][1] * y[1];
          return d;
        },
        {0.0, 0.0}, 0.0, 1e-3, 1000, 100);
    double err = 0.0;
    for (std::size_t k = 0; k < rk.size(); ++k)
      for (std::size_t i = 0; i < 2; ++i) err = std::max(err, std::fabs(rk[k][i] - r.samples[i][k]));
    o.expect(rk.size() == r.grid.size() && err <= 1e-6, "system " + std::to_string(t) + " error " + std::to_string(err));
  }
  return o;
}

Outcome second_order_systems() {
  Outcome o;
  SceneRng rng(1009);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_matrix(rng);
    std::vector<GenPowerSeries> g;
    for (int i = 0; i < 2; ++i)
      g.push_back(GenPowerSeries({{F(0), F(rng.small_double())}, {F(1), F(rng.small_double())}, {F(2), F(rng.small_double())}},
                                 Backend::float64));
    const SolveResult r = solve(constant_system(f, g, 2, 25), 25);
    o.expect(r.residual_max <= 1e-8 && r.grid.size() == 11,
             "system " + std::to_string(t) + " residual " + std::to_string(r.residual_max));
  }
  return o;
}

Outcome flat_reductions() {
  Outcome o;
  SceneRng rng(1010);
  for (int t = 0; t < 30; ++t) {
    const int dim = 1 + t % 3;
    const int pp = static_cast<int>(rng.uniform_int(0, 2)), qq = static_cast<int>(rng.uniform_int(0, 2));
    const Scene s = random_scene(rng, {.dim = dim, .order = 6, .flat = true, .random_base_point = true});
    const TensorFieldJet a = random_field(rng, pp, qq, dim, 6, s.base_point);
    const PQTable p = build_table(s, SymbolKind::P, 5), q = build_table(s, SymbolKind::Q, 5);
    for (int k = 0; k <= 5; ++k)
      o.expect(covariant_derivative_k(a, p, q, k) == diff(a, k), "integer scene " + std::to_string(t) + " k=" + std::to_string(k));
  }
  for (int t = 0; t < 20; ++t) {
    const int dim = 1 + t % 3;
    const Scene s = random_scene(rng, {.dim = dim, .order = 6, .backend = Backend::float64, .flat = true});
    const PQTable p = build_table(s, SymbolKind::P, 6), q = build_table(s, SymbolKind::Q, 6);
    TensorSeries a(1, 1, dim, GenPowerSeries(Backend::float64));
    for (std::size_t f = 0; f < a.size(); ++f)
      a[f] = GenPowerSeries({{F(0.5), F(rng.small_double())}, {F(1), F(rng.small_double())}, {F(2.5), F(rng.small_double())}},
                            Backend::float64);
    for (double alpha : {-2.5, -1.0, -0.25, 0.5, 1.0, 1.25}) {
      const FracResult r = frac_covariant(a, p, q, F(alpha), 6);
      const TensorSeries want = frac_diff(a, F(alpha));
      const TensorSeries d = elementwise(r.value, want, [](const GenPowerSeries& x, const GenPowerSeries& y) { return x - y; });
      o.expect(max_abs(d) <= 1e-12, "fractional scene " + std::to_string(t) + " alpha=" + std::to_string(alpha));
    }
  }
  return o;
}

Outcome contraction() {
  Outcome o;
  SceneRng rng(1011);
  for (int t = 0; t < 25; ++t) {
    const int dim = 1 + t % 3;
    const Scene s = random_scene(rng, {.dim = dim, .order = 6});
    const TensorSeries a = to_series(random_field(rng, 1, 1, dim, 6, R(0)));
    const PQTable p = build_table(s, SymbolKind::P, 3), q = build_table(s, SymbolKind::Q, 3);
    for (int alpha = 0; alpha <= 3; ++alpha)
      o.expect(all_zero(check_contraction_commutes(a, p, q, R(alpha), 3)),
               "scene " + std::to_string(t) + " alpha=" + std::to_string(alpha));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"orthogonality of P and Q symbols", orthogonality},
      {"closed formula vs iterated derivative", closed_formula},
      {"derivative expansions", expansions},
      {"transformation laws", transformation_laws},
      {"semigroup", semigroup},
      {"multinomial identity", multinomial_identity},
      {"first-order linear systems", first_order_systems},
      {"second-order linear systems", second_order_systems},
      {"flat reductions", flat_reductions},
      {"contraction commutes", contraction},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s (%ld checks, %.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.checks,
                secs, o.note.empty() ? "" : ": ", o.note.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
