#include "doctest.h"

#include "covjet/errors.hpp"
#include "covjet/manifest.hpp"
#include "helpers.hpp"

using namespace th;

namespace {

const char* kFlat = R"({"dimension": 2, "order": 3, "backend": "rational",
  "curve": [["0", "1"], ["1", "0", "1/2"]]})";

MultiPoly poly1(std::initializer_list<std::pair<unsigned, const char*>> terms) {
  MultiPoly p(1, Backend::rational);
  for (const auto& [e, c] : terms) p.add_term({e}, R(c));
  return p;
}

// x' = x + x^2 with the inverse series sum (-1)^(n-1) Cat(n-1) x'^n
// truncated at the given degree.
ChartTransition quadratic_1d(unsigned degree) {
  MultiPoly inv(1, Backend::rational);
  mpz_class cat = 1;  // Catalan numbers
  for (unsigned n = 1; n <= degree; ++n) {
    const unsigned m = n - 1;
    if (m > 0) cat = cat * 2 * (2 * m - 1) / (m + 1);
    inv.add_term({n}, Scalar::from_bigint(n % 2 == 1 ? cat : mpz_class(-cat), Backend::rational));
  }
  return ChartTransition{1, {poly1({{1, "1"}, {2, "1"}})}, {inv}};
}

Curve line_1d(int order) { return Curve::from_polynomials({{R(0), R(1)}}, order, R(0)); }

}  // namespace

TEST_CASE("flat manifest loads with an empty connection") {
  const Scene s = load_manifest(kFlat);
  CHECK(s.dim == 2);
  CHECK(s.connection.is_flat());
  CHECK(s.connection_form().is_zero());
  CHECK(s.curve.order() == 3);
  CHECK(!s.field);
}

TEST_CASE("manifest dimension mismatches are reported") {
  CHECK_THROWS_AS(load_manifest(R"({"dimension": 3, "order": 3, "backend": "rational",
      "curve": [["0", "1"], ["1"]]})"),
                  DimensionMismatch);
  CHECK_THROWS_AS(load_manifest(R"({"dimension": 1, "order": 3, "backend": "rational", "curve": [["0", "1"]],
      "christoffel": [{"upper": 1, "lower": [1, 2], "poly": []}]})"),
                  DimensionMismatch);
  CHECK_THROWS_AS(load_manifest(R"({"dimension": 1, "order": 3, "backend": "rational", "curve": [["0", "1"]],
      "christoffel": [{"upper": 1, "lower": [1, 1], "poly": [{"coeff": "1", "exponents": [0, 1]}]}]})"),
                  DimensionMismatch);
}

TEST_CASE("manifest parse errors name the field") {
  try {
    load_manifest(R"({"dimension": 1, "order": 3, "backend": "rational", "curve": [["x"]]})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("manifest.curve[0]") != std::string::npos);
  }
  CHECK_THROWS_AS(load_manifest("{"), ParseError);
  CHECK_THROWS_AS(load_manifest(R"({"dimension": 1, "order": 3, "backend": "decimal", "curve": [["0"]]})"), Error);
}

TEST_CASE("manifest rejects a wrong transition inverse") {
  CHECK_THROWS_AS(load_manifest(R"({"dimension": 1, "order": 3, "backend": "rational", "curve": [["0", "1"]],
      "transition": {"forward": [[{"coeff": "2", "exponents": [1]}]],
                     "inverse": [[{"coeff": "1", "exponents": [1]}]]}})"),
                  InvariantViolation);
}

TEST_CASE("manifest round trip on random scenes") {
  SceneRng rng(21);
  for (int t = 0; t < 20; ++t) {
    SceneOptions opt;
    opt.dim = static_cast<int>(rng.uniform_int(1, 3));
    opt.order = static_cast<int>(rng.uniform_int(1, 6));
    opt.random_base_point = true;
    Scene s = random_scene(rng, opt);
    s.field = random_field(rng, static_cast<int>(rng.uniform_int(0, 2)), static_cast<int>(rng.uniform_int(0, 2)),
                           opt.dim, opt.order, s.base_point);
    s.transition = random_triangular_transition(rng, opt.dim, Backend::rational);
    const Scene back = load_manifest(emit_manifest(s));
    CHECK(back.connection == s.connection);
    CHECK(back.curve == s.curve);
    CHECK(back.base_point == s.base_point);
    REQUIRE(back.field);
    CHECK(*back.field == *s.field);
    REQUIRE(back.transition);
    CHECK(*back.transition == *s.transition);
    CHECK(emit_manifest(back) == emit_manifest(s));
    CHECK(scene_digest(back) == scene_digest(s));
  }
}

TEST_CASE("connection form input bypasses Christoffel symbols") {
  const Scene s = load_manifest(R"({"dimension": 1, "order": 4, "backend": "rational", "curve": [["0", "1"]],
      "connection_form": [{"upper": 1, "lower": 1, "coeffs": ["1", "0", "3"]}]})");
  REQUIRE(s.connection_form_override);
  CHECK(s.connection_form()(0, 0) == Jet::from_polynomial(rats({"1", "0", "3"}), 3, R(0)));
  CHECK(load_manifest(emit_manifest(s)).connection_form() == s.connection_form());
}

TEST_CASE("Jacobian of the identity and of linear maps") {
  SceneRng rng(22);
  const Scene s = random_scene(rng, {.dim = 2, .order = 4});
  const ChartTransition id{2, {MultiPoly::variable(2, 0, Backend::rational), MultiPoly::variable(2, 1, Backend::rational)},
                           {MultiPoly::variable(2, 0, Backend::rational), MultiPoly::variable(2, 1, Backend::rational)}};
  CHECK(jacobian_along_curve(id, s.curve, JacobianDirection::forward) == JetMatrix::identity(2, 4, R(0)));
  CHECK(pushforward_curve(id, s.curve) == s.curve);

  const ChartTransition lin = random_linear_transition(rng, 2, Backend::rational);
  const JetMatrix jf = jacobian_along_curve(lin, s.curve, JacobianDirection::forward);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const MultiPoly d = lin.forward[static_cast<std::size_t>(i)].partial(j);
      CHECK(jf(i, j) == Jet::constant(d.evaluate(std::vector<Scalar>{R(0), R(0)}), 4, R(0)));
    }
}

TEST_CASE("quadratic transition in one dimension") {
  const Curve c = line_1d(4);
  const ChartTransition t = quadratic_1d(8);
  CHECK(jacobian_along_curve(t, c, JacobianDirection::forward)(0, 0) == Jet::from_polynomial(rats({"1", "2"}), 4, R(0)));
  CHECK(pushforward_curve(t, c)[0] == Jet::from_polynomial(rats({"0", "1", "1"}), 4, R(0)));
  CHECK_NOTHROW(validate_transition(t, c));
  CHECK_THROWS_AS(validate_transition(quadratic_1d(3), line_1d(6)), InvariantViolation);
}

TEST_CASE("forward and inverse Jacobians are mutually inverse along the curve") {
  SceneRng rng(23);
  for (int t = 0; t < 10; ++t) {
    const int dim = static_cast<int>(rng.uniform_int(1, 3));
    const Scene s = random_scene(rng, {.dim = dim, .order = 5});
    for (const ChartTransition& tr :
         {random_linear_transition(rng, dim, Backend::rational), random_triangular_transition(rng, dim, Backend::rational)}) {
      const JetMatrix jf = jacobian_along_curve(tr, s.curve, JacobianDirection::forward);
      const JetMatrix jg = jacobian_along_curve(tr, s.curve, JacobianDirection::inverse);
      CHECK(jf * jg == JetMatrix::identity(dim, 5, R(0)));
      CHECK(tr.exact_inverse());
    }
  }
}

TEST_CASE("transforming a connection") {
  SceneRng rng(24);
  const Scene s = random_scene(rng, {.dim = 2, .order = 3});
  const ChartTransition id{2, {MultiPoly::variable(2, 0, Backend::rational), MultiPoly::variable(2, 1, Backend::rational)},
                           {MultiPoly::variable(2, 0, Backend::rational), MultiPoly::variable(2, 1, Backend::rational)}};
  CHECK(transform_connection(id, s.connection) == s.connection);
  CHECK(transform_connection(random_linear_transition(rng, 2, Backend::rational), Connection(2, Backend::rational))
            .is_flat());
  CHECK_THROWS_AS(transform_connection(quadratic_1d(8), Connection(1, Backend::rational)), NonPolynomialTransform);
}

TEST_CASE("transformed connection along the curve for a non-polynomial case") {
  // Gamma' = (dx'/dx) d^2x/dx'^2 = -2/(1+2x)^2; along x = s with
  // dx'/ds = 1+2s this gives P'^{<1>} = -2/(1+2s).
  const int order = 5;
  const Curve c = line_1d(order);
  const JetMatrix p1 = transformed_connection_form(quadratic_1d(order + 2), Connection(1, Backend::rational), c);
  std::vector<Scalar> want;
  Scalar term = R(-2);
  for (int m = 0; m < order; ++m) {
    want.push_back(term);
    term *= R(-2);
  }
  CHECK(p1(0, 0) == Jet(want, R(0)));
}

TEST_CASE("tensor transformation with a linear map") {
  SceneRng rng(25);
  const Scene s = random_scene(rng, {.dim = 2, .order = 3});
  const ChartTransition lin = random_linear_transition(rng, 2, Backend::rational);
  const ChartTransition back{2, lin.inverse, lin.forward};
  const TensorFieldJet a = random_field(rng, 1, 1, 2, 3, R(0));
  const Curve primed = pushforward_curve(lin, s.curve);
  CHECK(transform_tensor(transform_tensor(a, lin, s.curve), back, primed) == a);
}
