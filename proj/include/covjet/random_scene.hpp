#pragma once

#include <cstdint>
#include <random>

#include "covjet/geometry.hpp"

namespace covjet {

// Seeded generator for test scenes. Draws use plain modulo reduction of
// mt19937_64 output so sequences are identical across standard libraries.
class SceneRng {
 public:
  explicit SceneRng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [lo, hi].
  long uniform_int(long lo, long hi);
  bool chance(int numerator, int denominator);
  // n/d with n in [-3, 3] \ {0} and d in {1, 2, 3}.
  Scalar small_rational(Backend b);
  // Any value in [-1, 1] with denominator up to 4; zero allowed.
  double small_double();

 private:
  std::mt19937_64 eng_;
};

struct SceneOptions {
  int dim = 2;
  int order = 6;
  Backend backend = Backend::rational;
  int gamma_degree = 2;
  int curve_degree = 2;
  bool flat = false;
  // Expand at 0, or at a random point in {-1, -1/2, 0, 1/2, 1}.
  bool random_base_point = false;
};

MultiPoly random_poly(SceneRng& rng, int n_vars, int max_degree, Backend b, int density_num = 1, int density_den = 2);

// Polynomial connection and curve; no field, no transition.
Scene random_scene(SceneRng& rng, const SceneOptions& opt);

// Every component a polynomial in s of degree <= degree.
TensorFieldJet random_field(SceneRng& rng, int p, int q, int dim, int order, const Scalar& base_point, int degree = 3);

// x' = M x with M a product of unit triangular matrices, so the inverse is
// exact.
ChartTransition random_linear_transition(SceneRng& rng, int dim, Backend b);

// x'^i = x^i + c_i(x^1..x^{i-1}) with c_i of degree <= 2; the inverse is
// obtained by back substitution and is again polynomial.
ChartTransition random_triangular_transition(SceneRng& rng, int dim, Backend b);

}  // namespace covjet
