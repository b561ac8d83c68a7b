#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "covjet/covariant.hpp"
#include "covjet/power_series.hpp"

namespace covjet {

using TensorSeries = Tensor<GenPowerSeries>;

// Gamma(beta + 1) / Gamma(beta - alpha + 1) for beta > -1 and
// beta - alpha > -1. Exact for integer alpha; the rational backend throws
// DomainError for non-integer alpha.
Scalar gamma_ratio(const Scalar& beta, const Scalar& alpha);

// Riemann-Liouville derivative of order alpha with base point 0, termwise:
// c s^beta -> c Gamma(beta+1)/Gamma(beta-alpha+1) s^(beta-alpha). Terms that
// land on a pole of the denominator vanish; a surviving exponent <= -1
// throws DomainError. Negative alpha integrates from 0.
GenPowerSeries frac_diff(const GenPowerSeries& f, const Scalar& alpha);
TensorSeries frac_diff(const TensorSeries& a, const Scalar& alpha, Exec exec = Exec::parallel);

TensorSeries to_series(const TensorFieldJet& a);

struct FracResult {
  TensorSeries value;
  int truncation_N = 0;
  // Index of the last a-term actually summed.
  int last_term = 0;
  // Per component: l1 norm of the last retained a-term.
  std::vector<double> tail_report;
  // l1 norm (summed over components) of every a-term, a = 0..last_term.
  std::vector<double> term_norms;
  // Geometric-mean growth factor of the last (up to five) term norms.
  double tail_ratio = 0.0;
  bool diverging = false;
};

// Partial sum over a = 0..N of
//   falling(alpha, a) sum_comp prod(1/m!) prod(1/l!) P..Q.. d^(alpha-a) A.
// For alpha a nonnegative integer the sum stops at a = alpha.
FracResult frac_covariant(const TensorSeries& a, const PQTable& p, const PQTable& q, const Scalar& alpha, int n,
                          Exec exec = Exec::parallel);

// Growth test used for the diverging flag: compares the last term norm with
// the one up to four places earlier.
std::pair<double, bool> tail_growth(const std::vector<double>& term_norms);

// nabla^beta(nabla^alpha A) - nabla^(alpha+beta) A.
TensorSeries check_semigroup(const TensorSeries& a, const PQTable& p, const PQTable& q, const Scalar& alpha,
                             const Scalar& beta, int n, Exec exec = Exec::parallel);

// contract(nabla^alpha A) - nabla^alpha(contract A) on the last upper and
// last lower slot.
TensorSeries check_contraction_commutes(const TensorSeries& a, const PQTable& p, const PQTable& q, const Scalar& alpha,
                                        int n, Exec exec = Exec::parallel);

// Both sides of the two-variable multinomial identity behind the semigroup
// property; they must agree as polynomials in alpha and beta.
std::pair<Scalar, Scalar> vandermonde_multinomial_check(const Scalar& alpha, const Scalar& beta,
                                                        const std::vector<int>& k, const std::vector<int>& l);

// True when every term of the difference below the common horizon is zero.
bool series_agree(const GenPowerSeries& x, const GenPowerSeries& y);
// Largest |coefficient| of x - y below the common horizon.
double series_distance(const GenPowerSeries& x, const GenPowerSeries& y);

// dY/ds + f Y = g (order 1) or the second-order system obtained by applying
// the covariant derivative twice with P^{<1>} = f:
//   Y'' + 2 f Y' + (f' + f f) Y = g.
struct LinearSystem {
  int dim = 0;
  int order_of_system = 1;
  Backend backend = Backend::float64;
  JetMatrix f{1, Jet::zero(0, Scalar(0.0))};
  std::vector<GenPowerSeries> g;
};

struct SampleGrid {
  double start = 0.0, stop = 1.0, step = 0.1;
  std::vector<double> points() const;
};

struct SolveResult {
  FracResult frac;
  // The system's left side minus g, as series; all terms below order N-1
  // vanish exactly in the rational backend.
  std::vector<GenPowerSeries> residual_series;
  std::vector<double> grid;
  // samples[i][t] = Y^i(grid[t]).
  std::vector<std::vector<double>> samples;
  // max over grid and components of |left side - g| with Y substituted.
  double residual_max = 0.0;
};

SolveResult solve_first_order(const LinearSystem& sys, int n, const SampleGrid& grid = {}, Exec exec = Exec::parallel);
SolveResult solve_second_order(const LinearSystem& sys, int n, const SampleGrid& grid = {}, Exec exec = Exec::parallel);
SolveResult solve(const LinearSystem& sys, int n, const SampleGrid& grid = {}, Exec exec = Exec::parallel);

// Pointwise residual |left side - g| of the system at s, using the series Y.
std::vector<double> system_residual_at(const LinearSystem& sys, const std::vector<GenPowerSeries>& y, double s);

// System documents (JSON):
//   dimension, order_of_system, f: [[coeffs..] x n] x n, g: [[{exponent, coeff}]..],
//   truncation_N, sample_grid: {start, stop, step}, backend (default float64).
struct SystemDocument {
  LinearSystem system;
  int truncation_N = 20;
  SampleGrid grid;
};

// The f jets get order max(trunc, deg f) + 2 so every symbol level up to
// trunc is available.
SystemDocument load_system(std::string_view text, std::optional<int> trunc_override = std::nullopt);
nlohmann::json solve_result_json(const SystemDocument& doc, const SolveResult& r);
nlohmann::json series_to_json(const GenPowerSeries& s);

}  // namespace covjet
