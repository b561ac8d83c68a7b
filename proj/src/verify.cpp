#include "covjet/verify.hpp"

#include <chrono>
#include <sstream>

#include "covjet/errors.hpp"
#include "covjet/fractional.hpp"
#include "covjet/manifest.hpp"
#include "covjet/random_scene.hpp"

namespace covjet {

namespace {

using nlohmann::json;

struct Trial {
  std::map<std::string, long> checks;
  std::vector<VerifyFailure> failures;
  std::string digest;

  // Counts the check; records a failure when residual is non-empty.
  void record(const std::string& identity, json indices, const std::string& residual) {
    ++checks[identity];
    if (!residual.empty()) failures.push_back({identity, digest, std::move(indices), residual});
  }
};

std::string jet_text(const Jet& j) {
  std::ostringstream o;
  o << "[";
  for (int m = 0; m <= j.order(); ++m) o << (m ? ", " : "") << j[m].str();
  o << "] at s0 = " << j.base_point().str();
  return o.str();
}

// Empty when the matrix vanishes; otherwise names the first non-zero entry.
std::string matrix_residual(const JetMatrix& m) {
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (!m(i, j).is_zero())
        return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + jet_text(m(i, j));
  return {};
}

std::string tensor_residual(const TensorFieldJet& x, const TensorFieldJet& y) {
  for (std::size_t f = 0; f < x.size(); ++f) {
    const int order = std::min(x[f].order(), y[f].order());
    if (!agree_through(x[f], y[f], order))
      return "component " + component_key(x.multi_index(f), x.p()) + ": " + jet_text(x[f].truncated(order) - y[f].truncated(order));
  }
  return {};
}

std::string series_text(const GenPowerSeries& s) {
  std::ostringstream o;
  for (std::size_t i = 0; i < s.terms().size() && i < 4; ++i)
    o << (i ? " + " : "") << "(" << s.terms()[i].coeff.str() << ") s^" << s.terms()[i].exponent.str();
  if (s.terms().size() > 4) o << " + ...";
  return o.str();
}

// Exact: every retained term must vanish. Float: every |coeff| <= tol.
std::string series_residual(const TensorSeries& r, double tol = 0.0) {
  for (std::size_t f = 0; f < r.size(); ++f) {
    const bool bad = tol == 0.0 ? !r[f].is_zero() : r[f].max_abs_coeff() > tol;
    if (bad) return "component " + component_key(r.multi_index(f), r.p()) + ": " + series_text(r[f]);
  }
  return {};
}

TensorSeries series_difference(const TensorSeries& x, const TensorSeries& y) {
  return elementwise(x, y, [](const GenPowerSeries& a, const GenPowerSeries& b) { return a - b; });
}

SceneOptions scene_options(SceneRng& rng, const VerifyOptions& opt, int order) {
  SceneOptions so;
  so.dim = static_cast<int>(rng.uniform_int(1, opt.dim_max));
  so.order = order;
  so.flat = opt.flat;
  return so;
}

void pq_trial(Trial& t, SceneRng& rng, const VerifyOptions& opt) {
  SceneOptions so = scene_options(rng, opt, std::max(opt.k_max, 1));
  so.random_base_point = true;
  Scene s = random_scene(rng, so);
  const ChartTransition linear = random_linear_transition(rng, so.dim, s.backend);
  std::optional<ChartTransition> tri;
  if (so.dim >= 2) tri = random_triangular_transition(rng, so.dim, s.backend);
  s.transition = linear;
  t.digest = scene_digest(s);

  const PQTable p = build_table(s, SymbolKind::P, opt.k_max, opt.exec);
  const PQTable q = build_table(s, SymbolKind::Q, opt.k_max, opt.exec);
  for (int k = 0; k <= opt.k_max; ++k) t.record("orthogonality", {{"k", k}}, matrix_residual(check_orthogonality(p, q, k)));
  for (int l = 0; l <= opt.k_max; ++l)
    for (int k = 0; l + k <= opt.k_max; ++k) {
      t.record("expansion_PQ", {{"l", l}, {"k", k}},
               matrix_residual(check_derivative_expansion(p, q, l, k, ExpansionVariant::PQ)));
      t.record("expansion_QP", {{"l", l}, {"k", k}},
               matrix_residual(check_derivative_expansion(p, q, l, k, ExpansionVariant::QP)));
    }
  const int l_max = std::min(opt.k_max, 5);
  for (int l = 0; l <= l_max; ++l) {
    t.record("transformation_P_linear", {{"l", l}}, matrix_residual(check_transformation_law(s, l, SymbolKind::P)));
    t.record("transformation_Q_linear", {{"l", l}}, matrix_residual(check_transformation_law(s, l, SymbolKind::Q)));
  }
  if (tri) {
    Scene st = s;
    st.transition = *tri;
    for (int l = 0; l <= l_max; ++l) {
      t.record("transformation_P_polynomial", {{"l", l}}, matrix_residual(check_transformation_law(st, l, SymbolKind::P)));
      t.record("transformation_Q_polynomial", {{"l", l}}, matrix_residual(check_transformation_law(st, l, SymbolKind::Q)));
    }
  }
}

void covariant_trial(Trial& t, SceneRng& rng, const VerifyOptions& opt) {
  SceneOptions so = scene_options(rng, opt, opt.k_max + 1);
  so.random_base_point = true;
  Scene s = random_scene(rng, so);
  const int p_val = static_cast<int>(rng.uniform_int(0, 2)), q_val = static_cast<int>(rng.uniform_int(0, 2));
  const int k = static_cast<int>(rng.uniform_int(0, opt.k_max));
  s.field = random_field(rng, p_val, q_val, so.dim, so.order, s.base_point);
  t.digest = scene_digest(s);
  const json idx = {{"k", k}, {"p", p_val}, {"q", q_val}};

  const PQTable p = build_table(s, SymbolKind::P, k, opt.exec), q = build_table(s, SymbolKind::Q, k, opt.exec);
  const TensorFieldJet closed = covariant_derivative_k(*s.field, p, q, k, opt.exec);
  t.record("closed_formula_vs_iterated", idx,
           tensor_residual(closed, iterate_covariant_oracle(*s.field, s.connection_form(), k, opt.exec)));

  Scene flat = s;
  flat.connection = Connection(s.dim, s.backend);
  const TensorFieldJet flat_closed = covariant_derivative_k(*s.field, build_table(flat, SymbolKind::P, k, opt.exec),
                                                            build_table(flat, SymbolKind::Q, k, opt.exec), k, opt.exec);
  t.record("flat_reduction_integer", idx, tensor_residual(flat_closed, diff(*s.field, k)));

  // Tensoriality under a constant linear change of chart.
  const ChartTransition tr = random_linear_transition(rng, so.dim, s.backend);
  const Curve primed = pushforward_curve(tr, s.curve);
  const Connection conn2 = transform_connection(tr, s.connection);
  const TensorFieldJet there = covariant_derivative_k(transform_tensor(*s.field, tr, s.curve), build_P(conn2, primed, k),
                                                      build_Q(conn2, primed, k), k, opt.exec);
  t.record("tensoriality_linear", idx, tensor_residual(transform_tensor(closed, tr, s.curve), there));
}

void fractional_trial(Trial& t, SceneRng& rng, const VerifyOptions& opt) {
  const int kk = opt.k_max;
  SceneOptions so = scene_options(rng, opt, kk + 2);
  Scene s = random_scene(rng, so);
  const int p_val = static_cast<int>(rng.uniform_int(1, 2)), q_val = static_cast<int>(rng.uniform_int(0, 1));
  s.field = random_field(rng, p_val, q_val, so.dim, so.order, s.base_point);
  t.digest = scene_digest(s);
  const PQTable p = build_table(s, SymbolKind::P, kk, opt.exec), q = build_table(s, SymbolKind::Q, kk, opt.exec);
  const TensorSeries a = to_series(*s.field);
  const int n = kk;

  for (int x = 0; x <= kk; ++x)
    for (int y = 0; x + y <= kk; ++y)
      t.record("semigroup_integer", {{"alpha", x}, {"beta", y}},
               series_residual(check_semigroup(a, p, q, Scalar::from_int(x, s.backend), Scalar::from_int(y, s.backend), n,
                                               opt.exec)));

  for (int x = 0; x <= kk; ++x) {
    const TensorSeries frac = frac_covariant(a, p, q, Scalar::from_int(x, s.backend), n, opt.exec).value;
    const TensorSeries integer = to_series(covariant_derivative_k(*s.field, p, q, x, opt.exec));
    t.record("fractional_integer_order", {{"alpha", x}}, series_residual(series_difference(frac, integer)));
  }

  TensorFieldJet mixed = random_field(rng, 1, 1, so.dim, so.order, s.base_point);
  const TensorSeries am = to_series(mixed);
  for (int x = 0; x <= std::min(3, kk); ++x)
    t.record("contraction_commutes", {{"alpha", x}},
             series_residual(check_contraction_commutes(am, p, q, Scalar::from_int(x, s.backend), n, opt.exec)));

  for (int r = 0; r < 3; ++r) {
    const Scalar alpha = Scalar::ratio(rng.uniform_int(-12, 12), rng.uniform_int(1, 5), Backend::rational);
    const Scalar beta = Scalar::ratio(rng.uniform_int(-12, 12), rng.uniform_int(1, 5), Backend::rational);
    std::vector<int> k_parts, l_parts;
    int budget = static_cast<int>(rng.uniform_int(0, 5));
    for (int i = 0; i < p_val; ++i) {
      k_parts.push_back(static_cast<int>(rng.uniform_int(0, budget)));
      budget -= k_parts.back();
    }
    for (int i = 0; i < q_val; ++i) {
      l_parts.push_back(static_cast<int>(rng.uniform_int(0, budget)));
      budget -= l_parts.back();
    }
    const auto [lhs, rhs] = vandermonde_multinomial_check(alpha, beta, k_parts, l_parts);
    t.record("multinomial_identity",
             {{"alpha", alpha.str()}, {"beta", beta.str()}, {"k", k_parts}, {"l", l_parts}},
             lhs == rhs ? std::string() : "lhs " + lhs.str() + " != rhs " + rhs.str());
  }

  // Flat reduction for a fractional order, float backend.
  SceneOptions fo = so;
  fo.flat = true;
  fo.backend = Backend::float64;
  const Scene fs = random_scene(rng, fo);
  const PQTable fp = build_table(fs, SymbolKind::P, kk, opt.exec), fq = build_table(fs, SymbolKind::Q, kk, opt.exec);
  TensorSeries fa(1, 1, fo.dim, GenPowerSeries(Backend::float64));
  for (std::size_t f = 0; f < fa.size(); ++f)
    fa[f] = GenPowerSeries({{Scalar(0.5), Scalar(rng.small_double())}, {Scalar(1.0), Scalar(rng.small_double())},
                            {Scalar(2.0), Scalar(rng.small_double())}},
                           Backend::float64);
  const double alpha = static_cast<double>(rng.uniform_int(-8, 5)) / 4.0 + 0.125;
  const TensorSeries flat_frac = frac_covariant(fa, fp, fq, Scalar(alpha), kk, opt.exec).value;
  t.record("flat_reduction_fractional", {{"alpha", alpha}},
           series_residual(series_difference(flat_frac, frac_diff(fa, Scalar(alpha), opt.exec)), 1e-12));
}

Trial run_trial(const std::string& suite, std::uint64_t seed, const VerifyOptions& opt) {
  Trial t;
  SceneRng rng(seed);
  try {
    if (suite == "pq") pq_trial(t, rng, opt);
    if (suite == "covariant") covariant_trial(t, rng, opt);
    if (suite == "fractional") fractional_trial(t, rng, opt);
  } catch (const std::exception& e) {
    t.record("exception_" + suite, json::object(), e.what());
  }
  return t;
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> suites;
  if (opt.suite == "all")
    suites = {"pq", "covariant", "fractional"};
  else if (opt.suite == "pq" || opt.suite == "covariant" || opt.suite == "fractional")
    suites = {opt.suite};
  else
    throw Error("unknown suite '" + opt.suite + "' (expected pq, covariant, fractional or all)");
  if (opt.trials < 0) throw Error("--trials must be nonnegative");
  if (opt.dim_max < 1) throw Error("--dim-max must be at least 1");
  if (opt.k_max < 0) throw Error("--k-max must be nonnegative");

  VerifyReport report;
  report.options = opt;
  for (const std::string& suite : suites) {
    std::vector<Trial> trials(static_cast<std::size_t>(opt.trials));
    // Trials run in parallel; the kernels inside each trial then run on the
    // calling thread only.
    parallel_for(trials.size(), opt.exec, [&](std::size_t i) {
      trials[i] = run_trial(suite, opt.seed + static_cast<std::uint64_t>(i), opt);
    });
    for (std::size_t i = 0; i < trials.size(); ++i) {
      for (const auto& [id, n] : trials[i].checks) report.checks[id] += n;
      for (VerifyFailure& f : trials[i].failures) {
        f.indices["trial"] = static_cast<long>(i);
        report.failures.push_back(std::move(f));
      }
    }
  }
  report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json report_json(const VerifyReport& r, bool include_elapsed) {
  json failures = json::array();
  for (const VerifyFailure& f : r.failures)
    failures.push_back(
        {{"identity", f.identity}, {"scene_digest", f.scene_digest}, {"indices", f.indices}, {"residual", f.residual}});
  json out;
  out["format"] = 1;
  out["suite"] = r.options.suite;
  out["trials"] = r.options.trials;
  out["seed"] = r.options.seed;
  out["dim_max"] = r.options.dim_max;
  out["k_max"] = r.options.k_max;
  out["flat"] = r.options.flat;
  out["checks"] = r.checks;
  out["failures"] = failures;
  out["passed"] = r.ok();
  if (include_elapsed) out["elapsed"] = r.elapsed;
  return out;
}

}  // namespace covjet
