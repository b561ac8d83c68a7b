#include "covjet/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "covjet/errors.hpp"

namespace covjet {

namespace {

constexpr double kPoleTol = 1e-12;

// Integer-valued within tolerance (floats) or exactly (rationals).
std::optional<long> near_integer(const Scalar& x) {
  if (x.is_rational()) {
    if (x.is_integer()) return x.to_long();
    return std::nullopt;
  }
  const double v = x.to_double();
  const double r = std::round(v);
  if (std::fabs(v - r) <= kPoleTol * std::max(1.0, std::fabs(v))) return static_cast<long>(r);
  return std::nullopt;
}

double jet_value(const Jet& j, double s) {
  const double t = s - j.base_point().to_double();
  double acc = 0.0;
  for (int m = j.order(); m >= 0; --m) acc = acc * t + j[m].to_double();
  return acc;
}

}  // namespace

Scalar gamma_ratio(const Scalar& beta, const Scalar& alpha) {
  const Backend b = beta.backend();
  if (alpha.is_integer()) {
    const long n = alpha.to_long();
    if (n >= 0) return falling_product(beta, static_cast<unsigned>(n));
    Scalar rising = Scalar::one(b);
    for (long i = 1; i <= -n; ++i) rising *= beta + Scalar::from_int(i, b);
    return Scalar::one(b) / rising;
  }
  if (b == Backend::rational)
    throw DomainError("fractional order " + alpha.str() + " has irrational Gamma ratios; use the float64 backend");
  const double x = beta.to_double() + 1.0;
  const double y = beta.to_double() - alpha.to_double() + 1.0;
  if (x <= 0.0 || y <= 0.0) throw DomainError("Gamma ratio outside the representable class");
  if (x < 170.0 && y < 170.0) return Scalar(std::tgamma(x) / std::tgamma(y));
  return Scalar(std::exp(std::lgamma(x) - std::lgamma(y)));
}

GenPowerSeries frac_diff(const GenPowerSeries& f, const Scalar& alpha) {
  const Backend b = f.backend();
  if (alpha.backend() != b) throw BackendMismatch("fractional order and series use different backends");
  const Scalar minus_one = -Scalar::one(b);
  std::vector<PowerTerm> out;
  for (const PowerTerm& t : f.terms()) {
    const Scalar e = t.exponent - alpha;
    const auto ei = near_integer(e);
    if (ei && *ei <= -1) continue;  // 1/Gamma vanishes at its poles
    if (e <= minus_one)
      throw DomainError("order " + alpha.str() + " maps s^" + t.exponent.str() + " to s^" + e.str() +
                        ", outside the exponents > -1");
    out.push_back({e, t.coeff * gamma_ratio(t.exponent, alpha)});
  }
  std::optional<Scalar> h;
  if (f.horizon()) h = *f.horizon() - alpha;
  return GenPowerSeries(std::move(out), b, h);
}

TensorSeries frac_diff(const TensorSeries& a, const Scalar& alpha, Exec exec) {
  TensorSeries out = a;
  parallel_for(a.size(), exec, [&](std::size_t f) { out[f] = frac_diff(a[f], alpha); });
  return out;
}

TensorSeries to_series(const TensorFieldJet& a) {
  TensorSeries out(a.p(), a.q(), a.dim(), GenPowerSeries(a[0].backend()));
  for (std::size_t f = 0; f < a.size(); ++f) out[f] = GenPowerSeries::from_jet(a[f]);
  return out;
}

std::pair<double, bool> tail_growth(const std::vector<double>& norms) {
  const std::size_t count = norms.size();
  if (count < 2) return {0.0, false};
  const std::size_t w = std::min<std::size_t>(5, count);
  const double first = norms[count - w], last = norms[count - 1];
  if (first == 0.0) {
    if (last > 0.0) return {std::numeric_limits<double>::infinity(), true};
    return {0.0, false};
  }
  const double ratio = std::pow(last / first, 1.0 / static_cast<double>(w - 1));
  return {ratio, last >= first};
}

FracResult frac_covariant(const TensorSeries& a, const PQTable& p, const PQTable& q, const Scalar& alpha, int n,
                          Exec exec) {
  if (n < 0) throw OrderExhausted("negative truncation");
  if (a.dim() != p.dim() || a.dim() != q.dim()) throw DimensionMismatch("tensor and symbol tables differ in dimension");
  const Backend b = alpha.backend();
  int a_max = n;
  if (alpha.is_integer() && alpha.to_long() >= 0) a_max = static_cast<int>(std::min<long>(n, alpha.to_long()));
  if (a.rank() == 0) a_max = 0;

  FracResult r{.value = frac_diff(a, alpha, exec), .truncation_N = n, .last_term = 0, .tail_report = {}, .term_norms = {}};
  auto norm_of = [](const TensorSeries& t) {
    double acc = 0.0;
    for (const GenPowerSeries& c : t.components()) acc += c.l1_norm();
    return acc;
  };
  r.term_norms.push_back(norm_of(r.value));
  TensorSeries last = r.value;
  for (int k = 1; k <= a_max; ++k) {
    auto s = detail::composition_sum(frac_diff(a, alpha - Scalar::from_int(k, b), exec), p, q, k, b, exec);
    TensorSeries term = detail::scaled(std::move(*s), falling_product(alpha, static_cast<unsigned>(k)));
    r.term_norms.push_back(norm_of(term));
    r.value = detail::add(r.value, term);
    last = std::move(term);
    r.last_term = k;
  }
  for (const GenPowerSeries& c : last.components()) r.tail_report.push_back(c.l1_norm());
  const bool terminates = alpha.is_integer() && alpha.to_long() >= 0 && alpha.to_long() <= n;
  if (!terminates && a.rank() > 0) std::tie(r.tail_ratio, r.diverging) = tail_growth(r.term_norms);
  return r;
}

TensorSeries check_semigroup(const TensorSeries& a, const PQTable& p, const PQTable& q, const Scalar& alpha,
                             const Scalar& beta, int n, Exec exec) {
  const TensorSeries inner = frac_covariant(a, p, q, alpha, n, exec).value;
  const TensorSeries lhs = frac_covariant(inner, p, q, beta, n, exec).value;
  const TensorSeries rhs = frac_covariant(a, p, q, alpha + beta, n, exec).value;
  return elementwise(lhs, rhs, [](const GenPowerSeries& x, const GenPowerSeries& y) { return x - y; });
}

TensorSeries check_contraction_commutes(const TensorSeries& a, const PQTable& p, const PQTable& q, const Scalar& alpha,
                                        int n, Exec exec) {
  if (a.p() < 1 || a.q() < 1) throw DimensionMismatch("contraction needs at least one upper and one lower slot");
  const int up = a.p() - 1, low = a.rank() - 1;
  const TensorSeries lhs = contract(frac_covariant(a, p, q, alpha, n, exec).value, up, low);
  const TensorSeries rhs = frac_covariant(contract(a, up, low), p, q, alpha, n, exec).value;
  return elementwise(lhs, rhs, [](const GenPowerSeries& x, const GenPowerSeries& y) { return x - y; });
}

std::pair<Scalar, Scalar> vandermonde_multinomial_check(const Scalar& alpha, const Scalar& beta,
                                                        const std::vector<int>& k, const std::vector<int>& l) {
  const Backend b = alpha.backend();
  std::vector<unsigned> parts;
  for (const auto* v : {&k, &l})
    for (int x : *v) {
      if (x < 0) throw DomainError("composition parts must be nonnegative");
      parts.push_back(static_cast<unsigned>(x));
    }
  unsigned total = 0;
  for (unsigned x : parts) total += x;

  Scalar lhs = Scalar::zero(b);
  std::vector<unsigned> first(parts.size()), second(parts.size());
  // Odometer over first[i] in 0..parts[i]; second[i] = parts[i] - first[i].
  while (true) {
    unsigned sa = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      second[i] = parts[i] - first[i];
      sa += first[i];
    }
    lhs += falling_product(beta, total - sa) * inverse_factorial_product(second, b) * falling_product(alpha, sa) *
           inverse_factorial_product(first, b);
    std::size_t i = 0;
    while (i < parts.size() && first[i] == parts[i]) first[i++] = 0;
    if (i == parts.size()) break;
    ++first[i];
  }
  const Scalar rhs = falling_product(alpha + beta, total) * inverse_factorial_product(parts, b);
  return {lhs, rhs};
}

bool series_agree(const GenPowerSeries& x, const GenPowerSeries& y) { return (x - y).is_zero(); }

double series_distance(const GenPowerSeries& x, const GenPowerSeries& y) { return (x - y).max_abs_coeff(); }

std::vector<double> SampleGrid::points() const {
  if (!(step > 0.0) || stop < start) throw ParseError("sample_grid: need step > 0 and stop >= start");
  const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::vector<double> system_residual_at(const LinearSystem& sys, const std::vector<GenPowerSeries>& y, double s) {
  const int n = sys.dim;
  std::vector<double> yv, d1, d2;
  for (const GenPowerSeries& c : y) {
    const GenPowerSeries dc = c.derivative();
    yv.push_back(c.evaluate(s));
    d1.push_back(dc.evaluate(s));
    if (sys.order_of_system == 2) d2.push_back(dc.derivative().evaluate(s));
  }
  std::vector<double> fv(static_cast<std::size_t>(n * n)), dfv(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      fv[static_cast<std::size_t>(i * n + j)] = jet_value(sys.f(i, j), s);
      if (sys.order_of_system == 2) dfv[static_cast<std::size_t>(i * n + j)] = jet_value(diff(sys.f(i, j)), s);
    }
  auto f = [&](int i, int j) { return fv[static_cast<std::size_t>(i * n + j)]; };
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    double r = -sys.g[ui].evaluate(s);
    if (sys.order_of_system == 1) {
      r += d1[ui];
      for (int j = 0; j < n; ++j) r += f(i, j) * yv[static_cast<std::size_t>(j)];
    } else {
      r += d2[ui];
      for (int j = 0; j < n; ++j) {
        double ff = 0.0;
        for (int l = 0; l < n; ++l) ff += f(i, l) * f(l, j);
        r += 2.0 * f(i, j) * d1[static_cast<std::size_t>(j)] +
             (dfv[static_cast<std::size_t>(i * n + j)] + ff) * yv[static_cast<std::size_t>(j)];
      }
    }
    out.push_back(r);
  }
  return out;
}

namespace {

void require_system(const LinearSystem& sys, int order) {
  if (sys.order_of_system != order)
    throw InvariantViolation("system of order " + std::to_string(sys.order_of_system) + " passed to the order-" +
                             std::to_string(order) + " solver");
  if (sys.dim <= 0 || sys.f.dim() != sys.dim || static_cast<int>(sys.g.size()) != sys.dim)
    throw DimensionMismatch("system dimension does not match f and g");
}

std::vector<GenPowerSeries> series_residual(const LinearSystem& sys, const std::vector<GenPowerSeries>& y) {
  const int n = sys.dim;
  auto mat_series = [&](const JetMatrix& m, int i, int j) { return GenPowerSeries::from_jet(m(i, j)); };
  std::optional<JetMatrix> c0;
  if (sys.order_of_system == 2) c0 = diff(sys.f) + sys.f * sys.f;
  const Scalar two = Scalar::from_int(2, sys.backend);
  std::vector<GenPowerSeries> out;
  for (int i = 0; i < n; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    GenPowerSeries r = -sys.g[ui];
    if (sys.order_of_system == 1) {
      r += y[ui].derivative();
      for (int j = 0; j < n; ++j) r += mat_series(sys.f, i, j) * y[static_cast<std::size_t>(j)];
    } else {
      r += y[ui].derivative().derivative();
      for (int j = 0; j < n; ++j) {
        const std::size_t uj = static_cast<std::size_t>(j);
        r += two * (mat_series(sys.f, i, j) * y[uj].derivative());
        r += mat_series(*c0, i, j) * y[uj];
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

SolveResult solve_with(const LinearSystem& sys, int n, const SampleGrid& grid, Exec exec, long alpha) {
  const PQTable p = build_from_level_one(SymbolKind::P, sys.f, n, exec);
  const PQTable q = build_from_level_one(SymbolKind::Q, sys.f, 0, exec);
  TensorSeries g(1, 0, sys.dim, GenPowerSeries(sys.backend));
  for (int i = 0; i < sys.dim; ++i) g[static_cast<std::size_t>(i)] = sys.g[static_cast<std::size_t>(i)];

  SolveResult r{.frac = frac_covariant(g, p, q, Scalar::from_int(alpha, sys.backend), n, exec),
                .residual_series = {},
                .grid = {},
                .samples = {}};
  const std::vector<GenPowerSeries> y(r.frac.value.components().begin(), r.frac.value.components().end());
  r.residual_series = series_residual(sys, y);
  r.grid = grid.points();
  r.samples.assign(static_cast<std::size_t>(sys.dim), {});
  bool singular_at_zero = false;
  for (const GenPowerSeries& gi : sys.g)
    for (const PowerTerm& t : gi.terms())
      if (t.exponent.to_double() < 0.0) singular_at_zero = true;
  for (double s : r.grid) {
    for (int i = 0; i < sys.dim; ++i)
      r.samples[static_cast<std::size_t>(i)].push_back(y[static_cast<std::size_t>(i)].evaluate(s));
    if (singular_at_zero && s == 0.0) continue;
    for (double v : system_residual_at(sys, y, s)) r.residual_max = std::max(r.residual_max, std::fabs(v));
  }
  return r;
}

}  // namespace

SolveResult solve_first_order(const LinearSystem& sys, int n, const SampleGrid& grid, Exec exec) {
  require_system(sys, 1);
  return solve_with(sys, n, grid, exec, -1);
}

SolveResult solve_second_order(const LinearSystem& sys, int n, const SampleGrid& grid, Exec exec) {
  require_system(sys, 2);
  return solve_with(sys, n, grid, exec, -2);
}

SolveResult solve(const LinearSystem& sys, int n, const SampleGrid& grid, Exec exec) {
  if (sys.order_of_system == 2) return solve_second_order(sys, n, grid, exec);
  return solve_first_order(sys, n, grid, exec);
}

namespace {

using nlohmann::json;

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

int need_int(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

// System documents accept scalars as strings or plain JSON numbers.
Scalar scalar_value(const json& v, Backend b, const std::string& where) {
  std::string text;
  if (v.is_string())
    text = v.get<std::string>();
  else if (v.is_number())
    text = v.dump();
  else
    throw ParseError(where + ": expected a scalar");
  try {
    return Scalar::parse(text, b);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

double number_value(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  return scalar_value(v, Backend::float64, where).to_double();
}

}  // namespace

SystemDocument load_system(std::string_view text, std::optional<int> trunc_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("system: ") + e.what());
  }
  const std::string w = "system";
  if (!doc.is_object()) throw ParseError(w + ": expected a JSON object");
  if (doc.contains("format") && (!doc["format"].is_number_integer() || doc["format"].get<int>() != 1))
    throw ParseError(w + ".format: only format 1 is supported");

  SystemDocument out;
  LinearSystem& sys = out.system;
  sys.dim = need_int(doc, "dimension", w);
  if (sys.dim <= 0) throw DimensionMismatch(w + ".dimension: must be positive");
  sys.order_of_system = need_int(doc, "order_of_system", w);
  if (sys.order_of_system != 1 && sys.order_of_system != 2) throw ParseError(w + ".order_of_system: must be 1 or 2");
  if (doc.contains("backend")) {
    if (!doc["backend"].is_string()) throw ParseError(w + ".backend: expected a string");
    try {
      sys.backend = parse_backend(doc["backend"].get<std::string>());
    } catch (const Error& e) {
      throw ParseError(w + ".backend: " + e.what());
    }
  }
  if (trunc_override)
    out.truncation_N = *trunc_override;
  else if (doc.contains("truncation_N"))
    out.truncation_N = need_int(doc, "truncation_N", w);
  if (out.truncation_N < 0) throw ParseError(w + ".truncation_N: must be nonnegative");

  const Backend b = sys.backend;
  const json& f = need(doc, "f", w);
  if (!f.is_array() || static_cast<int>(f.size()) != sys.dim)
    throw DimensionMismatch(w + ".f: expected " + std::to_string(sys.dim) + " rows");
  std::vector<std::vector<Scalar>> fc;
  int degree = 0;
  for (int i = 0; i < sys.dim; ++i) {
    const json& row = f[static_cast<std::size_t>(i)];
    const std::string rw = w + ".f[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != sys.dim)
      throw DimensionMismatch(rw + ": expected " + std::to_string(sys.dim) + " entries");
    for (int j = 0; j < sys.dim; ++j) {
      const json& cs = row[static_cast<std::size_t>(j)];
      const std::string cw = rw + "[" + std::to_string(j) + "]";
      if (!cs.is_array()) throw ParseError(cw + ": expected a coefficient array");
      std::vector<Scalar> v;
      for (std::size_t m = 0; m < cs.size(); ++m) v.push_back(scalar_value(cs[m], b, cw + "[" + std::to_string(m) + "]"));
      degree = std::max(degree, static_cast<int>(v.size()) - 1);
      fc.push_back(std::move(v));
    }
  }
  const int jet_order = std::max(out.truncation_N, degree) + 2;
  const Scalar zero = Scalar::zero(b);
  sys.f = JetMatrix::zero(sys.dim, jet_order, zero);
  for (int i = 0; i < sys.dim; ++i)
    for (int j = 0; j < sys.dim; ++j)
      sys.f(i, j) = Jet::from_polynomial(fc[static_cast<std::size_t>(i * sys.dim + j)], jet_order, zero);

  const json& g = need(doc, "g", w);
  if (!g.is_array() || static_cast<int>(g.size()) != sys.dim)
    throw DimensionMismatch(w + ".g: expected " + std::to_string(sys.dim) + " components");
  for (int i = 0; i < sys.dim; ++i) {
    const json& terms = g[static_cast<std::size_t>(i)];
    const std::string gw = w + ".g[" + std::to_string(i) + "]";
    if (!terms.is_array()) throw ParseError(gw + ": expected a list of {exponent, coeff}");
    std::vector<PowerTerm> pt;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string tw = gw + "[" + std::to_string(t) + "]";
      pt.push_back({scalar_value(need(terms[t], "exponent", tw), b, tw + ".exponent"),
                    scalar_value(need(terms[t], "coeff", tw), b, tw + ".coeff")});
    }
    try {
      sys.g.emplace_back(std::move(pt), b);
    } catch (const DomainError& e) {
      throw ParseError(gw + ": " + e.what());
    }
  }

  if (doc.contains("sample_grid")) {
    const json& sg = doc["sample_grid"];
    const std::string sw = w + ".sample_grid";
    out.grid.start = number_value(need(sg, "start", sw), sw + ".start");
    out.grid.stop = number_value(need(sg, "stop", sw), sw + ".stop");
    out.grid.step = number_value(need(sg, "step", sw), sw + ".step");
    out.grid.points();
  }
  return out;
}

nlohmann::json series_to_json(const GenPowerSeries& s) {
  json terms = json::array();
  for (const PowerTerm& t : s.terms()) terms.push_back({{"exponent", t.exponent.str()}, {"coeff", t.coeff.str()}});
  json out = {{"terms", terms}};
  out["known_below"] = s.horizon() ? json(s.horizon()->str()) : json(nullptr);
  return out;
}

nlohmann::json solve_result_json(const SystemDocument& doc, const SolveResult& r) {
  const LinearSystem& sys = doc.system;
  json solution = json::array(), residual = json::array();
  for (const GenPowerSeries& c : r.frac.value.components()) solution.push_back(series_to_json(c));
  for (const GenPowerSeries& c : r.residual_series) residual.push_back(series_to_json(c));
  json out;
  out["format"] = 1;
  out["dimension"] = sys.dim;
  out["order_of_system"] = sys.order_of_system;
  out["backend"] = std::string(to_string(sys.backend));
  out["truncation_N"] = r.frac.truncation_N;
  out["solution"] = solution;
  out["grid"] = r.grid;
  out["samples"] = r.samples;
  out["residual"] = {{"max_abs_on_grid", r.residual_max}, {"series", residual}};
  out["term_norms"] = r.frac.term_norms;
  out["tail_report"] = r.frac.tail_report;
  out["tail_ratio"] = std::isfinite(r.frac.tail_ratio) ? json(r.frac.tail_ratio) : json("inf");
  out["diverging"] = r.frac.diverging;
  return out;
}

}  // namespace covjet
