#include "covjet/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "covjet/errors.hpp"

namespace covjet {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

int require_int(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

int index_from_json(const json& v, int dim, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer index");
  const int i = v.get<int>();
  if (i < 1 || i > dim)
    throw DimensionMismatch(where + ": index " + std::to_string(i) + " outside 1.." + std::to_string(dim));
  return i - 1;
}

std::vector<int> parse_component_key(const std::string& key, int p, int q, int dim, const std::string& where) {
  const auto semi = key.find(';');
  if (semi == std::string::npos && !(p == 0 && q == 0 && key.empty()))
    throw ParseError(where + ": component key '" + key + "' lacks ';'");
  auto split = [&](const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        if (v < 1 || v > dim)
          throw DimensionMismatch(where + ": index " + std::to_string(v) + " outside 1.." + std::to_string(dim));
        out.push_back(v - 1);
      } catch (const std::invalid_argument&) {
        throw ParseError(where + ": malformed component key '" + key + "'");
      } catch (const std::out_of_range&) {
        throw ParseError(where + ": malformed component key '" + key + "'");
      }
    }
    return out;
  };
  std::vector<int> upper = semi == std::string::npos ? std::vector<int>{} : split(key.substr(0, semi));
  std::vector<int> lower = semi == std::string::npos ? std::vector<int>{} : split(key.substr(semi + 1));
  if (static_cast<int>(upper.size()) != p || static_cast<int>(lower.size()) != q)
    throw DimensionMismatch(where + ": component key '" + key + "' does not match valence (" + std::to_string(p) + "," +
                            std::to_string(q) + ")");
  upper.insert(upper.end(), lower.begin(), lower.end());
  return upper;
}

}  // namespace

std::vector<Scalar> scalars_from_json(const json& j, Backend b, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of scalar strings");
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw ParseError(where + "[" + std::to_string(i) + "]: scalars are strings");
    try {
      out.push_back(Scalar::parse(j[i].get<std::string>(), b));
    } catch (const ParseError& e) {
      throw ParseError(where + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

json scalars_to_json(std::span<const Scalar> xs) {
  json arr = json::array();
  for (const Scalar& x : xs) arr.push_back(x.str());
  return arr;
}

json jet_to_json(const Jet& j) {
  const std::vector<Scalar> poly = j.base_point().is_zero()
                                       ? std::vector<Scalar>(j.coeffs().begin(), j.coeffs().end())
                                       : j.to_polynomial();
  return scalars_to_json(poly);
}

MultiPoly poly_from_json(const json& j, int n_vars, Backend b, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": a polynomial is an array of terms");
  MultiPoly p(n_vars, b);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tw = where + "[" + std::to_string(t) + "]";
    const json& term = j[t];
    const json& c = require(term, "coeff", tw);
    const json& e = require(term, "exponents", tw);
    if (!c.is_string()) throw ParseError(tw + ".coeff: scalars are strings");
    if (!e.is_array()) throw ParseError(tw + ".exponents: expected an array");
    if (static_cast<int>(e.size()) != n_vars)
      throw DimensionMismatch(tw + ".exponents: " + std::to_string(e.size()) + " exponents for dimension " +
                              std::to_string(n_vars));
    MultiPoly::Exponents ex;
    for (const json& v : e) {
      if (!v.is_number_integer() || v.get<long>() < 0) throw ParseError(tw + ".exponents: expected nonnegative integers");
      ex.push_back(v.get<unsigned>());
    }
    Scalar coeff;
    try {
      coeff = Scalar::parse(c.get<std::string>(), b);
    } catch (const ParseError& err) {
      throw ParseError(tw + ".coeff: " + err.what());
    }
    p.add_term(ex, coeff);
  }
  return p;
}

json poly_to_json(const MultiPoly& p) {
  json arr = json::array();
  for (const auto& [e, c] : p.terms()) arr.push_back({{"coeff", c.str()}, {"exponents", e}});
  return arr;
}

Scene load_manifest(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("manifest: top level must be an object");
  if (doc.contains("format") && (!doc["format"].is_number_integer() || doc["format"].get<int>() != 1))
    throw ParseError("manifest.format: only format 1 is supported");

  Scene s;
  s.dim = require_int(doc, "dimension", "manifest");
  if (s.dim <= 0) throw DimensionMismatch("manifest.dimension must be positive");
  s.order = require_int(doc, "order", "manifest");
  if (s.order < 1) throw InvariantViolation("manifest.order must be at least 1");
  const json& be = require(doc, "backend", "manifest");
  if (!be.is_string()) throw ParseError("manifest.backend: expected a string");
  s.backend = parse_backend(be.get<std::string>());
  s.base_point = Scalar::zero(s.backend);
  if (doc.contains("base_point")) {
    if (!doc["base_point"].is_string()) throw ParseError("manifest.base_point: scalars are strings");
    s.base_point = Scalar::parse(doc["base_point"].get<std::string>(), s.backend);
  }

  const json& curve = require(doc, "curve", "manifest");
  if (!curve.is_array()) throw ParseError("manifest.curve: expected an array of coefficient arrays");
  if (static_cast<int>(curve.size()) != s.dim)
    throw DimensionMismatch("manifest.curve: " + std::to_string(curve.size()) + " coordinates for dimension " +
                            std::to_string(s.dim));
  std::vector<std::vector<Scalar>> coords;
  for (std::size_t i = 0; i < curve.size(); ++i)
    coords.push_back(scalars_from_json(curve[i], s.backend, "manifest.curve[" + std::to_string(i) + "]"));
  s.curve = Curve::from_polynomials(coords, s.order, s.base_point);

  s.connection = Connection(s.dim, s.backend);
  if (doc.contains("christoffel")) {
    const json& ch = doc["christoffel"];
    if (!ch.is_array()) throw ParseError("manifest.christoffel: expected an array");
    for (std::size_t e = 0; e < ch.size(); ++e) {
      const std::string w = "manifest.christoffel[" + std::to_string(e) + "]";
      const int i = index_from_json(require(ch[e], "upper", w), s.dim, w + ".upper");
      const json& lower = require(ch[e], "lower", w);
      if (!lower.is_array() || lower.size() != 2) throw ParseError(w + ".lower: expected [j, l]");
      const int j = index_from_json(lower[0], s.dim, w + ".lower[0]");
      const int l = index_from_json(lower[1], s.dim, w + ".lower[1]");
      MultiPoly p = poly_from_json(require(ch[e], "poly", w), s.dim, s.backend, w + ".poly");
      if (const MultiPoly* prev = s.connection.find(i, j, l)) p += *prev;
      s.connection.set(i, j, l, std::move(p));
    }
  }
  if (doc.contains("connection_form")) {
    if (!s.connection.is_flat())
      throw InvariantViolation("manifest: give either 'christoffel' or 'connection_form', not both");
    const json& cf = doc["connection_form"];
    if (!cf.is_array()) throw ParseError("manifest.connection_form: expected an array");
    JetMatrix p1 = JetMatrix::zero(s.dim, s.order - 1, s.base_point);
    for (std::size_t e = 0; e < cf.size(); ++e) {
      const std::string w = "manifest.connection_form[" + std::to_string(e) + "]";
      const int i = index_from_json(require(cf[e], "upper", w), s.dim, w + ".upper");
      const int j = index_from_json(require(cf[e], "lower", w), s.dim, w + ".lower");
      const auto cs = scalars_from_json(require(cf[e], "coeffs", w), s.backend, w + ".coeffs");
      p1(i, j) += Jet::from_polynomial(cs, s.order - 1, s.base_point);
    }
    s.connection_form_override = std::move(p1);
  }

  if (doc.contains("field")) {
    const json& f = doc["field"];
    const int p = require_int(f, "p", "manifest.field");
    const int q = require_int(f, "q", "manifest.field");
    if (p < 0 || q < 0) throw DimensionMismatch("manifest.field: negative valence");
    TensorFieldJet a(p, q, s.dim, Jet::zero(s.order, s.base_point));
    const json& comps = require(f, "components", "manifest.field");
    if (!comps.is_object()) throw ParseError("manifest.field.components: expected an object");
    for (const auto& [key, arr] : comps.items()) {
      const std::string w = "manifest.field.components[\"" + key + "\"]";
      const std::vector<int> idx = parse_component_key(key, p, q, s.dim, w);
      a.at(idx) = Jet::from_polynomial(scalars_from_json(arr, s.backend, w), s.order, s.base_point);
    }
    s.field = std::move(a);
  }

  if (doc.contains("transition")) {
    const json& t = doc["transition"];
    ChartTransition tr{s.dim, {}, {}};
    for (const char* key : {"forward", "inverse"}) {
      const json& maps = require(t, key, "manifest.transition");
      if (!maps.is_array() || static_cast<int>(maps.size()) != s.dim)
        throw DimensionMismatch(std::string("manifest.transition.") + key + ": expected " + std::to_string(s.dim) +
                                " polynomials");
      auto& dst = std::string(key) == "forward" ? tr.forward : tr.inverse;
      for (std::size_t i = 0; i < maps.size(); ++i)
        dst.push_back(poly_from_json(maps[i], s.dim, s.backend,
                                     std::string("manifest.transition.") + key + "[" + std::to_string(i) + "]"));
    }
    validate_transition(tr, s.curve);
    s.transition = std::move(tr);
  }
  return s;
}

Scene load_manifest_file(const std::string& path) { return load_manifest(read_text(path)); }

std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

json manifest_json(const Scene& s) {
  json doc;
  doc["format"] = 1;
  doc["dimension"] = s.dim;
  doc["order"] = s.order;
  doc["backend"] = std::string(to_string(s.backend));
  doc["base_point"] = s.base_point.str();
  json curve = json::array();
  for (const Jet& x : s.curve.coords()) curve.push_back(jet_to_json(x));
  doc["curve"] = curve;

  json ch = json::array();
  for (const auto& [idx, poly] : s.connection.entries())
    ch.push_back({{"upper", idx[0] + 1}, {"lower", {idx[1] + 1, idx[2] + 1}}, {"poly", poly_to_json(poly)}});
  doc["christoffel"] = ch;

  if (s.connection_form_override) {
    json cf = json::array();
    const JetMatrix& p1 = *s.connection_form_override;
    for (int i = 0; i < s.dim; ++i)
      for (int j = 0; j < s.dim; ++j)
        if (!p1(i, j).is_zero()) cf.push_back({{"upper", i + 1}, {"lower", j + 1}, {"coeffs", jet_to_json(p1(i, j))}});
    doc["connection_form"] = cf;
  }
  if (s.field) {
    json comps = json::object();
    for (std::size_t f = 0; f < s.field->size(); ++f) {
      const Jet& c = (*s.field)[f];
      if (c.is_zero()) continue;
      comps[component_key(s.field->multi_index(f), s.field->p())] = jet_to_json(c);
    }
    doc["field"] = {{"p", s.field->p()}, {"q", s.field->q()}, {"components", comps}};
  }
  if (s.transition) {
    json fwd = json::array(), inv = json::array();
    for (const MultiPoly& p : s.transition->forward) fwd.push_back(poly_to_json(p));
    for (const MultiPoly& p : s.transition->inverse) inv.push_back(poly_to_json(p));
    doc["transition"] = {{"forward", fwd}, {"inverse", inv}};
  }
  return doc;
}

std::string emit_manifest(const Scene& s) { return manifest_json(s).dump(2); }

std::string scene_digest(const Scene& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : manifest_json(s).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace covjet
