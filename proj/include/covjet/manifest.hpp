#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "covjet/geometry.hpp"

namespace covjet {

// Scene manifest (JSON, format 1). Indices in files are 1-based;
// polynomials in s are coefficient arrays in ascending powers of s.
//
//   dimension, order, backend, base_point,
//   christoffel:     [{upper, lower: [j, l], poly: [{coeff, exponents}]}]
//   connection_form: [{upper, lower, coeffs}]      (alternative to christoffel)
//   curve:           [[coeff..] x dimension]
//   field:           {p, q, components: {"j1,..;i1,..": [coeff..]}}
//   transition:      {forward: [poly..], inverse: [poly..]}
Scene load_manifest(std::string_view text);
Scene load_manifest_file(const std::string& path);

nlohmann::json manifest_json(const Scene& scene);
std::string emit_manifest(const Scene& scene);

// Stable 64-bit FNV-1a digest of the canonical manifest text, as hex.
std::string scene_digest(const Scene& scene);

// Shared (de)serialisation helpers for the CLI documents.
nlohmann::json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j, int n_vars, Backend b, const std::string& where);
nlohmann::json scalars_to_json(std::span<const Scalar> xs);
std::vector<Scalar> scalars_from_json(const nlohmann::json& j, Backend b, const std::string& where);
// Jet written back as a coefficient array in ascending powers of s.
nlohmann::json jet_to_json(const Jet& j);

std::string read_text(const std::string& path);

}  // namespace covjet
