#pragma once

#include <initializer_list>
#include <type_traits>
#include <vector>

#include "covjet/jet.hpp"
#include "covjet/random_scene.hpp"
#include "covjet/scalar.hpp"
#include "oracles.hpp"

namespace th {

using namespace covjet;

inline Scalar R(const char* t) { return Scalar::parse(t, Backend::rational); }
template <class I>
  requires std::is_integral_v<I>
inline Scalar R(I v) { return Scalar::from_int(static_cast<long>(v), Backend::rational); }

inline std::vector<Scalar> rats(std::initializer_list<const char*> cs) {
  std::vector<Scalar> v;
  for (const char* c : cs) v.push_back(R(c));
  return v;
}

// Jet from raw coefficients at base point 0.
inline Jet jet(std::initializer_list<const char*> cs) { return Jet(rats(cs), R(0)); }

inline oracle::Poly to_oracle(const Jet& j) {
  oracle::Poly p;
  for (const Scalar& c : j.coeffs()) p.push_back(c.rational());
  return p;
}

inline oracle::Poly to_oracle(const std::vector<Scalar>& v) {
  oracle::Poly p;
  for (const Scalar& c : v) p.push_back(c.rational());
  return p;
}

inline Jet random_jet(SceneRng& rng, int order) {
  std::vector<Scalar> c;
  for (int m = 0; m <= order; ++m) c.push_back(rng.chance(3, 4) ? rng.small_rational(Backend::rational) : R(0));
  return Jet(std::move(c), R(0));
}

}  // namespace th
