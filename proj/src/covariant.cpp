#include "covjet/covariant.hpp"

#include <string>

#include "covjet/errors.hpp"

namespace covjet {

namespace {

void compositions_into(int slots, int remaining, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == slots - 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    prefix.push_back(v);
    compositions_into(slots, remaining - v, prefix, out);
    prefix.pop_back();
  }
}

Backend backend_of(const TensorFieldJet& a) { return a[0].backend(); }

void require_shape(const TensorFieldJet& a, const JetMatrix& m) {
  if (a.dim() != m.dim())
    throw DimensionMismatch("tensor of dimension " + std::to_string(a.dim()) + " with symbols of dimension " +
                            std::to_string(m.dim()));
}

}  // namespace

std::vector<CompositionIndex> enumerate_compositions(int p, int q, int a) {
  if (p < 0 || q < 0 || a < 0) return {};
  const int slots = p + q;
  if (slots == 0) return a == 0 ? std::vector<CompositionIndex>{{0, {}, {}}} : std::vector<CompositionIndex>{};
  std::vector<std::vector<int>> tuples;
  std::vector<int> prefix;
  compositions_into(slots, a, prefix, tuples);
  std::vector<CompositionIndex> out;
  out.reserve(tuples.size());
  for (const auto& t : tuples)
    out.push_back({a, std::vector<int>(t.begin(), t.begin() + p), std::vector<int>(t.begin() + p, t.end())});
  return out;
}

TensorFieldJet diff(const TensorFieldJet& a, int times) {
  TensorFieldJet out = a;
  for (std::size_t f = 0; f < out.size(); ++f) out[f] = diff(a[f], times);
  return out;
}

TensorFieldJet covariant_derivative_once(const TensorFieldJet& a, const JetMatrix& p1, Exec exec) {
  require_shape(a, p1);
  const JetMatrix q1 = -p1;
  TensorFieldJet out = diff(a);
  for (int r = 0; r < a.p(); ++r) out = detail::add(out, apply_upper(p1, a, r, exec));
  for (int r = a.p(); r < a.rank(); ++r) out = detail::add(out, apply_lower(q1, a, r, exec));
  return out;
}

TensorFieldJet covariant_derivative_k(const TensorFieldJet& a, const PQTable& p, const PQTable& q, int k, Exec exec) {
  if (k < 0) throw OrderExhausted("negative derivative order");
  require_shape(a, p.level(0));
  const Backend b = backend_of(a);
  const Scalar kk = Scalar::from_int(k, b);
  TensorFieldJet out = diff(a, k);
  for (int order = 1; order <= k; ++order) {
    auto term = detail::composition_sum(diff(a, k - order), p, q, order, b, exec);
    if (term) out = detail::add(out, detail::scaled(std::move(*term), falling_product(kk, static_cast<unsigned>(order))));
  }
  return out;
}

TensorFieldJet iterate_covariant_oracle(const TensorFieldJet& a, const JetMatrix& p1, int k, Exec exec) {
  if (k < 0) throw OrderExhausted("negative derivative order");
  TensorFieldJet out = a;
  for (int i = 0; i < k; ++i) out = covariant_derivative_once(out, p1, exec);
  return out;
}

TensorFieldJet covariant_derivative_k_by_enumeration(const TensorFieldJet& a, const PQTable& p, const PQTable& q,
                                                     int k) {
  if (k < 0) throw OrderExhausted("negative derivative order");
  const Backend b = backend_of(a);
  TensorFieldJet out = diff(a, k);
  for (int order = 1; order <= k; ++order) {
    const TensorFieldJet d = diff(a, k - order);
    for (const CompositionIndex& c : enumerate_compositions(a.p(), a.q(), order)) {
      std::vector<unsigned> parts;
      for (int m : c.m) parts.push_back(static_cast<unsigned>(m));
      for (int l : c.l) parts.push_back(static_cast<unsigned>(l));
      const Scalar w = Scalar::from_bigint(multinomial(static_cast<unsigned>(k), parts), b);
      TensorFieldJet t = d;
      for (int r = 0; r < a.p(); ++r)
        if (c.m[static_cast<std::size_t>(r)] > 0) t = apply_upper(p.level(c.m[static_cast<std::size_t>(r)]), t, r, Exec::serial);
      for (int r = 0; r < a.q(); ++r)
        if (c.l[static_cast<std::size_t>(r)] > 0)
          t = apply_lower(q.level(c.l[static_cast<std::size_t>(r)]), t, a.p() + r, Exec::serial);
      out = detail::add(out, detail::scaled(std::move(t), w));
    }
  }
  return out;
}

}  // namespace covjet
