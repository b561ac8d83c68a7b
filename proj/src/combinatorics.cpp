#include "covjet/combinatorics.hpp"

#include <numeric>
#include <string>

#include "covjet/errors.hpp"

namespace covjet {

BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binom(unsigned k, unsigned p) {
  if (p > k) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), k, p);
  return r;
}

BigInt multinomial(unsigned k, std::span<const unsigned> parts) {
  unsigned long total = std::accumulate(parts.begin(), parts.end(), 0ul);
  if (total > k)
    throw DomainError("multinomial parts sum to " + std::to_string(total) + " > " + std::to_string(k));
  // Peel the parts off one at a time as a product of binomials.
  BigInt r = 1;
  unsigned remaining = k;
  for (unsigned p : parts) {
    r *= binom(remaining, p);
    remaining -= p;
  }
  return r;
}

Scalar falling_product(const Scalar& alpha, unsigned a) {
  Scalar r = Scalar::one(alpha.backend());
  Scalar factor = alpha;
  const Scalar one = Scalar::one(alpha.backend());
  for (unsigned i = 0; i < a; ++i) {
    r *= factor;
    factor -= one;
  }
  return r;
}

Scalar inverse_factorial_product(std::span<const unsigned> parts, Backend b) {
  BigInt den = 1;
  for (unsigned p : parts) den *= factorial(p);
  if (b == Backend::rational) return Scalar(Rational(BigInt(1), den));
  return Scalar(1.0 / den.get_d());
}

}  // namespace covjet
