#pragma once

#include <span>

#include "covjet/scalar.hpp"

namespace covjet {

BigInt factorial(unsigned n);

// C(k, p); zero when p > k.
BigInt binom(unsigned k, unsigned p);

// k! / ((k - sum(parts))! * prod(parts_i!)). Throws DomainError when the
// parts sum to more than k.
BigInt multinomial(unsigned k, std::span<const unsigned> parts);

// alpha (alpha - 1) ... (alpha - a + 1); the empty product (a = 0) is 1.
Scalar falling_product(const Scalar& alpha, unsigned a);

// 1 / prod(parts_i!) in the requested backend.
Scalar inverse_factorial_product(std::span<const unsigned> parts, Backend b);

}  // namespace covjet
