#pragma once

// Dense polynomials over the prime field F_p, coefficients low-to-high.

#include <cstdint>
#include <vector>

namespace frobdyn::fp {

using Poly = std::vector<std::uint32_t>;

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);
std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p);

void trim(Poly& a);
int degree(const Poly& a);  // -1 for the zero polynomial

Poly add(const Poly& a, const Poly& b, std::uint32_t p);
Poly sub(const Poly& a, const Poly& b, std::uint32_t p);
Poly mul(const Poly& a, const Poly& b, std::uint32_t p);
// Remainder modulo a nonzero f (need not be monic).
Poly rem(Poly a, const Poly& f, std::uint32_t p);
Poly divide(Poly a, const Poly& f, std::uint32_t p);  // exact quotient, remainder dropped
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p);
Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p);
Poly gcd(Poly a, Poly b, std::uint32_t p);  // monic
Poly make_monic(Poly a, std::uint32_t p);

// Empty when monic f is irreducible. Otherwise a proper factor, found by
// distinct-degree splitting (first d with gcd(x^{p^d}-x, f) != 1); f itself
// when f is reducible but equal-degree splitting is too large to search.
Poly find_factor(const Poly& f, std::uint32_t p);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace frobdyn::fp
