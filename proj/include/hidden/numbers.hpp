#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

namespace hidden {

// Primes below 2^16, computed once.
const std::vector<std::uint32_t>& small_primes();

// Trial division by all primes below 2^16, then 64 Miller-Rabin rounds
// with bases from an RNG seeded deterministically from n. Exact for
// n < 2^32 (trial division alone decides).
bool is_prime(const mpz_class& n);

// p prime and p = 3 (mod 4): the rational primes that stay prime in Z[i].
bool is_suitable_prime(const mpz_class& p);

// Complete factorization: trial division below 2^16, Brent-Pollard rho on
// the cofactors. Intended for desk-scale inputs (factors up to ~64 bits
// found quickly); larger inputs should come with a known factorization.
std::map<mpz_class, unsigned> factorize(const mpz_class& n);

// x^-1 mod m; throws std::domain_error when gcd(x, m) != 1.
mpz_class invert_mod(const mpz_class& x, const mpz_class& m);

mpz_class pow_mod(const mpz_class& base, const mpz_class& exp, const mpz_class& mod);

mpz_class lcm(const mpz_class& a, const mpz_class& b);
mpz_class gcd(const mpz_class& a, const mpz_class& b);

} // namespace hidden
