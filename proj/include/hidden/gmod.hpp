#pragma once

#include "hidden/counters.hpp"
#include "hidden/gaussian.hpp"

#include <gmpxx.h>

#include <vector>

namespace hidden {

class SeededRng;

// Modulus context for Z[i] mod p with p prime and p = 3 (mod 4), so p
// stays prime in Z[i] and the nonzero residues form a cyclic group of
// order p^2 - 1. Canonical representatives live in [0,p) x [0,p).
class GModRing {
public:
    // Validates the primality gate (p prime, p = 3 mod 4); throws
    // std::invalid_argument otherwise.
    explicit GModRing(mpz_class p);

    const mpz_class& p() const { return p_; }
    const mpz_class& order() const { return order_; } // p^2 - 1

    friend bool operator==(const GModRing& a, const GModRing& b) { return a.p_ == b.p_; }

private:
    mpz_class p_;
    mpz_class order_;
};

// Canonical representative with both components in [0, p).
GaussianInt mod_reduce(const GaussianInt& z, const GModRing& ring);

// Maps a canonical representative into the centered box (-p/2, p/2).
// Input components must already be in [0, p); throws std::domain_error
// otherwise.
GaussianInt centered_lift(const GaussianInt& z, const GModRing& ring);

GaussianInt mod_mul(const GaussianInt& x, const GaussianInt& y, const GModRing& ring);
GaussianInt mod_add(const GaussianInt& x, const GaussianInt& y, const GModRing& ring);

// Square-and-multiply; O(log e) modular multiplications. Counts one
// complex modexp on the supplied counters.
GaussianInt mod_pow(const GaussianInt& x, const mpz_class& e, const GModRing& ring,
                    OpCounters* counters = nullptr);

// Inverse of z in Z[i]*_p as conj(z) * N(z)^-1 (mod p). The integer
// inversion runs on extended gcd but is priced as one integer modexp.
// Throws std::domain_error when z = 0 (mod p).
GaussianInt mod_inv(const GaussianInt& z, const GModRing& ring,
                    OpCounters* counters = nullptr);

// Order of Z[i]*_p.
mpz_class group_order(const GModRing& ring);

// True when gamma has multiplicative order exactly p^2 - 1, given the
// distinct prime factors of the order.
bool is_generator(const GaussianInt& gamma, const GModRing& ring,
                  const std::vector<mpz_class>& order_prime_factors);

// Random search for a generator; order_prime_factors must cover every
// prime dividing p^2 - 1. Throws std::runtime_error after max_attempts.
GaussianInt find_generator(const GModRing& ring,
                           const std::vector<mpz_class>& order_prime_factors,
                           SeededRng& rng, unsigned max_attempts = 4096);

} // namespace hidden
