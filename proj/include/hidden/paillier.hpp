#pragma once

#include "hidden/counters.hpp"
#include "hidden/gaussian.hpp"
#include "hidden/json_io.hpp"

#include <gmpxx.h>

namespace hidden {
class SeededRng;
}

namespace hidden::paillier {

struct PublicKey {
    mpz_class n;  // product of two distinct primes
    mpz_class g;  // element of Z*_{n^2}; n+1 by default
    mpz_class n2; // cached n^2
};

struct PrivateKey {
    mpz_class L_P; // lcm(p-1, q-1)
    mpz_class M_P; // (L(g^L_P mod n^2))^-1 mod n
};

struct KeyPair {
    PublicKey pub;
    PrivateKey priv;
};

// A Gaussian integer as two independent Paillier ciphertexts.
struct GaussCiphertext {
    mpz_class cR;
    mpz_class cI;
};

// Explicit primes; rejects p = q, non-primes, and gcd(pq,(p-1)(q-1)) != 1.
KeyPair keygen(const mpz_class& p, const mpz_class& q);

// Random primes of bits/2 each.
KeyPair keygen_random(unsigned bits, SeededRng& rng);

// g^m * r^n mod n^2 with 0 <= m < n, 0 < r < n, gcd(r, n) = 1.
// Costs 2 modexps mod n^2.
mpz_class enc_int(const mpz_class& m, const mpz_class& r, const PublicKey& pub,
                  OpCounters* counters = nullptr);
mpz_class enc_int(const mpz_class& m, const PublicKey& pub, SeededRng& rng,
                  OpCounters* counters = nullptr);

// L(c^L_P mod n^2) * M_P mod n. Costs 1 modexp mod n^2.
mpz_class dec_int(const mpz_class& c, const PrivateKey& priv, const PublicKey& pub,
                  OpCounters* counters = nullptr);

// Product of ciphertexts decrypts to the sum of plaintexts.
mpz_class hom_add(const mpz_class& c1, const mpz_class& c2, const PublicKey& pub);

// c^k decrypts to k * m. Costs 1 modexp mod n^2.
mpz_class hom_scale(const mpz_class& c, const mpz_class& k, const PublicKey& pub,
                    OpCounters* counters = nullptr);

// Centered (two's-complement style) encoding of signed plaintexts into
// [0, n); |x| < n/2 required.
mpz_class encode_signed(const mpz_class& x, const PublicKey& pub);
mpz_class decode_signed(const mpz_class& m, const PublicKey& pub);

// Component-wise encryption of a Gaussian integer; both components are
// signed-encoded first. Costs 4 modexps mod n^2 per value.
GaussCiphertext enc_gauss(const GaussianInt& mu, const PublicKey& pub, SeededRng& rng,
                          OpCounters* counters = nullptr);
// Costs 2 modexps mod n^2.
GaussianInt dec_gauss(const GaussCiphertext& ct, const PrivateKey& priv, const PublicKey& pub,
                      OpCounters* counters = nullptr);

GaussCiphertext hom_add_gauss(const GaussCiphertext& c1, const GaussCiphertext& c2,
                              const PublicKey& pub);

njson public_key_to_json(const PublicKey& pub);
PublicKey public_key_from_json(const njson& j);
njson private_key_to_json(const PrivateKey& priv);
PrivateKey private_key_from_json(const njson& j);
njson gauss_ciphertext_to_json(const GaussCiphertext& ct);
GaussCiphertext gauss_ciphertext_from_json(const njson& j);

} // namespace hidden::paillier
