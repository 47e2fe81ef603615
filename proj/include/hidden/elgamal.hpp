#pragma once

#include "hidden/counters.hpp"
#include "hidden/gaussian.hpp"
#include "hidden/gmod.hpp"
#include "hidden/json_io.hpp"

#include <gmpxx.h>

#include <vector>

namespace hidden {
class SeededRng;
}

namespace hidden::elgamal {

// (p, gamma, K) with K = gamma^a (mod p). order_factors holds the
// distinct primes dividing p^2 - 1 so the generator can be revalidated
// when keys are loaded from disk.
struct PublicKey {
    GModRing ring;
    GaussianInt gamma;
    GaussianInt K;
    std::vector<mpz_class> order_factors;
};

struct PrivateKey {
    mpz_class a; // 1 <= a <= p^2 - 2
};

struct Ciphertext {
    GaussianInt psi1;
    GaussianInt psi2;
};

struct KeyPair {
    PublicKey pub;
    PrivateKey priv;
};

// gamma must have order exactly p^2 - 1 (checked against order_factors).
// The private exponent is drawn uniformly from [1, p^2 - 2].
KeyPair keygen(const GModRing& ring, const GaussianInt& gamma,
               const std::vector<mpz_class>& order_factors, SeededRng& rng);

// Same, with an explicit private exponent (golden vectors fix a).
KeyPair keygen_with_exponent(const GModRing& ring, const GaussianInt& gamma,
                             const std::vector<mpz_class>& order_factors, const mpz_class& a);

// (gamma^b, mu * K^b) mod p. The plaintext must be nonzero mod p and the
// ephemeral key in [1, p^2 - 2]. Costs 2 complex modexps.
Ciphertext encrypt(const GaussianInt& mu, const mpz_class& ephemeral, const PublicKey& pub,
                   OpCounters* counters = nullptr);

// Fresh ephemeral key from rng.
Ciphertext encrypt(const GaussianInt& mu, const PublicKey& pub, SeededRng& rng,
                   OpCounters* counters = nullptr);

// psi2 * (psi1^a)^-1 mod p. Costs 1 complex modexp plus 1 integer modexp
// (inverting the norm of the shared secret).
GaussianInt decrypt(const Ciphertext& ct, const PrivateKey& priv, const GModRing& ring,
                    OpCounters* counters = nullptr);

// Component-wise product; decrypts to the product of the plaintexts.
Ciphertext ct_mul(const Ciphertext& c1, const Ciphertext& c2, const GModRing& ring);

// Bit length of the largest prime factor of the group order; the knob the
// key-generation report surfaces for Pohlig-Hellman resistance.
std::size_t largest_factor_bits(const PublicKey& pub);

njson public_key_to_json(const PublicKey& pub);
PublicKey public_key_from_json(const njson& j);
njson private_key_to_json(const PrivateKey& priv);
PrivateKey private_key_from_json(const njson& j);
njson ciphertext_to_json(const Ciphertext& ct);
Ciphertext ciphertext_from_json(const njson& j);

// Fail-fast check for keys loaded from disk: gamma really generates the
// group and K = gamma^a. Throws ConfigError on mismatch.
void validate_keypair(const PublicKey& pub, const PrivateKey& priv);

} // namespace hidden::elgamal
