#include "hidden/elgamal.hpp"

#include "hidden/errors.hpp"
#include "hidden/rng.hpp"

#include <stdexcept>

namespace hidden::elgamal {

namespace {

void check_generator(const GModRing& ring, const GaussianInt& gamma,
                     const std::vector<mpz_class>& order_factors) {
    if (!is_generator(gamma, ring, order_factors))
        throw std::invalid_argument("elgamal: gamma does not generate Z[i]*_p");
}

} // namespace

KeyPair keygen(const GModRing& ring, const GaussianInt& gamma,
               const std::vector<mpz_class>& order_factors, SeededRng& rng) {
    check_generator(ring, gamma, order_factors);
    mpz_class a = rng.in_range(1, ring.order() - 1);
    return keygen_with_exponent(ring, gamma, order_factors, a);
}

KeyPair keygen_with_exponent(const GModRing& ring, const GaussianInt& gamma,
                             const std::vector<mpz_class>& order_factors, const mpz_class& a) {
    check_generator(ring, gamma, order_factors);
    if (a < 1 || a > ring.order() - 1)
        throw std::invalid_argument("elgamal: private exponent out of [1, order-1]");
    GaussianInt K = mod_pow(gamma, a, ring);
    return {PublicKey{ring, mod_reduce(gamma, ring), K, order_factors}, PrivateKey{a}};
}

Ciphertext encrypt(const GaussianInt& mu, const mpz_class& ephemeral, const PublicKey& pub,
                   OpCounters* counters) {
    GaussianInt m = mod_reduce(mu, pub.ring);
    if (m.is_zero())
        throw std::domain_error("elgamal::encrypt: plaintext is 0 (mod p), not in Z[i]*_p");
    if (ephemeral < 1 || ephemeral > pub.ring.order() - 1)
        throw std::domain_error("elgamal::encrypt: ephemeral key out of [1, order-1]");
    GaussianInt psi1 = mod_pow(pub.gamma, ephemeral, pub.ring, counters);
    GaussianInt psi2 = mod_mul(m, mod_pow(pub.K, ephemeral, pub.ring, counters), pub.ring);
    return {psi1, psi2};
}

Ciphertext encrypt(const GaussianInt& mu, const PublicKey& pub, SeededRng& rng,
                   OpCounters* counters) {
    mpz_class b = rng.in_range(1, pub.ring.order() - 1);
    return encrypt(mu, b, pub, counters);
}

GaussianInt decrypt(const Ciphertext& ct, const PrivateKey& priv, const GModRing& ring,
                    OpCounters* counters) {
    GaussianInt psi1 = mod_reduce(ct.psi1, ring);
    if (psi1.is_zero())
        throw IntegrityError("elgamal::decrypt: malformed ciphertext (psi1 = 0)");
    GaussianInt tau = mod_pow(psi1, priv.a, ring, counters);
    GaussianInt tau_inv = mod_inv(tau, ring, counters);
    return mod_mul(mod_reduce(ct.psi2, ring), tau_inv, ring);
}

Ciphertext ct_mul(const Ciphertext& c1, const Ciphertext& c2, const GModRing& ring) {
    return {mod_mul(c1.psi1, c2.psi1, ring), mod_mul(c1.psi2, c2.psi2, ring)};
}

std::size_t largest_factor_bits(const PublicKey& pub) {
    mpz_class largest = 0;
    for (const auto& q : pub.order_factors)
        if (q > largest) largest = q;
    return mpz_sizeinbase(largest.get_mpz_t(), 2);
}

njson public_key_to_json(const PublicKey& pub) {
    njson factors = njson::array();
    for (const auto& q : pub.order_factors) factors.push_back(to_dec(q));
    return njson{{"p", to_dec(pub.ring.p())},
                 {"gamma", gaussian_to_json(pub.gamma)},
                 {"K", gaussian_to_json(pub.K)},
                 {"order_factors", factors}};
}

PublicKey public_key_from_json(const njson& j) {
    GModRing ring(dec_to_mpz(j.at("p")));
    std::vector<mpz_class> factors;
    for (const auto& f : j.at("order_factors")) factors.push_back(dec_to_mpz(f));
    PublicKey pub{ring, gaussian_from_json(j.at("gamma")), gaussian_from_json(j.at("K")),
                  std::move(factors)};
    if (!is_generator(pub.gamma, pub.ring, pub.order_factors))
        throw ConfigError("elgamal key file: gamma fails the generator check");
    if (mod_reduce(pub.K, pub.ring).is_zero())
        throw ConfigError("elgamal key file: K is zero mod p");
    return pub;
}

njson private_key_to_json(const PrivateKey& priv) {
    return njson{{"a", to_dec(priv.a)}};
}

PrivateKey private_key_from_json(const njson& j) {
    return {dec_to_mpz(j.at("a"))};
}

njson ciphertext_to_json(const Ciphertext& ct) {
    return njson{{"psi1", gaussian_to_json(ct.psi1)}, {"psi2", gaussian_to_json(ct.psi2)}};
}

Ciphertext ciphertext_from_json(const njson& j) {
    return {gaussian_from_json(j.at("psi1")), gaussian_from_json(j.at("psi2"))};
}

void validate_keypair(const PublicKey& pub, const PrivateKey& priv) {
    if (priv.a < 1 || priv.a > pub.ring.order() - 1)
        throw ConfigError("elgamal key files: private exponent out of range");
    if (mod_pow(pub.gamma, priv.a, pub.ring) != pub.K)
        throw ConfigError("elgamal key files: K does not match gamma^a");
}

} // namespace hidden::elgamal
