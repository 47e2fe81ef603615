#include "hidden/paillier.hpp"

#include "hidden/errors.hpp"
#include "hidden/numbers.hpp"
#include "hidden/rng.hpp"

#include <stdexcept>

namespace hidden::paillier {

namespace {

// L(x) = (x - 1) / n, defined only when n | x - 1. Truncating here would
// silently corrupt plaintexts, so non-divisibility is a hard error.
mpz_class L_function(const mpz_class& x, const mpz_class& n) {
    mpz_class t = x - 1;
    if (!mpz_divisible_p(t.get_mpz_t(), n.get_mpz_t()))
        throw IntegrityError("paillier: L(x) is not an integer (malformed ciphertext)");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return q;
}

mpz_class random_prime(unsigned bits, SeededRng& rng) {
    if (bits < 3)
        throw std::invalid_argument("paillier: prime size too small");
    while (true) {
        mpz_class cand = rng.bits(bits - 1) | (mpz_class(1) << (bits - 1)) | 1;
        if (is_prime(cand)) return cand;
    }
}

} // namespace

KeyPair keygen(const mpz_class& p, const mpz_class& q) {
    if (p == q)
        throw std::invalid_argument("paillier::keygen: p and q must differ");
    if (!is_prime(p) || !is_prime(q))
        throw std::invalid_argument("paillier::keygen: p and q must be prime");
    mpz_class n = p * q;
    mpz_class phi = (p - 1) * (q - 1);
    if (gcd(n, phi) != 1)
        throw std::invalid_argument("paillier::keygen: gcd(pq, (p-1)(q-1)) != 1");

    PublicKey pub{n, n + 1, n * n};
    mpz_class L_P = lcm(p - 1, q - 1);
    mpz_class u = pow_mod(pub.g, L_P, pub.n2);
    mpz_class M_P = invert_mod(L_function(u, n), n);
    return {pub, PrivateKey{L_P, M_P}};
}

KeyPair keygen_random(unsigned bits, SeededRng& rng) {
    if (bits < 6)
        throw std::invalid_argument("paillier::keygen_random: modulus too small");
    while (true) {
        mpz_class p = random_prime(bits / 2, rng);
        mpz_class q = random_prime(bits - bits / 2, rng);
        if (p == q) continue;
        if (gcd(p * q, (p - 1) * (q - 1)) != 1) continue;
        return keygen(p, q);
    }
}

mpz_class enc_int(const mpz_class& m, const mpz_class& r, const PublicKey& pub,
                  OpCounters* counters) {
    if (m < 0 || m >= pub.n)
        throw std::domain_error("paillier::enc_int: plaintext out of [0, n)");
    if (r <= 0 || r >= pub.n)
        throw std::domain_error("paillier::enc_int: r out of (0, n)");
    if (gcd(r, pub.n) != 1)
        throw std::domain_error("paillier::enc_int: r shares a factor with n");
    // g^m computed by a generic modexp even for g = n+1; the shortcut
    // would skew the operation counts the protocols rely on.
    mpz_class a = pow_mod(pub.g, m, pub.n2);
    mpz_class b = pow_mod(r, pub.n, pub.n2);
    count_modexp_n2(counters, 2);
    return a * b % pub.n2;
}

mpz_class enc_int(const mpz_class& m, const PublicKey& pub, SeededRng& rng,
                  OpCounters* counters) {
    mpz_class r;
    do {
        r = rng.in_range(1, pub.n - 1);
    } while (gcd(r, pub.n) != 1);
    return enc_int(m, r, pub, counters);
}

mpz_class dec_int(const mpz_class& c, const PrivateKey& priv, const PublicKey& pub,
                  OpCounters* counters) {
    if (c <= 0 || c >= pub.n2 || gcd(c, pub.n) != 1)
        throw IntegrityError("paillier::dec_int: ciphertext is not in Z*_{n^2}");
    mpz_class u = pow_mod(c, priv.L_P, pub.n2);
    count_modexp_n2(counters, 1);
    return L_function(u, pub.n) * priv.M_P % pub.n;
}

mpz_class hom_add(const mpz_class& c1, const mpz_class& c2, const PublicKey& pub) {
    return c1 * c2 % pub.n2;
}

mpz_class hom_scale(const mpz_class& c, const mpz_class& k, const PublicKey& pub,
                    OpCounters* counters) {
    if (k < 0)
        throw std::domain_error("paillier::hom_scale: constant must be nonnegative");
    count_modexp_n2(counters, 1);
    return pow_mod(c, k, pub.n2);
}

mpz_class encode_signed(const mpz_class& x, const PublicKey& pub) {
    if (2 * abs(x) >= pub.n)
        throw std::domain_error("paillier::encode_signed: |x| >= n/2");
    return x >= 0 ? x : mpz_class(pub.n + x);
}

mpz_class decode_signed(const mpz_class& m, const PublicKey& pub) {
    if (m < 0 || m >= pub.n)
        throw std::domain_error("paillier::decode_signed: value out of [0, n)");
    return 2 * m > pub.n ? mpz_class(m - pub.n) : m;
}

GaussCiphertext enc_gauss(const GaussianInt& mu, const PublicKey& pub, SeededRng& rng,
                          OpCounters* counters) {
    mpz_class mR = encode_signed(mu.re, pub);
    mpz_class mI = encode_signed(mu.im, pub);
    return {enc_int(mR, pub, rng, counters), enc_int(mI, pub, rng, counters)};
}

GaussianInt dec_gauss(const GaussCiphertext& ct, const PrivateKey& priv, const PublicKey& pub,
                      OpCounters* counters) {
    return {decode_signed(dec_int(ct.cR, priv, pub, counters), pub),
            decode_signed(dec_int(ct.cI, priv, pub, counters), pub)};
}

GaussCiphertext hom_add_gauss(const GaussCiphertext& c1, const GaussCiphertext& c2,
                              const PublicKey& pub) {
    return {hom_add(c1.cR, c2.cR, pub), hom_add(c1.cI, c2.cI, pub)};
}

njson public_key_to_json(const PublicKey& pub) {
    return njson{{"n", to_dec(pub.n)}, {"g", to_dec(pub.g)}};
}

PublicKey public_key_from_json(const njson& j) {
    mpz_class n = dec_to_mpz(j.at("n"));
    mpz_class g = dec_to_mpz(j.at("g"));
    if (n < 2)
        throw ConfigError("paillier key file: invalid modulus");
    return {n, g, n * n};
}

njson private_key_to_json(const PrivateKey& priv) {
    return njson{{"L_P", to_dec(priv.L_P)}, {"M_P", to_dec(priv.M_P)}};
}

PrivateKey private_key_from_json(const njson& j) {
    return {dec_to_mpz(j.at("L_P")), dec_to_mpz(j.at("M_P"))};
}

njson gauss_ciphertext_to_json(const GaussCiphertext& ct) {
    return njson{{"cR", to_dec(ct.cR)}, {"cI", to_dec(ct.cI)}};
}

GaussCiphertext gauss_ciphertext_from_json(const njson& j) {
    return {dec_to_mpz(j.at("cR")), dec_to_mpz(j.at("cI"))};
}

} // namespace hidden::paillier
