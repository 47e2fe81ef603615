#include "hidden/gmod.hpp"

#include "hidden/numbers.hpp"
#include "hidden/rng.hpp"

#include <stdexcept>

namespace hidden {

GModRing::GModRing(mpz_class p) : p_(std::move(p)) {
    if (!is_suitable_prime(p_))
        throw std::invalid_argument("GModRing: modulus must be a prime = 3 (mod 4)");
    order_ = p_ * p_ - 1;
}

GaussianInt mod_reduce(const GaussianInt& z, const GModRing& ring) {
    GaussianInt out;
    mpz_fdiv_r(out.re.get_mpz_t(), z.re.get_mpz_t(), ring.p().get_mpz_t());
    mpz_fdiv_r(out.im.get_mpz_t(), z.im.get_mpz_t(), ring.p().get_mpz_t());
    return out;
}

namespace {

mpz_class lift_component(const mpz_class& c, const mpz_class& p) {
    if (c < 0 || c >= p)
        throw std::domain_error("centered_lift: component not a canonical representative");
    return 2 * c > p ? mpz_class(c - p) : c;
}

} // namespace

GaussianInt centered_lift(const GaussianInt& z, const GModRing& ring) {
    return {lift_component(z.re, ring.p()), lift_component(z.im, ring.p())};
}

GaussianInt mod_mul(const GaussianInt& x, const GaussianInt& y, const GModRing& ring) {
    return mod_reduce(x * y, ring);
}

GaussianInt mod_add(const GaussianInt& x, const GaussianInt& y, const GModRing& ring) {
    return mod_reduce(x + y, ring);
}

GaussianInt mod_pow(const GaussianInt& x, const mpz_class& e, const GModRing& ring,
                    OpCounters* counters) {
    if (e < 0) throw std::domain_error("mod_pow: exponent must be nonnegative");
    count_complex_modexp(counters);
    GaussianInt base = mod_reduce(x, ring);
    GaussianInt acc{1, 0};
    std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return acc;
    for (std::size_t i = nbits; i-- > 0;) {
        acc = mod_mul(acc, acc, ring);
        if (mpz_tstbit(e.get_mpz_t(), i))
            acc = mod_mul(acc, base, ring);
    }
    return acc;
}

GaussianInt mod_inv(const GaussianInt& z, const GModRing& ring, OpCounters* counters) {
    GaussianInt zr = mod_reduce(z, ring);
    if (zr.is_zero())
        throw std::domain_error("mod_inv: zero is not invertible");
    // conj(z) * N(z)^-1 (mod p); the integer inversion is priced as one
    // integer modexp regardless of the gcd shortcut used internally.
    mpz_class n = norm(zr) % ring.p();
    mpz_class n_inv = invert_mod(n, ring.p());
    count_int_modexp(counters);
    GaussianInt out{zr.re * n_inv, (ring.p() - zr.im) * n_inv};
    return mod_reduce(out, ring);
}

mpz_class group_order(const GModRing& ring) {
    return ring.order();
}

bool is_generator(const GaussianInt& gamma, const GModRing& ring,
                  const std::vector<mpz_class>& order_prime_factors) {
    if (order_prime_factors.empty())
        throw std::invalid_argument("is_generator: factor list is empty");
    GaussianInt g = mod_reduce(gamma, ring);
    if (g.is_zero()) return false;
    const GaussianInt one{1, 0};
    for (const mpz_class& q : order_prime_factors) {
        if (q <= 1 || ring.order() % q != 0)
            throw std::invalid_argument("is_generator: bad prime factor for group order");
        if (mod_pow(g, ring.order() / q, ring) == one)
            return false;
    }
    return true;
}

GaussianInt find_generator(const GModRing& ring,
                           const std::vector<mpz_class>& order_prime_factors,
                           SeededRng& rng, unsigned max_attempts) {
    for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
        GaussianInt cand{rng.below(ring.p()), rng.below(ring.p())};
        if (cand.is_zero()) continue;
        if (is_generator(cand, ring, order_prime_factors))
            return cand;
    }
    throw std::runtime_error("find_generator: attempt budget exhausted");
}

} // namespace hidden
