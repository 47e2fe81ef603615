#include "hidden/numbers.hpp"

#include <stdexcept>

namespace hidden {

namespace {
constexpr std::uint32_t kSieveLimit = 1u << 16;
constexpr int kMillerRabinRounds = 64;
} // namespace

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kSieveLimit, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i < kSieveLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < kSieveLimit; j += i)
                composite[static_cast<std::size_t>(j)] = true;
        }
        return out;
    }();
    return primes;
}

namespace {

bool miller_rabin(const mpz_class& n) {
    // n odd, > 2^32, no factor below 2^16. Bases come from an RNG seeded
    // from n itself so the test is a pure function of its input.
    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(mpz_class(n ^ mpz_class("0x9e3779b97f4a7c15")));

    mpz_class n_minus_1 = n - 1;
    for (int round = 0; round < kMillerRabinRounds; ++round) {
        mpz_class a = rng.get_z_range(n - 3) + 2; // a in [2, n-2]
        mpz_class x = pow_mod(a, d, n);
        if (x == 1 || x == n_minus_1) continue;
        bool witness = true;
        for (unsigned long r = 1; r < s; ++r) {
            x = (x * x) % n;
            if (x == n_minus_1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    for (std::uint32_t p : small_primes()) {
        if (mpz_cmp_ui(n.get_mpz_t(), p) == 0) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 32) return true; // trial division was exhaustive
    return miller_rabin(n);
}

bool is_suitable_prime(const mpz_class& p) {
    return p % 4 == 3 && is_prime(p);
}

namespace {

// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial
// factor of composite odd n (not necessarily prime).
mpz_class brent_rho(const mpz_class& n) {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(mpz_class(n ^ mpz_class("0xda3e39cb94b95bdb")));

    while (true) {
        mpz_class y = rng.get_z_range(n - 1) + 1;
        mpz_class c = rng.get_z_range(n - 1) + 1;
        mpz_class m = 128, g = 1, r = 1, q = 1, x, ys;

        while (g == 1) {
            x = y;
            for (mpz_class i = 0; i < r; ++i)
                y = (y * y + c) % n;
            mpz_class k = 0;
            while (k < r && g == 1) {
                ys = y;
                mpz_class rem = r - k;
                mpz_class lim = rem < m ? rem : m;
                for (mpz_class i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            }
        }
        if (g != n) return g;
        // cycle degenerated; retry with fresh parameters
    }
}

void factor_into(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    mpz_class f = brent_rho(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

} // namespace

std::map<mpz_class, unsigned> factorize(const mpz_class& n) {
    if (n < 1) throw std::domain_error("factorize: argument must be positive");
    std::map<mpz_class, unsigned> out;
    mpz_class rest = n;
    for (std::uint32_t p : small_primes()) {
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            ++out[mpz_class(p)];
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        }
    }
    factor_into(rest, out);
    return out;
}

mpz_class invert_mod(const mpz_class& x, const mpz_class& m) {
    mpz_class out;
    if (!mpz_invert(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("invert_mod: element is not invertible");
    return out;
}

mpz_class pow_mod(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
    mpz_class out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return out;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

} // namespace hidden
