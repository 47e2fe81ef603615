#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hidden/gaussian.hpp"
#include "hidden/gmod.hpp"
#include "hidden/numbers.hpp"
#include "hidden/rng.hpp"

#include <set>
#include <stdexcept>

using namespace hidden;

namespace {

GaussianInt g(long re, long im) { return GaussianInt(re, im); }

// Independent quotient search: try every kappa in a 3x3 neighborhood of
// the rounded quotient and keep the minimal-norm remainder.
GaussianInt brute_force_min_remainder(const GaussianInt& alpha, const GaussianInt& beta) {
    GaussianInt t = alpha * beta.conj();
    mpz_class nb = norm(beta);
    mpz_class qr = round_nearest_ties_to_zero(t.re, nb);
    mpz_class qi = round_nearest_ties_to_zero(t.im, nb);
    GaussianInt best_rho;
    mpz_class best = -1;
    for (int dr = -1; dr <= 1; ++dr) {
        for (int di = -1; di <= 1; ++di) {
            GaussianInt kappa{qr + dr, qi + di};
            GaussianInt rho = alpha - kappa * beta;
            mpz_class n = norm(rho);
            if (best < 0 || n < best) {
                best = n;
                best_rho = rho;
            }
        }
    }
    return best_rho;
}

} // namespace

TEST_CASE("norm") {
    CHECK(norm(g(3, 2)) == 13);
    CHECK(norm(g(5, 5)) == 50);
    CHECK(norm(g(0, 0)) == 0);

    SUBCASE("multiplicative") {
        SeededRng rng(11);
        for (int i = 0; i < 200; ++i) {
            GaussianInt x{rng.bits(90) - rng.bits(90), rng.bits(90) - rng.bits(90)};
            GaussianInt y{rng.bits(90) - rng.bits(90), rng.bits(90) - rng.bits(90)};
            CHECK(norm(x * y) == norm(x) * norm(y));
        }
    }
}

TEST_CASE("multiplication") {
    CHECK(g(3, 2) * g(5, 4) == g(7, 22));
    CHECK(g(3, 2) * g(17, 4) == g(43, 46));
    CHECK(g(1, 0) * g(-9, 42) == g(-9, 42));
}

TEST_CASE("inv_exact") {
    auto [re, im] = inv_exact(g(3, 2));
    CHECK(re == mpq_class(3, 13));
    CHECK(im == mpq_class(-2, 13));

    auto one = inv_exact(g(1, 0));
    CHECK(one.first == 1);
    CHECK(one.second == 0);

    auto twoi = inv_exact(g(0, 2));
    CHECK(twoi.first == 0);
    CHECK(twoi.second == mpq_class(-1, 2));

    CHECK_THROWS_AS(inv_exact(g(0, 0)), std::domain_error);

    SUBCASE("lambda * lambda^-1 = 1 in exact rationals") {
        SeededRng rng(12);
        for (int i = 0; i < 100; ++i) {
            GaussianInt z{rng.in_range(1, 1000000), rng.in_range(1, 1000000)};
            auto [r, s] = inv_exact(z);
            mpq_class zr(z.re), zi(z.im);
            CHECK(zr * r - zi * s == 1);
            CHECK(zr * s + zi * r == 0);
        }
    }
}

TEST_CASE("round_nearest_ties_to_zero") {
    CHECK(round_nearest_ties_to_zero(5, 2) == 2);   // 2.5 -> 2
    CHECK(round_nearest_ties_to_zero(-5, 2) == -2); // -2.5 -> -2
    CHECK(round_nearest_ties_to_zero(13, 7) == 2);
    CHECK(round_nearest_ties_to_zero(-13, 7) == -2);
    CHECK(round_nearest_ties_to_zero(12, 5) == 2);
    CHECK(round_nearest_ties_to_zero(13, 5) == 3);
    CHECK(round_nearest_ties_to_zero(0, 9) == 0);
}

TEST_CASE("div_rem") {
    auto exact = div_rem(g(7, 22), g(3, 2));
    CHECK(exact.quotient == g(5, 4));
    CHECK(exact.remainder == g(0, 0));

    auto ints = div_rem(g(13, 0), g(7, 0));
    CHECK(ints.quotient == g(2, 0));
    CHECK(ints.remainder == g(-1, 0));
    CHECK(norm(ints.remainder) == norm(brute_force_min_remainder(g(13, 0), g(7, 0))));

    auto zero = div_rem(g(0, 0), g(3, -5));
    CHECK(zero.quotient == g(0, 0));
    CHECK(zero.remainder == g(0, 0));

    CHECK_THROWS_AS(div_rem(g(1, 1), g(0, 0)), std::domain_error);

    SUBCASE("alpha = kappa beta + rho with N(rho) < N(beta), 128-bit inputs") {
        SeededRng rng(13);
        for (int i = 0; i < 300; ++i) {
            GaussianInt alpha{rng.bits(128) - rng.bits(128), rng.bits(128) - rng.bits(128)};
            GaussianInt beta{rng.bits(128) - rng.bits(128), rng.bits(128) - rng.bits(128)};
            if (beta.is_zero()) continue;
            auto [kappa, rho] = div_rem(alpha, beta);
            CHECK(kappa * beta + rho == alpha);
            CHECK(norm(rho) < norm(beta));
        }
    }
}

TEST_CASE("mod_reduce and centered_lift") {
    GModRing seven(7);
    CHECK(mod_reduce(g(13, 0), seven) == g(6, 0));
    CHECK(mod_reduce(g(-2, -2), seven) == g(5, 5));
    CHECK(mod_reduce(g(0, 0), seven) == g(0, 0));

    CHECK(centered_lift(g(5, 5), seven) == g(-2, -2));
    CHECK(centered_lift(g(6, 0), seven) == g(-1, 0));
    GModRing ring23(23);
    CHECK(centered_lift(g(3, 2), ring23) == g(3, 2));
    CHECK_THROWS_AS(centered_lift(g(7, 0), seven), std::domain_error);
    CHECK_THROWS_AS(centered_lift(g(0, -1), seven), std::domain_error);

    SUBCASE("reduce is idempotent and multiplicative") {
        SeededRng rng(14);
        for (int i = 0; i < 200; ++i) {
            GaussianInt x{rng.bits(64) - rng.bits(64), rng.bits(64) - rng.bits(64)};
            GaussianInt y{rng.bits(64) - rng.bits(64), rng.bits(64) - rng.bits(64)};
            GaussianInt rx = mod_reduce(x, seven);
            CHECK(mod_reduce(rx, seven) == rx);
            CHECK(mod_reduce(x * y, seven) == mod_mul(rx, mod_reduce(y, seven), seven));
        }
    }

    SUBCASE("centered_lift inverts mod_reduce inside the box") {
        for (long re = -3; re <= 3; ++re)
            for (long im = -3; im <= 3; ++im)
                CHECK(centered_lift(mod_reduce(g(re, im), seven), seven) == g(re, im));
    }
}

TEST_CASE("mod_pow") {
    GModRing ring(23);
    CHECK(mod_pow(g(1, 2), 7, ring) == g(6, 2));
    CHECK(mod_pow(g(1, 2), 5, ring) == g(18, 8));
    CHECK(mod_pow(g(9, 14), 0, ring) == g(1, 0));

    OpCounters c;
    mod_pow(g(1, 2), 100, ring, &c);
    CHECK(c.complex_modexp == 1);
}

TEST_CASE("mod_inv") {
    GModRing ring(23);
    GaussianInt z = g(3, 2);
    CHECK(mod_mul(z, mod_inv(z, ring), ring) == g(1, 0));
    CHECK(mod_inv(g(1, 0), ring) == g(1, 0));
    CHECK_THROWS_AS(mod_inv(g(0, 0), ring), std::domain_error);
    CHECK_THROWS_AS(mod_inv(g(23, 46), ring), std::domain_error);

    OpCounters c;
    mod_inv(z, ring, &c);
    CHECK(c.int_modexp == 1);
    CHECK(c.complex_modexp == 0);

    SUBCASE("matches exhaustive inverse search in Z[i]*_7") {
        GModRing seven(7);
        for (long re = 0; re < 7; ++re) {
            for (long im = 0; im < 7; ++im) {
                if (re == 0 && im == 0) continue;
                GaussianInt inv = mod_inv(g(re, im), seven);
                int hits = 0;
                GaussianInt found;
                for (long xr = 0; xr < 7; ++xr)
                    for (long xi = 0; xi < 7; ++xi) {
                        if (xr == 0 && xi == 0) continue;
                        if (mod_mul(g(re, im), g(xr, xi), seven) == g(1, 0)) {
                            ++hits;
                            found = g(xr, xi);
                        }
                    }
                CHECK(hits == 1);
                CHECK(found == inv);
            }
        }
    }
}

TEST_CASE("is_suitable_prime") {
    CHECK(is_suitable_prime(7));
    CHECK(is_suitable_prime(3));
    CHECK(is_suitable_prime(23));
    CHECK_FALSE(is_suitable_prime(5)); // 5 = (2+i)(2-i)
    CHECK_FALSE(is_suitable_prime(2)); // 2 = (1+i)(1-i)
    CHECK_FALSE(is_suitable_prime(13));
    CHECK_FALSE(is_suitable_prime(21));
    CHECK(is_suitable_prime(mpz_class("11549574199944959411")));
    CHECK(is_suitable_prime(mpz_class("176568538525926232126801441760822471971")));
}

TEST_CASE("group_order") {
    CHECK(group_order(GModRing(23)) == 528);
    CHECK(group_order(GModRing(7)) == 48);
    CHECK(group_order(GModRing(3)) == 8);
    CHECK_THROWS_AS(GModRing(5), std::invalid_argument);
    CHECK_THROWS_AS(GModRing(15), std::invalid_argument);
}

TEST_CASE("generators") {
    GModRing ring23(23);
    std::vector<mpz_class> f528{2, 3, 11}; // 528 = 2^4 * 3 * 11
    CHECK(is_generator(g(1, 2), ring23, f528));
    CHECK_FALSE(is_generator(g(1, 0), ring23, f528));
    CHECK_FALSE(is_generator(g(0, 0), ring23, f528));

    SUBCASE("found generator has order exactly 48 for p=7, by enumeration") {
        GModRing seven(7);
        std::vector<mpz_class> f48{2, 3};
        SeededRng rng(15);
        GaussianInt gamma = find_generator(seven, f48, rng);
        GaussianInt acc = g(1, 0);
        for (int e = 1; e <= 48; ++e) {
            acc = mod_mul(acc, gamma, seven);
            if (e < 48)
                CHECK(acc != g(1, 0));
            else
                CHECK(acc == g(1, 0));
        }
    }

    SUBCASE("bad factor list is rejected") {
        CHECK_THROWS_AS(is_generator(g(1, 2), ring23, {}), std::invalid_argument);
        CHECK_THROWS_AS(is_generator(g(1, 2), ring23, {mpz_class(7)}),
                        std::invalid_argument);
    }
}

TEST_CASE("Lagrange check for p=7: 49 representatives, units have order dividing 48") {
    GModRing seven(7);
    std::set<std::pair<long, long>> reps;
    for (long re = 0; re < 7; ++re) {
        for (long im = 0; im < 7; ++im) {
            GaussianInt z = g(re, im);
            CHECK(mod_reduce(z, seven) == z);
            reps.insert({re, im});
            if (!z.is_zero())
                CHECK(mod_pow(z, 48, seven) == g(1, 0));
        }
    }
    CHECK(reps.size() == 49);
}

TEST_CASE("integer factorization support") {
    auto f = factorize(528);
    REQUIRE(f.size() == 3);
    CHECK(f[mpz_class(2)] == 4);
    CHECK(f[mpz_class(3)] == 1);
    CHECK(f[mpz_class(11)] == 1);

    // 64-bit semiprime forces the rho path
    mpz_class a("2147483659"), b("2147483693");
    auto sp = factorize(a * b);
    REQUIRE(sp.size() == 2);
    CHECK(sp[a] == 1);
    CHECK(sp[b] == 1);

    CHECK(factorize(1).empty());
    CHECK_THROWS_AS(factorize(0), std::domain_error);
}

TEST_CASE("gaussian literal parsing") {
    CHECK(parse_gaussian("3+2i") == g(3, 2));
    CHECK(parse_gaussian("3-2i") == g(3, -2));
    CHECK(parse_gaussian("-7 + 22 i") == g(-7, 22));
    CHECK(parse_gaussian("42") == g(42, 0));
    CHECK(parse_gaussian("5i") == g(0, 5));
    CHECK(parse_gaussian("-i") == g(0, -1));
    CHECK(parse_gaussian("+3+i") == g(3, 1));
    CHECK(to_string(g(7, 22)) == "7+22i");
    CHECK(to_string(g(-3, -1)) == "-3-1i");
    CHECK_THROWS_AS(parse_gaussian(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_gaussian("3+2j"), std::invalid_argument);
    CHECK_THROWS_AS(parse_gaussian("3+2i9"), std::invalid_argument);
}
