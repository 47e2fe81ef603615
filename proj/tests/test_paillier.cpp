#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hidden/errors.hpp"
#include "hidden/numbers.hpp"
#include "hidden/paillier.hpp"
#include "hidden/rng.hpp"

#include <stdexcept>

using namespace hidden;
using namespace hidden::paillier;

TEST_CASE("key generation") {
    KeyPair keys = keygen(5, 7);
    CHECK(keys.pub.n == 35);
    CHECK(keys.pub.g == 36);
    CHECK(keys.pub.n2 == 1225);
    CHECK(keys.priv.L_P == 12); // lcm(4, 6)

    // L(g^L_P mod n^2) * M_P = 1 (mod n)
    mpz_class u = pow_mod(keys.pub.g, keys.priv.L_P, keys.pub.n2);
    mpz_class L = (u - 1) / keys.pub.n;
    CHECK(L * keys.priv.M_P % keys.pub.n == 1);

    SUBCASE("p = q is rejected") {
        CHECK_THROWS_AS(keygen(7, 7), std::invalid_argument);
    }
    SUBCASE("composite inputs are rejected") {
        CHECK_THROWS_AS(keygen(9, 7), std::invalid_argument);
    }
    SUBCASE("gcd condition accepted for 3 and 11") {
        KeyPair k = keygen(3, 11);
        CHECK(k.pub.n == 33);
        CHECK(gcd(k.pub.n, mpz_class(2 * 10)) == 1);
    }
    SUBCASE("random keygen round-trips") {
        SeededRng rng(41);
        KeyPair k = keygen_random(128, rng);
        CHECK(mpz_sizeinbase(k.pub.n.get_mpz_t(), 2) >= 126);
        mpz_class m = 123456;
        CHECK(dec_int(enc_int(m, k.pub, rng), k.priv, k.pub) == m);
    }
}

TEST_CASE("integer encryption") {
    KeyPair keys = keygen(5, 7);
    SeededRng rng(42);

    CHECK(enc_int(0, 1, keys.pub) == 1); // g^0 * 1^n
    CHECK(dec_int(1, keys.priv, keys.pub) == 0);
    CHECK(dec_int(keys.pub.g % keys.pub.n2, keys.priv, keys.pub) == 1); // m=1, r=1

    SUBCASE("round trip with random blinding") {
        for (int i = 0; i < 20; ++i)
            CHECK(dec_int(enc_int(7, keys.pub, rng), keys.priv, keys.pub) == 7);
    }
    SUBCASE("exhaustive plaintext space for n = 35") {
        for (long m = 0; m < 35; ++m)
            CHECK(dec_int(enc_int(m, keys.pub, rng), keys.priv, keys.pub) == m);
    }
    SUBCASE("plaintext range") {
        CHECK_THROWS_AS(enc_int(35, 1, keys.pub), std::domain_error);
        CHECK_THROWS_AS(enc_int(-1, 1, keys.pub), std::domain_error);
    }
    SUBCASE("blinding factor constraints") {
        CHECK_THROWS_AS(enc_int(3, 0, keys.pub), std::domain_error);
        CHECK_THROWS_AS(enc_int(3, 35, keys.pub), std::domain_error);
        CHECK_THROWS_AS(enc_int(3, 5, keys.pub), std::domain_error); // gcd(5,35) = 5
    }
    SUBCASE("ciphertext domain") {
        CHECK_THROWS_AS(dec_int(0, keys.priv, keys.pub), IntegrityError);
        CHECK_THROWS_AS(dec_int(35, keys.priv, keys.pub), IntegrityError);
        CHECK_THROWS_AS(dec_int(1225, keys.priv, keys.pub), IntegrityError);
    }
}

TEST_CASE("additive homomorphism") {
    KeyPair keys = keygen(5, 7);
    SeededRng rng(43);

    mpz_class c3 = enc_int(3, keys.pub, rng);
    mpz_class c4 = enc_int(4, keys.pub, rng);
    CHECK(dec_int(hom_add(c3, c4, keys.pub), keys.priv, keys.pub) == 7);

    mpz_class c0 = enc_int(0, keys.pub, rng);
    CHECK(dec_int(hom_add(c3, c0, keys.pub), keys.priv, keys.pub) == 3);

    mpz_class c20 = enc_int(20, keys.pub, rng);
    CHECK(dec_int(hom_add(c20, c20, keys.pub), keys.priv, keys.pub) == 5); // 40 mod 35

    SUBCASE("random pairs against plain arithmetic") {
        for (int i = 0; i < 200; ++i) {
            mpz_class m1 = rng.below(35), m2 = rng.below(35);
            mpz_class sum = dec_int(hom_add(enc_int(m1, keys.pub, rng),
                                            enc_int(m2, keys.pub, rng), keys.pub),
                                    keys.priv, keys.pub);
            CHECK(sum == (m1 + m2) % 35);
        }
    }
}

TEST_CASE("scalar multiplication") {
    KeyPair keys = keygen(5, 7);
    SeededRng rng(44);

    mpz_class c4 = enc_int(4, keys.pub, rng);
    CHECK(dec_int(hom_scale(c4, 1, keys.pub), keys.priv, keys.pub) == 4);
    CHECK(dec_int(hom_scale(c4, 0, keys.pub), keys.priv, keys.pub) == 0);
    CHECK(dec_int(hom_scale(c4, 3, keys.pub), keys.priv, keys.pub) == 12);
    CHECK_THROWS_AS(hom_scale(c4, -1, keys.pub), std::domain_error);
}

TEST_CASE("signed encoding") {
    KeyPair keys = keygen(5, 7);

    CHECK(encode_signed(-1, keys.pub) == 34);
    CHECK(decode_signed(34, keys.pub) == -1);
    CHECK(encode_signed(0, keys.pub) == 0);
    CHECK(decode_signed(0, keys.pub) == 0);
    CHECK(encode_signed(17, keys.pub) == 17);
    CHECK(decode_signed(17, keys.pub) == 17);
    CHECK(encode_signed(-17, keys.pub) == 18);
    CHECK_THROWS_AS(encode_signed(18, keys.pub), std::domain_error);
    CHECK_THROWS_AS(encode_signed(-18, keys.pub), std::domain_error);

    SUBCASE("sums of encodings decode to integer sums while in range") {
        SeededRng rng(45);
        for (int trial = 0; trial < 100; ++trial) {
            mpz_class total_abs = 0, expected = 0;
            mpz_class acc = enc_int(0, keys.pub, rng);
            for (int i = 0; i < 4; ++i) {
                mpz_class x = rng.in_range(-4, 4);
                if (total_abs + abs(x) >= 17) break;
                total_abs += abs(x);
                expected += x;
                acc = hom_add(acc, enc_int(encode_signed(x, keys.pub), keys.pub, rng),
                              keys.pub);
            }
            CHECK(decode_signed(dec_int(acc, keys.priv, keys.pub), keys.pub) == expected);
        }
    }
}

TEST_CASE("component-wise gaussian encryption") {
    KeyPair keys = keygen(7, 11); // n = 77
    SeededRng rng(46);

    GaussianInt mu(7, 22);
    GaussCiphertext ct = enc_gauss(mu, keys.pub, rng);
    CHECK(dec_gauss(ct, keys.priv, keys.pub) == mu);

    GaussianInt zero(0, 0);
    CHECK(dec_gauss(enc_gauss(zero, keys.pub, rng), keys.priv, keys.pub) == zero);

    SUBCASE("component-wise sums") {
        GaussianInt m1(7, 22), m2(16, -28);
        GaussCiphertext sum =
            hom_add_gauss(enc_gauss(m1, keys.pub, rng), enc_gauss(m2, keys.pub, rng), keys.pub);
        CHECK(dec_gauss(sum, keys.priv, keys.pub) == m1 + m2);
    }
    SUBCASE("identity and associativity over random triples") {
        for (int i = 0; i < 50; ++i) {
            GaussianInt a{rng.in_range(-12, 12), rng.in_range(-12, 12)};
            GaussianInt b{rng.in_range(-12, 12), rng.in_range(-12, 12)};
            GaussianInt c{rng.in_range(-12, 12), rng.in_range(-12, 12)};
            GaussCiphertext ea = enc_gauss(a, keys.pub, rng);
            GaussCiphertext eb = enc_gauss(b, keys.pub, rng);
            GaussCiphertext ec = enc_gauss(c, keys.pub, rng);
            GaussCiphertext left =
                hom_add_gauss(hom_add_gauss(ea, eb, keys.pub), ec, keys.pub);
            GaussCiphertext right =
                hom_add_gauss(ea, hom_add_gauss(eb, ec, keys.pub), keys.pub);
            CHECK(dec_gauss(left, keys.priv, keys.pub) == a + b + c);
            CHECK(dec_gauss(right, keys.priv, keys.pub) == a + b + c);
        }
    }
    SUBCASE("component magnitude limits") {
        CHECK_THROWS_AS(enc_gauss(GaussianInt(39, 0), keys.pub, rng), std::domain_error);
        CHECK_THROWS_AS(enc_gauss(GaussianInt(0, -39), keys.pub, rng), std::domain_error);
    }
}

TEST_CASE("512-bit randomized round trips") {
    SeededRng rng(47);
    KeyPair keys = keygen_random(512, rng);
    for (int i = 0; i < 10; ++i) {
        mpz_class m = rng.below(keys.pub.n);
        CHECK(dec_int(enc_int(m, keys.pub, rng), keys.priv, keys.pub) == m);

        GaussianInt mu{rng.bits(200) - rng.bits(200), rng.bits(200) - rng.bits(200)};
        CHECK(dec_gauss(enc_gauss(mu, keys.pub, rng), keys.priv, keys.pub) == mu);
    }
}

TEST_CASE("operation counter law") {
    KeyPair keys = keygen(7, 11);
    SeededRng rng(48);

    OpCounters enc_ctr;
    mpz_class c = enc_int(5, keys.pub, rng, &enc_ctr);
    CHECK(enc_ctr.modexp_n2 == 2);

    OpCounters dec_ctr;
    dec_int(c, keys.priv, keys.pub, &dec_ctr);
    CHECK(dec_ctr.modexp_n2 == 1);

    OpCounters gauss_ctr;
    GaussCiphertext gc = enc_gauss(GaussianInt(3, -4), keys.pub, rng, &gauss_ctr);
    CHECK(gauss_ctr.modexp_n2 == 4);
    gauss_ctr.reset();
    dec_gauss(gc, keys.priv, keys.pub, &gauss_ctr);
    CHECK(gauss_ctr.modexp_n2 == 2);
}

TEST_CASE("key and ciphertext serialization") {
    KeyPair keys = keygen(5, 7);
    PublicKey pub = public_key_from_json(public_key_to_json(keys.pub));
    PrivateKey priv = private_key_from_json(private_key_to_json(keys.priv));
    CHECK(pub.n == 35);
    CHECK(pub.g == 36);
    CHECK(pub.n2 == 1225);
    CHECK(priv.L_P == 12);
    CHECK(priv.M_P == keys.priv.M_P);

    SeededRng rng(49);
    GaussCiphertext ct = enc_gauss(GaussianInt(-3, 9), keys.pub, rng);
    GaussCiphertext back = gauss_ciphertext_from_json(gauss_ciphertext_to_json(ct));
    CHECK(back.cR == ct.cR);
    CHECK(back.cI == ct.cI);
    CHECK(dec_gauss(back, keys.priv, keys.pub) == GaussianInt(-3, 9));
}
