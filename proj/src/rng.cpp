#include "hidden/rng.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace hidden {

SeededRng::SeededRng(std::uint64_t seed)
    : state_(std::make_unique<gmp_randclass>(gmp_randinit_default)) {
    mpz_class s;
    mpz_import(s.get_mpz_t(), 1, 1, sizeof(seed), 0, 0, &seed);
    state_->seed(s);
}

mpz_class SeededRng::below(const mpz_class& bound) {
    if (bound <= 0) throw std::invalid_argument("SeededRng::below: bound must be positive");
    return state_->get_z_range(bound);
}

mpz_class SeededRng::in_range(const mpz_class& lo, const mpz_class& hi) {
    if (lo > hi) throw std::invalid_argument("SeededRng::in_range: empty range");
    return lo + state_->get_z_range(hi - lo + 1);
}

mpz_class SeededRng::bits(unsigned nbits) {
    return state_->get_z_bits(nbits);
}

std::uint64_t SeededRng::u64() {
    mpz_class z = state_->get_z_bits(64);
    std::uint64_t out = 0;
    for (int i = 0; i < 64; i += 8) {
        mpz_class byte = (z >> i) & 0xff;
        out |= static_cast<std::uint64_t>(byte.get_ui()) << i;
    }
    return out;
}

std::vector<std::uint8_t> SeededRng::bytes(std::size_t count) {
    std::vector<std::uint8_t> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        mpz_class b = state_->get_z_bits(8);
        out[i] = static_cast<std::uint8_t>(b.get_ui());
    }
    return out;
}

std::uint64_t derive_subseed(std::uint64_t master, std::string_view label) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i)
        buf[i] = static_cast<unsigned char>(master >> (56 - 8 * i));
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    EVP_DigestUpdate(ctx, buf, sizeof(buf));
    EVP_DigestUpdate(ctx, label.data(), label.size());
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    std::uint64_t out = 0;
    for (int i = 0; i < 8; ++i)
        out = (out << 8) | digest[i];
    return out;
}

} // namespace hidden
