#include "hidden/aead.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace hidden {

namespace {

constexpr std::size_t kNonceLen = 12;
constexpr std::size_t kTagLen = 16;

struct CtxGuard {
    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    ~CtxGuard() { EVP_CIPHER_CTX_free(ctx); }
};

} // namespace

Bytes AesGcmCipher::seal(const Bytes& key, const Bytes& nonce, const Bytes& plaintext) const {
    if (key.size() != key_size())
        throw std::invalid_argument("AesGcmCipher: bad key size");
    if (nonce.size() != kNonceLen)
        throw std::invalid_argument("AesGcmCipher: bad nonce size");

    CtxGuard guard;
    if (!guard.ctx || EVP_EncryptInit_ex(guard.ctx, EVP_aes_256_gcm(), nullptr, key.data(),
                                         nonce.data()) != 1)
        throw std::runtime_error("AesGcmCipher: encrypt init failed");

    Bytes out(plaintext.size() + kTagLen);
    int len = 0;
    if (EVP_EncryptUpdate(guard.ctx, out.data(), &len, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1)
        throw std::runtime_error("AesGcmCipher: encrypt failed");
    int total = len;
    if (EVP_EncryptFinal_ex(guard.ctx, out.data() + total, &len) != 1)
        throw std::runtime_error("AesGcmCipher: encrypt finalize failed");
    total += len;
    if (EVP_CIPHER_CTX_ctrl(guard.ctx, EVP_CTRL_GCM_GET_TAG, kTagLen, out.data() + total) != 1)
        throw std::runtime_error("AesGcmCipher: tag retrieval failed");
    out.resize(total + kTagLen);
    return out;
}

std::optional<Bytes> AesGcmCipher::open(const Bytes& key, const Bytes& nonce,
                                        const Bytes& boxed) const {
    if (key.size() != key_size() || nonce.size() != kNonceLen || boxed.size() < kTagLen)
        return std::nullopt;

    CtxGuard guard;
    if (!guard.ctx || EVP_DecryptInit_ex(guard.ctx, EVP_aes_256_gcm(), nullptr, key.data(),
                                         nonce.data()) != 1)
        return std::nullopt;

    std::size_t ct_len = boxed.size() - kTagLen;
    Bytes out(ct_len);
    int len = 0;
    if (ct_len > 0 &&
        EVP_DecryptUpdate(guard.ctx, out.data(), &len, boxed.data(),
                          static_cast<int>(ct_len)) != 1)
        return std::nullopt;
    int total = len;

    Bytes tag(boxed.end() - kTagLen, boxed.end());
    if (EVP_CIPHER_CTX_ctrl(guard.ctx, EVP_CTRL_GCM_SET_TAG, kTagLen, tag.data()) != 1)
        return std::nullopt;
    if (EVP_DecryptFinal_ex(guard.ctx, out.data() + total, &len) != 1)
        return std::nullopt; // authentication failure
    total += len;
    out.resize(total);
    return out;
}

Bytes round_nonce(std::uint64_t round) {
    Bytes nonce(kNonceLen, 0);
    for (int i = 0; i < 8; ++i)
        nonce[4 + i] = static_cast<std::uint8_t>(round >> (56 - 8 * i));
    return nonce;
}

const AeadCipher& default_cipher() {
    static const AesGcmCipher cipher;
    return cipher;
}

} // namespace hidden
