#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hidden {

using Bytes = std::vector<std::uint8_t>;

// Authenticated symmetric cipher used for the per-sensor challenge
// channel. open() returns nullopt on any authentication failure; the
// protocols treat that as a detection event, never as data.
class AeadCipher {
public:
    virtual ~AeadCipher() = default;
    virtual std::string name() const = 0;
    virtual std::size_t key_size() const = 0;
    virtual Bytes seal(const Bytes& key, const Bytes& nonce, const Bytes& plaintext) const = 0;
    virtual std::optional<Bytes> open(const Bytes& key, const Bytes& nonce,
                                      const Bytes& boxed) const = 0;
};

// AES-256-GCM (OpenSSL EVP); 12-byte nonce, 16-byte tag appended to the
// ciphertext.
class AesGcmCipher final : public AeadCipher {
public:
    std::string name() const override { return "aes-256-gcm"; }
    std::size_t key_size() const override { return 32; }
    Bytes seal(const Bytes& key, const Bytes& nonce, const Bytes& plaintext) const override;
    std::optional<Bytes> open(const Bytes& key, const Bytes& nonce,
                              const Bytes& boxed) const override;
};

// 12-byte nonce carrying the round index; one key per sensor plus a
// never-repeating round counter keeps (key, nonce) pairs unique.
Bytes round_nonce(std::uint64_t round);

const AeadCipher& default_cipher();

} // namespace hidden
