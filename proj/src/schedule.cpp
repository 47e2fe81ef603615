#include "hidden/schedule.hpp"

#include <openssl/hmac.h>

#include <stdexcept>

namespace hidden {

WatermarkSchedule::WatermarkSchedule(std::vector<std::uint8_t> seed,
                                     unsigned bits_per_watermark, std::uint64_t rounds)
    : seed_(std::move(seed)), bits_(bits_per_watermark), rounds_(rounds) {
    if (bits_ == 0 || bits_ > 4096)
        throw std::invalid_argument("WatermarkSchedule: B must be in [1, 4096]");
    if (rounds_ == 0)
        throw std::invalid_argument("WatermarkSchedule: M must be positive");
}

mpz_class WatermarkSchedule::watermark_at(std::uint64_t k) const {
    if (k < 1 || k > rounds_)
        throw std::out_of_range("watermark_at: round index out of [1, M]");

    // HMAC-SHA256(seed, be64(k) || be32(block)) expanded to ceil(B/8)
    // bytes, then the excess high bits of the first byte are masked off.
    std::size_t nbytes = (bits_ + 7) / 8;
    std::vector<std::uint8_t> stream;
    stream.reserve(nbytes);
    for (std::uint32_t block = 0; stream.size() < nbytes; ++block) {
        unsigned char msg[12];
        for (int i = 0; i < 8; ++i)
            msg[i] = static_cast<unsigned char>(k >> (56 - 8 * i));
        for (int i = 0; i < 4; ++i)
            msg[8 + i] = static_cast<unsigned char>(block >> (24 - 8 * i));
        unsigned char mac[32];
        unsigned int mac_len = 0;
        HMAC(EVP_sha256(), seed_.data(), static_cast<int>(seed_.size()), msg, sizeof(msg),
             mac, &mac_len);
        for (unsigned int i = 0; i < mac_len && stream.size() < nbytes; ++i)
            stream.push_back(mac[i]);
    }
    unsigned excess = static_cast<unsigned>(nbytes * 8 - bits_);
    stream[0] &= static_cast<std::uint8_t>(0xff >> excess);

    mpz_class w;
    mpz_import(w.get_mpz_t(), stream.size(), 1, 1, 0, 0, stream.data());
    return w;
}

mpz_class WatermarkSchedule::max_watermark() const {
    return (mpz_class(1) << bits_) - 1;
}

} // namespace hidden
