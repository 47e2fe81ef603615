#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace hidden {

// Shared, time-dependent watermark sequence w_1..w_M, each B bits. Every
// party holding the seed regenerates the same values, so the "agreement"
// is one compact secret instead of a stored list.
class WatermarkSchedule {
public:
    WatermarkSchedule(std::vector<std::uint8_t> seed, unsigned bits_per_watermark,
                      std::uint64_t rounds);

    // w_k in [0, 2^B - 1]; PRF(seed, k) truncated to B bits. k in [1, M].
    mpz_class watermark_at(std::uint64_t k) const;

    unsigned bits() const { return bits_; }
    std::uint64_t rounds() const { return rounds_; }
    mpz_class max_watermark() const; // 2^B - 1

private:
    std::vector<std::uint8_t> seed_;
    unsigned bits_;
    std::uint64_t rounds_;
};

} // namespace hidden
