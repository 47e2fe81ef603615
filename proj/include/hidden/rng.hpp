#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

namespace hidden {

// Deterministic random stream over GMP's default generator. One master
// seed fans out into independent per-party streams via derive_subseed,
// so message order never perturbs another party's draws.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed);
    SeededRng(SeededRng&&) noexcept = default;
    SeededRng& operator=(SeededRng&&) noexcept = default;

    // Uniform in [0, bound); bound > 0.
    mpz_class below(const mpz_class& bound);
    // Uniform in [lo, hi] inclusive.
    mpz_class in_range(const mpz_class& lo, const mpz_class& hi);
    // Uniform in [0, 2^nbits).
    mpz_class bits(unsigned nbits);
    std::uint64_t u64();
    std::vector<std::uint8_t> bytes(std::size_t count);

private:
    std::unique_ptr<gmp_randclass> state_; // gmp_randclass itself is pinned
};

// SHA-256(be64(master) || label), truncated to the first 8 bytes.
std::uint64_t derive_subseed(std::uint64_t master, std::string_view label);

} // namespace hidden
