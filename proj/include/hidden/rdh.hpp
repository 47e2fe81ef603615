#pragma once

#include "hidden/gaussian.hpp"

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace hidden::rdh {

// Challenge factor lambda = a+ib with a, b != 0, so the data and the
// watermark both spread into the real and imaginary parts of the
// embedded value.
class WatermarkKey {
public:
    explicit WatermarkKey(GaussianInt lambda);
    const GaussianInt& lambda() const { return lambda_; }

private:
    GaussianInt lambda_;
};

// lambda * (d + iw), exact.
GaussianInt embed(const mpz_class& data, const mpz_class& watermark, const WatermarkKey& key);

struct Extracted {
    mpz_class data;
    mpz_class watermark;
};

// Inverts embed by exact integer arithmetic: conj(lambda) * marked must be
// divisible component-wise by N(lambda). A nonzero remainder raises
// IntegrityError — the value was tampered with or the key is wrong.
Extracted extract(const GaussianInt& marked, const WatermarkKey& key);

// Component-wise sum; empty input is a domain error.
GaussianInt aggregate(const std::vector<GaussianInt>& values);

struct AggExtracted {
    mpz_class sum;       // aggregated data
    mpz_class watermark;
};

// Recovers (sum of data, shared watermark) from an aggregate of
// device_count embedded values. The imaginary part of the unscaled
// aggregate must divide exactly by device_count.
AggExtracted extract_aggregate(const GaussianInt& sigma, const WatermarkKey& key,
                               const mpz_class& device_count);

struct RecoveredCount {
    mpz_class device_count;
    mpz_class watermark;
};

// When watermarks are chosen with no prime factor below n_max and the
// device count is at most n_max, the count is the product of all small
// prime powers in the aggregate's unscaled imaginary part. AmbiguityError
// when that product exceeds n_max.
RecoveredCount recover_count_and_watermark(const mpz_class& imag_part, unsigned n_max = 100);

// 2x2 integer matrix generalization of the complex embedding. The
// complex case is M = [[a, -b], [b, a]].
class EmbedMatrix {
public:
    EmbedMatrix(mpz_class m11, mpz_class m12, mpz_class m21, mpz_class m22);

    const mpz_class& m11() const { return m11_; }
    const mpz_class& m12() const { return m12_; }
    const mpz_class& m21() const { return m21_; }
    const mpz_class& m22() const { return m22_; }

    mpz_class det() const { return m11_ * m22_ - m12_ * m21_; }
    // True when every entry is nonzero, i.e. data and watermark both reach
    // both output components.
    bool mixing() const { return m11_ != 0 && m12_ != 0 && m21_ != 0 && m22_ != 0; }

private:
    mpz_class m11_, m12_, m21_, m22_;
};

std::pair<mpz_class, mpz_class> matrix_embed(const mpz_class& data, const mpz_class& watermark,
                                             const EmbedMatrix& m);

// Inverts matrix_embed via the adjugate with an exact divisibility check;
// IntegrityError when (v1, v2) is not in the image lattice of M.
std::pair<mpz_class, mpz_class> matrix_extract(const mpz_class& v1, const mpz_class& v2,
                                               const EmbedMatrix& m);

} // namespace hidden::rdh
