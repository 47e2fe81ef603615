#include "hidden/rdh.hpp"

#include "hidden/errors.hpp"
#include "hidden/numbers.hpp"

#include <stdexcept>

namespace hidden::rdh {

WatermarkKey::WatermarkKey(GaussianInt lambda) : lambda_(std::move(lambda)) {
    if (lambda_.re == 0 || lambda_.im == 0)
        throw std::invalid_argument(
            "WatermarkKey: both components of lambda must be nonzero");
}

GaussianInt embed(const mpz_class& data, const mpz_class& watermark, const WatermarkKey& key) {
    return key.lambda() * GaussianInt{data, watermark};
}

namespace {

// Exact quotient num / den; nonzero remainder is the integrity signal.
mpz_class exact_quotient(const mpz_class& num, const mpz_class& den, const char* what) {
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw IntegrityError(what);
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

} // namespace

Extracted extract(const GaussianInt& marked, const WatermarkKey& key) {
    // lambda^-1 * marked = conj(lambda) * marked / N(lambda), kept in exact
    // integer arithmetic; floating point would round.
    GaussianInt t = key.lambda().conj() * marked;
    mpz_class n = norm(key.lambda());
    const char* msg = "extract: value is not a multiple of the key";
    return {exact_quotient(t.re, n, msg), exact_quotient(t.im, n, msg)};
}

GaussianInt aggregate(const std::vector<GaussianInt>& values) {
    if (values.empty())
        throw std::domain_error("aggregate: empty input");
    GaussianInt sum{0, 0};
    for (const auto& v : values) sum += v;
    return sum;
}

AggExtracted extract_aggregate(const GaussianInt& sigma, const WatermarkKey& key,
                               const mpz_class& device_count) {
    if (device_count < 1)
        throw std::domain_error("extract_aggregate: device count must be positive");
    Extracted e = extract(sigma, key);
    mpz_class w = exact_quotient(e.watermark, device_count,
                                 "extract_aggregate: imaginary part not divisible by N");
    return {e.data, w};
}

RecoveredCount recover_count_and_watermark(const mpz_class& imag_part, unsigned n_max) {
    if (imag_part < 1)
        throw std::domain_error("recover_count_and_watermark: argument must be positive");
    mpz_class count = 1;
    mpz_class rest = imag_part;
    for (std::uint32_t p : small_primes()) {
        if (p >= n_max) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            count *= p;
        }
    }
    if (count > n_max)
        throw AmbiguityError("recover_count_and_watermark: small-prime part " +
                             count.get_str() + " exceeds the device limit");
    return {count, rest};
}

EmbedMatrix::EmbedMatrix(mpz_class m11, mpz_class m12, mpz_class m21, mpz_class m22)
    : m11_(std::move(m11)), m12_(std::move(m12)), m21_(std::move(m21)), m22_(std::move(m22)) {
    if (det() == 0)
        throw std::domain_error("EmbedMatrix: determinant must be nonzero");
}

std::pair<mpz_class, mpz_class> matrix_embed(const mpz_class& data, const mpz_class& watermark,
                                             const EmbedMatrix& m) {
    return {m.m11() * data + m.m12() * watermark, m.m21() * data + m.m22() * watermark};
}

std::pair<mpz_class, mpz_class> matrix_extract(const mpz_class& v1, const mpz_class& v2,
                                               const EmbedMatrix& m) {
    // adjugate over determinant, exact
    mpz_class d = m.det();
    mpz_class num1 = m.m22() * v1 - m.m12() * v2;
    mpz_class num2 = m.m11() * v2 - m.m21() * v1;
    const char* msg = "matrix_extract: vector is not in the image lattice";
    if (d < 0) {
        d = -d;
        num1 = -num1;
        num2 = -num2;
    }
    return {exact_quotient(num1, d, msg), exact_quotient(num2, d, msg)};
}

} // namespace hidden::rdh
