#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <utility>

namespace hidden {

// Gaussian integer a+ib with arbitrary-precision components. Value type;
// all arithmetic is exact.
struct GaussianInt {
    mpz_class re;
    mpz_class im;

    GaussianInt() = default;
    GaussianInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussianInt(long r, long i = 0) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianInt conj() const { return {re, -im}; }

    friend GaussianInt operator+(const GaussianInt& x, const GaussianInt& y) {
        return {x.re + y.re, x.im + y.im};
    }
    friend GaussianInt operator-(const GaussianInt& x, const GaussianInt& y) {
        return {x.re - y.re, x.im - y.im};
    }
    GaussianInt operator-() const { return {-re, -im}; }
    friend GaussianInt operator*(const GaussianInt& x, const GaussianInt& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    GaussianInt& operator+=(const GaussianInt& y) { re += y.re; im += y.im; return *this; }

    friend bool operator==(const GaussianInt& x, const GaussianInt& y) {
        return x.re == y.re && x.im == y.im;
    }
    friend bool operator!=(const GaussianInt& x, const GaussianInt& y) { return !(x == y); }
};

// N(a+ib) = a^2 + b^2.
mpz_class norm(const GaussianInt& z);

// Exact complex inverse of a nonzero Gaussian integer, as a Gaussian
// rational in lowest terms. Throws std::domain_error on zero.
std::pair<mpq_class, mpq_class> inv_exact(const GaussianInt& lambda);

// Gaussian division with remainder: alpha = kappa*beta + rho with
// N(rho) < N(beta). Each coordinate of alpha*conj(beta)/N(beta) is rounded
// to the nearest integer, half-integers toward zero. Throws on beta = 0.
struct DivRem {
    GaussianInt quotient;
    GaussianInt remainder;
};
DivRem div_rem(const GaussianInt& alpha, const GaussianInt& beta);

// Rounds num/den (den > 0) to the nearest integer, ties toward zero.
mpz_class round_nearest_ties_to_zero(const mpz_class& num, const mpz_class& den);

// "a+bi" / "a-bi" / "a" / "bi" with optional whitespace; exact integers.
GaussianInt parse_gaussian(const std::string& text);
std::string to_string(const GaussianInt& z);

std::ostream& operator<<(std::ostream& os, const GaussianInt& z);

} // namespace hidden
