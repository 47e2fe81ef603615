#include "hidden/gaussian.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace hidden {

mpz_class norm(const GaussianInt& z) {
    return z.re * z.re + z.im * z.im;
}

std::pair<mpq_class, mpq_class> inv_exact(const GaussianInt& lambda) {
    if (lambda.is_zero())
        throw std::domain_error("inv_exact: zero has no inverse");
    mpq_class n(norm(lambda));
    mpq_class r(lambda.re), i(-lambda.im);
    r /= n;
    i /= n;
    r.canonicalize();
    i.canonicalize();
    return {r, i};
}

mpz_class round_nearest_ties_to_zero(const mpz_class& num, const mpz_class& den) {
    // den > 0 assumed. For x >= 0, floor((2x + den - 1) / (2 den)) rounds
    // x/den to the nearest integer with the half case going down.
    mpz_class q;
    if (num >= 0) {
        mpz_class t = 2 * num + den - 1;
        mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    } else {
        mpz_class t = -2 * num + den - 1;
        mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
        q = -q;
    }
    return q;
}

DivRem div_rem(const GaussianInt& alpha, const GaussianInt& beta) {
    if (beta.is_zero())
        throw std::domain_error("div_rem: division by zero");
    GaussianInt t = alpha * beta.conj();
    mpz_class nb = norm(beta);
    GaussianInt kappa{round_nearest_ties_to_zero(t.re, nb),
                      round_nearest_ties_to_zero(t.im, nb)};
    GaussianInt rho = alpha - kappa * beta;
    return {kappa, rho};
}

namespace {

// One signed integer starting at text[pos]; an omitted magnitude in front
// of 'i' means 1 (as in "i" or "3-i").
mpz_class parse_component(const std::string& text, std::size_t& pos, bool allow_empty_one) {
    std::size_t start = pos;
    std::string digits;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') digits += '-';
        ++pos;
    }
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        digits += text[pos++];
    bool empty = (digits.empty() || digits == "-");
    if (empty) {
        if (!allow_empty_one || pos >= text.size() || text[pos] != 'i')
            throw std::invalid_argument("parse_gaussian: expected integer at position " +
                                        std::to_string(start));
        digits += '1';
    }
    return mpz_class(digits);
}

} // namespace

GaussianInt parse_gaussian(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty())
        throw std::invalid_argument("parse_gaussian: empty literal");

    std::size_t pos = 0;
    mpz_class first = parse_component(s, pos, true);
    if (pos == s.size())
        return {first, 0}; // pure real
    if (s[pos] == 'i') {
        ++pos;
        if (pos != s.size())
            throw std::invalid_argument("parse_gaussian: trailing characters in '" + text + "'");
        return {0, first}; // pure imaginary
    }
    mpz_class second = parse_component(s, pos, true);
    if (pos >= s.size() || s[pos] != 'i' || pos + 1 != s.size())
        throw std::invalid_argument("parse_gaussian: malformed literal '" + text + "'");
    return {first, second};
}

std::string to_string(const GaussianInt& z) {
    std::string s = z.re.get_str();
    s += (z.im >= 0 ? "+" : "-");
    mpz_class a = abs(z.im);
    s += a.get_str();
    s += 'i';
    return s;
}

std::ostream& operator<<(std::ostream& os, const GaussianInt& z) {
    return os << to_string(z);
}

} // namespace hidden
