#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padix/padic.hpp"

namespace padix {

/// Polynomial in the prime p with rational coefficients (index = power of p).
class PrimePolynomial {
public:
    PrimePolynomial() = default;
    PrimePolynomial(mpq_class constant);  // NOLINT: implicit on purpose
    static PrimePolynomial p();

    bool is_zero() const { return coeffs_.empty(); }
    std::optional<mpq_class> constant_value() const;
    mpq_class evaluate(long p) const;
    const std::vector<mpq_class>& coefficients() const { return coeffs_; }

    PrimePolynomial operator+(const PrimePolynomial& o) const;
    PrimePolynomial operator-(const PrimePolynomial& o) const;
    PrimePolynomial operator*(const PrimePolynomial& o) const;
    PrimePolynomial operator-() const;
    bool operator==(const PrimePolynomial&) const = default;

    /// "(p - 1)(p - 2)/6", "3", "p"...
    std::string to_string() const;

private:
    void trim();
    std::vector<mpq_class> coeffs_;
};

/// Exponent per_p * p + constant.
struct LinearExponent {
    long per_p = 0;
    long constant = 0;

    bool is_zero() const { return per_p == 0 && constant == 0; }
    long evaluate(long p) const { return per_p * p + constant; }
    LinearExponent operator+(const LinearExponent& o) const {
        return {per_p + o.per_p, constant + o.constant};
    }
    auto operator<=>(const LinearExponent&) const = default;
    std::string to_string() const;
};

/// Polynomial in the digits a_0, a_1, ... of a, with exponents linear in p and
/// coefficients in Q[p].
class DigitPolynomial {
public:
    using Monomial = std::map<int, LinearExponent>;  // digit index -> exponent

    DigitPolynomial() = default;
    DigitPolynomial(PrimePolynomial constant);  // NOLINT: implicit on purpose
    static DigitPolynomial digit(int index, LinearExponent exponent = {0, 1});

    const std::map<Monomial, PrimePolynomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_digit() const;

    DigitPolynomial operator+(const DigitPolynomial& o) const;
    DigitPolynomial operator-(const DigitPolynomial& o) const;
    DigitPolynomial operator*(const DigitPolynomial& o) const;
    DigitPolynomial pow(unsigned e) const;
    bool operator==(const DigitPolynomial&) const = default;

    /// Replaces a_i (i >= 1) by images[i]; a_0 is kept.  Exponents of the
    /// replaced digits must be constants.
    DigitPolynomial substitute(const std::vector<DigitPolynomial>& images) const;
    /// Instantiates p: coefficients and exponents become constants.
    DigitPolynomial at_prime(long p) const;

    /// Value mod p^e for concrete digits.  Throws DomainError when a
    /// coefficient denominator is divisible by p or an exponent is negative.
    mpz_class evaluate_mod(long p, const std::vector<int>& digits, int e) const;

    std::string to_ascii() const;
    std::string to_unicode() const;

private:
    void add_term(const Monomial& m, const PrimePolynomial& c);
    std::map<Monomial, PrimePolynomial> terms_;
};

struct Congruence {
    DigitPolynomial lhs;
    DigitPolynomial rhs;
    int modulus_exponent = 1;  // modulus p^e
    bool digit_equality = false;  // printed as '=': both sides are single digits
};

struct CriterionCheck {
    bool satisfied = false;
    /// -1 when satisfied, 0 for the valuation condition, i >= 1 for congruence i.
    int failed_line = -1;
};

/**
 * Solvability conditions for x^(p^m) = a: p^m divides the valuation, followed
 * by digit congruences evaluated in order.
 */
struct Criterion {
    std::optional<Prime> prime;  // empty: symbolic p
    int stages = 1;
    std::vector<Congruence> congruences;

    /// Short-circuit evaluation against a nonzero number.
    CriterionCheck evaluate(const PadicNumber& a) const;
    /// Digits a_0 .. a_{needed-1} must be known.
    int digits_needed() const;

    std::string divisor_text() const;
    std::string to_unicode() const;
};

/// The Q[p]-polynomial N_k(x_0, ..., x_{k-1}) / p for symbolic p, over digit
/// symbols 0..k-1.
DigitPolynomial symbolic_reduced_carry(int k);

/// Stage-condition offsets g_j with a_j == a_1 + g_j(a_0, a_1) for j = 2..m,
/// derived by iterating the digit recursion symbolically.
std::vector<DigitPolynomial> stage_offsets(int m);

/// The criterion with the published lines for m <= 4 and the derived lines
/// beyond; congruences after the first are mod p.
Criterion emit_criterion(std::optional<Prime> p, int m);
/// The fully derived criterion (every line from stage_offsets).
Criterion derive_criterion(std::optional<Prime> p, int m);
/// Variant of emit_criterion with a different modulus on lines 3 and 4.
Criterion with_modulus(Criterion c, int first_line, int exponent);

}  // namespace padix
