#pragma once

#include <gmpxx.h>

#include <climits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "padix/prime.hpp"

namespace padix {

/// Prime plus working precision N (number of unit digits carried).
struct PrecisionContext {
    static constexpr int default_precision = 32;
    static constexpr int minimum_precision = 4;

    explicit PrecisionContext(Prime p, int working_precision = default_precision);

    Prime prime;
    int precision;
};

/**
 * A p-adic number x = p^v (d0 + d1 p + d2 p^2 + ...) known to a fixed number
 * of unit digits.
 *
 * Three states are distinguished:
 *  - exact zero (no valuation);
 *  - nonzero: valuation v, unit part u with 0 < u < p^N and p not dividing u;
 *  - exhausted: the result of a cancellation that left no significant digit.
 *    It is only known to be O(p^k). Asking it for a valuation, a digit or an
 *    inverse throws PrecisionError, so cancellation never turns into a silent 0.
 *
 * Values are immutable; every operation returns a new value.
 */
class PadicNumber {
public:
    static PadicNumber zero(Prime p);
    static PadicNumber exhausted(Prime p, long absolute_precision);
    /// unit is reduced mod p^precision; it must not be divisible by p.
    static PadicNumber from_unit(Prime p, long valuation, mpz_class unit, int precision);
    /// Little-endian unit digits; digits.front() must be nonzero.
    static PadicNumber from_digits(Prime p, long valuation, std::span<const int> digits);

    Prime prime() const { return prime_; }

    bool is_zero() const { return state_ == State::zero; }
    bool is_exhausted() const { return state_ == State::exhausted; }
    bool is_nonzero() const { return state_ == State::nonzero; }
    /// Exact zero or exhausted: indistinguishable from zero at the precision carried.
    bool is_zero_like() const { return state_ != State::nonzero; }

    long valuation() const;
    /// Number of known unit digits (0 for the zero states).
    int precision() const { return state_ == State::nonzero ? precision_ : 0; }
    /// valuation + precision; the bound k of O(p^k) for exhausted values;
    /// LONG_MAX for exact zero.
    long absolute_precision() const;
    /// Unit part reduced mod p^precision.
    const mpz_class& unit() const;
    int digit(int i) const;
    std::vector<int> digits() const;

    /// Keeps at most n unit digits.
    PadicNumber truncated(int n) const;

    friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y);
    friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y);
    friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y);
    friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y);
    PadicNumber operator-() const;

private:
    enum class State { zero, exhausted, nonzero };

    PadicNumber(Prime p, State s) : prime_(p), state_(s) {}

    Prime prime_;
    State state_;
    long valuation_ = 0;  // for exhausted: the k in O(p^k)
    int precision_ = 0;
    mpz_class unit_;
};

/// p^n as a big integer (cached per thread).
const mpz_class& prime_power(Prime p, int n);

/// n/d in Q_p to ctx.precision unit digits.
PadicNumber canonicalize_rational(const mpz_class& numerator, const mpz_class& denominator,
                                  const PrecisionContext& ctx);
PadicNumber from_integer(const mpz_class& n, const PrecisionContext& ctx);
PadicNumber from_rational(const mpq_class& q, const PrecisionContext& ctx);

/// |x|_p = p^-v, 0 for zero. Throws PrecisionError for exhausted values.
mpq_class norm(const PadicNumber& x);

PadicNumber add(const PadicNumber& x, const PadicNumber& y);
PadicNumber sub(const PadicNumber& x, const PadicNumber& y);
PadicNumber mul(const PadicNumber& x, const PadicNumber& y);
PadicNumber inv(const PadicNumber& x);
PadicNumber pow(const PadicNumber& x, unsigned long e);
int digit(const PadicNumber& x, int i);

/// Same zero-ness, same valuation, and the first m unit digits agree.
/// Throws PrecisionError if either side carries fewer than m digits.
bool equal_at(const PadicNumber& x, const PadicNumber& y, int m);

/// x - y is indistinguishable from zero at absolute precision k, i.e. the
/// difference is exactly zero, O(p^j) with j >= k, or has valuation >= k.
bool agree_to(const PadicNumber& x, const PadicNumber& y, long k);

/// "p^v * (d0 + d1*p + d2*p^2 + ...)" with the numeric prime.
std::string to_text(const PadicNumber& x);
/// "v|d0,d1,d2,..."; "0" for zero and "O(k)" for an exhausted value.
std::string to_compact(const PadicNumber& x);
/// Accepts "n", "n/d" and the compact form.
PadicNumber parse_value(std::string_view text, const PrecisionContext& ctx);

}  // namespace padix
