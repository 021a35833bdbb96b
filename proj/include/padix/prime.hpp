#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace padix {

/// Thrown when an operation is asked something outside its mathematical domain
/// (inverse of zero, a non-prime modulus, an unsupported exponent...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when the digits available are not enough to decide a question.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an exhaustive enumeration would exceed its residue budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_prime(long n);

/// A validated prime. Construction fails for anything that is not prime.
class Prime {
public:
    explicit Prime(long value) : value_(value) {
        if (!is_prime(value)) {
            throw DomainError("not a prime: " + std::to_string(value));
        }
    }

    long value() const { return value_; }

    friend bool operator==(Prime, Prime) = default;

private:
    long value_;
};

/// p-adic valuation of a nonzero machine integer.
int valuation_of(long n, Prime p);

/// p^e as a 64-bit integer; throws BudgetError on overflow.
std::uint64_t ipow(Prime p, int e);

}  // namespace padix
