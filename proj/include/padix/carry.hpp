#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

#include "padix/prime.hpp"

namespace padix {

/// Exponents (l_0, ..., l_{k-1}) of one monomial x_0^l_0 ... x_{k-1}^l_{k-1}
/// in the expansion of (x_0 + x_1 p + ...)^p whose weight sum(j l_j) is k.
struct ExponentTuple {
    std::vector<int> exponents;

    int index() const;  // sum of j * l_j
    int degree() const;  // sum of l_j
    friend auto operator<=>(const ExponentTuple&, const ExponentTuple&) = default;
};

/// Multiplicities (c_1, ..., c_{k-1}) with sum(j c_j) = k and at most
/// max_parts parts, i.e. partitions of k into parts smaller than k.
std::vector<std::vector<int>> carry_partitions(int k, int max_parts);

/// All tuples of length k with sum(l_j) = p, sum(j l_j) = k and every
/// l_j < p, in lexicographic order.  The pure powers x_j^p (coefficient 1)
/// are left out, so every multinomial is divisible by p.  Empty for k = 1.
std::vector<ExponentTuple> summand_list(Prime p, int k);

struct CarryTerm {
    mpz_class coefficient;  // p! / prod(l_j!)
    ExponentTuple tuple;
};

/// N_k: the weight-k part of (sum x_j p^j)^p without the pure powers and the
/// linear p x_0^(p-1) x_k term, before division by p.
class CarryPolynomial {
public:
    CarryPolynomial(Prime p, int k, std::vector<CarryTerm> terms)
        : prime_(p), index_(k), terms_(std::move(terms)) {}

    Prime prime() const { return prime_; }
    int index() const { return index_; }
    const std::vector<CarryTerm>& terms() const { return terms_; }

    /// N_k(x_0, ..., x_{k-1}); extra trailing values are ignored.
    mpz_class evaluate(std::span<const long> x) const;
    /// N_k(x) / p, exact.
    mpz_class evaluate_reduced(std::span<const long> x) const;

private:
    Prime prime_;
    int index_;
    std::vector<CarryTerm> terms_;
};

/// Cached; the reference stays valid for the life of the program.
const CarryPolynomial& carry_polynomial(Prime p, int k);

/**
 * Digit recursion of the root-extraction program.  One stage maps digits
 * (a_0, ..., a_{k-1}) to (a_0, b_1, ..., b_{k-2}) with
 * b_j = a_{j+1} - N_j(a_0, ..., a_{j-1}) / p mod p, and `stages` stages are
 * chained.  Each stage shortens the sequence by one digit.
 *
 * Throws DomainError for stages > p - 1 or fewer than stages + 2 digits.
 */
std::vector<int> digit_recursion(std::span<const int> a_digits, Prime p, int stages);

}  // namespace padix
