#include <doctest.h>

#include <random>

#include "padix/carry.hpp"
#include "padix/criterion.hpp"
#include "padix/roots.hpp"

using namespace padix;

namespace {

std::vector<int> digits_of(const mpz_class& n, long p, int count) {
    std::vector<int> out;
    mpz_class t = n;
    for (int i = 0; i < count; ++i) {
        out.push_back(static_cast<int>(mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(),
                                                     static_cast<unsigned long>(p))));
    }
    return out;
}

}  // namespace

TEST_CASE("summand lists") {
    for (long p : {3L, 5L, 7L, 11L}) {
        const auto two = summand_list(Prime(p), 2);
        REQUIRE(two.size() == 1);
        CHECK(two[0].exponents == std::vector<int>{static_cast<int>(p) - 2, 2});
        CHECK(summand_list(Prime(p), 1).empty());
    }
    const auto five = summand_list(Prime(5), 3);
    REQUIRE(five.size() == 2);
    CHECK(five[0].exponents == std::vector<int>{2, 3, 0});
    CHECK(five[1].exponents == std::vector<int>{3, 1, 1});
    // independent count: tuples of length k with sum p and weight k, l_0 < p
    for (long p : {3L, 5L}) {
        for (int k = 2; k <= 6; ++k) {
            std::size_t expected = 0;
            std::vector<int> l(static_cast<std::size_t>(k), 0);
            // odometer over l_1..l_{k-1} in [0, p]
            while (true) {
                int sum = 0;
                int weight = 0;
                for (int j = 1; j < k; ++j) {
                    sum += l[static_cast<std::size_t>(j)];
                    weight += j * l[static_cast<std::size_t>(j)];
                }
                bool pure = false;
                for (int j = 1; j < k; ++j) pure = pure || l[static_cast<std::size_t>(j)] == p;
                if (sum <= p && weight == k && !pure) ++expected;
                int j = 1;
                while (j < k && l[static_cast<std::size_t>(j)] == p) l[static_cast<std::size_t>(j++)] = 0;
                if (j == k) break;
                ++l[static_cast<std::size_t>(j)];
            }
            const auto got = summand_list(Prime(p), k);
            CHECK(got.size() == expected);
            for (const auto& t : got) {
                CHECK(t.degree() == p);
                CHECK(t.index() == k);
                CHECK(t.exponents[0] < p);
                for (const int l : t.exponents) CHECK(l < p);
            }
        }
    }
    CHECK_THROWS_AS(summand_list(Prime(3), 0), DomainError);
}

TEST_CASE("carry polynomials") {
    const auto n32 = carry_polynomial(Prime(3), 2);
    REQUIRE(n32.terms().size() == 1);
    CHECK(n32.terms()[0].coefficient == 3);
    CHECK(n32.terms()[0].tuple.exponents == std::vector<int>{1, 2});

    const auto n53 = carry_polynomial(Prime(5), 3);
    REQUIRE(n53.terms().size() == 2);
    CHECK(n53.terms()[0].coefficient == 10);  // x0^2 x1^3
    CHECK(n53.terms()[1].coefficient == 20);  // x0^3 x1 x2

    for (long p : {3L, 5L, 7L, 11L}) {
        const auto n2 = carry_polynomial(Prime(p), 2);
        CHECK(n2.terms()[0].coefficient == p * (p - 1) / 2);
        for (int k = 1; k <= 12; ++k) {
            for (const auto& t : carry_polynomial(Prime(p), k).terms()) {
                CHECK(mpz_divisible_ui_p(t.coefficient.get_mpz_t(), static_cast<unsigned long>(p)) != 0);
            }
        }
    }
    CHECK(carry_polynomial(Prime(5), 1).terms().empty());
}

TEST_CASE("property: carries are the weight-k part of the p-th power") {
    std::mt19937 rng(11);
    for (long p : {3L, 5L, 7L}) {
        std::uniform_int_distribution<int> digit(0, static_cast<int>(p) - 1);
        for (int trial = 0; trial < 50; ++trial) {
            const int k = 2 + trial % 11;
            std::vector<long> x(static_cast<std::size_t>(k + 1));
            for (auto& d : x) d = digit(rng);
            if (x[0] == 0) x[0] = 1;
            mpz_class pk = 1;
            mpz_class base = 0;
            for (int j = 0; j <= k; ++j) {
                base += x[static_cast<std::size_t>(j)] * pk;
                pk *= p;
            }
            mpz_class lhs;
            mpz_pow_ui(lhs.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(p));
            mpz_class rhs;
            mpz_class x0 = x[0];
            mpz_pow_ui(rhs.get_mpz_t(), x0.get_mpz_t(), static_cast<unsigned long>(p));
            mpz_class pj = 1;
            mpz_class x0pm1;
            mpz_pow_ui(x0pm1.get_mpz_t(), x0.get_mpz_t(), static_cast<unsigned long>(p - 1));
            for (int j = 1; j <= k; ++j) {
                pj *= p;
                rhs += pj * (p * x0pm1 * x[static_cast<std::size_t>(j)] +
                             carry_polynomial(Prime(p), j).evaluate(x));
            }
            // pure powers (x_i p^i)^p sit outside the carries
            for (int i = 1; i * p <= k; ++i) {
                mpz_class xi = x[static_cast<std::size_t>(i)];
                mpz_class term;
                mpz_pow_ui(term.get_mpz_t(), xi.get_mpz_t(), static_cast<unsigned long>(p));
                mpz_class shift;
                mpz_ui_pow_ui(shift.get_mpz_t(), static_cast<unsigned long>(p),
                              static_cast<unsigned long>(i * p));
                rhs += term * shift;
            }
            const mpz_class modulus = pj * p;
            CHECK(mpz_class((lhs - rhs) % modulus) == 0);
        }
    }
}

TEST_CASE("digit recursion") {
    CHECK(digit_recursion(std::vector<int>{1, 0, 0, 0}, Prime(3), 1) == std::vector<int>{1, 0, 0});
    const auto r = digit_recursion(std::vector<int>{2, 2, 0, 0}, Prime(3), 1);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == 2);
    CHECK(r[1] == 0);
    CHECK(digit_recursion(std::vector<int>{1, 0, 0, 0, 0}, Prime(3), 2).size() == 3);
    CHECK_THROWS_AS(digit_recursion(std::vector<int>{1, 0, 0, 0}, Prime(3), 3), DomainError);
    CHECK_THROWS_AS(digit_recursion(std::vector<int>{1, 0}, Prime(5), 1), DomainError);
}

TEST_CASE("digit recursion on p-th powers") {
    std::mt19937 rng(3);
    // p = 3: indices 0..p-2 match the root
    for (int trial = 0; trial < 100; ++trial) {
        const long p = 3;
        std::uniform_int_distribution<long> pick(1, 1'000'000);
        long b = pick(rng);
        while (b % p == 0) ++b;
        mpz_class bp;
        mpz_class bb = b;
        mpz_pow_ui(bp.get_mpz_t(), bb.get_mpz_t(), p);
        const auto out = digit_recursion(digits_of(bp, p, 8), Prime(p), 1);
        const auto want = digits_of(bb, p, 2);
        CHECK(out[0] == want[0]);
        CHECK(out[1] == want[1]);
    }
    // p = 5: the carry of a_0^5 into a_1 is not absorbed, so b = 2 already
    // disagrees at index 1 (2^5 = 32 = 2 + 1*5 + 1*25)
    const auto out = digit_recursion(digits_of(32, 5, 6), Prime(5), 1);
    CHECK(out[0] == 2);
    CHECK(out[1] == 1);
}

TEST_CASE("symbolic carries specialise to the concrete ones") {
    for (long p : {5L, 7L, 11L}) {
        for (int k = 2; k < p; ++k) {
            const auto sym = symbolic_reduced_carry(k).at_prime(p);
            DigitPolynomial concrete;
            for (const auto& t : carry_polynomial(Prime(p), k).terms()) {
                DigitPolynomial mono(PrimePolynomial(mpq_class(t.coefficient / p)));
                for (std::size_t j = 0; j < t.tuple.exponents.size(); ++j) {
                    if (t.tuple.exponents[j] != 0) {
                        mono = mono * DigitPolynomial::digit(static_cast<int>(j),
                                                             {0, t.tuple.exponents[j]});
                    }
                }
                concrete = concrete + mono;
            }
            CHECK(sym == concrete);
        }
    }
}

TEST_CASE("emitted criteria") {
    const auto m1 = emit_criterion(std::nullopt, 1);
    CHECK(m1.congruences.size() == 1);
    CHECK(m1.to_unicode() == "p ∣ γ(a)\na₀ᵖ ≡ a₀ + a₁p  (mod p²)\n");

    const auto m2 = emit_criterion(std::nullopt, 2);
    CHECK(m2.congruences.size() == 2);
    CHECK(m2.congruences[1].digit_equality);
    CHECK(m2.congruences[1].lhs.to_ascii() == "a_1");
    CHECK(m2.congruences[1].rhs.to_ascii() == "a_2");

    const auto m3 = emit_criterion(std::nullopt, 3);
    CHECK(m3.congruences[2].rhs.to_ascii() == "a_3 - (p - 1)/2*a_0^(p-2)*a_1^2");

    const auto m4 = emit_criterion(std::nullopt, 4);
    CHECK(m4.to_unicode() ==
          "p⁴ ∣ γ(a)\n"
          "a₀ᵖ ≡ a₀ + a₁p  (mod p²)\n"
          "a₁ = a₂\n"
          "a₁ ≡ a₃ − (p − 1)/2·a₀ᵖ⁻²a₁²  (mod p)\n"
          "a₁ ≡ a₄ − (p − 1)(p − 2)/6·a₀ᵖ⁻³a₁³ + 3(p − 1)/2·a₀ᵖ⁻²a₁²  (mod p)\n");

    // the derived fourth line carries the opposite sign on the a_1^2 term
    const auto d4 = derive_criterion(std::nullopt, 4);
    CHECK(d4.congruences[3].rhs.to_ascii() ==
          "a_4 - (p - 1)(p - 2)/6*a_0^(p-3)*a_1^3 - 3(p - 1)/2*a_0^(p-2)*a_1^2");
    CHECK(d4.congruences[2].rhs == m3.congruences[2].rhs);

    const auto c5 = emit_criterion(Prime(5), 4);
    CHECK(c5.divisor_text() == "625");
    CHECK(c5.congruences[0].lhs.to_ascii() == "a_0^5");
    CHECK_THROWS_AS(emit_criterion(Prime(5), 5), DomainError);
    CHECK_THROWS_AS(emit_criterion(std::nullopt, 0), DomainError);
}

TEST_CASE("criterion evaluation") {
    const auto c = emit_criterion(Prime(3), 1);
    const PrecisionContext ctx(Prime(3), 8);
    CHECK(c.evaluate(from_integer(8, ctx)).satisfied);
    const auto bad = c.evaluate(from_integer(2, ctx));
    CHECK_FALSE(bad.satisfied);
    CHECK(bad.failed_line == 1);
    CHECK(c.evaluate(from_integer(24, ctx)).failed_line == 0);
    // with one stage the emitted criterion is the exact test over Q_3
    for (long a = 1; a < 729; ++a) {
        if (a % 3 == 0) continue;
        const auto x = from_integer(a, ctx);
        CHECK(c.evaluate(x).satisfied == solve(x, 3, {.construct_root = false}).solvable);
    }
    CHECK(with_modulus(emit_criterion(Prime(7), 4), 3, 2).congruences[3].modulus_exponent == 2);
}
