#include <doctest.h>

#include <random>

#include "padix/padic.hpp"

using namespace padix;

namespace {

// 5x == 4 mod 81 by search, independent of the modular-inverse path.
long solve_linear_by_search(long a, long b, long m) {
    for (long x = 0; x < m; ++x) {
        if ((a * x - b) % m == 0) return x;
    }
    return -1;
}

std::vector<int> base_digits(long n, long p, int count) {
    std::vector<int> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(static_cast<int>(n % p));
        n /= p;
    }
    return out;
}

}  // namespace

TEST_CASE("canonical expansion of rationals") {
    const Prime p3(3);
    const PrecisionContext ctx(p3, 4);
    const auto x = canonicalize_rational(4, 5, ctx);
    CHECK(x.valuation() == 0);
    CHECK(x.digits() == base_digits(solve_linear_by_search(5, 4, 81), 3, 4));
    CHECK(x.digits() == std::vector<int>{2, 2, 1, 0});

    const PrecisionContext ctx7(Prime(7));
    const auto one = canonicalize_rational(1, 1, ctx7);
    CHECK(one.valuation() == 0);
    CHECK(one.digit(0) == 1);
    for (int i = 1; i < one.precision(); ++i) CHECK(one.digit(i) == 0);

    const auto eight = canonicalize_rational(8, 1, PrecisionContext(Prime(2)));
    CHECK(eight.valuation() == 3);
    CHECK(eight.digit(0) == 1);
    CHECK(eight.digit(1) == 0);

    CHECK(canonicalize_rational(0, 7, ctx).is_zero());
    CHECK_THROWS_AS(canonicalize_rational(1, 0, ctx), DomainError);
    CHECK(canonicalize_rational(-9, 2, ctx).valuation() == 2);
    CHECK(canonicalize_rational(2, 27, ctx).valuation() == -3);
}

TEST_CASE("precision context bounds") {
    CHECK_THROWS_AS(PrecisionContext(Prime(5), 3), DomainError);
    CHECK(PrecisionContext(Prime(5)).precision == 32);
    CHECK_THROWS_AS(Prime(9), DomainError);
}

TEST_CASE("norm") {
    CHECK(norm(from_integer(8, PrecisionContext(Prime(2)))) == mpq_class(1, 8));
    CHECK(norm(canonicalize_rational(4, 5, PrecisionContext(Prime(3)))) == 1);
    CHECK(norm(PadicNumber::zero(Prime(5))) == 0);
    CHECK(norm(canonicalize_rational(1, 25, PrecisionContext(Prime(5)))) == 25);
}

TEST_CASE("ring operations") {
    const PrecisionContext ctx(Prime(3));
    const auto two = from_integer(2, ctx);
    const auto half = from_rational(mpq_class(1, 2), ctx);
    const auto prod = mul(two, half);
    CHECK(prod.valuation() == 0);
    CHECK(prod.digit(0) == 1);
    for (int i = 1; i < prod.precision(); ++i) CHECK(prod.digit(i) == 0);

    const auto x = from_integer(3 * 7, ctx);
    CHECK(pow(x, 4).valuation() == 4);
    CHECK(pow(x, 0).digit(0) == 1);
    CHECK_THROWS_AS(pow(PadicNumber::zero(Prime(3)), 0), DomainError);

    CHECK_THROWS_AS(inv(PadicNumber::zero(Prime(3))), DomainError);
    const auto y = inv(from_integer(6, ctx));
    CHECK(y.valuation() == -1);
    CHECK(equal_at(mul(y, from_integer(6, ctx)), from_integer(1, ctx), 32));
    CHECK_THROWS_AS(mul(from_integer(1, ctx), from_integer(1, PrecisionContext(Prime(5)))),
                    DomainError);
}

TEST_CASE("full cancellation yields the exhausted state") {
    for (long pv : {2L, 3L, 5L, 7L}) {
        const Prime p(pv);
        const PrecisionContext ctx(p, 8);
        // -1 = (p-1)(1 + p + p^2 + ...)
        const std::vector<int> all(8, static_cast<int>(pv - 1));
        const auto minus_one = PadicNumber::from_digits(p, 0, all);
        const auto sum = add(from_integer(1, ctx), minus_one);
        CHECK(sum.is_exhausted());
        CHECK_FALSE(sum.is_zero());
        CHECK(sum.absolute_precision() == 8);
        CHECK_THROWS_AS((void)sum.valuation(), PrecisionError);
        CHECK_THROWS_AS((void)sum.digit(0), PrecisionError);
        CHECK_THROWS_AS(inv(sum), PrecisionError);
        CHECK(to_compact(sum) == "O(8)");
        // x + O(p^8) keeps x truncated to absolute precision 8
        const auto z = add(sum, canonicalize_rational(pv, 1, PrecisionContext(p, 20)));
        CHECK(z.valuation() == 1);
        CHECK(z.precision() == 7);
        CHECK(add(sum, from_integer(prime_power(p, 9), ctx)).is_exhausted());
    }
}

TEST_CASE("partial cancellation loses precision") {
    const PrecisionContext ctx(Prime(5), 10);
    const auto a = from_integer(1 + 3 * 25, ctx);
    const auto b = from_integer(1, ctx);
    const auto d = sub(a, b);
    CHECK(d.valuation() == 2);
    CHECK(d.precision() == 8);
    CHECK(d.digit(0) == 3);
}

TEST_CASE("text forms") {
    const PrecisionContext ctx(Prime(3), 4);
    const auto x = canonicalize_rational(4 * 9, 5, ctx);
    CHECK(to_compact(x) == "2|2,2,1,0");
    CHECK(to_text(x) == "3^2 * (2 + 2*3 + 1*3^2 + 0*3^3 + ...)");
    CHECK(equal_at(parse_value("2|2,2,1,0", ctx), x, 4));
    CHECK(equal_at(parse_value("36/5", ctx), x, 4));
    CHECK(parse_value("0", ctx).is_zero());
    CHECK(parse_value("O(5)", ctx).is_exhausted());
    CHECK_THROWS_AS(parse_value("1/0", ctx), std::invalid_argument);
    CHECK_THROWS_AS(parse_value("abc", ctx), std::invalid_argument);
    CHECK_THROWS_AS(parse_value("0|0,1", ctx), DomainError);
}

TEST_CASE("property: valuation homomorphism, strong triangle, round trip") {
    std::mt19937_64 rng(20261015);
    for (long pv : {2L, 3L, 5L, 7L, 11L}) {
        const Prime p(pv);
        const PrecisionContext ctx(p, 16);
        std::uniform_int_distribution<long> num(-100000, 100000);
        for (int trial = 0; trial < 200; ++trial) {
            long n = num(rng);
            long d = num(rng);
            long m = num(rng);
            if (n == 0) n = 1;
            if (d == 0) d = 7;
            if (m == 0) m = 3;
            const auto x = canonicalize_rational(n, d, ctx);
            const auto y = canonicalize_rational(m, 1, ctx);
            CHECK(mul(x, y).valuation() == x.valuation() + y.valuation());
            CHECK(pow(x, 3).valuation() == 3 * x.valuation());
            for (int i = 0; i < x.precision(); ++i) {
                CHECK(x.digit(i) >= 0);
                CHECK(x.digit(i) < pv);
            }
            CHECK(x.digit(0) != 0);
            const auto sum = add(x, y);
            if (sum.is_nonzero()) CHECK(norm(sum) <= std::max(norm(x), norm(y)));
            // n/d * d == n
            const auto back = mul(x, canonicalize_rational(d, 1, ctx));
            CHECK(agree_to(back, canonicalize_rational(n, 1, ctx),
                           back.absolute_precision()));
        }
    }
}
