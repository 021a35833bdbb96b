#include <doctest.h>

#include <random>
#include <set>

#include "padix/oracle.hpp"
#include "padix/roots.hpp"

using namespace padix;

namespace {

PadicNumber value(long n, long d, long p, int prec = 32) {
    return canonicalize_rational(n, d, PrecisionContext(Prime(p), prec));
}

// Plain enumeration of x mod p^k with x^q == a mod p^k, units only.
std::set<long> units_with_power(long a, long q, long p, int k) {
    long m = 1;
    for (int i = 0; i < k; ++i) m *= p;
    std::set<long> out;
    for (long x = 1; x < m; ++x) {
        if (x % p == 0) continue;
        long r = 1;
        for (long i = 0; i < q; ++i) r = r * x % m;
        if (r == ((a % m) + m) % m) out.insert(x);
    }
    return out;
}

long root_mod(const SolveVerdict& v, long modulus) {
    REQUIRE(v.root.has_value());
    return static_cast<long>(mpz_fdiv_ui(v.root->unit().get_mpz_t(), modulus));
}

bool satisfies(const SolveVerdict& v, const PadicNumber& a, long q, int slack) {
    const auto back = pow(*v.root, static_cast<unsigned long>(q));
    return agree_to(back, a, a.valuation() + a.precision() - slack);
}

}  // namespace

TEST_CASE("exponent factorization") {
    const auto f = ExponentFactorization::of(72, Prime(2));
    CHECK(f.m == 9);
    CHECK(f.s == 3);
    CHECK(ExponentFactorization::of(7, Prime(3)).s == 0);
    CHECK_THROWS_AS(ExponentFactorization::of(0, Prime(3)), DomainError);
    CHECK(digits_needed(Prime(2), 8) == 5);
    CHECK(digits_needed(Prime(5), 50) == 3);
    CHECK(digits_needed(Prime(5), 3) == 1);
}

TEST_CASE("is_square") {
    // squares mod 7 = {1,2,4}
    CHECK(units_with_power(2, 2, 7, 1) == std::set<long>{3, 4});
    const auto v = is_square(value(2, 1, 7));
    CHECK(v.solvable);
    CHECK(v.criterion == CriterionTag::thm1);
    const long r = root_mod(v, 7);
    CHECK((r == 3 || r == 4));
    CHECK(satisfies(v, value(2, 1, 7), 2, 0));

    CHECK(units_with_power(17, 2, 2, 6).count(9) == 1);
    const auto w = is_square(value(17, 1, 2));
    CHECK(w.solvable);
    CHECK(w.root->precision() == 31);
    CHECK(satisfies(w, value(17, 1, 2), 2, 1));

    for (long p : {2L, 3L, 5L, 7L}) {
        const auto f = is_square(value(p, 1, p));
        CHECK_FALSE(f.solvable);
        CHECK(f.failure->kind == FailureKind::valuation_divisibility);
        CHECK_FALSE(f.root.has_value());
    }
    CHECK(is_square(value(3, 1, 7)).failure->kind == FailureKind::residue_condition);
    CHECK(is_square(value(5, 1, 2)).failure->kind == FailureKind::digit_condition);
    CHECK(is_square(value(3, 1, 2)).failure->kind == FailureKind::digit_condition);
    CHECK_THROWS_AS(is_square(PadicNumber::zero(Prime(5))), DomainError);
    CHECK_THROWS_AS(is_square(PadicNumber::exhausted(Prime(5), 3)), PrecisionError);
}

TEST_CASE("2-adic lifted square roots obey the first carry lines") {
    // y_0 = 1 and a_3 == y_1 (y_1 + 1)/2 + y_2 mod 2
    for (long a = 1; a < 4096; a += 8) {
        const auto x = value(a, 1, 2);
        const auto v = is_square(x);
        REQUIRE(v.solvable);
        const auto& y = *v.root;
        CHECK(y.digit(0) == 1);
        const int lhs = x.digit(3);
        const int rhs = (y.digit(1) * (y.digit(1) + 1) / 2 + y.digit(2)) % 2;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("solve_coprime") {
    for (long p : {3L, 5L, 7L}) {
        long pq = 1;
        for (int i = 0; i < 5; ++i) pq *= p;
        const auto v = solve_coprime(value(pq, 1, p), p == 5 ? 3 : 5, {});
        if (p == 5) {
            // 5^5 is not a cube
            CHECK_FALSE(v.solvable);
            CHECK(v.failure->kind == FailureKind::valuation_divisibility);
        } else {
            CHECK(v.solvable);
            CHECK(v.root->valuation() == 1);
            CHECK(v.root->digit(0) == 1);
            CHECK(v.root->digit(1) == 0);
        }
    }
    // cubic residues mod 7 = {1,6}
    CHECK(units_with_power(2, 3, 7, 1).empty());
    const auto f = solve_coprime(value(2, 1, 7), 3);
    CHECK_FALSE(f.solvable);
    CHECK(f.failure->kind == FailureKind::residue_condition);
    CHECK(f.criterion == CriterionTag::thm2);

    CHECK(units_with_power(2, 3, 5, 2).count(3) == 1);
    const auto g = solve_coprime(value(2, 1, 5), 3);
    CHECK(g.solvable);
    CHECK(root_mod(g, 25) == 3);
    CHECK(satisfies(g, value(2, 1, 5), 3, 0));

    CHECK_THROWS_AS(solve_coprime(value(2, 1, 5), 5), DomainError);
    CHECK_THROWS_AS(solve_coprime(value(2, 1, 5), 2), DomainError);
}

TEST_CASE("solve_p") {
    CHECK(units_with_power(8, 3, 3, 3) == std::set<long>{2, 11, 20});
    const auto v = solve_p(value(8, 1, 3));
    CHECK(v.solvable);
    CHECK(v.criterion == CriterionTag::thm3);
    CHECK(to_compact(v.root->truncated(6)) == "0|2,0,0,0,0,0");
    CHECK(v.root->precision() == 31);

    const auto f = solve_p(value(2, 1, 3));
    CHECK_FALSE(f.solvable);
    CHECK(f.failure->kind == FailureKind::digit_condition);

    for (long p : {2L, 3L, 5L, 7L, 11L}) {
        const auto one = solve_p(value(1, 1, p));
        CHECK(one.solvable);
        CHECK(agree_to(*one.root, value(1, 1, p), 31));
    }

    // y^3 * 5 == 4 mod 81 singles out y == 23 mod 27
    std::set<long> ys;
    for (long y = 1; y < 27; ++y) {
        if (y % 3 != 0 && (y * y * y * 5 - 4) % 81 == 0) ys.insert(y);
    }
    CHECK(ys == std::set<long>{23});
    const auto w = solve_p(value(4, 5, 3));
    CHECK(w.solvable);
    CHECK(root_mod(w, 27) == 23);
    const auto ds = w.root->digits();
    CHECK(std::vector<int>(ds.begin(), ds.begin() + 3) == std::vector<int>{2, 1, 2});
    CHECK(satisfies(w, value(4, 5, 3), 3, 1));

    CHECK_THROWS_AS(solve_p(value(8, 1, 3, 4).truncated(1)), PrecisionError);
}

TEST_CASE("solve_mp") {
    const auto f = solve_mp(value(3, 1, 2), 3);
    CHECK_FALSE(f.solvable);
    CHECK(f.criterion == CriterionTag::thm4);
    const auto v = solve_mp(value(729, 1, 2), 3);
    CHECK(v.solvable);
    // the roots are 3 and -3
    const long r = root_mod(v, 1024);
    CHECK((r == 3 || r == 1021));
    CHECK(satisfies(v, value(729, 1, 2), 6, 1));
    CHECK(solve_mp(value(1, 1, 5), 4).solvable);
    CHECK_THROWS_AS(solve_mp(value(1, 1, 5), 5), DomainError);
}

TEST_CASE("solve dispatch") {
    const auto v = solve(value(16, 1, 5), 4);
    CHECK(v.solvable);
    // the fourth roots of 16 are 2, -2 and 2i, -2i
    const auto sq = pow(*v.root, 2);
    CHECK((agree_to(sq, value(4, 1, 5), 32) || agree_to(sq, value(-4, 1, 5), 32)));

    // q = 9, a = 1 + 0*3 + 1*9: a_1 != a_2
    const auto w = solve(value(10, 1, 3), 9);
    CHECK_FALSE(w.solvable);
    CHECK(units_with_power(10, 9, 3, 4).empty());

    // q = 8 over Q_2: a = 1 + 3*2^5 and 8 | valuation
    const auto a = value(97L * 256, 1, 2);
    const auto x = solve(a, 8);
    CHECK(x.solvable);
    CHECK(x.criterion == CriterionTag::general_mps);
    CHECK(x.root->valuation() == 1);
    CHECK(x.root->precision() == 29);
    CHECK(satisfies(x, a, 8, 4));
    CHECK_FALSE(solve(value(1 + 16, 1, 2), 8).solvable);

    CHECK(solve(value(7, 3, 5), 1).solvable);
    CHECK_THROWS_AS(solve(value(1, 1, 3, 4), 27), PrecisionError);
    CHECK_NOTHROW(solve(value(1, 1, 3, 4), 27, {.construct_root = false}));
    CHECK_THROWS_AS(solve(value(1, 1, 3), 0), DomainError);
}

TEST_CASE("closed forms") {
    CHECK(applicable_parts(Prime(2), 4).size() == 2);
    CHECK(applicable_parts(Prime(3), 6).size() == 1);
    CHECK(applicable_parts(Prime(5), 7).empty());
    CHECK_FALSE(fast_criterion(value(1, 1, 5), 7).has_value());

    const auto f = fast_criterion(value(3, 1, 2), 6);
    REQUIRE(f.has_value());
    CHECK_FALSE(f->solvable);
    CHECK(f->criterion == CriterionTag::proposition_fastpath);

    for (long p : {3L, 5L, 7L}) {
        const long q = (p - 1) * p;
        const auto a = value(1 + 2 * p * p, 1, p);
        CHECK(fast_criterion(a, q)->solvable);
        CHECK(solve(a, q).solvable);
        CHECK_FALSE(fast_criterion(value(2, 1, p), q)->solvable);
        CHECK_FALSE(fast_criterion(value(1 + p, 1, p), q)->solvable);
    }
    // q = 27, a = 2 + 2*3 + 2*9 + a_3*27: the closed form asks a_3 = 1, while the
    // 27th powers are == -1 = 80 mod 81
    CHECK(fast_criterion(value(53, 1, 3), 27)->solvable);
    CHECK_FALSE(solve(value(53, 1, 3), 27).solvable);
    CHECK_FALSE(fast_criterion(value(80, 1, 3), 27)->solvable);
    CHECK(solve(value(80, 1, 3), 27).solvable);
    CHECK_FALSE(fast_criterion(value(2 + 9, 1, 3), 27)->solvable);
    CHECK(fast_criterion(value(1 + 64, 1, 2), 16)->solvable);
    CHECK_FALSE(fast_criterion(value(1 + 32, 1, 2), 16)->solvable);
    CHECK_THROWS_AS(fast_criterion_part(value(1, 1, 3), 27, PropositionPart::p_squared),
                    DomainError);
}

TEST_CASE("brute-force oracle") {
    const auto r = brute_force_root(value(8, 1, 3), 3, 3);
    CHECK(r == std::vector<std::uint64_t>{2});
    CHECK(brute_force_root(value(2, 1, 7), 2, 2) == std::vector<std::uint64_t>{10, 39});
    CHECK(power_residue_roots(value(1, 1, 2), 2, 4) == std::vector<std::uint64_t>{1, 7, 9, 15});
    CHECK(brute_force_root(value(7, 1, 7), 2, 2).empty());
    CHECK(stabilized_verdict(value(17, 1, 2), 2, 4));
    CHECK_FALSE(stabilized_verdict(value(5, 1, 2), 2, 4));
    OracleBudget tiny;
    tiny.max_residues = 100;
    CHECK_THROWS_AS(brute_force_root(value(1, 1, 7), 2, 3, tiny), BudgetError);
    CHECK_THROWS_AS(PowerTable(Prime(7), 2, 3, tiny), BudgetError);

    const PowerTable table(Prime(3), 3, 3);
    CHECK(table.root_count(8) == 1);
    CHECK(table.verdict(value(8, 1, 3)));
    CHECK_FALSE(table.verdict(value(2, 1, 3)));
}

TEST_CASE("property: solve agrees with the stabilized oracle") {
    for (long pv : {2L, 3L, 5L, 7L}) {
        const Prime p(pv);
        long modulus = 1;
        for (int i = 0; i < 6; ++i) modulus *= pv;
        for (long q = 2; q <= 8; ++q) {
            const PowerTable table(p, q, 5);
            const PrecisionContext ctx(p, 12);
            long mismatches = 0;
            for (long a = 1; a < modulus; ++a) {
                if (a % pv == 0) continue;
                const auto x = from_integer(a, ctx);
                if (solve(x, q, {.construct_root = false}).solvable != table.verdict(x)) {
                    ++mismatches;
                }
            }
            CHECK_MESSAGE(mismatches == 0, "p=", pv, " q=", q);
        }
    }
}

TEST_CASE("property: roots are sound, verdicts local, scaling invariant") {
    std::mt19937_64 rng(7);
    for (long pv : {2L, 3L, 5L, 7L}) {
        const Prime p(pv);
        const PrecisionContext ctx(p, 24);
        std::uniform_int_distribution<long> unit(1, 2'000'000);
        for (long q = 1; q <= 12; ++q) {
            const auto f = ExponentFactorization::of(q, p);
            for (int trial = 0; trial < 40; ++trial) {
                long b = unit(rng);
                while (b % pv == 0) ++b;
                long c = unit(rng);
                while (c % pv == 0) ++c;
                // a = c * b^q is solvable iff c is
                const auto xb = from_integer(b, ctx);
                const auto xc = from_integer(c, ctx);
                const auto a = mul(xc, pow(xb, static_cast<unsigned long>(q)));
                const auto va = solve(a, q);
                const auto vc = solve(xc, q);
                CHECK(va.solvable == vc.solvable);
                CHECK(solve(pow(xb, static_cast<unsigned long>(q)), q).solvable);
                if (va.solvable) CHECK(satisfies(va, a, q, f.s + 1));
                // only a_0..a_(s+2) matter
                const auto cut = xc.truncated(f.s + 3);
                const auto perturbed =
                    add(cut, from_integer(prime_power(p, f.s + 3) * unit(rng), ctx));
                CHECK(solve(perturbed, q, {.construct_root = false}).solvable ==
                      vc.solvable);
            }
        }
    }
}

TEST_CASE("property: p-th roots are unique mod p^4") {
    for (long pv : {3L, 5L, 7L}) {
        const PowerTable table(Prime(pv), pv, 4);
        const PrecisionContext ctx(Prime(pv), 10);
        long modulus = 1;
        for (int i = 0; i < 6; ++i) modulus *= pv;
        for (long a = 1; a < modulus; ++a) {
            if (a % pv == 0) continue;
            const auto x = from_integer(a, ctx);
            if (solve_p(x, {.construct_root = false}).solvable) CHECK(table.root_count(a) == 1);
        }
    }
}
