#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "padix/carry.hpp"
#include "padix/conformance.hpp"
#include "random_algebra.hpp"

namespace padix {

namespace {

using Q = mpq_class;

struct Tally {
    long checked = 0;
    long failed = 0;
    std::string first;  // first failure, human readable

    void record(bool ok, const std::string& what) {
        ++checked;
        if (ok) return;
        if (failed++ == 0) first = what;
    }
    bool ok() const { return failed == 0; }
    std::string summary(const std::string& noun) const {
        std::string s = std::to_string(checked - failed) + "/" + std::to_string(checked) + " " + noun;
        if (!ok()) s += "; first failure: " + first;
        return s;
    }
};

std::string str(long v) { return std::to_string(v); }

// Unit residues mod p^depth, read as exact integers at precision `prec`.
template <class Fn>
void for_each_unit(Prime p, int depth, int prec, Fn&& fn) {
    const PrecisionContext ctx(p, prec);
    const auto modulus = ipow(p, depth);
    const auto pv = static_cast<std::uint64_t>(p.value());
    for (std::uint64_t a = 1; a < modulus; ++a) {
        if (a % pv == 0) continue;
        fn(a, from_integer(mpz_class(static_cast<unsigned long>(a)), ctx));
    }
}

PadicNumber times_p(const PadicNumber& x, const PrecisionContext& ctx) {
    return mul(x, from_integer(ctx.prime.value(), ctx));
}

AcceptanceResult square_criterion(const OracleBudget& budget) {
    Tally t;
    for (long pv : {2L, 3L, 5L, 7L, 11L, 13L}) {
        const Prime p(pv);
        const PrecisionContext ctx(p, 12);
        const PowerTable oracle(p, 2, 5, budget);
        for_each_unit(p, 5, 12, [&](std::uint64_t a, const PadicNumber& x) {
            for (const auto& y : {x, times_p(x, ctx)}) {
                t.record(is_square(y, {.construct_root = false}).solvable == oracle.verdict(y),
                         "p=" + str(pv) + " a=" + str(static_cast<long>(a)) + " v=" + str(y.valuation()));
            }
        });
    }
    return {1, "squares: verdict equals the stabilized oracle", t.ok(), t.summary("residues")};
}

AcceptanceResult coprime_criterion(const OracleBudget& budget) {
    Tally verdicts;
    Tally roots;
    for (long q : {3L, 5L}) {
        for (long pv : {2L, 3L, 5L, 7L, 11L, 13L}) {
            if (pv == q) continue;
            const Prime p(pv);
            const int n = PrecisionContext::default_precision;
            const PrecisionContext ctx(p, n);
            const PowerTable oracle(p, q, 5, budget);
            for_each_unit(p, 5, n, [&](std::uint64_t a, const PadicNumber& x) {
                for (const auto& y : {x, times_p(x, ctx)}) {
                    const std::string where =
                        "q=" + str(q) + " p=" + str(pv) + " a=" + str(static_cast<long>(a));
                    const auto v = solve_coprime(y, q);
                    verdicts.record(v.solvable == oracle.verdict(y), where);
                    if (v.solvable) {
                        const auto back = pow(*v.root, static_cast<unsigned long>(q));
                        roots.record(agree_to(back, y, y.valuation() + n - 1), where);
                    }
                }
            });
        }
    }
    return {2, "coprime exponents: verdicts equal the oracle, roots check at N-1",
            verdicts.ok() && roots.ok(),
            verdicts.summary("verdicts") + ", " + roots.summary("roots")};
}

AcceptanceResult pth_power_criterion(const OracleBudget& budget) {
    Tally verdicts;
    Tally unique;
    for (long pv : {3L, 5L, 7L}) {
        const Prime p(pv);
        const PrecisionContext ctx(p, 12);
        // u^p == a mod p^5 for u mod p^4, confirmed one digit deeper
        const PowerTable oracle(p, pv, 4, budget);
        for_each_unit(p, 5, 12, [&](std::uint64_t a, const PadicNumber& x) {
            const std::string where = "p=" + str(pv) + " a=" + str(static_cast<long>(a));
            for (const auto& y : {x, times_p(x, ctx)}) {
                verdicts.record(solve_p(y, {.construct_root = false}).solvable == oracle.verdict(y), where);
            }
            if (oracle.verdict(x)) unique.record(oracle.root_count(x.unit()) == 1, where);
        });
    }
    return {3, "p-th powers: verdicts equal the oracle, roots unique mod p^4",
            verdicts.ok() && unique.ok(),
            verdicts.summary("verdicts") + ", " + unique.summary("unique root sets")};
}

AcceptanceResult general_criterion(const OracleBudget& budget) {
    struct Cell {
        long p, q;
    };
    Tally verdicts;
    Tally fast;
    long discrepancies = 0;
    std::map<std::pair<long, long>, long> fast_vs_solve;
    for (const auto& c : {Cell{2, 6}, Cell{3, 6}, Cell{2, 4}, Cell{3, 9}, Cell{5, 25}, Cell{3, 27},
                          Cell{5, 125}}) {
        const Prime p(c.p);
        const int needed = digits_needed(p, c.q);
        const int s = ExponentFactorization::of(c.q, p).s;
        // sweep one digit past what decides the verdict
        const int swept = needed + 1;
        const PowerTable oracle(p, c.q, std::max(c.p == 2 ? 3 : 2, swept + 1 - s), budget);
        const PrecisionContext ctx(p, swept + 8);
        const auto parts = applicable_parts(p, c.q);
        for_each_unit(p, swept, swept + 8, [&](std::uint64_t a, const PadicNumber& x) {
            const std::string where =
                "p=" + str(c.p) + " q=" + str(c.q) + " a=" + str(static_cast<long>(a));
            for (const auto& y : {x, times_p(x, ctx)}) {
                verdicts.record(solve(y, c.q, {.construct_root = false}).solvable == oracle.verdict(y), where);
            }
            const bool truth = solve(x, c.q, {.construct_root = false}).solvable;
            for (auto part : parts) {
                if (fast_criterion_part(x, c.q, part).solvable != truth) {
                    ++fast_vs_solve[{c.q, part_number(part)}];
                    ++discrepancies;
                }
            }
        });
    }
    // every discrepancy must show up, with the same count, in the report
    const auto report = fast_path_section(budget);
    for (const auto& [key, count] : fast_vs_solve) {
        bool found = false;
        for (const auto& cell : report) {
            if (cell["q"].get<long>() == key.first && cell["part"].get<int>() == key.second) {
                found = cell["closed_form_vs_solve_mismatches"].get<long>() == count;
            }
        }
        fast.record(found, "q=" + str(key.first) + " part " + str(key.second));
    }
    return {4, "general exponents: solve equals the oracle; closed-form discrepancies reported",
            verdicts.ok() && fast.ok(),
            verdicts.summary("verdicts") + ", " + str(discrepancies) + " closed-form discrepancies in " +
                str(static_cast<long>(fast_vs_solve.size())) + " cells, " +
                fast.summary("cells matched in the report")};
}

AcceptanceResult carry_criterion(const OracleBudget&) {
    Tally t;
    for (long pv : {3L, 5L, 7L, 11L}) {
        const Prime p(pv);
        const auto& n2 = carry_polynomial(p, 2);
        std::vector<int> want(2, 0);
        want[0] = static_cast<int>(pv - 2);
        want[1] = 2;
        t.record(n2.terms().size() == 1 && n2.terms()[0].coefficient == pv * (pv - 1) / 2 &&
                     n2.terms()[0].tuple.exponents == want,
                 "N_2 at p=" + str(pv));
        const auto list = summand_list(p, 2);
        t.record(list.size() == 1 && list[0].exponents == want, "summands at p=" + str(pv));
        for (int k = 1; k <= 12; ++k) {
            for (const auto& term : carry_polynomial(p, k).terms()) {
                t.record(mpz_divisible_ui_p(term.coefficient.get_mpz_t(), static_cast<unsigned long>(pv)) != 0,
                         "coefficient of N_" + str(k) + " at p=" + str(pv));
            }
        }
    }
    return {5, "carry polynomials: N_2, summands, divisibility", t.ok(), t.summary("checks")};
}

AcceptanceResult emitter_criterion(const OracleBudget& budget) {
    Tally shape;
    const auto c1 = emit_criterion(std::nullopt, 1);
    shape.record(c1.divisor_text() == "p" && c1.congruences.size() == 1 &&
                     c1.congruences[0].lhs.to_ascii() == "a_0^p" &&
                     c1.congruences[0].rhs.to_ascii() == "a_0 + p*a_1" &&
                     c1.congruences[0].modulus_exponent == 2,
                 "m=1 lines");
    const auto c2 = emit_criterion(std::nullopt, 2);
    shape.record(c2.congruences.size() == 2 && c2.congruences[1].digit_equality &&
                     c2.congruences[1].lhs.to_ascii() == "a_1" && c2.congruences[1].rhs.to_ascii() == "a_2",
                 "m=2 adds a_1 = a_2");
    const auto c3 = emit_criterion(std::nullopt, 3);
    shape.record(c3.congruences.size() == 3 &&
                     c3.congruences[2].rhs.to_ascii() == "a_3 - (p - 1)/2*a_0^(p-2)*a_1^2",
                 "m=3 line");
    const auto c4 = emit_criterion(std::nullopt, 4);
    shape.record(c4.to_unicode() ==
                     "p⁴ ∣ γ(a)\n"
                     "a₀ᵖ ≡ a₀ + a₁p  (mod p²)\n"
                     "a₁ = a₂\n"
                     "a₁ ≡ a₃ − (p − 1)/2·a₀ᵖ⁻²a₁²  (mod p)\n"
                     "a₁ ≡ a₄ − (p − 1)(p − 2)/6·a₀ᵖ⁻³a₁³ + 3(p − 1)/2·a₀ᵖ⁻²a₁²  (mod p)\n",
                 "m=4 lines");

    Tally sweep;
    std::string cells;
    for (long pv : {5L, 7L}) {
        const Prime p(pv);
        for (int m = 1; m <= 4; ++m) {
            const auto c = emit_criterion(p, m);
            const int depth = std::max(m + 2, c.digits_needed());
            budget.check(ipow(p, depth), "criterion sweep");
            long q = 1;
            for (int i = 0; i < m; ++i) q *= pv;
            long bad = 0;
            long total = 0;
            for_each_unit(p, depth, depth + 8, [&](std::uint64_t a, const PadicNumber& x) {
                const bool ok = c.evaluate(x).satisfied == solve(x, q, {.construct_root = false}).solvable;
                sweep.record(ok, "p=" + str(pv) + " m=" + str(m) + " a=" + str(static_cast<long>(a)));
                bad += !ok;
                ++total;
            });
            if (bad) cells += " (p=" + str(pv) + ",m=" + str(m) + "): " + str(bad) + "/" + str(total) + ";";
        }
    }
    return {6, "criterion emitter: published lines and verdicts equal solve",
            shape.ok() && sweep.ok(),
            shape.summary("line checks") + ", " + sweep.summary("swept units") +
                (cells.empty() ? "" : "; mismatching cells" + cells)};
}

AcceptanceResult recursion_criterion(const OracleBudget&) {
    const auto rows = recursion_section(20241015);
    bool ok = true;
    std::string detail;
    for (const auto& row : rows) {
        if (row["stages"].get<int>() != 1) continue;
        const long agree = row["agree_on_claimed_range"].get<long>();
        ok = ok && agree == row["trials"].get<long>();
        detail += "p=" + str(row["p"].get<long>()) + ": " + str(agree) + "/100 agree on digits 0.." +
                  str(row["p"].get<long>() - 2) + " (prefix " + str(row["min_agreeing_prefix"].get<int>()) +
                  ".." + str(row["max_agreeing_prefix"].get<int>()) + "); ";
    }
    detail += "ranges recorded in the report";
    return {7, "digit recursion reproduces the root on digits 0..p-2", ok, detail};
}

// |U / U^q| from the q-th powers of the units mod p^d
long enumerated_index(Prime p, long q) {
    const int d = coset_depth(p, q);
    const mpz_class modulus = prime_power(p, d);
    const unsigned long m = modulus.get_ui();
    std::set<unsigned long> image;
    long units = 0;
    for (unsigned long u = 1; u < m; ++u) {
        if (u % static_cast<unsigned long>(p.value()) == 0) continue;
        ++units;
        mpz_class r;
        const mpz_class base(u);
        mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(q), modulus.get_mpz_t());
        image.insert(r.get_ui());
    }
    return units / static_cast<long>(image.size());
}

AcceptanceResult reps_criterion(const OracleBudget& budget) {
    Tally t;
    const auto e22 = validate(build_set(Prime(2), 2), 7, budget);
    auto listed = e22.elements;
    std::sort(listed.begin(), listed.end());
    t.record(listed == std::vector<mpz_class>{1, 2, 3, 5, 6, 7, 10, 14} &&
                 e22.validation->sound && e22.validation->complete,
             "E_{2,2} at depth 7");
    for (long pv : {2L, 3L, 5L, 7L}) {
        const Prime p(pv);
        for (long q = 2; q <= 6; ++q) {
            const std::string where = "(" + str(pv) + "," + str(q) + ")";
            const int depth = coset_depth(p, q) + 1;
            const auto built = construct_set(p, q, depth, budget);
            t.record(validate(built.constructed, depth, budget).validation->complete, where + " constructed");
            const auto minimal = validate(built.minimal, depth, budget);
            t.record(minimal.validation->complete && minimal.validation->sound && minimal.validation->minimal,
                     where + " minimal");
            t.record(static_cast<long>(built.minimal.elements.size()) == q * enumerated_index(p, q),
                     where + " minimal size");
        }
    }
    for (long pv : {3L, 5L}) {
        const auto paper = validate(build_set(Prime(pv), pv), coset_depth(Prime(pv), pv) + 1, budget);
        t.record(!paper.validation->complete && !paper.validation->uncovered.empty(),
                 "published (" + str(pv) + "," + str(pv) + ") flagged incomplete");
    }
    return {8, "representative sets: published, constructed, minimal", t.ok(), t.summary("checks")};
}

AcceptanceResult witness_criterion(const OracleBudget&) {
    struct Case {
        long n, d, q, p;
    };
    long passed = 0;
    std::string missing;
    for (const auto& c : {Case{12, 11, 5, 5}, Case{13, 11, 5, 5}, Case{14, 11, 5, 5},
                          Case{4, 5, 3, 3}, Case{12, 5, 3, 3}, Case{36, 5, 3, 3}}) {
        const auto x = canonicalize_rational(c.n, c.d, PrecisionContext(Prime(c.p)));
        const auto v = solve(x, c.q);
        if (v.solvable) {
            ++passed;
        } else {
            missing += " " + str(c.n) + "/" + str(c.d) + " (q=" + str(c.q) + ", " + v.failure->condition + ");";
        }
    }
    return {9, "quoted power witnesses are solvable", passed == 6,
            str(passed) + "/6 solvable" + (missing.empty() ? "" : "; not powers:" + missing)};
}

AcceptanceResult catalog_criterion(const OracleBudget&) {
    Tally t;
    std::string sizes;
    for (long pv : {3L, 5L, 7L}) {
        const Prime p(pv);
        const auto rows = theorem20_catalog(p);
        sizes += " p=" + str(pv) + ":" + str(static_cast<long>(rows.size()));
        for (const auto& row : rows) {
            const auto tensor = row_tensor(p, row);
            t.record(leibniz_defect(tensor) == 0 && lower_central_dims(tensor) == Vec6{6, 4, 3, 2, 1, 0},
                     row.label + " at p=" + str(pv));
        }
    }
    return {10, "catalog rows are filiform Leibniz algebras", t.ok(), t.summary("rows") + " (rows" + sizes + ")"};
}

AcceptanceResult transform_criterion(const OracleBudget&) {
    Tally formulas;
    Tally identity;
    Tally compose;
    for (long pv : {3L, 5L, 7L}) {
        const Prime p(pv);
        const PrecisionContext ctx(p);
        const Field<PadicNumber> f{ctx};
        const Field<Q> exact{p};
        detail::AlgebraRandom r(static_cast<unsigned>(1000 + pv));
        for (int i = 0; i < 200; ++i) {
            const auto k = r.params();
            const auto c = r.change(k.delta);
            const auto kp = detail::lift(k, ctx);
            const auto moved = change_of_basis(class3_tensor(f, kp), detail::lift(c, ctx));
            const auto want = transform_class3(f, kp, detail::lift(c, ctx)).values();
            const auto got = class3_params(moved).values();
            bool ok = has_class3_shape(moved);
            for (std::size_t j = 0; j < 6; ++j) ok = ok && f.close(got[j], want[j]);
            formulas.record(ok, "p=" + str(pv) + " trial " + str(i));

            const auto id = BasisChange<Q>::identity(exact);
            identity.record(transform_class3(exact, k, id).values() == k.values() &&
                                change_of_basis(class3_tensor(exact, k), id).close_to(class3_tensor(exact, k)),
                            "identity p=" + str(pv));

            if (i < 100) {
                const auto mid = transform_class3(exact, k, c);
                const auto c2 = r.change(mid.delta);
                const auto twice = transform_class3(exact, mid, c2);
                const auto tensor = change_of_basis(change_of_basis(class3_tensor(exact, k), c), c2);
                compose.record(has_class3_shape(tensor) && class3_params(tensor).values() == twice.values(),
                               "composition p=" + str(pv) + " trial " + str(i));
            }
        }
    }
    return {11, "class III transformations: tensor recomputation, identity, composition",
            formulas.ok() && identity.ok() && compose.ok(),
            formulas.summary("p-adic pairs") + ", " + identity.summary("identity") + ", " +
                compose.summary("compositions")};
}

AcceptanceResult normalizer_criterion(const OracleBudget&) {
    Tally t;
    for (long pv : {3L, 5L, 7L}) {
        const Prime p(pv);
        const PrecisionContext ctx(p, 40);
        const Field<PadicNumber> f{ctx};
        detail::AlgebraRandom r(static_cast<unsigned>(100 + pv));
        for (int which = 1; which <= 11; ++which) {
            for (int trial = 0; trial < 12; ++trial) {
                const std::string where = "p=" + str(pv) + " case " + str(which) + " trial " + str(trial);
                const auto in = detail::lift(detail::guarded(which, r), ctx);
                const auto n = normalize_class3(in, ctx);
                if (n.case_number != which) {
                    t.record(false, where + ": dispatched elsewhere");
                    continue;
                }
                const auto moved = change_of_basis(class3_tensor(f, in), n.witness);
                const auto again = normalize_class3(n.canonical, ctx);
                bool fixed = again.case_number == which;
                const auto a = again.canonical.values();
                const auto b = n.canonical.values();
                for (std::size_t j = 0; j < 6; ++j) fixed = fixed && f.close(a[j], b[j]);
                t.record(in_class_table(n.canonical) && moved.close_to(class3_tensor(f, n.canonical)) && fixed,
                         where);
            }
        }
    }
    return {12, "normalizer: every case reaches its shape via its witness, fixed points", t.ok(),
            t.summary("inputs")};
}

using Check = AcceptanceResult (*)(const OracleBudget&);

constexpr std::array<Check, acceptance_count> checks{
    square_criterion,   coprime_criterion, pth_power_criterion, general_criterion,
    carry_criterion,    emitter_criterion, recursion_criterion, reps_criterion,
    witness_criterion,  catalog_criterion, transform_criterion, normalizer_criterion};

}  // namespace

AcceptanceResult acceptance_criterion(int number, const OracleBudget& budget) {
    if (number < 1 || number > acceptance_count) {
        throw DomainError("acceptance criteria are numbered 1.." + std::to_string(acceptance_count));
    }
    try {
        return checks[static_cast<std::size_t>(number - 1)](budget);
    } catch (const std::exception& e) {
        return {number, "criterion " + std::to_string(number), false, std::string("error: ") + e.what()};
    }
}

std::vector<AcceptanceResult> run_acceptance(const OracleBudget& budget,
                                             const std::function<void(const AcceptanceResult&)>& on_result) {
    std::vector<AcceptanceResult> out;
    for (int n = 1; n <= acceptance_count; ++n) {
        out.push_back(acceptance_criterion(n, budget));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_line(const AcceptanceResult& r) {
    std::ostringstream s;
    s << (r.passed ? "PASS" : "FAIL") << ' ' << (r.number < 10 ? " " : "") << r.number << "  " << r.title
      << ": " << r.detail;
    return s.str();
}

}  // namespace padix
