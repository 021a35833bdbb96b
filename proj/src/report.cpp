#include <algorithm>
#include <map>

#include "padix/carry.hpp"
#include "padix/conformance.hpp"
#include "random_algebra.hpp"

namespace padix {

namespace {

constexpr std::size_t max_examples = 5;

std::uint64_t power(long p, int e) { return ipow(Prime(p), e); }

// Every unit residue mod p^depth, as a p-adic number with `depth` known digits.
template <class Fn>
void for_each_unit(Prime p, int depth, Fn&& fn) {
    // the residue is taken as an exact integer: extra digits are zeros
    const PrecisionContext ctx(p, depth + 8);
    const auto modulus = power(p.value(), depth);
    for (std::uint64_t a = 1; a < modulus; ++a) {
        if (a % static_cast<std::uint64_t>(p.value()) == 0) continue;
        fn(a, from_integer(mpz_class(static_cast<unsigned long>(a)), ctx));
    }
}

Json digits_json(const PadicNumber& x, int n) {
    Json out = Json::array();
    for (int i = 0; i < n; ++i) out.push_back(x.digit(i));
    return out;
}

// Oracle depth so that the tested modulus p^(K+s) covers every swept digit.
int oracle_depth(Prime p, long q, int swept) {
    const int s = ExponentFactorization::of(q, p).s;
    return std::max(p.value() == 2 ? 3 : 2, swept + 1 - s);
}

struct FastCell {
    long p;
    long q;
    PropositionPart part;
};

std::vector<FastCell> fast_cells() {
    std::vector<FastCell> cells{{2, 6, PropositionPart::six_over_q2}};
    for (long p : {3L, 5L, 7L}) cells.push_back({p, (p - 1) * p, PropositionPart::p_minus_one_times_p});
    for (long p : {2L, 3L, 5L, 7L}) cells.push_back({p, p * p, PropositionPart::p_squared});
    for (long p : {3L, 5L, 7L}) cells.push_back({p, p * p * p, PropositionPart::p_cubed});
    for (long k = 2; k <= 6; ++k) cells.push_back({2, 1L << k, PropositionPart::two_power});
    return cells;
}

}  // namespace

Json fast_path_section(const OracleBudget& budget) {
    Json cells = Json::array();
    for (const auto& cell : fast_cells()) {
        const Prime p(cell.p);
        const int swept = digits_needed(p, cell.q) + 1;
        const PowerTable oracle(p, cell.q, oracle_depth(p, cell.q, swept), budget);
        long units = 0;
        long fast_mismatch = 0;
        long solve_mismatch = 0;
        long fast_vs_solve = 0;
        Json examples = Json::array();
        for_each_unit(p, swept, [&](std::uint64_t a, const PadicNumber& x) {
            ++units;
            const bool truth = oracle.verdict(x);
            const bool fast = fast_criterion_part(x, cell.q, cell.part).solvable;
            const bool full = solve(x, cell.q, {.construct_root = false}).solvable;
            if (fast != truth) {
                ++fast_mismatch;
                if (examples.size() < max_examples) {
                    examples.push_back({{"a", a},
                                        {"digits", digits_json(x, swept)},
                                        {"closed_form", fast},
                                        {"oracle", truth}});
                }
            }
            solve_mismatch += full != truth;
            fast_vs_solve += fast != full;
        });
        cells.push_back({{"p", cell.p},
                         {"q", cell.q},
                         {"part", part_number(cell.part)},
                         {"swept_modulus", std::to_string(cell.p) + "^" + std::to_string(swept)},
                         {"units", units},
                         {"closed_form_vs_oracle_mismatches", fast_mismatch},
                         {"closed_form_vs_solve_mismatches", fast_vs_solve},
                         {"solve_vs_oracle_mismatches", solve_mismatch},
                         {"agrees", fast_mismatch == 0},
                         {"counterexamples", examples}});
    }
    return cells;
}

Json recursion_section(unsigned seed) {
    std::mt19937_64 rng(seed);
    Json out = Json::array();
    for (long pv : {3L, 5L, 7L}) {
        const Prime p(pv);
        for (int m = 1; m <= std::min<long>(3, pv - 1); ++m) {
            const int root_digits = 10;
            const int a_digits = root_digits + m + 2;
            const PrecisionContext ctx(p, a_digits);
            std::uniform_int_distribution<unsigned long> pick(1, 4'000'000'000UL);
            std::map<int, long> first_mismatch;  // index -> count; root_digits = none
            long full_range = 0;
            int lo = root_digits;
            int hi = 0;
            for (int trial = 0; trial < 100; ++trial) {
                unsigned long b = pick(rng);
                while (b % static_cast<unsigned long>(pv) == 0) ++b;
                const auto xb = from_integer(mpz_class(b), ctx);
                mpz_class e = 1;
                for (int i = 0; i < m; ++i) e *= pv;
                const auto xa = pow(xb, e.get_ui());
                const auto digits = xa.digits();
                const auto got = digit_recursion(digits, p, m);
                int agree = 0;
                while (agree < root_digits && agree < static_cast<int>(got.size()) &&
                       got[static_cast<std::size_t>(agree)] == xb.digit(agree)) {
                    ++agree;
                }
                ++first_mismatch[agree];
                full_range += agree >= pv - 1;
                lo = std::min(lo, agree);
                hi = std::max(hi, agree);
            }
            Json hist = Json::object();
            for (const auto& [k, n] : first_mismatch) {
                hist[k == root_digits ? std::string("none") : std::to_string(k)] = n;
            }
            out.push_back({{"p", pv},
                           {"stages", m},
                           {"trials", 100},
                           {"claimed_range", {0, pv - 2}},
                           {"agree_on_claimed_range", full_range},
                           {"min_agreeing_prefix", lo},
                           {"max_agreeing_prefix", hi},
                           {"first_mismatch_histogram", hist}});
        }
    }
    return out;
}

Json criterion_section(const OracleBudget& budget) {
    Json out = Json::array();
    for (long pv : {3L, 5L, 7L}) {
        const Prime p(pv);
        for (int m = 1; m <= std::min<long>(4, pv - 1); ++m) {
            const auto emitted = emit_criterion(p, m);
            const std::vector<std::pair<std::string, Criterion>> variants{
                {"emitted", emitted},
                {"emitted, lines 3-4 mod p^2", with_modulus(emitted, 3, 2)},
                {"derived", derive_criterion(p, m)}};
            int depth = m + 2;
            for (const auto& [_, c] : variants) depth = std::max(depth, c.digits_needed());
            budget.check(power(pv, depth), "criterion sweep");
            long q = 1;
            for (int i = 0; i < m; ++i) q *= pv;
            std::vector<long> mismatches(variants.size(), 0);
            std::vector<Json> examples(variants.size(), Json::array());
            long units = 0;
            for_each_unit(p, depth, [&](std::uint64_t a, const PadicNumber& x) {
                ++units;
                const bool truth = solve(x, q, {.construct_root = false}).solvable;
                for (std::size_t v = 0; v < variants.size(); ++v) {
                    const auto check = variants[v].second.evaluate(x);
                    if (check.satisfied == truth) continue;
                    ++mismatches[v];
                    if (examples[v].size() < max_examples) {
                        examples[v].push_back({{"a", a},
                                               {"digits", digits_json(x, depth)},
                                               {"criterion", check.satisfied},
                                               {"failed_line", check.failed_line},
                                               {"solve", truth}});
                    }
                }
            });
            Json rows = Json::array();
            for (std::size_t v = 0; v < variants.size(); ++v) {
                rows.push_back({{"variant", variants[v].first},
                                {"mismatches", mismatches[v]},
                                {"counterexamples", examples[v]}});
            }
            out.push_back({{"p", pv},
                           {"m", m},
                           {"swept_modulus", std::to_string(pv) + "^" + std::to_string(depth)},
                           {"units", units},
                           {"variants", rows}});
        }
    }
    return out;
}

Json epsilon_section(const OracleBudget& budget) {
    Json out = Json::array();
    for (long pv : {2L, 3L, 5L, 7L}) {
        const Prime p(pv);
        for (long q = 2; q <= 6; ++q) {
            const int depth = coset_depth(p, q) + 1;
            Json sets = Json::array();
            sets.push_back(to_json(validate(build_set(p, q), depth, budget)));
            if ((pv == 3 && q == 3) || (pv == 5 && q == 5)) {
                sets.push_back(to_json(validate(build_reduced_set(p, q), depth, budget)));
            }
            const auto built = construct_set(p, q, depth, budget);
            sets.push_back(to_json(validate(built.constructed, depth, budget)));
            sets.push_back(to_json(validate(built.minimal, depth, budget)));
            out.push_back({{"p", pv},
                           {"q", q},
                           {"depth", depth},
                           {"coset_index", coset_index(p, q, budget)},
                           {"sets", sets}});
        }
    }
    return out;
}

Json witness_section() {
    struct Case {
        long n, d, q, p;
    };
    Json powers = Json::array();
    for (const auto& c : {Case{12, 11, 5, 5}, Case{13, 11, 5, 5}, Case{14, 11, 5, 5},
                          Case{4, 5, 3, 3}, Case{12, 5, 3, 3}, Case{36, 5, 3, 3}}) {
        const PrecisionContext ctx(Prime(c.p));
        const auto x = canonicalize_rational(c.n, c.d, ctx);
        const auto v = solve(x, c.q);
        Json row = {{"value", std::to_string(c.n) + "/" + std::to_string(c.d)},
                    {"q", c.q},
                    {"p", c.p},
                    {"digits", digits_json(x, 4)},
                    {"verdict", to_json(v)}};
        powers.push_back(row);
    }
    Json decompositions = Json::array();
    struct Split {
        long x, p, q;
        bool reduced;
    };
    for (const auto& s : {Split{12, 5, 5, false}, Split{13, 5, 5, false}, Split{14, 5, 5, false},
                          Split{4, 3, 3, true}, Split{12, 3, 3, true}, Split{36, 3, 3, true}}) {
        const Prime p(s.p);
        const PrecisionContext ctx(p);
        const auto set = s.reduced ? build_reduced_set(p, s.q) : build_set(p, s.q);
        Json row = {{"x", s.x}, {"p", s.p}, {"q", s.q}, {"set", std::string(to_string(set.provenance))}};
        try {
            const auto d = decompose(from_integer(s.x, ctx), s.q, set);
            row["epsilon"] = d.epsilon.get_str();
            row["root"] = to_compact(d.root);
        } catch (const DomainError& e) {
            row["error"] = e.what();
        }
        decompositions.push_back(row);
    }
    return {{"powers", powers}, {"decompositions", decompositions}};
}

Json leibniz_section(unsigned seed) {
    Json catalog = Json::array();
    for (long pv : {3L, 5L, 7L}) {
        const Prime p(pv);
        const auto rows = theorem20_catalog(p);
        long clean = 0;
        for (const auto& row : rows) {
            const auto t = row_tensor(p, row);
            clean += leibniz_defect(t) == 0 && is_filiform(lower_central_dims(t));
        }
        Json probe = Json::array();
        for (const auto& v : probe_values(p)) probe.push_back(rational_text(v));
        catalog.push_back({{"p", pv},
                           {"probe_set", probe},
                           {"rows", rows.size()},
                           {"defect_zero_and_filiform", clean}});
    }

    // one worked example per case over Q_5
    const PrecisionContext ctx(Prime(5));
    const std::vector<std::array<long, 6>> samples{
        {7, 1, 0, 0, 0, 0}, {1, 1, 1, 0, 0, 0}, {2, 0, 0, 0, 1, 0}, {1, 3, 0, 0, 1, 0},
        {1, 0, 0, 1, 0, 0}, {1, 2, 0, 1, 1, 0}, {1, 2, 3, 1, 0, 0}, {2, 0, 0, 1, 0, 1},
        {1, 2, 0, 0, 0, 1}, {1, 1, 1, 0, 0, 1}, {3, 6, 3, 0, 0, 1}};
    Json witnesses = Json::array();
    for (const auto& s : samples) {
        Class3Params<mpq_class> k{s[0], s[1], s[2], s[3], s[4], s[5]};
        Json input = Json::array();
        for (long v : s) input.push_back(v);
        auto row = to_json(normalize_class3(detail::lift(k, ctx), ctx));
        row["input"] = input;
        witnesses.push_back(row);
    }

    // changes with B_1 != 0 are outside the verified domain: observe only
    detail::AlgebraRandom r(seed);
    const Field<mpq_class> f{Prime(7)};
    long shape = 0;
    long formulas = 0;
    const long trials = 200;
    for (long i = 0; i < trials; ++i) {
        const auto k = r.params();
        const auto c = r.change(k.delta, true);
        try {
            const auto moved = change_of_basis(class3_tensor(f, k), c);
            if (!has_class3_shape(moved)) continue;
            ++shape;
            formulas += class3_params(moved).values() == transform_class3(f, k, c).values();
        } catch (const DomainError&) {
        }
    }
    return {{"catalog", catalog},
            {"normalizer_witnesses", witnesses},
            {"b1_nonzero",
             {{"p", 7},
              {"trials", trials},
              {"class3_shape_kept", shape},
              {"formulas_match_when_shape_kept", formulas}}}};
}

Json conformance_report(const OracleBudget& budget) {
    Json report;
    report["fast_paths"] = fast_path_section(budget);
    report["recursion"] = recursion_section(20241015);
    report["criteria"] = criterion_section(budget);
    report["epsilon_sets"] = epsilon_section(budget);
    report["witnesses"] = witness_section();
    report["leibniz"] = leibniz_section(20241015);

    Json findings = Json::array();
    for (const auto& cell : report["fast_paths"]) {
        if (cell["closed_form_vs_oracle_mismatches"].get<long>() > 0) {
            findings.push_back("closed form (" + std::to_string(cell["part"].get<int>()) + ") at p=" +
                               std::to_string(cell["p"].get<long>()) + ", q=" +
                               std::to_string(cell["q"].get<long>()) + ": " +
                               std::to_string(cell["closed_form_vs_oracle_mismatches"].get<long>()) +
                               " of " + std::to_string(cell["units"].get<long>()) +
                               " units disagree with the oracle");
        }
    }
    for (const auto& row : report["recursion"]) {
        const long ok = row["agree_on_claimed_range"].get<long>();
        if (ok < row["trials"].get<long>()) {
            findings.push_back("digit recursion p=" + std::to_string(row["p"].get<long>()) + ", " +
                               std::to_string(row["stages"].get<int>()) + " stage(s): " +
                               std::to_string(ok) + "/100 agree on digits 0..p-2");
        }
    }
    for (const auto& row : report["criteria"]) {
        for (const auto& v : row["variants"]) {
            if (v["mismatches"].get<long>() == 0) continue;
            findings.push_back("criterion p=" + std::to_string(row["p"].get<long>()) + ", m=" +
                               std::to_string(row["m"].get<int>()) + " (" +
                               v["variant"].get<std::string>() + "): " +
                               std::to_string(v["mismatches"].get<long>()) + " of " +
                               std::to_string(row["units"].get<long>()) + " units disagree with solve");
        }
    }
    for (const auto& cell : report["epsilon_sets"]) {
        for (const auto& s : cell["sets"]) {
            const auto& v = s["validation"];
            if (!v["complete"].get<bool>() || !v["sound"].get<bool>()) {
                findings.push_back(s["provenance"].get<std::string>() + " E_{" +
                                   std::to_string(s["p"].get<long>()) + "," +
                                   std::to_string(s["q"].get<long>()) + "}: sound=" +
                                   (v["sound"].get<bool>() ? "yes" : "no") + ", complete=" +
                                   (v["complete"].get<bool>() ? "yes" : "no") + ", " +
                                   std::to_string(v["uncovered"].size()) + " uncovered classes");
            }
        }
    }
    for (const auto& w : report["witnesses"]["powers"]) {
        if (!w["verdict"]["solvable"].get<bool>()) {
            findings.push_back(w["value"].get<std::string>() + " is not a " +
                               std::to_string(w["q"].get<long>()) + "-th power in Q_" +
                               std::to_string(w["p"].get<long>()));
        }
    }
    report["findings"] = findings;
    return report;
}

}  // namespace padix
