#include "padix/reps.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "padix/roots.hpp"

namespace padix {

long valuation_of(const mpz_class& n, Prime p) {
    if (n == 0) throw DomainError("valuation of zero");
    long v = 0;
    mpz_class t = n;
    while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p.value())) != 0) {
        t /= p.value();
        ++v;
    }
    return v;
}

namespace {

// ample for any unit residue of the depths used here
PrecisionContext context_for(Prime p, int depth) {
    return PrecisionContext(p, std::max(depth + 2, PrecisionContext::minimum_precision));
}

bool canonical_less(const mpz_class& a, const mpz_class& b, Prime p) {
    const long va = valuation_of(a, p);
    const long vb = valuation_of(b, p);
    return va != vb ? va < vb : a < b;
}

std::vector<mpz_class> canonical(std::vector<mpz_class> xs, Prime p) {
    std::sort(xs.begin(), xs.end(), [p](const auto& a, const auto& b) { return canonical_less(a, b, p); });
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

std::vector<mpz_class> product(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> out;
    for (const auto& x : a) {
        for (const auto& y : b) out.push_back(x * y);
    }
    return out;
}

std::vector<mpz_class> powers(const mpz_class& base, int count) {
    std::vector<mpz_class> out;
    mpz_class t = 1;
    for (int i = 0; i < count; ++i) {
        out.push_back(t);
        t *= base;
    }
    return out;
}

std::vector<mpz_class> range_list(std::initializer_list<long> xs) {
    std::vector<mpz_class> out;
    for (const long x : xs) out.emplace_back(x);
    return out;
}

// {1, u, u^2, ...} with as many classes as the unit u generates; {1} when u is absent
std::vector<mpz_class> optional_powers(std::optional<long> u, int count) {
    return u ? powers(*u, count) : std::vector<mpz_class>{1};
}

std::string join(const std::vector<mpz_class>& xs) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << xs[i].get_str();
    out << '}';
    return out.str();
}

std::string pow_layout(long p, int count) {
    return "{" + std::to_string(p) + "^i : i < " + std::to_string(count) + "}";
}

bool ratio_is_power(const mpz_class& num, const mpz_class& den, long q, const PrecisionContext& ctx) {
    return is_qth_power(from_integer(num, ctx) / from_integer(den, ctx), q);
}

RepresentativeSet make_set(Prime p, long q, Provenance prov, std::vector<mpz_class> elements,
                           std::string layout) {
    return RepresentativeSet{p, q, prov, canonical(std::move(elements), p), std::move(layout), std::nullopt};
}

}  // namespace

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::paper_claimed: return "paper-claimed";
        case Provenance::paper_reduced: return "paper-reduced";
        case Provenance::constructed: return "constructed";
        case Provenance::reduced_minimal: return "reduced-minimal";
    }
    return "?";
}

int coset_depth(Prime p, long q) {
    if (q < 1) throw DomainError("exponent must be positive");
    return digits_needed(p, q);
}

long coset_index(Prime p, long q, const OracleBudget& budget) {
    const int d = coset_depth(p, q);
    const std::uint64_t modulus = ipow(p, d);
    budget.check(modulus, "coset index");
    std::vector<bool> hit(modulus, false);
    std::uint64_t units = 0;
    std::uint64_t image = 0;
    const mpz_class mod = static_cast<unsigned long>(modulus);
    for (std::uint64_t u = 1; u < modulus; ++u) {
        if (u % static_cast<std::uint64_t>(p.value()) == 0) continue;
        ++units;
        mpz_class r;
        const mpz_class base = static_cast<unsigned long>(u);
        mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(q), mod.get_mpz_t());
        const auto idx = r.get_ui();
        if (!hit[idx]) {
            hit[idx] = true;
            ++image;
        }
    }
    return static_cast<long>(units / image);
}

std::optional<long> find_nonpower_unit(Prime p, long q) {
    if (coset_index(p, q) == 1) return std::nullopt;
    const auto ctx = context_for(p, coset_depth(p, q));
    for (long n = 2;; ++n) {
        if (n % p.value() == 0) continue;
        if (!is_qth_power(from_integer(n, ctx), q)) return n;
    }
}

RepresentativeSet build_set(Prime p, long q) {
    const long pv = p.value();
    const mpz_class P = pv;
    const auto prov = Provenance::paper_claimed;
    const auto with_p = [&](std::vector<mpz_class> units, int count) {
        return product(units, powers(P, count));
    };
    switch (q) {
        case 2: {
            if (pv == 2) {
                return make_set(p, q, prov, range_list({1, 2, 3, 5, 6, 7, 10, 14}),
                                "{1, 2, 3, 5, 6, 7, 10, 14}");
            }
            const long eta = *find_nonpower_unit(p, 2);
            return make_set(p, q, prov, with_p(range_list({1, eta}), 2),
                            "{1, η, p, pη}, η = " + std::to_string(eta));
        }
        case 3: {
            if (pv == 2) return make_set(p, q, prov, range_list({1, 2, 4}), "{1, 2, 4}");
            if (pv == 3) {
                return make_set(p, q, prov, range_list({1, 3, 4, 5, 9, 12, 15, 36, 45}),
                                "{1, 3, 4, 5, 9, 12, 15, 36, 45}");
            }
            const auto zeta = find_nonpower_unit(p, 3);
            return make_set(p, q, prov, with_p(optional_powers(zeta, 3), 3),
                            zeta ? "{p^i ζ^j : i, j < 3}, ζ = " + std::to_string(*zeta)
                                 : pow_layout(pv, 3));
        }
        case 4: {
            if (pv == 2) {
                return make_set(p, q, prov, with_p(range_list({1, 3, 5, 7, 9, 11, 13}), 4),
                                "{1, 3, 5, 7, 9, 11, 13} × {1, 2, 4, 8}");
            }
            const long eta = *find_nonpower_unit(p, 2);
            if (pv % 4 == 3) {
                return make_set(p, q, prov, with_p(range_list({1, eta}), 4),
                                "{1, p, p², p³, η, pη, p²η, p³η}, η = " + std::to_string(eta));
            }
            return make_set(p, q, prov, with_p(powers(eta, 4), 4),
                            "{p^i η^j : i, j < 4}, η = " + std::to_string(eta));
        }
        case 5: {
            if (pv == 5) {
                return make_set(p, q, prov, with_p(range_list({1, 11, 12, 13, 14}), 5),
                                "{1, 11, 12, 13, 14} × {1, 5, 25, 125, 625}");
            }
            if (pv % 5 == 1) {
                const long xi = *find_nonpower_unit(p, 5);
                return make_set(p, q, prov, with_p(powers(xi, 5), 5),
                                "{p^i ξ^j : i, j < 5}, ξ = " + std::to_string(xi));
            }
            return make_set(p, q, prov, powers(P, 5), pow_layout(pv, 5));
        }
        case 6: {
            if (pv == 2) {
                return make_set(p, q, prov, with_p(range_list({1, 3}), 6), "{2^i : i < 6} × {1, 3}");
            }
            if (pv == 3) {
                return make_set(p, q, prov, with_p(range_list({1, 2, 4, 5, 7, 8}), 6),
                                "{1, 2, 4, 5, 7, 8} × {3^i : i < 6}");
            }
            const long eta = *find_nonpower_unit(p, 2);
            const auto mu = find_nonpower_unit(p, 3);
            std::vector<mpz_class> delta_sq;
            for (const auto& d : product(powers(P, 3), optional_powers(mu, 3))) delta_sq.push_back(d * d);
            return make_set(p, q, prov, product(with_p(range_list({1, eta}), 2), delta_sq),
                            "{εδ² : ε ∈ {1, η, p, pη}, δ ∈ {p^i μ^j}}, η = " + std::to_string(eta) +
                                (mu ? ", μ = " + std::to_string(*mu) : ", no μ"));
        }
        default:
            throw DomainError("published tables cover q = 2..6");
    }
}

RepresentativeSet build_reduced_set(Prime p, long q) {
    if (p.value() == 3 && q == 3) {
        return make_set(p, q, Provenance::paper_reduced, range_list({1, 3, 5, 9, 15, 45}),
                        "{1, 3, 5, 9, 15, 45}");
    }
    if (p.value() == 5 && q == 5) {
        return make_set(p, q, Provenance::paper_reduced, product(range_list({1, 11}), powers(5, 5)),
                        "{1, 11} × {1, 5, 25, 125, 625}");
    }
    throw DomainError("shortened tables exist for (p, q) = (3, 3) and (5, 5)");
}

ConstructedSets construct_set(Prime p, long q, int depth, const OracleBudget& budget) {
    if (q < 2) throw DomainError("exponent must be at least 2");
    const int d = coset_depth(p, q);
    if (depth < d) {
        throw PrecisionError("depth " + std::to_string(depth) + " is below the " +
                             std::to_string(d) + " digits that decide q-th powers");
    }
    budget.check(ipow(p, depth), "set construction");
    const auto modulus = ipow(p, d);
    const auto ctx = context_for(p, depth);
    const long pv = p.value();

    std::vector<mpz_class> residues{1};
    std::vector<mpz_class> minimal_units{1};
    for (std::uint64_t u = 2; u < modulus; ++u) {
        if (u % static_cast<std::uint64_t>(pv) == 0) continue;
        const mpz_class uz = static_cast<unsigned long>(u);
        if (is_qth_power(from_integer(uz, ctx), q)) continue;
        residues.push_back(uz);
        const bool fresh = std::none_of(minimal_units.begin(), minimal_units.end(),
                                        [&](const mpz_class& e) { return ratio_is_power(uz, e, q, ctx); });
        if (fresh) minimal_units.push_back(uz);
    }
    const auto shifts = powers(mpz_class(pv), static_cast<int>(q));
    const std::string mod_text = std::to_string(pv) + "^" + std::to_string(d);
    return ConstructedSets{
        make_set(p, q, Provenance::constructed, product(residues, shifts),
                 pow_layout(pv, static_cast<int>(q)) + " × ({1} ∪ non-" + std::to_string(q) +
                     "-th-power residues mod " + mod_text + ")"),
        make_set(p, q, Provenance::reduced_minimal, product(minimal_units, shifts),
                 pow_layout(pv, static_cast<int>(q)) + " × " + join(minimal_units)),
    };
}

RepresentativeSet validate(RepresentativeSet set, int depth, const OracleBudget& budget) {
    const Prime p = set.prime;
    const long q = set.exponent;
    const long pv = p.value();
    const auto modulus = ipow(p, depth);
    budget.check(modulus * static_cast<std::uint64_t>(q), "set validation");
    const auto ctx = context_for(p, std::max(depth, coset_depth(p, q)));

    SetValidation v;
    v.checked_depth = depth;
    for (const auto& e : set.elements) {
        if (e != 1 && is_qth_power(from_integer(e, ctx), q)) v.powers.push_back(e);
    }
    v.sound = v.powers.empty();

    for (std::size_t i = 0; i < set.elements.size(); ++i) {
        for (std::size_t j = i + 1; j < set.elements.size(); ++j) {
            const auto& a = set.elements[i];
            const auto& b = set.elements[j];
            if ((valuation_of(a, p) - valuation_of(b, p)) % q != 0) continue;
            if (ratio_is_power(a, b, q, ctx)) v.duplicates.emplace_back(a, b);
        }
    }
    v.minimal = v.duplicates.empty();

    // one pass per valuation class; units in one class share a single witness
    std::vector<std::vector<mpz_class>> by_class(static_cast<std::size_t>(q));
    for (const auto& e : set.elements) by_class[static_cast<std::size_t>(valuation_of(e, p) % q)].push_back(e);
    for (long r = 0; r < q; ++r) {
        const auto& candidates = by_class[static_cast<std::size_t>(r)];
        const mpz_class shift = prime_power(p, static_cast<int>(r));
        for (std::uint64_t u = 1; u < modulus; ++u) {
            if (u % static_cast<std::uint64_t>(pv) == 0) continue;
            const mpz_class x = shift * static_cast<unsigned long>(u);
            const bool covered = std::any_of(candidates.begin(), candidates.end(),
                                             [&](const mpz_class& e) { return ratio_is_power(x, e, q, ctx); });
            if (!covered) v.uncovered.emplace_back(static_cast<int>(r), static_cast<long>(u));
        }
    }
    // keep the report short: the smallest residue of each missing class
    std::vector<std::pair<int, long>> reps;
    for (const auto& [r, u] : v.uncovered) {
        const bool known = std::any_of(reps.begin(), reps.end(), [&](const auto& k) {
            return k.first == r && ratio_is_power(u, k.second, q, ctx);
        });
        if (!known) reps.emplace_back(r, u);
    }
    v.uncovered = std::move(reps);
    v.complete = v.uncovered.empty();
    set.validation = std::move(v);
    return set;
}

Decomposition decompose(const PadicNumber& x, long q, const RepresentativeSet& set) {
    if (x.is_zero_like()) throw DomainError("decompose needs a nonzero value");
    if (x.prime() != set.prime || q != set.exponent) {
        throw DomainError("set is for a different (p, q)");
    }
    const PrecisionContext ctx(x.prime(), std::max(x.precision(), PrecisionContext::minimum_precision));
    for (const auto& e : set.elements) {
        const auto verdict = solve(x / from_integer(e, ctx), q);
        if (verdict.solvable) return Decomposition{e, *verdict.root};
    }
    const int d = std::min(coset_depth(x.prime(), q), x.precision());
    mpz_class unit;
    mpz_fdiv_r(unit.get_mpz_t(), x.unit().get_mpz_t(), prime_power(x.prime(), d).get_mpz_t());
    throw DomainError("incomplete set: no element covers valuation " + std::to_string(x.valuation()) +
                      ", unit " + unit.get_str() + " mod " + std::to_string(x.prime().value()) + "^" +
                      std::to_string(d));
}

std::vector<mpz_class> pth_power_complement_units(Prime p) {
    const long pv = p.value();
    std::vector<mpz_class> out{1};
    const mpz_class p2 = pv * pv;
    for (long i = 1; i < pv; ++i) {
        mpz_class ip;
        const mpz_class base = i;
        mpz_powm_ui(ip.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(pv), p2.get_mpz_t());
        for (long j = 0; j < pv; ++j) {
            if (ip != i + j * pv) out.emplace_back(i + j * pv);
        }
    }
    return out;
}

bool same_unit_classes(Prime p, long q, const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    const auto ctx = context_for(p, coset_depth(p, q));
    const auto covers = [&](const std::vector<mpz_class>& from, const std::vector<mpz_class>& to) {
        return std::all_of(to.begin(), to.end(), [&](const mpz_class& y) {
            return std::any_of(from.begin(), from.end(),
                               [&](const mpz_class& x) { return ratio_is_power(y, x, q, ctx); });
        });
    };
    return covers(a, b) && covers(b, a);
}

}  // namespace padix
