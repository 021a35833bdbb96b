#include "padix/oracle.hpp"

#include <cstdlib>
#include <string>

#include "padix/roots.hpp"

namespace padix {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e != 0) {
        if ((e & 1U) != 0) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1U;
    }
    return r;
}

std::uint64_t unit_mod(const PadicNumber& a, int digits, std::uint64_t modulus) {
    if (a.precision() < digits) {
        throw PrecisionError("oracle needs " + std::to_string(digits) + " unit digits, only " +
                             std::to_string(a.precision()) + " known");
    }
    return mpz_fdiv_ui(a.unit().get_mpz_t(), modulus);
}

void require_nonzero(const PadicNumber& a) {
    if (a.is_zero()) throw DomainError("oracle input must be nonzero");
}

template <class Keep>
std::vector<std::uint64_t> enumerate_units(Prime p, int depth, const OracleBudget& budget,
                                           Keep keep) {
    if (depth < 1) throw DomainError("oracle depth must be at least 1");
    const std::uint64_t n = ipow(p, depth);
    budget.check(n, "brute-force root enumeration");
    const auto pv = static_cast<std::uint64_t>(p.value());
    std::vector<std::uint64_t> out;
    for (std::uint64_t u = 1; u < n; ++u) {
        if (u % pv != 0 && keep(u)) out.push_back(u);
    }
    return out;
}

}  // namespace

OracleBudget OracleBudget::from_env() {
    OracleBudget b;
    if (const char* env = std::getenv("PADIX_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) b.max_residues = v;
    }
    return b;
}

void OracleBudget::check(std::uint64_t count, const char* what) const {
    if (count > max_residues) {
        throw BudgetError(std::string(what) + " needs " + std::to_string(count) +
                          " residues, budget is " + std::to_string(max_residues));
    }
}

std::vector<std::uint64_t> brute_force_root(const PadicNumber& a, long q, int depth,
                                            const OracleBudget& budget) {
    require_nonzero(a);
    const Prime p = a.prime();
    const auto f = ExponentFactorization::of(q, p);
    if (a.valuation() % q != 0) return {};
    const std::uint64_t m = ipow(p, depth + f.s);
    const std::uint64_t target = unit_mod(a, depth + f.s, m);
    return enumerate_units(p, depth, budget, [&](std::uint64_t u) {
        return powmod(u, static_cast<std::uint64_t>(q), m) == target;
    });
}

std::vector<std::uint64_t> power_residue_roots(const PadicNumber& a, long q, int depth,
                                               const OracleBudget& budget) {
    require_nonzero(a);
    const Prime p = a.prime();
    if (q < 1) throw DomainError("exponent must be positive");
    const std::uint64_t m = ipow(p, depth);
    const std::uint64_t target = unit_mod(a, depth, m);
    return enumerate_units(p, depth, budget, [&](std::uint64_t u) {
        return powmod(u, static_cast<std::uint64_t>(q), m) == target;
    });
}

bool stabilized_verdict(const PadicNumber& a, long q, int depth, const OracleBudget& budget) {
    return !brute_force_root(a, q, depth, budget).empty() &&
           !brute_force_root(a, q, depth + 1, budget).empty();
}

PowerTable::PowerTable(Prime p, long q, int depth, const OracleBudget& budget)
    : prime_(p), q_(q), depth_(depth), s_(ExponentFactorization::of(q, p).s) {
    if (depth < 1) throw DomainError("oracle depth must be at least 1");
    modulus_low_ = ipow(p, depth + s_);
    modulus_high_ = ipow(p, depth + 1 + s_);
    budget.check(modulus_high_, "power table");
    counts_.assign(modulus_low_, 0);
    high_.assign(modulus_high_, false);
    const auto pv = static_cast<std::uint64_t>(p.value());
    const auto e = static_cast<std::uint64_t>(q);
    const std::uint64_t low_units = ipow(p, depth);
    const std::uint64_t high_units = ipow(p, depth + 1);
    for (std::uint64_t u = 1; u < high_units; ++u) {
        if (u % pv == 0) continue;
        const std::uint64_t r = powmod(u, e, modulus_high_);
        high_[r] = true;
        if (u < low_units) ++counts_[r % modulus_low_];
    }
}

std::uint32_t PowerTable::root_count(const mpz_class& unit) const {
    return counts_[mpz_fdiv_ui(unit.get_mpz_t(), modulus_low_)];
}

bool PowerTable::stabilized(const mpz_class& unit) const {
    return root_count(unit) > 0 && high_[mpz_fdiv_ui(unit.get_mpz_t(), modulus_high_)];
}

bool PowerTable::verdict(const PadicNumber& a) const {
    require_nonzero(a);
    if (!(a.prime() == prime_)) throw DomainError("power table built for another prime");
    if (a.valuation() % q_ != 0) return false;
    if (a.precision() < depth_ + 1 + s_) {
        throw PrecisionError("power table lookup needs " + std::to_string(depth_ + 1 + s_) +
                             " unit digits");
    }
    return stabilized(a.unit());
}

}  // namespace padix
