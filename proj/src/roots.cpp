#include "padix/roots.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace padix {

namespace {

mpz_class powmod(const mpz_class& base, unsigned long e, const mpz_class& modulus) {
    mpz_class r;
    mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), e, modulus.get_mpz_t());
    return r;
}

mpz_class mod(const mpz_class& n, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return r;
}

long powmod_long(long base, long e, long m) {
    long r = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (e > 0) {
        if ((e & 1) != 0) r = static_cast<long>(static_cast<__int128>(r) * base % m);
        base = static_cast<long>(static_cast<__int128>(base) * base % m);
        e >>= 1;
    }
    return r;
}

SolveVerdict fail(CriterionTag tag, FailureKind kind, std::string condition, int used) {
    SolveVerdict v;
    v.solvable = false;
    v.failure = FailureReason{kind, std::move(condition)};
    v.criterion = tag;
    v.effective_precision = used;
    return v;
}

SolveVerdict success(CriterionTag tag, std::optional<PadicNumber> root, int used) {
    SolveVerdict v;
    v.solvable = true;
    v.criterion = tag;
    if (root) {
        v.effective_precision = root->precision();
        v.root = std::move(root);
    } else {
        v.effective_precision = used;
    }
    return v;
}

std::string divides_text(long q) { return std::to_string(q) + " | γ(a)"; }

void require_nonzero(const PadicNumber& a) {
    if (a.is_zero()) throw DomainError("x^q = 0 is excluded; a must be nonzero");
    (void)a.valuation();  // throws PrecisionError for exhausted values
}

void require_digits(const PadicNumber& a, int n) {
    if (a.precision() < n) {
        throw PrecisionError("the verdict needs " + std::to_string(n) + " unit digits, only " +
                             std::to_string(a.precision()) + " known");
    }
}

bool residue_test(long a0, long q, Prime p) {
    const long pv = p.value();
    const long e = (pv - 1) / std::gcd(q, pv - 1);
    return powmod_long(a0, e, pv) == 1;
}

/// Hensel lift of a root of x^q = unit mod p^n, q prime to p.
mpz_class lift_coprime_root(const mpz_class& unit, long q, long x0, Prime p, int n) {
    mpz_class x = x0;
    const auto uq = static_cast<unsigned long>(q);
    int k = 1;
    while (k < n) {
        k = std::min(2 * k, n);
        const mpz_class& m = prime_power(p, k);
        const mpz_class f = mod(powmod(x, uq, m) - unit, m);
        mpz_class df = mod(q * powmod(x, uq - 1, m), m);
        mpz_invert(df.get_mpz_t(), df.get_mpz_t(), m.get_mpz_t());
        x = mod(x - f * df, m);
    }
    return x;
}

struct StageResult {
    bool ok;
    mpz_class root;  // mod p^(n-1)
    std::string failed;
};

/// Digit-at-a-time p-th root of a unit known mod p^n (n >= 2).  Digit d at
/// position k survives iff (x + d p^k)^p == unit mod p^(k+2); over Q_2 the
/// second digit is free and the smaller choice keeps the root == 1 mod 4.
StageResult pth_root_stage(const mpz_class& unit, Prime p, int n) {
    const long pv = p.value();
    const auto up = static_cast<unsigned long>(pv);
    mpz_class x = mod(unit, pv);
    const mpz_class& m2 = prime_power(p, 2);
    if (powmod(x, up, m2) != mod(unit, m2)) {
        std::ostringstream os;
        if (pv == 2) {
            os << "a_1 = 0";
        } else {
            os << "a_0^" << pv << " ≡ a_0 + a_1·" << pv << " (mod " << pv << "^2)";
        }
        return {false, 0, os.str()};
    }
    for (int k = 1; k <= n - 2; ++k) {
        const mpz_class& mk = prime_power(p, k + 2);
        const mpz_class target = mod(unit, mk);
        bool found = false;
        for (long d = 0; d < pv; ++d) {
            const mpz_class cand = x + d * prime_power(p, k);
            if (powmod(cand, up, mk) == target) {
                x = cand;
                found = true;
                break;
            }
        }
        if (!found) {
            std::ostringstream os;
            os << "digit " << k << " of the " << pv << "-th root has no lift mod " << pv << "^"
               << (k + 2);
            if (pv == 2 && k == 1) os.str("a_1 = a_2 = 0");
            return {false, 0, os.str()};
        }
    }
    return {true, x, {}};
}

}  // namespace

std::string_view to_string(CriterionTag tag) {
    switch (tag) {
        case CriterionTag::thm1: return "thm1";
        case CriterionTag::thm2: return "thm2";
        case CriterionTag::thm3: return "thm3";
        case CriterionTag::thm4: return "thm4";
        case CriterionTag::general_mps: return "general-mps";
        case CriterionTag::proposition_fastpath: return "proposition-fastpath";
        case CriterionTag::oracle: return "oracle";
    }
    return "?";
}

std::string_view to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::valuation_divisibility: return "valuation-divisibility";
        case FailureKind::residue_condition: return "residue-condition";
        case FailureKind::digit_condition: return "digit-condition";
    }
    return "?";
}

ExponentFactorization ExponentFactorization::of(long q, Prime p) {
    if (q < 1) throw DomainError("exponent must be positive");
    ExponentFactorization f{q, 0};
    while (f.m % p.value() == 0) {
        f.m /= p.value();
        ++f.s;
    }
    return f;
}

std::optional<long> root_mod_p(long c, long q, Prime p) {
    const long pv = p.value();
    c %= pv;
    if (c < 0) c += pv;
    for (long r = 1; r < pv; ++r) {
        if (powmod_long(r, q, pv) == c) return r;
    }
    return std::nullopt;
}

int digits_needed(Prime p, long q) {
    const auto f = ExponentFactorization::of(q, p);
    if (f.s == 0) return 1;
    return p.value() == 2 ? f.s + 2 : f.s + 1;
}

SolveVerdict solve_coprime(const PadicNumber& a, long q, SolveOptions opts) {
    require_nonzero(a);
    const Prime p = a.prime();
    if (q <= 2 || std::gcd(q, p.value()) != 1) {
        throw DomainError("solve_coprime needs q > 2 prime to p");
    }
    const long v = a.valuation();
    if (v % q != 0) {
        return fail(CriterionTag::thm2, FailureKind::valuation_divisibility, divides_text(q), 0);
    }
    const long a0 = a.digit(0);
    if (!residue_test(a0, q, p)) {
        return fail(CriterionTag::thm2, FailureKind::residue_condition,
                    "a_0 = " + std::to_string(a0) + " is a " + std::to_string(q) +
                        "-th power residue mod " + std::to_string(p.value()),
                    1);
    }
    if (!opts.construct_root) return success(CriterionTag::thm2, std::nullopt, 1);
    const long x0 = *root_mod_p(a0, q, p);
    const int n = a.precision();
    return success(CriterionTag::thm2,
                   PadicNumber::from_unit(p, v / q, lift_coprime_root(a.unit(), q, x0, p, n), n), n);
}

SolveVerdict is_square(const PadicNumber& a, SolveOptions opts) {
    require_nonzero(a);
    const Prime p = a.prime();
    const long v = a.valuation();
    if (v % 2 != 0) {
        return fail(CriterionTag::thm1, FailureKind::valuation_divisibility, divides_text(2), 0);
    }
    if (p.value() == 2) {
        require_digits(a, 3);
        const int n = opts.construct_root ? a.precision() : 3;
        const auto stage = pth_root_stage(a.unit(), p, n);
        if (!stage.ok) {
            return fail(CriterionTag::thm1, FailureKind::digit_condition, "a_1 = a_2 = 0", 3);
        }
        if (!opts.construct_root) return success(CriterionTag::thm1, std::nullopt, 3);
        return success(CriterionTag::thm1, PadicNumber::from_unit(p, v / 2, stage.root, n - 1), n);
    }
    const long a0 = a.digit(0);
    if (!residue_test(a0, 2, p)) {
        return fail(CriterionTag::thm1, FailureKind::residue_condition,
                    "a_0 = " + std::to_string(a0) + " is a quadratic residue mod " +
                        std::to_string(p.value()),
                    1);
    }
    if (!opts.construct_root) return success(CriterionTag::thm1, std::nullopt, 1);
    const long x0 = *root_mod_p(a0, 2, p);
    const int n = a.precision();
    return success(CriterionTag::thm1,
                   PadicNumber::from_unit(p, v / 2, lift_coprime_root(a.unit(), 2, x0, p, n), n), n);
}

SolveVerdict solve_mp(const PadicNumber& a, long m, SolveOptions opts) {
    require_nonzero(a);
    const Prime p = a.prime();
    const long pv = p.value();
    if (m < 1 || std::gcd(m, pv) != 1) throw DomainError("solve_mp needs m >= 1 prime to p");
    const CriterionTag tag =
        m == 1 ? (pv == 2 ? CriterionTag::thm1 : CriterionTag::thm3) : CriterionTag::thm4;
    const long q = m * pv;
    const long v = a.valuation();
    if (v % q != 0) {
        return fail(tag, FailureKind::valuation_divisibility, divides_text(q), 0);
    }
    const int need = digits_needed(p, q);
    require_digits(a, need);
    const long a0 = a.digit(0);
    if (m > 1 && !residue_test(a0, m, p)) {
        return fail(tag, FailureKind::residue_condition,
                    "a_0 = " + std::to_string(a0) + " is a " + std::to_string(m) +
                        "-th power residue mod " + std::to_string(pv),
                    1);
    }
    const int n = opts.construct_root ? a.precision() : need;
    mpz_class y = mod(a.unit(), prime_power(p, n));
    if (m > 1) y = lift_coprime_root(y, m, *root_mod_p(a0, m, p), p, n);
    const auto stage = pth_root_stage(y, p, n);
    if (!stage.ok) {
        return fail(tag, FailureKind::digit_condition, pv == 2 ? "a_1 = a_2 = 0" : stage.failed,
                    need);
    }
    if (!opts.construct_root) return success(tag, std::nullopt, need);
    return success(tag, PadicNumber::from_unit(p, v / q, stage.root, n - 1), n);
}

SolveVerdict solve_p(const PadicNumber& a, SolveOptions opts) { return solve_mp(a, 1, opts); }

SolveVerdict solve(const PadicNumber& a, long q, SolveOptions opts) {
    require_nonzero(a);
    const Prime p = a.prime();
    const auto f = ExponentFactorization::of(q, p);
    if (q == 1) {
        std::optional<PadicNumber> root;
        if (opts.construct_root) root = a;
        return success(CriterionTag::general_mps, root, a.precision());
    }
    if (q == 2) return is_square(a, opts);
    if (f.s == 0) return solve_coprime(a, q, opts);
    if (f.s == 1) return solve_mp(a, f.m, opts);

    const long pv = p.value();
    const long v = a.valuation();
    if (v % q != 0) {
        return fail(CriterionTag::general_mps, FailureKind::valuation_divisibility,
                    divides_text(q), 0);
    }
    const int need = digits_needed(p, q);
    require_digits(a, need);
    if (opts.construct_root && a.precision() <= f.s + 2) {
        throw PrecisionError(std::to_string(f.s) + " root stages need more than " +
                             std::to_string(f.s + 2) + " digits");
    }
    const long a0 = a.digit(0);
    if (f.m > 1 && !residue_test(a0, f.m, p)) {
        return fail(CriterionTag::general_mps, FailureKind::residue_condition,
                    "a_0 = " + std::to_string(a0) + " is a " + std::to_string(f.m) +
                        "-th power residue mod " + std::to_string(pv),
                    1);
    }
    int n = opts.construct_root ? a.precision() : need;
    mpz_class y = mod(a.unit(), prime_power(p, n));
    if (f.m > 1) y = lift_coprime_root(y, f.m, *root_mod_p(a0, f.m, p), p, n);
    for (int stage_index = 1; stage_index <= f.s; ++stage_index) {
        const auto stage = pth_root_stage(y, p, n);
        if (!stage.ok) {
            std::ostringstream os;
            if (pv == 2) {
                os << "a ≡ 1 (mod 2^" << (f.s + 2) << ")";
            } else {
                os << "a ≡ ω(a_0) (mod " << pv << "^" << (f.s + 1) << ") [stage " << stage_index
                   << ": " << stage.failed << "]";
            }
            return fail(CriterionTag::general_mps, FailureKind::digit_condition, os.str(), need);
        }
        y = stage.root;
        --n;
    }
    if (!opts.construct_root) return success(CriterionTag::general_mps, std::nullopt, need);
    return success(CriterionTag::general_mps, PadicNumber::from_unit(p, v / q, y, n), n);
}

bool is_qth_power(const PadicNumber& a, long q) {
    return solve(a, q, SolveOptions{.construct_root = false}).solvable;
}

int part_number(PropositionPart part) { return static_cast<int>(part); }

std::vector<PropositionPart> applicable_parts(Prime p, long q) {
    const long pv = p.value();
    std::vector<PropositionPart> parts;
    if (pv == 2 && q == 6) parts.push_back(PropositionPart::six_over_q2);
    if (pv >= 3 && q == (pv - 1) * pv) parts.push_back(PropositionPart::p_minus_one_times_p);
    if (q == pv * pv) parts.push_back(PropositionPart::p_squared);
    if (pv >= 3 && q == pv * pv * pv) parts.push_back(PropositionPart::p_cubed);
    if (pv == 2 && q >= 2 && (q & (q - 1)) == 0) parts.push_back(PropositionPart::two_power);
    return parts;
}

SolveVerdict fast_criterion_part(const PadicNumber& a, long q, PropositionPart part) {
    require_nonzero(a);
    const Prime p = a.prime();
    const long pv = p.value();
    const auto parts = applicable_parts(p, q);
    if (std::find(parts.begin(), parts.end(), part) == parts.end()) {
        throw DomainError("closed form (" + std::to_string(part_number(part)) +
                          ") does not apply to q=" + std::to_string(q) + " over Q_" +
                          std::to_string(pv));
    }
    constexpr auto tag = CriterionTag::proposition_fastpath;
    if (a.valuation() % q != 0) {
        return fail(tag, FailureKind::valuation_divisibility, divides_text(q), 0);
    }
    auto digit_fail = [&](std::string text, int used) {
        return fail(tag, FailureKind::digit_condition, std::move(text), used);
    };
    // a_0^p == a_0 + a_1 p mod p^2
    auto teichmuller_ok = [&] {
        const mpz_class& m2 = prime_power(p, 2);
        const mpz_class a0 = a.digit(0);
        return powmod(a0, static_cast<unsigned long>(pv), m2) == mod(a.unit(), m2);
    };
    const std::string teich_text = "a_0^" + std::to_string(pv) + " ≡ a_0 + a_1·" +
                                   std::to_string(pv) + " (mod " + std::to_string(pv) + "^2)";

    switch (part) {
        case PropositionPart::six_over_q2:
            require_digits(a, 2);
            if (a.digit(1) != 0) return digit_fail("a_1 = 0", 2);
            return success(tag, std::nullopt, 2);
        case PropositionPart::p_minus_one_times_p:
            require_digits(a, 2);
            if (a.digit(0) != 1) {
                return fail(tag, FailureKind::residue_condition, "a_0 = 1", 1);
            }
            if (a.digit(1) != 0) return digit_fail("a_1 = 0", 2);
            return success(tag, std::nullopt, 2);
        case PropositionPart::p_squared:
        case PropositionPart::p_cubed: {
            const int used = part == PropositionPart::p_squared ? 3 : 4;
            require_digits(a, used);
            if (!teichmuller_ok()) return digit_fail(teich_text, 2);
            if (a.digit(1) != a.digit(2)) return digit_fail("a_1 = a_2", 3);
            if (part == PropositionPart::p_cubed) {
                // a_1 == a_3 - ((p-1)/2) a_0^(p-2) a_1^2 mod p
                const long a0 = a.digit(0);
                const long a1 = a.digit(1);
                const long a3 = a.digit(3);
                const long rhs = a3 - ((pv - 1) / 2) * powmod_long(a0, pv - 2, pv) % pv * (a1 * a1 % pv);
                if (((a1 - rhs) % pv + pv) % pv != 0) {
                    return digit_fail("a_1 ≡ a_3 - ((p-1)/2)·a_0^(p-2)·a_1^2 (mod " +
                                          std::to_string(pv) + ")",
                                      4);
                }
            }
            return success(tag, std::nullopt, used);
        }
        case PropositionPart::two_power: {
            int k = 0;
            for (long t = q; t > 1; t >>= 1) ++k;
            require_digits(a, k + 2);
            for (int i = 1; i <= k + 1; ++i) {
                if (a.digit(i) != 0) {
                    return digit_fail("a_1 = ... = a_" + std::to_string(k + 1) + " = 0", k + 2);
                }
            }
            return success(tag, std::nullopt, k + 2);
        }
    }
    throw DomainError("unknown closed form");
}

std::optional<SolveVerdict> fast_criterion(const PadicNumber& a, long q) {
    const auto parts = applicable_parts(a.prime(), q);
    if (parts.empty()) return std::nullopt;
    static constexpr PropositionPart preference[] = {
        PropositionPart::six_over_q2, PropositionPart::two_power,
        PropositionPart::p_minus_one_times_p, PropositionPart::p_squared,
        PropositionPart::p_cubed};
    for (const auto part : preference) {
        if (std::find(parts.begin(), parts.end(), part) != parts.end()) {
            return fast_criterion_part(a, q, part);
        }
    }
    return std::nullopt;
}

}  // namespace padix
