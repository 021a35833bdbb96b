#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padix/padic.hpp"

namespace padix {

/// Which result decided a verdict.
enum class CriterionTag { thm1, thm2, thm3, thm4, general_mps, proposition_fastpath, oracle };

enum class FailureKind { valuation_divisibility, residue_condition, digit_condition };

std::string_view to_string(CriterionTag tag);
std::string_view to_string(FailureKind kind);

struct FailureReason {
    FailureKind kind;
    std::string condition;  // the congruence that failed, human readable
};

/// Outcome of deciding x^q = a.  solvable <=> root present (when roots were
/// requested) and failure present <=> !solvable.
struct SolveVerdict {
    bool solvable = false;
    std::optional<PadicNumber> root;
    std::optional<FailureReason> failure;
    CriterionTag criterion = CriterionTag::general_mps;
    int effective_precision = 0;
};

/// q = m * p^s with gcd(m, p) = 1.
struct ExponentFactorization {
    long m;
    int s;

    static ExponentFactorization of(long q, Prime p);
};

struct SolveOptions {
    /// Verdict only; skips the lifting of digits beyond what the verdict needs.
    bool construct_root = true;
};

/// x^2 = a.
SolveVerdict is_square(const PadicNumber& a, SolveOptions opts = {});
/// x^q = a for q > 2 prime to p.
SolveVerdict solve_coprime(const PadicNumber& a, long q, SolveOptions opts = {});
/// x^p = a.
SolveVerdict solve_p(const PadicNumber& a, SolveOptions opts = {});
/// x^(m p) = a with gcd(m, p) = 1.
SolveVerdict solve_mp(const PadicNumber& a, long m, SolveOptions opts = {});
/// x^q = a for any q >= 1.
SolveVerdict solve(const PadicNumber& a, long q, SolveOptions opts = {});

/// Shorthand for solve(a, q, {.construct_root = false}).solvable.
bool is_qth_power(const PadicNumber& a, long q);

/// Unit digits the verdict for x^q = a depends on (a_0 .. a_{n-1}).
int digits_needed(Prime p, long q);

/// Closed-form solvability conditions for special exponents.
enum class PropositionPart {
    six_over_q2 = 1,     // x^6 over Q_2
    p_minus_one_times_p,  // x^((p-1)p), p >= 3
    p_squared,            // x^(p^2)
    p_cubed,              // x^(p^3), p odd
    two_power,            // x^(2^k) over Q_2
};

int part_number(PropositionPart part);
/// Every closed form whose hypotheses match (p, q), in the order (1)..(5).
std::vector<PropositionPart> applicable_parts(Prime p, long q);
/// The closed-form conditions of one part, as printed; no root is built.
SolveVerdict fast_criterion_part(const PadicNumber& a, long q, PropositionPart part);
/// The preferred closed form for (p, q), or nullopt if there is none
/// (callers then fall back to solve).  Over Q_2, part (5) wins over (3).
std::optional<SolveVerdict> fast_criterion(const PadicNumber& a, long q);

/// Smallest r in [1, p) with r^q == c mod p, if any.
std::optional<long> root_mod_p(long c, long q, Prime p);

}  // namespace padix
