#pragma once

#include <cstdint>
#include <vector>

#include "padix/padic.hpp"

namespace padix {

/// Cap on exhaustive residue enumerations.
struct OracleBudget {
    static constexpr std::uint64_t default_max_residues = 10'000'000;

    std::uint64_t max_residues = default_max_residues;

    /// PADIX_BUDGET when set to a positive integer, else the default.
    static OracleBudget from_env();
    void check(std::uint64_t count, const char* what) const;
};

/// All u mod p^K (p not dividing u) with u^q == unit(a) mod p^(K+s), s = v_p(q).
/// Empty when q does not divide the valuation of a.
std::vector<std::uint64_t> brute_force_root(const PadicNumber& a, long q, int depth,
                                            const OracleBudget& budget = OracleBudget::from_env());

/// All u mod p^K (p not dividing u) with u^q == unit(a) mod p^K.
std::vector<std::uint64_t> power_residue_roots(const PadicNumber& a, long q, int depth,
                                               const OracleBudget& budget = OracleBudget::from_env());

/// Nonempty root set at depth K and at depth K+1.
bool stabilized_verdict(const PadicNumber& a, long q, int depth,
                        const OracleBudget& budget = OracleBudget::from_env());

/**
 * The q-th powers of the units, tabulated once for residue sweeps.
 *
 * count(r) is the number of units u mod p^K with u^q == r mod p^(K+s);
 * the second table marks the q-th powers of units mod p^(K+1) taken
 * mod p^(K+1+s).  Both are enumerated, never derived from a criterion.
 */
class PowerTable {
public:
    PowerTable(Prime p, long q, int depth, const OracleBudget& budget = OracleBudget::from_env());

    Prime prime() const { return prime_; }
    long exponent() const { return q_; }
    int depth() const { return depth_; }
    int exponent_valuation() const { return s_; }

    /// Roots mod p^K of u^q == unit mod p^(K+s).
    std::uint32_t root_count(const mpz_class& unit) const;
    /// Nonempty at depth K and at depth K+1; the valuation test is the caller's.
    bool stabilized(const mpz_class& unit) const;
    /// Full verdict for a nonzero a: q | valuation and stabilized unit.
    bool verdict(const PadicNumber& a) const;

private:
    Prime prime_;
    long q_;
    int depth_;
    int s_;
    std::uint64_t modulus_low_;
    std::uint64_t modulus_high_;
    std::vector<std::uint32_t> counts_;
    std::vector<bool> high_;
};

}  // namespace padix
