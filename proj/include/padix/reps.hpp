#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padix/oracle.hpp"
#include "padix/padic.hpp"

namespace padix {

enum class Provenance { paper_claimed, paper_reduced, constructed, reduced_minimal };

std::string_view to_string(Provenance p);

/// Depth-K exhaustive check results.
struct SetValidation {
    bool sound = false;     // no element other than 1 is a q-th power
    bool complete = false;  // every unit residue in every valuation class is covered
    bool minimal = false;   // elements lie in pairwise distinct classes
    int checked_depth = 0;
    /// Uncovered classes as (valuation r, smallest unit residue).
    std::vector<std::pair<int, long>> uncovered;
    /// Pairs of elements in the same class.
    std::vector<std::pair<mpz_class, mpz_class>> duplicates;
    /// Elements (other than 1) that are q-th powers.
    std::vector<mpz_class> powers;
};

/**
 * A finite set E with every nonzero x in Q_p equal to e * y^q for some e in E.
 * Elements are positive integers kept in canonical order: ascending
 * valuation, then ascending value.
 */
struct RepresentativeSet {
    Prime prime;
    long exponent;
    Provenance provenance;
    std::vector<mpz_class> elements;
    std::string layout;  // human form of the table
    std::optional<SetValidation> validation;
};

/// p-adic valuation of a nonzero integer.
long valuation_of(const mpz_class& n, Prime p);

/// Smallest positive integer unit that is not a q-th power, or nullopt if
/// every unit is one.
std::optional<long> find_nonpower_unit(Prime p, long q);

/// Digits of a unit that decide whether it is a q-th power.
int coset_depth(Prime p, long q);

/// [U : U^q] by enumerating u^q mod p^d for d = coset_depth.
long coset_index(Prime p, long q, const OracleBudget& budget = OracleBudget::from_env());

/// The published table for q in 2..6.
RepresentativeSet build_set(Prime p, long q);
/// The published shortened tables, available for (3, 3) and (5, 5).
RepresentativeSet build_reduced_set(Prime p, long q);

struct ConstructedSets {
    RepresentativeSet constructed;  // {p^r} x ({1} u non-q-th-power residues)
    RepresentativeSet minimal;      // smallest element of every class
};

/// Builds both sets from residue enumeration; depth must reach coset_depth.
ConstructedSets construct_set(Prime p, long q, int depth,
                              const OracleBudget& budget = OracleBudget::from_env());

/// Fills the validation record by sweeping unit residues mod p^depth and
/// valuations 0..q-1.
RepresentativeSet validate(RepresentativeSet set, int depth,
                           const OracleBudget& budget = OracleBudget::from_env());

struct Decomposition {
    mpz_class epsilon;
    PadicNumber root;
};

/// The first e in canonical order with x / e a q-th power, and its root.
/// Throws DomainError naming the class of x when no element works.
Decomposition decompose(const PadicNumber& x, long q, const RepresentativeSet& set);

/// {1} together with the units i + j p (0 < i < p, 0 <= j < p) that fail
/// i^p == i + j p mod p^2.
std::vector<mpz_class> pth_power_complement_units(Prime p);

/// Both unit lists hit the same classes of U / U^q.
bool same_unit_classes(Prime p, long q, const std::vector<mpz_class>& a,
                       const std::vector<mpz_class>& b);

}  // namespace padix
