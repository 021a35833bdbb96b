#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "padix/leibniz.hpp"
#include "padix/reps.hpp"

namespace padix {

/// The smallest representative of every class of x^q (cached per (p, q)).
const RepresentativeSet& minimal_set(Prime p, long q);

/// One x = e * y^q split made while normalizing.
struct Extraction {
    std::string symbol;  // "ε" or "ν"
    long exponent;
    mpz_class representative;
    PadicNumber root;
};

struct Normalization {
    std::optional<int> case_number;  // nullopt: no printed case applies
    Class3Params<PadicNumber> canonical;
    BasisChange<PadicNumber> witness;
    std::vector<Extraction> extractions;
};

/**
 * Brings L_3(theta1, theta2, theta3, alpha, beta, delta) to the normal form
 * of the first case (1..11) whose guard it satisfies.  The witness has
 * B_1 = 0 and realizes the canonical tuple under change_of_basis.
 * delta must be 0 or 1.  Inputs outside every case come back unchanged with
 * no case number.
 */
Normalization normalize_class3(const Class3Params<PadicNumber>& params, const PrecisionContext& ctx);

/// delta' in {0, 1}: the tuple is in the class III table.
bool in_class_table(const Class3Params<PadicNumber>& params);

/// One instantiated row of the six-dimensional classification list.
struct CatalogRow {
    int algebra_class;  // 1, 2 or 3
    std::string label;  // the row as printed, e.g. "L3(α,β,ε,1,0,0)"
    std::vector<mpq_class> params;
    std::vector<std::pair<std::string, mpq_class>> bindings;  // α, β, ε, ν, ... as used
    std::string source;  // where the set-valued symbol came from, empty if none
    std::optional<int> case_label;  // class III rows produced by a normalizer case
};

/// Free α, β range over this set.
std::vector<mpq_class> probe_values(Prime p);

std::vector<CatalogRow> theorem20_catalog(Prime p);
Tensor<mpq_class> row_tensor(Prime p, const CatalogRow& row);

}  // namespace padix
