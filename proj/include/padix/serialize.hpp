#pragma once

#include <json.hpp>

#include "padix/classify.hpp"
#include "padix/criterion.hpp"
#include "padix/leibniz.hpp"
#include "padix/reps.hpp"
#include "padix/roots.hpp"

namespace padix {

using Json = nlohmann::ordered_json;

/// Rationals travel as "n" or "n/d" strings.
std::string rational_text(const mpq_class& q);
mpq_class parse_rational(const std::string& text);

/// {solvable, criterion_used, failure_reason?, root?, effective_precision}
Json to_json(const SolveVerdict& v);
SolveVerdict verdict_from_json(const Json& j, const PrecisionContext& ctx);

/// {divisor, prime, stages, congruences: [{lhs, rhs, modulus, equality, text}]}.
/// A digit expression is a list of terms
/// {coefficient: [c_0, c_1, ...] (in powers of p), powers: [{digit, per_p, constant}]}.
Json to_json(const Criterion& c);
Criterion criterion_from_json(const Json& j);

/// {p, q, provenance, elements, layout, validation?}
Json to_json(const RepresentativeSet& s);
RepresentativeSet set_from_json(const Json& j);

/// {class, label, params, bindings, provenance, case_label?}
Json to_json(const CatalogRow& row);
CatalogRow row_from_json(const Json& j);

/// Nonzero structure constants as [i, j, k, coefficient].
Json to_json(const Tensor<mpq_class>& t);
Json to_json(const Tensor<PadicNumber>& t);
Tensor<mpq_class> tensor_from_json(const Json& j, Prime p);

/// {case, canonical, witness: {A, B}, extractions}
Json to_json(const Normalization& n);

}  // namespace padix
