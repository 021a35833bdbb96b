#include "padix/serialize.hpp"

namespace padix {

std::string rational_text(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
        throw DomainError("not a rational: '" + text + "'");
    }
    q.canonicalize();
    return q;
}

namespace {

template <class E, std::size_t N>
E enum_from(const std::string& text, const std::array<E, N>& all) {
    for (E e : all) {
        if (to_string(e) == text) return e;
    }
    throw DomainError("unknown tag: " + text);
}

constexpr std::array all_tags{CriterionTag::thm1,        CriterionTag::thm2,
                              CriterionTag::thm3,        CriterionTag::thm4,
                              CriterionTag::general_mps, CriterionTag::proposition_fastpath,
                              CriterionTag::oracle};
constexpr std::array all_kinds{FailureKind::valuation_divisibility, FailureKind::residue_condition,
                               FailureKind::digit_condition};
constexpr std::array all_provenances{Provenance::paper_claimed, Provenance::paper_reduced,
                                     Provenance::constructed, Provenance::reduced_minimal};

Json digit_expression(const DigitPolynomial& poly) {
    Json terms = Json::array();
    for (const auto& [monomial, coeff] : poly.terms()) {
        Json c = Json::array();
        for (const auto& x : coeff.coefficients()) c.push_back(rational_text(x));
        Json powers = Json::array();
        for (const auto& [digit, e] : monomial) {
            powers.push_back({{"digit", digit}, {"per_p", e.per_p}, {"constant", e.constant}});
        }
        terms.push_back({{"coefficient", c}, {"powers", powers}});
    }
    return terms;
}

DigitPolynomial digit_expression_from(const Json& terms) {
    DigitPolynomial out;
    for (const auto& t : terms) {
        PrimePolynomial coeff;
        PrimePolynomial power(1);
        for (const auto& c : t.at("coefficient")) {
            coeff = coeff + PrimePolynomial(parse_rational(c.get<std::string>())) * power;
            power = power * PrimePolynomial::p();
        }
        DigitPolynomial term(coeff);
        for (const auto& e : t.at("powers")) {
            term = term * DigitPolynomial::digit(
                              e.at("digit").get<int>(),
                              {e.at("per_p").get<long>(), e.at("constant").get<long>()});
        }
        out = out + term;
    }
    return out;
}

Json mpz_list(const std::vector<mpz_class>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

template <class F>
Json tensor_entries(const Tensor<F>& t, auto&& text) {
    Json out = Json::array();
    for (const auto& [i, j, k, v] : t.nonzero()) out.push_back({i, j, k, text(v)});
    return out;
}

Json padic_list(const std::array<PadicNumber, 6>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_compact(x));
    return out;
}

}  // namespace

Json to_json(const SolveVerdict& v) {
    Json j;
    j["solvable"] = v.solvable;
    j["criterion_used"] = std::string(to_string(v.criterion));
    if (v.failure) {
        j["failure_reason"] = {{"kind", std::string(to_string(v.failure->kind))},
                               {"condition", v.failure->condition}};
    }
    if (v.root) j["root"] = to_compact(*v.root);
    j["effective_precision"] = v.effective_precision;
    return j;
}

SolveVerdict verdict_from_json(const Json& j, const PrecisionContext& ctx) {
    SolveVerdict v;
    v.solvable = j.at("solvable").get<bool>();
    v.criterion = enum_from(j.at("criterion_used").get<std::string>(), all_tags);
    if (j.contains("failure_reason")) {
        const auto& f = j.at("failure_reason");
        v.failure = FailureReason{enum_from(f.at("kind").get<std::string>(), all_kinds),
                                  f.at("condition").get<std::string>()};
    }
    if (j.contains("root")) v.root = parse_value(j.at("root").get<std::string>(), ctx);
    v.effective_precision = j.at("effective_precision").get<int>();
    return v;
}

Json to_json(const Criterion& c) {
    Json j;
    j["divisor"] = c.divisor_text();
    j["prime"] = c.prime ? Json(c.prime->value()) : Json(nullptr);
    j["stages"] = c.stages;
    j["congruences"] = Json::array();
    for (const auto& line : c.congruences) {
        j["congruences"].push_back({{"lhs", digit_expression(line.lhs)},
                                    {"rhs", digit_expression(line.rhs)},
                                    {"modulus", "p^" + std::to_string(line.modulus_exponent)},
                                    {"modulus_exponent", line.modulus_exponent},
                                    {"equality", line.digit_equality},
                                    {"text", line.lhs.to_ascii() + (line.digit_equality ? " = " : " == ") +
                                                 line.rhs.to_ascii()}});
    }
    return j;
}

Criterion criterion_from_json(const Json& j) {
    Criterion c;
    if (!j.at("prime").is_null()) c.prime = Prime(j.at("prime").get<long>());
    c.stages = j.at("stages").get<int>();
    for (const auto& line : j.at("congruences")) {
        c.congruences.push_back({digit_expression_from(line.at("lhs")),
                                 digit_expression_from(line.at("rhs")),
                                 line.at("modulus_exponent").get<int>(),
                                 line.at("equality").get<bool>()});
    }
    return c;
}

Json to_json(const RepresentativeSet& s) {
    Json j;
    j["p"] = s.prime.value();
    j["q"] = s.exponent;
    j["provenance"] = std::string(to_string(s.provenance));
    j["elements"] = mpz_list(s.elements);
    j["layout"] = s.layout;
    if (s.validation) {
        const auto& v = *s.validation;
        Json uncovered = Json::array();
        for (const auto& [r, u] : v.uncovered) uncovered.push_back({{"valuation", r}, {"unit", u}});
        Json duplicates = Json::array();
        for (const auto& [a, b] : v.duplicates) duplicates.push_back({a.get_str(), b.get_str()});
        j["validation"] = {{"sound", v.sound},
                           {"complete", v.complete},
                           {"minimal", v.minimal},
                           {"checked_depth", v.checked_depth},
                           {"uncovered", uncovered},
                           {"same_class_pairs", duplicates},
                           {"powers", mpz_list(v.powers)}};
    }
    return j;
}

RepresentativeSet set_from_json(const Json& j) {
    RepresentativeSet s{Prime(j.at("p").get<long>()), j.at("q").get<long>(),
                        enum_from(j.at("provenance").get<std::string>(), all_provenances),
                        {},
                        j.value("layout", std::string()),
                        std::nullopt};
    for (const auto& e : j.at("elements")) s.elements.emplace_back(e.get<std::string>());
    if (j.contains("validation")) {
        const auto& v = j.at("validation");
        SetValidation out;
        out.sound = v.at("sound").get<bool>();
        out.complete = v.at("complete").get<bool>();
        out.minimal = v.at("minimal").get<bool>();
        out.checked_depth = v.at("checked_depth").get<int>();
        for (const auto& u : v.at("uncovered")) {
            out.uncovered.emplace_back(u.at("valuation").get<int>(), u.at("unit").get<long>());
        }
        for (const auto& d : v.at("same_class_pairs")) {
            out.duplicates.emplace_back(mpz_class(d.at(0).get<std::string>()),
                                        mpz_class(d.at(1).get<std::string>()));
        }
        for (const auto& x : v.at("powers")) out.powers.emplace_back(x.get<std::string>());
        s.validation = out;
    }
    return s;
}

Json to_json(const CatalogRow& row) {
    Json j;
    j["class"] = row.algebra_class;
    j["label"] = row.label;
    j["params"] = Json::array();
    for (const auto& x : row.params) j["params"].push_back(rational_text(x));
    j["bindings"] = Json::object();
    for (const auto& [name, value] : row.bindings) j["bindings"][name] = rational_text(value);
    j["provenance"] = row.source;
    if (row.case_label) j["case_label"] = *row.case_label;
    return j;
}

CatalogRow row_from_json(const Json& j) {
    CatalogRow row;
    row.algebra_class = j.at("class").get<int>();
    row.label = j.at("label").get<std::string>();
    for (const auto& x : j.at("params")) row.params.push_back(parse_rational(x.get<std::string>()));
    for (const auto& [name, value] : j.at("bindings").items()) {
        row.bindings.emplace_back(name, parse_rational(value.get<std::string>()));
    }
    row.source = j.at("provenance").get<std::string>();
    if (j.contains("case_label")) row.case_label = j.at("case_label").get<int>();
    return row;
}

Json to_json(const Tensor<mpq_class>& t) {
    return tensor_entries(t, [](const mpq_class& q) { return rational_text(q); });
}

Json to_json(const Tensor<PadicNumber>& t) {
    return tensor_entries(t, [](const PadicNumber& x) { return to_compact(x); });
}

Tensor<mpq_class> tensor_from_json(const Json& j, Prime p) {
    Tensor<mpq_class> t(Field<mpq_class>{p});
    for (const auto& e : j) {
        t.set(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
              parse_rational(e.at(3).get<std::string>()));
    }
    return t;
}

Json to_json(const Normalization& n) {
    Json j;
    j["case"] = n.case_number ? Json(*n.case_number) : Json("not covered");
    j["canonical"] = padic_list(n.canonical.values());
    j["witness"] = {{"A", padic_list(n.witness.a)}, {"B", padic_list(n.witness.b)}};
    j["extractions"] = Json::array();
    for (const auto& e : n.extractions) {
        j["extractions"].push_back({{"symbol", e.symbol},
                                    {"q", e.exponent},
                                    {"representative", e.representative.get_str()},
                                    {"root", to_compact(e.root)}});
    }
    return j;
}

}  // namespace padix
