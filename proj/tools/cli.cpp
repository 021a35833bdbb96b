#include "padix/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

#include "padix/conformance.hpp"

namespace padix::cli {

namespace {

struct Options {
    std::string prime;
    long exponent = 0;
    int stages = 0;
    std::string value;
    int precision = PrecisionContext::default_precision;
    bool json = false;
    std::optional<int> validate_depth;
    std::string algebra_class;
    std::string params;
    bool reduced = false;
    std::optional<std::uint64_t> budget;

    OracleBudget oracle_budget() const {
        auto b = OracleBudget::from_env();
        if (budget) b.max_residues = *budget;
        return b;
    }
    Prime concrete_prime() const {
        if (prime.empty()) throw DomainError("--prime is required");
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(prime, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != prime.size()) throw DomainError("--prime must be a prime number, got '" + prime + "'");
        return Prime(v);
    }
    PrecisionContext context() const { return PrecisionContext(concrete_prime(), precision); }
};

std::vector<mpq_class> parse_csv(const std::string& text) {
    std::vector<mpq_class> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        out.push_back(parse_rational(b == std::string::npos ? "" : item.substr(b, e - b + 1)));
    }
    return out;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

// Compact form without the run of trailing zero digits, plus the error term.
std::string display(const PadicNumber& x) {
    if (x.is_zero()) return "0";
    if (x.is_exhausted()) return "O(" + std::to_string(x.prime().value()) + "^" + std::to_string(x.absolute_precision()) + ")";
    auto digits = x.digits();
    while (digits.size() > 1 && digits.back() == 0) digits.pop_back();
    std::string s = std::to_string(x.valuation()) + "|";
    for (std::size_t i = 0; i < digits.size(); ++i) s += (i ? "," : "") + std::to_string(digits[i]);
    return s + " + O(" + std::to_string(x.prime().value()) + "^" + std::to_string(x.absolute_precision()) + ")";
}

int cmd_solve(const Options& o, std::ostream& out) {
    const auto ctx = o.context();
    const auto a = parse_value(o.value, ctx);
    const auto v = solve(a, o.exponent);
    if (o.json) {
        Json j = to_json(v);
        j["p"] = ctx.prime.value();
        j["q"] = o.exponent;
        j["value"] = to_compact(a);
        out << j.dump(2) << '\n';
    } else {
        out << "x^" << o.exponent << " = " << o.value << " over Q_" << ctx.prime.value() << '\n';
        out << "solvable: " << yes(v.solvable) << " (" << to_string(v.criterion) << ")\n";
        if (v.root) {
            out << "root: " << display(*v.root) << '\n';
        }
        if (v.failure) out << "failed: " << to_string(v.failure->kind) << ": " << v.failure->condition << '\n';
        out << "effective precision: " << v.effective_precision << '\n';
    }
    return v.solvable ? ok : negative;
}

int cmd_criterion(const Options& o, std::ostream& out) {
    std::optional<Prime> p;
    if (!o.prime.empty() && o.prime != "p") p = o.concrete_prime();
    const auto c = emit_criterion(p, o.stages);
    std::optional<CriterionCheck> check;
    if (!o.value.empty()) {
        if (!p) throw DomainError("--value needs a concrete --prime");
        check = c.evaluate(parse_value(o.value, o.context()));
    }
    if (o.json) {
        Json j = to_json(c);
        if (check) j["evaluation"] = {{"value", o.value}, {"satisfied", check->satisfied}, {"failed_line", check->failed_line}};
        out << j.dump(2) << '\n';
    } else {
        out << "x^(p^" << o.stages << ") = a" << (p ? " over Q_" + std::to_string(p->value()) : "") << ":\n";
        out << c.to_unicode();
        if (check) {
            out << o.value << ": " << (check->satisfied ? "satisfied" : "fails line " + std::to_string(check->failed_line))
                << '\n';
        }
    }
    return !check || check->satisfied ? ok : negative;
}

void print_set(const RepresentativeSet& s, std::ostream& out) {
    out << to_string(s.provenance) << "  " << s.layout << '\n' << "  ";
    for (std::size_t i = 0; i < s.elements.size(); ++i) out << (i ? " " : "") << s.elements[i];
    out << "  (" << s.elements.size() << " elements)\n";
    if (!s.validation) return;
    const auto& v = *s.validation;
    out << "  depth " << v.checked_depth << ": sound " << yes(v.sound) << ", complete " << yes(v.complete)
        << ", minimal " << yes(v.minimal) << '\n';
    if (!v.uncovered.empty()) {
        out << "  uncovered (valuation, unit):";
        for (const auto& [r, u] : v.uncovered) out << " (" << r << ", " << u << ")";
        out << '\n';
    }
    if (!v.duplicates.empty()) {
        out << "  same class:";
        for (const auto& [a, b] : v.duplicates) out << " " << a << "~" << b;
        out << '\n';
    }
    if (!v.powers.empty()) {
        out << "  q-th powers:";
        for (const auto& x : v.powers) out << " " << x;
        out << '\n';
    }
}

int cmd_epsilon(const Options& o, std::ostream& out) {
    const Prime p = o.concrete_prime();
    const long q = o.exponent;
    const auto budget = o.oracle_budget();
    const int depth = std::max(o.validate_depth.value_or(0), coset_depth(p, q));
    const auto built = construct_set(p, q, depth, budget);
    std::vector<RepresentativeSet> sets;
    if (o.reduced) {
        if ((p.value() == 3 && q == 3) || (p.value() == 5 && q == 5)) sets.push_back(build_reduced_set(p, q));
        sets.push_back(built.minimal);
    } else {
        sets.push_back(build_set(p, q));
        sets.push_back(built.constructed);
        sets.push_back(built.minimal);
    }
    if (o.validate_depth) {
        for (auto& s : sets) s = validate(std::move(s), *o.validate_depth, budget);
    }
    if (o.json) {
        Json j = {{"p", p.value()}, {"q", q}, {"coset_index", coset_index(p, q, budget)}, {"sets", Json::array()}};
        for (const auto& s : sets) j["sets"].push_back(to_json(s));
        out << j.dump(2) << '\n';
    } else {
        out << "E_{" << p.value() << "," << q << "}: [U : U^" << q << "] = " << coset_index(p, q, budget) << '\n';
        for (const auto& s : sets) print_set(s, out);
    }
    return ok;
}

int cmd_decompose(const Options& o, std::ostream& out) {
    const auto ctx = o.context();
    const auto x = parse_value(o.value, ctx);
    const auto& set = o.reduced ? build_reduced_set(ctx.prime, o.exponent) : minimal_set(ctx.prime, o.exponent);
    Decomposition d{0, PadicNumber::zero(ctx.prime)};
    try {
        d = decompose(x, o.exponent, set);
    } catch (const DomainError& e) {
        if (std::string_view(e.what()).starts_with("incomplete set")) {
            if (o.json) {
                out << Json{{"decomposed", false}, {"set", std::string(to_string(set.provenance))}, {"error", e.what()}}
                           .dump(2)
                    << '\n';
            } else {
                out << "not decomposable over the " << to_string(set.provenance) << " set: " << e.what() << '\n';
            }
            return negative;
        }
        throw;
    }
    if (o.json) {
        out << Json{{"decomposed", true},
                    {"set", std::string(to_string(set.provenance))},
                    {"epsilon", d.epsilon.get_str()},
                    {"root", to_compact(d.root)}}
                   .dump(2)
            << '\n';
    } else {
        out << o.value << " = " << d.epsilon << " * y^" << o.exponent << " over Q_" << ctx.prime.value() << " ("
            << to_string(set.provenance) << " set)\n";
        out << "y = " << display(d.root) << '\n';
    }
    return ok;
}

int class_number(const std::string& tag) {
    if (tag == "I" || tag == "1") return 1;
    if (tag == "II" || tag == "2") return 2;
    if (tag == "III" || tag == "3") return 3;
    throw DomainError("--class must be I, II or III");
}

Class3Params<mpq_class> class3_from(const std::vector<mpq_class>& v) {
    if (v.size() != 6) throw DomainError("class III takes 6 parameters: θ1,θ2,θ3,α,β,δ");
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

int cmd_algebra_check(const Options& o, std::ostream& out) {
    const Prime p = o.concrete_prime();
    const int cls = class_number(o.algebra_class.empty() ? "III" : o.algebra_class);
    const auto v = parse_csv(o.params);
    const auto tensor = [&] {
        if (cls == 3) return class3_tensor(Field<mpq_class>{p}, class3_from(v));
        if (v.size() != 4) throw DomainError("classes I and II take 4 parameters");
        if (cls == 1) return class1_tensor(p, {v[0], v[1], v[2], v[3]});
        return class2_tensor(p, {v[0], v[1], v[2], v[3]});
    }();
    const auto defect = leibniz_defect(tensor);
    const auto dims = lower_central_dims(tensor);
    const bool good = defect == 0 && is_filiform(dims);
    if (o.json) {
        Json params = Json::array();
        for (const auto& x : v) params.push_back(rational_text(x));
        out << Json{{"class", cls},
                    {"p", p.value()},
                    {"params", params},
                    {"leibniz_defect", rational_text(defect)},
                    {"lower_central_dims", dims},
                    {"filiform", is_filiform(dims)},
                    {"tensor", to_json(tensor)}}
                   .dump(2)
            << '\n';
    } else {
        out << "class " << std::string(static_cast<std::size_t>(cls), 'I') << " over Q_" << p.value() << '\n';
        out << "Leibniz defect: " << defect << '\n';
        out << "dim L^1..L^6:";
        for (int d : dims) out << ' ' << d;
        out << "\nfiliform: " << yes(is_filiform(dims)) << '\n';
        for (const auto& [i, j, k, c] : tensor.nonzero()) {
            out << "  [e" << i << ",e" << j << "] += " << c << " e" << k << '\n';
        }
    }
    return good ? ok : negative;
}

int cmd_algebra_normalize(const Options& o, std::ostream& out) {
    if (!o.algebra_class.empty() && class_number(o.algebra_class) != 3) {
        throw DomainError("only class III has a normalizer");
    }
    const auto ctx = o.context();
    const auto k = class3_from(parse_csv(o.params));
    auto lifted = filled<PadicNumber, 6>(PadicNumber::zero(ctx.prime));
    const auto src = k.values();
    for (std::size_t i = 0; i < 6; ++i) lifted[i] = from_rational(src[i], ctx);
    const auto n = normalize_class3(Class3Params<PadicNumber>::from_values(lifted), ctx);
    if (o.json) {
        out << to_json(n).dump(2) << '\n';
    } else if (!n.case_number) {
        out << "not covered by Cases 1-11\n";
    } else {
        const char* names[] = {"θ1", "θ2", "θ3", "α", "β", "δ"};
        out << "case " << *n.case_number << '\n';
        const auto v = n.canonical.values();
        for (std::size_t i = 0; i < 6; ++i) out << "  " << names[i] << "' = " << display(v[i]) << '\n';
        for (const auto& e : n.extractions) {
            out << "  " << e.symbol << " = " << e.representative << " (q = " << e.exponent << ")\n";
        }
        out << "witness A:";
        for (const auto& x : n.witness.a) out << "\n  " << display(x);
        out << "\nwitness B:";
        for (const auto& x : n.witness.b) out << "\n  " << display(x);
        out << '\n';
    }
    return n.case_number ? ok : negative;
}

int cmd_selftest(const Options& o, std::ostream& out) {
    Json rows = Json::array();
    const auto results = run_acceptance(o.oracle_budget(), [&](const AcceptanceResult& r) {
        if (!o.json) out << format_line(r) << std::endl;
    });
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        rows.push_back({{"criterion", r.number}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    }
    if (o.json) out << Json{{"passed", all}, {"criteria", rows}}.dump(2) << '\n';
    return all ? ok : negative;
}

int cmd_report(const Options& o, std::ostream& out) {
    out << conformance_report(o.oracle_budget()).dump(2) << '\n';
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"p-adic power equations, representative sets and filiform Leibniz algebras", "padix"};
    app.require_subcommand(1);
    Options o;

    const auto common = [&](CLI::App* c) {
        c->add_flag("--json", o.json, "machine-readable output");
        c->add_option("--budget", o.budget, "cap on residues enumerated by oracles (overrides PADIX_BUDGET)")
            ->check(CLI::PositiveNumber);
    };
    const auto prime = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--prime", o.prime, "the prime p");
        if (required) opt->required();
    };
    const auto prec = [&](CLI::App* c) {
        c->add_option("--prec", o.precision, "working precision in digits")->capture_default_str();
    };

    auto* solve_cmd = app.add_subcommand("solve", "decide x^q = a and extract a root");
    prime(solve_cmd, true);
    solve_cmd->add_option("--exp", o.exponent, "exponent q")->required()->check(CLI::PositiveNumber);
    solve_cmd->add_option("--value", o.value, "a as n, n/d or v|d0,d1,...")->required();
    prec(solve_cmd);
    common(solve_cmd);

    auto* crit_cmd = app.add_subcommand("criterion", "solvability conditions for x^(p^m) = a");
    prime(crit_cmd, false);
    crit_cmd->add_option("--m", o.stages, "stages m")->required()->check(CLI::PositiveNumber);
    crit_cmd->add_option("--value", o.value, "evaluate the conditions on this value");
    prec(crit_cmd);
    common(crit_cmd);

    auto* eps_cmd = app.add_subcommand("epsilon", "representative sets E_{p,q}");
    prime(eps_cmd, true);
    eps_cmd->add_option("--exp", o.exponent, "exponent q")->required()->check(CLI::Range(2, 64));
    eps_cmd->add_option("--validate", o.validate_depth, "check soundness and completeness mod p^K")
        ->check(CLI::PositiveNumber);
    eps_cmd->add_flag("--reduced", o.reduced, "the shortened published table and the minimal set only");
    common(eps_cmd);

    auto* dec_cmd = app.add_subcommand("decompose", "write x = ε y^q");
    prime(dec_cmd, true);
    dec_cmd->add_option("--exp", o.exponent, "exponent q")->required()->check(CLI::Range(2, 64));
    dec_cmd->add_option("--value", o.value, "x")->required();
    dec_cmd->add_flag("--reduced", o.reduced, "use the shortened published table instead of the minimal set");
    prec(dec_cmd);
    common(dec_cmd);

    auto* check_cmd = app.add_subcommand("algebra-check", "Leibniz identity and lower central series");
    prime(check_cmd, true);
    check_cmd->add_option("--class", o.algebra_class, "I, II or III")->required();
    check_cmd->add_option("--params", o.params, "comma separated rationals")->required();
    common(check_cmd);

    auto* norm_cmd = app.add_subcommand("algebra-normalize", "normal form of a class III algebra");
    prime(norm_cmd, true);
    norm_cmd->add_option("--class", o.algebra_class, "III");
    norm_cmd->add_option("--params", o.params, "θ1,θ2,θ3,α,β,δ")->required();
    prec(norm_cmd);
    common(norm_cmd);

    auto* self_cmd = app.add_subcommand("selftest", "run the acceptance criteria");
    common(self_cmd);
    auto* report_cmd = app.add_subcommand("report", "conformance report as JSON");
    common(report_cmd);

    std::vector<std::string> argv_storage{"padix"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(o, out);
        if (crit_cmd->parsed()) return cmd_criterion(o, out);
        if (eps_cmd->parsed()) return cmd_epsilon(o, out);
        if (dec_cmd->parsed()) return cmd_decompose(o, out);
        if (check_cmd->parsed()) return cmd_algebra_check(o, out);
        if (norm_cmd->parsed()) return cmd_algebra_normalize(o, out);
        if (self_cmd->parsed()) return cmd_selftest(o, out);
        if (report_cmd->parsed()) return cmd_report(o, out);
    } catch (const PrecisionError& e) {
        err << "precision: " << e.what() << '\n';
        return precision;
    } catch (const BudgetError& e) {
        err << "budget: " << e.what() << '\n';
        return precision;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

}  // namespace padix::cli
