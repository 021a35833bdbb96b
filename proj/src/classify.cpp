#include "padix/classify.hpp"

#include <functional>
#include <map>
#include <mutex>

namespace padix {

const RepresentativeSet& minimal_set(Prime p, long q) {
    static std::mutex mutex;
    static std::map<std::pair<long, long>, RepresentativeSet> cache;
    const std::lock_guard lock(mutex);
    auto it = cache.find({p.value(), q});
    if (it == cache.end()) {
        it = cache.emplace(std::pair{p.value(), q}, construct_set(p, q, coset_depth(p, q)).minimal).first;
    }
    return it->second;
}

namespace {

using P = PadicNumber;
using Slot = std::optional<P>;  // forced value of a canonical slot; nullopt = free

struct Witness {
    P a1, a2, b2, b4;
};

class Normalizer {
public:
    Normalizer(const Class3Params<P>& in, const PrecisionContext& ctx)
        : in_(in), f_{ctx}, ctx_(ctx), w_{f_.one(), f_.zero(), f_.one(), f_.zero()} {
        extractions_.reserve(2);
    }

    Normalization run();

private:
    bool z(const P& x) const { return f_.is_zero(x); }
    P c(long n) const { return from_integer(n, ctx_); }
    P sq(const P& x) const { return x * x; }

    const Extraction& extract(const P& value, long q, const char* symbol) {
        const auto d = decompose(value, q, minimal_set(ctx_.prime, q));
        extractions_.push_back(Extraction{symbol, q, d.epsilon, d.root});
        return extractions_.back();
    }

    // B_2 = A_1 + A_2 and the B_4 that cancels beta' when delta = 1
    void delta_one_tail() {
        const P& a = in_.alpha;
        w_.b2 = w_.a1 + w_.a2;
        w_.b4 = w_.b2 * (in_.beta * sq(w_.a1) + c(2) * sq(a) * w_.a1 * w_.a2 + sq(a) * sq(w_.a2)) /
                (c(2) * sq(w_.a1));
    }
    // A_2 = -y beta / (2 alpha^2), B_2 = A_1^2 / alpha
    void alpha_tail(const P& y) {
        w_.a1 = y;
        w_.a2 = -(y * in_.beta) / (c(2) * sq(in_.alpha));
        w_.b2 = sq(y) / in_.alpha;
    }

    int dispatch();

    Class3Params<P> in_;
    Field<P> f_;
    PrecisionContext ctx_;
    Witness w_;
    std::array<Slot, 6> forced_{};
    std::vector<Extraction> extractions_;
};

int Normalizer::dispatch() {
    const P& t1 = in_.theta1;
    const P& t2 = in_.theta2;
    const P& t3 = in_.theta3;
    const P& a = in_.alpha;
    const P& b = in_.beta;
    const P zero = f_.zero();
    const P one = f_.one();
    const bool delta = !z(in_.delta);
    if (delta && !f_.close(in_.delta, one)) throw DomainError("delta must be 0 or 1");

    if (!delta) {
        if (z(a)) {
            if (z(b)) {
                if (z(t3) && !z(t2)) {
                    const auto& e = extract(t2, 3, "ε");
                    const P eps = from_integer(e.representative, ctx_);
                    w_.a1 = e.root;
                    w_.a2 = -t1 / (eps * sq(e.root));
                    forced_ = {zero, eps, zero, zero, zero, zero};
                    return 1;
                }
                if (!z(t3) && !z(sq(t2) - c(4) * t1 * t3)) {
                    const auto& e = extract(t1 * t3 - sq(t2) / c(4), 6, "ε");
                    w_.a1 = e.root;
                    w_.a2 = -(e.root * t2) / (c(2) * t3);
                    w_.b2 = sq(sq(e.root)) / t3;
                    forced_ = {from_integer(e.representative, ctx_), zero, one, zero, zero, zero};
                    return 2;
                }
                return 0;
            }
            if (z(t3) && z(t2) && !z(t1)) {
                const auto& e = extract(t1 * b, 5, "ε");
                w_.a1 = e.root;
                w_.b2 = sq(e.root) * e.root / b;
                forced_ = {from_integer(e.representative, ctx_), zero, zero, zero, one, zero};
                return 3;
            }
            if (z(t3) && !z(t2)) {
                const auto& e = extract(t2, 3, "ε");
                const P eps = from_integer(e.representative, ctx_);
                w_.a1 = e.root;
                w_.a2 = -t1 / (eps * sq(e.root));
                w_.b2 = sq(e.root) * e.root / b;
                forced_ = {zero, eps, zero, zero, one, zero};
                return 4;
            }
            return 0;
        }
        if (z(t3) && z(t2)) {
            if (z(t1)) {
                alpha_tail(one);
                forced_ = {zero, zero, zero, one, zero, zero};
            } else {
                const auto& e = extract(t1 * a, 4, "ε");
                alpha_tail(e.root);
                forced_ = {from_integer(e.representative, ctx_), zero, zero, one, zero, zero};
            }
            return 5;
        }
        if (z(t3)) {
            const auto& e = extract(t2, 3, "ε");
            alpha_tail(e.root);
            forced_ = {std::nullopt, from_integer(e.representative, ctx_), zero, one, zero, zero};
            return 6;
        }
        const auto& e = extract(t3 / a, 2, "ε");
        alpha_tail(e.root);
        forced_ = {std::nullopt, std::nullopt, from_integer(e.representative, ctx_), one, zero, zero};
        return 7;
    }

    if (z(t3)) {
        if (z(t2) && !z(a) && !z(t1)) {
            const auto& e = extract(sq(a) * t1, 5, "ε");
            w_.a1 = e.root;
            w_.a2 = e.root * (e.root - a) / a;
            delta_one_tail();
            forced_ = {from_integer(e.representative, ctx_), zero, zero, one, zero, one};
            return 8;
        }
        if (!z(t2) && !z(t1 - t2)) {
            if (!z(a)) {
                const auto& e = extract(a * t2, 4, "ε");
                w_.a1 = e.root;
                forced_ = {std::nullopt, one, zero, from_integer(e.representative, ctx_), zero, one};
            } else {
                const auto& e = extract(sq(t2) / (t2 - t1), 3, "ε");
                w_.a1 = e.root;
                const P eps = from_integer(e.representative, ctx_);
                forced_ = {one - one / eps, one, zero, zero, zero, one};
            }
            w_.a2 = t2 / sq(w_.a1) - w_.a1;
            delta_one_tail();
            return 9;
        }
        return 0;
    }
    if (!z(c(2) * t3 - t2)) {
        const auto& e = extract(t3, 3, "ε");
        const P eps = from_integer(e.representative, ctx_);
        w_.a1 = e.root;
        w_.a2 = -t2 / (c(2) * eps * sq(e.root));
        delta_one_tail();
        forced_ = {std::nullopt, zero, eps, std::nullopt, zero, one};
        return 10;
    }
    const auto& e = extract(t3, 3, "ε");
    const P eps = from_integer(e.representative, ctx_);
    const P y = e.root;
    w_.a1 = y;
    const P disc = c(4) * t1 * t3 - sq(t2);
    if (z(disc)) {
        if (z(a)) {
            forced_ = {eps, c(2) * eps, eps, zero, zero, one};
        } else {
            w_.a2 = y * (y - a) / a;
            forced_ = {eps, c(2) * eps, eps, one, zero, one};
        }
    } else {
        const auto& n = extract(disc, 2, "ν");
        const P nu = from_integer(n.representative, ctx_);
        w_.a2 = n.root / sq(y) - y;
        forced_ = {(nu + c(4) * sq(eps)) / (c(4) * eps), c(2) * eps, eps, std::nullopt, zero, one};
    }
    delta_one_tail();
    return 11;
}

Normalization Normalizer::run() {
    const int number = dispatch();
    auto witness = BasisChange<P>::identity(f_);
    if (number == 0) return Normalization{std::nullopt, in_, witness, {}};
    witness.a[0] = w_.a1;
    witness.a[1] = w_.a2;
    witness.b[1] = w_.b2;
    witness.b[3] = w_.b4;
    const auto moved = transform_class3(f_, in_, witness).values();
    auto out = moved;
    for (std::size_t i = 0; i < 6; ++i) {
        if (!forced_[i]) continue;
        if (!f_.close(moved[i], *forced_[i])) {
            throw PrecisionError("normalization lost too many digits; raise the precision");
        }
        out[i] = *forced_[i];
    }
    return Normalization{number, Class3Params<P>::from_values(out), witness, std::move(extractions_)};
}

}  // namespace

Normalization normalize_class3(const Class3Params<PadicNumber>& params, const PrecisionContext& ctx) {
    return Normalizer(params, ctx).run();
}

bool in_class_table(const Class3Params<PadicNumber>& params) {
    const auto& d = params.delta;
    if (d.is_zero_like()) return true;
    return d.valuation() == 0 && d.precision() > 0 && d.unit() == 1;
}

std::vector<mpq_class> probe_values(Prime p) { return {0, 1, p.value()}; }

namespace {

using Env = std::map<std::string, mpq_class>;

struct Symbol {
    std::string name;
    long exponent = 0;          // 0: free parameter drawn from the probe set
    bool tilde_at_p = false;    // the row asks for the shortened set at p = q
};

struct RowSpec {
    int algebra_class;
    std::string label;
    std::vector<Symbol> symbols;
    std::function<std::vector<mpq_class>(const Env&)> params;
    std::optional<int> case_label;
};

std::vector<mpq_class> ints(std::initializer_list<long> xs) {
    std::vector<mpq_class> out;
    for (const long x : xs) out.emplace_back(x);
    return out;
}

RowSpec fixed(int cls, std::string label, std::initializer_list<long> values) {
    auto v = ints(values);
    return RowSpec{cls, std::move(label), {}, [v](const Env&) { return v; }, std::nullopt};
}

std::vector<RowSpec> row_specs() {
    const Symbol alpha{"α"};
    const Symbol beta{"β"};
    const Symbol eps3{"ε", 3};
    const Symbol eps3t{"ε", 3, true};
    const Symbol nu2{"ν", 2};
    const Symbol xi4{"ξ", 4};
    const Symbol zeta5t{"ζ", 5, true};
    const Symbol mu6{"μ", 6};
    using V = std::vector<mpq_class>;
    return {
        fixed(1, "L1(0,0,0,0)", {0, 0, 0, 0}),
        fixed(1, "L1(0,0,1,1)", {0, 0, 1, 1}),
        fixed(1, "L1(0,1,0,0)", {0, 1, 0, 0}),
        {1, "L1(0,1,1,β)", {beta}, [](const Env& e) { return V{0, 1, 1, e.at("β")}; }, std::nullopt},
        {1, "L1(1,0,α,β)", {alpha, beta}, [](const Env& e) { return V{1, 0, e.at("α"), e.at("β")}; }, std::nullopt},
        fixed(1, "L1(1,-2,5,5)", {1, -2, 5, 5}),
        {1, "L1(0,0,0,ε)", {eps3t}, [](const Env& e) { return V{0, 0, 0, e.at("ε")}; }, std::nullopt},
        {1, "L1(0,0,1,ε+1)", {eps3t}, [](const Env& e) { return V{0, 0, 1, e.at("ε") + 1}; }, std::nullopt},
        {1, "L1(1,-2,5,ε+5)", {eps3t}, [](const Env& e) { return V{1, -2, 5, e.at("ε") + 5}; }, std::nullopt},
        {1, "L1(1,-2,ν+5,β)", {nu2, beta}, [](const Env& e) { return V{1, -2, e.at("ν") + 5, e.at("β")}; }, std::nullopt},
        fixed(2, "L2(0,0,0,0)", {0, 0, 0, 0}),
        fixed(2, "L2(0,0,1,0)", {0, 0, 1, 0}),
        fixed(2, "L2(0,1,0,0)", {0, 1, 0, 0}),
        fixed(2, "L2(0,1,1,0)", {0, 1, 1, 0}),
        fixed(2, "L2(0,1,0,1)", {0, 1, 0, 1}),
        fixed(2, "L2(1,0,0,0)", {1, 0, 0, 0}),
        {2, "L2(1,0,β,1)", {beta}, [](const Env& e) { return V{1, 0, e.at("β"), 1}; }, std::nullopt},
        {2, "L2(1,0,ν,0)", {nu2}, [](const Env& e) { return V{1, 0, e.at("ν"), 0}; }, std::nullopt},
        fixed(3, "L3(0,0,0,0,0,0)", {0, 0, 0, 0, 0, 0}),
        fixed(3, "L3(1,0,0,0,0,0)", {1, 0, 0, 0, 0, 0}),
        fixed(3, "L3(0,0,1,0,0,0)", {0, 0, 1, 0, 0, 0}),
        fixed(3, "L3(0,0,0,0,1,0)", {0, 0, 0, 0, 1, 0}),
        {3, "L3(α,0,1,0,1,0)", {alpha}, [](const Env& e) { return V{e.at("α"), 0, 1, 0, 1, 0}; }, std::nullopt},
        fixed(3, "L3(0,0,0,1,0,0)", {0, 0, 0, 1, 0, 0}),
        fixed(3, "L3(0,0,0,0,0,1)", {0, 0, 0, 0, 0, 1}),
        fixed(3, "L3(0,0,0,1,0,1)", {0, 0, 0, 1, 0, 1}),
        fixed(3, "L3(1,0,0,0,0,1)", {1, 0, 0, 0, 0, 1}),
        fixed(3, "L3(1,1,0,0,0,1)", {1, 1, 0, 0, 0, 1}),
        {3, "L3(α,β,ε,1,0,0)", {alpha, beta, eps3},
         [](const Env& e) { return V{e.at("α"), e.at("β"), e.at("ε"), 1, 0, 0}; }, 7},
        {3, "L3(0,ε,0,0,0,0)", {eps3}, [](const Env& e) { return V{0, e.at("ε"), 0, 0, 0, 0}; }, 1},
        {3, "L3(0,ε,0,0,1,0)", {eps3}, [](const Env& e) { return V{0, e.at("ε"), 0, 0, 1, 0}; }, 4},
        {3, "L3(α,ε,0,1,0,0)", {alpha, eps3}, [](const Env& e) { return V{e.at("α"), e.at("ε"), 0, 1, 0, 0}; }, 6},
        {3, "L3((ε-1)/ε,1,0,0,0,1)", {eps3},
         [](const Env& e) { return V{(e.at("ε") - 1) / e.at("ε"), 1, 0, 0, 0, 1}; }, 9},
        {3, "L3(α,0,ε,β,0,1)", {alpha, beta, eps3},
         [](const Env& e) { return V{e.at("α"), 0, e.at("ε"), e.at("β"), 0, 1}; }, 10},
        {3, "L3(ε,2ε,ε,0,0,1)", {eps3},
         [](const Env& e) { return V{e.at("ε"), 2 * e.at("ε"), e.at("ε"), 0, 0, 1}; }, 11},
        {3, "L3(ε,2ε,ε,1,0,1)", {eps3},
         [](const Env& e) { return V{e.at("ε"), 2 * e.at("ε"), e.at("ε"), 1, 0, 1}; }, 11},
        {3, "L3((ν-4ε²)/(4ε),2ε,ε,α,0,1)", {eps3, nu2, alpha},
         [](const Env& e) {
             const mpq_class& x = e.at("ε");
             return V{(e.at("ν") - 4 * x * x) / (4 * x), 2 * x, x, e.at("α"), 0, 1};
         },
         11},
        {3, "L3(ξ,0,0,1,0,0)", {xi4}, [](const Env& e) { return V{e.at("ξ"), 0, 0, 1, 0, 0}; }, 5},
        {3, "L3(α,1,0,ξ,0,1)", {alpha, xi4}, [](const Env& e) { return V{e.at("α"), 1, 0, e.at("ξ"), 0, 1}; }, 9},
        {3, "L3(ζ,0,0,0,1,0)", {zeta5t}, [](const Env& e) { return V{e.at("ζ"), 0, 0, 0, 1, 0}; }, 3},
        {3, "L3(ζ,0,0,1,0,1)", {zeta5t}, [](const Env& e) { return V{e.at("ζ"), 0, 0, 1, 0, 1}; }, 8},
        {3, "L3(μ,0,1,0,0,0)", {mu6}, [](const Env& e) { return V{e.at("μ"), 0, 1, 0, 0, 0}; }, 2},
    };
}

std::string set_name(Prime p, long q, bool tilde) {
    const std::string sub = std::to_string(p.value()) + "," + std::to_string(q);
    return tilde ? "paper-reduced Ẽ_{" + sub + "}" : "reduced-minimal E_{" + sub + "}";
}

}  // namespace

std::vector<CatalogRow> theorem20_catalog(Prime p) {
    std::vector<CatalogRow> out;
    for (const auto& spec : row_specs()) {
        // value lists per symbol, then their cartesian product in declaration order
        std::vector<std::vector<mpq_class>> choices;
        std::string source;
        for (const auto& s : spec.symbols) {
            if (s.exponent == 0) {
                choices.push_back(probe_values(p));
                continue;
            }
            const bool tilde = s.tilde_at_p && p.value() == s.exponent;
            const auto& set = tilde ? build_reduced_set(p, s.exponent) : minimal_set(p, s.exponent);
            std::vector<mpq_class> values;
            for (const auto& e : set.elements) values.emplace_back(e);
            choices.push_back(std::move(values));
            if (!source.empty()) source += "; ";
            source += s.name + " ∈ " + set_name(p, s.exponent, tilde);
        }
        std::vector<std::size_t> at(choices.size(), 0);
        while (true) {
            Env env;
            std::vector<std::pair<std::string, mpq_class>> bindings;
            for (std::size_t i = 0; i < choices.size(); ++i) {
                env[spec.symbols[i].name] = choices[i][at[i]];
                bindings.emplace_back(spec.symbols[i].name, choices[i][at[i]]);
            }
            out.push_back(CatalogRow{spec.algebra_class, spec.label, spec.params(env), std::move(bindings), source,
                                     spec.case_label});
            std::size_t i = choices.size();
            while (i > 0 && ++at[i - 1] == choices[i - 1].size()) at[--i] = 0;
            if (i == 0) break;
        }
    }
    return out;
}

Tensor<mpq_class> row_tensor(Prime p, const CatalogRow& row) {
    const auto& v = row.params;
    switch (row.algebra_class) {
        case 1: return class1_tensor(p, Class1Params{v[0], v[1], v[2], v[3]});
        case 2: return class2_tensor(p, Class2Params{v[0], v[1], v[2], v[3]});
        case 3:
            return class3_tensor(Field<mpq_class>{p}, Class3Params<mpq_class>{v[0], v[1], v[2], v[3], v[4], v[5]});
        default: throw DomainError("algebra class must be 1, 2 or 3");
    }
}

}  // namespace padix
