#pragma once

// Seeded generators for class III parameters and basis changes, shared by the
// report and the acceptance checks.

#include <random>

#include "padix/leibniz.hpp"

namespace padix::detail {

struct AlgebraRandom {
    std::mt19937 rng;
    explicit AlgebraRandom(unsigned seed) : rng(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

    /// n/d with |n| <= 6, d in {1, 2, 3}.
    mpq_class value() {
        mpq_class x(uniform(-6, 6), uniform(1, 3));
        x.canonicalize();
        return x;
    }
    mpq_class nonzero() {
        mpq_class x = 0;
        while (x == 0) x = value();
        return x;
    }
    Class3Params<mpq_class> params() {
        return {value(), value(), value(), value(), value(), mpq_class(uniform(0, 1))};
    }
    /// B_1 = 0 unless b1 is set; A_1, B_2 nonzero and A_1 + A_2 delta != 0.
    BasisChange<mpq_class> change(const mpq_class& delta, bool b1 = false) {
        auto c = BasisChange<mpq_class>::identity(Field<mpq_class>{Prime(2)});
        do {
            c.a[0] = nonzero();
            c.a[1] = value();
        } while (c.a[0] + c.a[1] * delta == 0);
        for (std::size_t i = 2; i < 6; ++i) c.a[i] = value();
        c.b[0] = b1 ? nonzero() : mpq_class(0);
        c.b[1] = nonzero();
        for (std::size_t i = 2; i < 6; ++i) c.b[i] = value();
        return c;
    }
};

inline Class3Params<PadicNumber> lift(const Class3Params<mpq_class>& k, const PrecisionContext& ctx) {
    auto v = filled<PadicNumber, 6>(PadicNumber::zero(ctx.prime));
    const auto src = k.values();
    for (std::size_t i = 0; i < 6; ++i) v[i] = from_rational(src[i], ctx);
    return Class3Params<PadicNumber>::from_values(v);
}

inline BasisChange<PadicNumber> lift(const BasisChange<mpq_class>& c, const PrecisionContext& ctx) {
    BasisChange<PadicNumber> out{filled<PadicNumber, 6>(PadicNumber::zero(ctx.prime)),
                                 filled<PadicNumber, 6>(PadicNumber::zero(ctx.prime))};
    for (std::size_t i = 0; i < 6; ++i) {
        out.a[i] = from_rational(c.a[i], ctx);
        out.b[i] = from_rational(c.b[i], ctx);
    }
    return out;
}

/// A random tuple satisfying the guard of normalizer case `which` (1..11).
inline Class3Params<mpq_class> guarded(int which, AlgebraRandom& r) {
    const auto nz = [&] { return r.nonzero(); };
    while (true) {
        Class3Params<mpq_class> k{r.value(), r.value(), r.value(), r.value(), r.value(), 0};
        switch (which) {
            case 1: k = {k.theta1, nz(), 0, 0, 0, 0}; break;
            case 2: k = {k.theta1, k.theta2, nz(), 0, 0, 0}; break;
            case 3: k = {nz(), 0, 0, 0, nz(), 0}; break;
            case 4: k = {k.theta1, nz(), 0, 0, nz(), 0}; break;
            case 5: k = {k.theta1, 0, 0, nz(), k.beta, 0}; break;
            case 6: k = {k.theta1, nz(), 0, nz(), k.beta, 0}; break;
            case 7: k = {k.theta1, k.theta2, nz(), nz(), k.beta, 0}; break;
            case 8: k = {nz(), 0, 0, nz(), k.beta, 1}; break;
            case 9: k = {k.theta1, nz(), 0, k.alpha, k.beta, 1}; break;
            case 10: k = {k.theta1, k.theta2, nz(), k.alpha, k.beta, 1}; break;
            case 11: {
                const mpq_class t3 = nz();
                k = {k.theta1, 2 * t3, t3, k.alpha, k.beta, 1};
                if (r.uniform(0, 2) == 0) k.theta1 = t3;
                break;
            }
            default: throw DomainError("no normalizer case " + std::to_string(which));
        }
        bool ok = true;
        if (which == 2) ok = k.theta2 * k.theta2 != 4 * k.theta1 * k.theta3;
        if (which == 9) ok = k.theta1 != k.theta2;
        if (which == 10) ok = 2 * k.theta3 != k.theta2;
        if (ok) return k;
    }
}

}  // namespace padix::detail
