#include "padix/leibniz.hpp"

#include <algorithm>
#include <climits>

namespace padix {

namespace {

long rational_valuation(const mpq_class& x, Prime p) {
    const auto pv = static_cast<unsigned long>(p.value());
    long v = 0;
    mpz_class n = x.get_num();
    mpz_class d = x.get_den();
    while (mpz_divisible_ui_p(n.get_mpz_t(), pv) != 0) {
        n /= pv;
        ++v;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), pv) != 0) {
        d /= pv;
        --v;
    }
    return v;
}

mpq_class prime_power_q(Prime p, long e) {
    mpq_class r = prime_power(p, static_cast<int>(std::labs(e)));
    return e >= 0 ? mpq_class(1 / r) : r;
}

// Row echelon form, keeping only the independent rows.
template <class F>
std::vector<std::array<F, 6>> echelon(const Field<F>& f, std::vector<std::array<F, 6>> rows) {
    std::size_t r = 0;
    for (int col = 0; col < 6 && r < rows.size(); ++col) {
        std::size_t best = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i) {
            const F& x = rows[i][static_cast<std::size_t>(col)];
            if (f.is_zero(x)) continue;
            if (best == rows.size() || f.weight(x) < f.weight(rows[best][static_cast<std::size_t>(col)])) best = i;
        }
        if (best == rows.size()) {
            for (std::size_t i = r; i < rows.size(); ++i) f.require_decided(rows[i][static_cast<std::size_t>(col)]);
            continue;
        }
        std::swap(rows[r], rows[best]);
        const F pivot = rows[r][static_cast<std::size_t>(col)];
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            const F& x = rows[i][static_cast<std::size_t>(col)];
            if (f.is_zero(x)) continue;
            const F factor = x / pivot;
            for (std::size_t k = static_cast<std::size_t>(col); k < 6; ++k) {
                rows[i][k] = rows[i][k] - factor * rows[r][k];
            }
            rows[i][static_cast<std::size_t>(col)] = f.zero();
        }
        ++r;
    }
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end());
    return rows;
}

// Inverse of the matrix whose columns are `cols`; nullopt if singular.
template <class F>
std::optional<std::array<std::array<F, 6>, 6>> inverse_of_columns(const Field<F>& f,
                                                                 const std::array<std::array<F, 6>, 6>& cols) {
    auto m = filled<std::array<F, 12>, 6>(filled<F, 12>(f.zero()));
    for (std::size_t r = 0; r < 6; ++r) {
        for (std::size_t c = 0; c < 6; ++c) {
            m[r][c] = cols[c][r];
            m[r][c + 6] = r == c ? f.one() : f.zero();
        }
    }
    for (std::size_t col = 0; col < 6; ++col) {
        std::size_t best = 6;
        for (std::size_t i = col; i < 6; ++i) {
            if (f.is_zero(m[i][col])) continue;
            if (best == 6 || f.weight(m[i][col]) < f.weight(m[best][col])) best = i;
        }
        if (best == 6) return std::nullopt;
        std::swap(m[col], m[best]);
        const F pivot = m[col][col];
        for (std::size_t k = 0; k < 12; ++k) m[col][k] = m[col][k] / pivot;
        for (std::size_t i = 0; i < 6; ++i) {
            if (i == col || f.is_zero(m[i][col])) continue;
            const F factor = m[i][col];
            for (std::size_t k = 0; k < 12; ++k) m[i][k] = m[i][k] - factor * m[col][k];
        }
    }
    auto inv = filled<std::array<F, 6>, 6>(filled<F, 6>(f.zero()));
    for (std::size_t r = 0; r < 6; ++r) {
        for (std::size_t c = 0; c < 6; ++c) inv[r][c] = m[r][c + 6];
    }
    return inv;
}

}  // namespace

mpq_class Field<mpq_class>::norm(const mpq_class& x) const {
    if (x == 0) return 0;
    return prime_power_q(prime, rational_valuation(x, prime));
}

bool Field<PadicNumber>::close(const PadicNumber& a, const PadicNumber& b) const {
    const PadicNumber d = a - b;
    if (d.is_zero()) return true;
    const long coarse = std::min(a.absolute_precision(), b.absolute_precision());
    const long bound = coarse == LONG_MAX ? LONG_MAX : coarse - slack;
    return d.is_exhausted() ? d.absolute_precision() >= bound : d.valuation() >= bound;
}

mpq_class Field<PadicNumber>::norm(const PadicNumber& x) const {
    return x.is_zero_like() ? mpq_class(0) : padix::norm(x);
}

void Field<PadicNumber>::require_decided(const PadicNumber& x) const {
    if (x.is_exhausted() && x.absolute_precision() <= 0) {
        throw PrecisionError("cannot tell " + to_compact(x) + " from a unit; raise the precision");
    }
}

template <class F>
Tensor<F>::Tensor(Field<F> field) : field_(std::move(field)), c_(216, field_.zero()) {}

template <class F>
std::size_t Tensor<F>::index(int i, int j, int k) {
    if (i < 1 || i > 6 || j < 1 || j > 6 || k < 1 || k > 6) throw DomainError("basis index out of range");
    return static_cast<std::size_t>(((i - 1) * 6 + (j - 1)) * 6 + (k - 1));
}

template <class F>
typename Tensor<F>::Vector Tensor<F>::basis(int i) const {
    auto v = filled<F, 6>(field_.zero());
    v[static_cast<std::size_t>(i - 1)] = field_.one();
    return v;
}

template <class F>
typename Tensor<F>::Vector Tensor<F>::product(const Vector& x, const Vector& y) const {
    auto out = filled<F, 6>(field_.zero());
    for (int i = 1; i <= 6; ++i) {
        const F& xi = x[static_cast<std::size_t>(i - 1)];
        if (field_.is_zero(xi)) continue;
        for (int j = 1; j <= 6; ++j) {
            const F& yj = y[static_cast<std::size_t>(j - 1)];
            if (field_.is_zero(yj)) continue;
            const F s = xi * yj;
            for (int k = 1; k <= 6; ++k) {
                const F& c = at(i, j, k);
                if (!field_.is_zero(c)) out[static_cast<std::size_t>(k - 1)] = out[static_cast<std::size_t>(k - 1)] + s * c;
            }
        }
    }
    return out;
}

template <class F>
std::vector<std::tuple<int, int, int, F>> Tensor<F>::nonzero() const {
    std::vector<std::tuple<int, int, int, F>> out;
    for (int i = 1; i <= 6; ++i) {
        for (int j = 1; j <= 6; ++j) {
            for (int k = 1; k <= 6; ++k) {
                if (!field_.is_zero(at(i, j, k))) out.emplace_back(i, j, k, at(i, j, k));
            }
        }
    }
    return out;
}

template <class F>
bool Tensor<F>::close_to(const Tensor& other) const {
    for (std::size_t n = 0; n < c_.size(); ++n) {
        if (!field_.close(c_[n], other.c_[n])) return false;
    }
    return true;
}

template <class F>
BasisChange<F> BasisChange<F>::identity(const Field<F>& f) {
    BasisChange<F> c{filled<F, 6>(f.zero()), filled<F, 6>(f.zero())};
    c.a[0] = f.one();
    c.b[1] = f.one();
    return c;
}

Tensor<mpq_class> class1_tensor(Prime p, const Class1Params& k) {
    Tensor<mpq_class> t(Field<mpq_class>{p});
    t.set(1, 1, 3, 1);
    for (int i = 2; i <= 5; ++i) t.set(i, 1, i + 1, 1);
    t.set(1, 2, 4, k.alpha1);
    t.set(1, 2, 5, k.alpha2);
    t.set(1, 2, 6, k.beta);
    t.set(2, 2, 4, k.alpha1);
    t.set(2, 2, 5, k.alpha2);
    t.set(2, 2, 6, k.alpha3);
    t.set(3, 2, 5, k.alpha1);
    t.set(3, 2, 6, k.alpha2);
    t.set(4, 2, 6, k.alpha1);
    return t;
}

Tensor<mpq_class> class2_tensor(Prime p, const Class2Params& k) {
    Tensor<mpq_class> t(Field<mpq_class>{p});
    t.set(1, 1, 3, 1);
    for (int i = 3; i <= 5; ++i) t.set(i, 1, i + 1, 1);
    t.set(1, 2, 4, k.beta1);
    t.set(1, 2, 5, k.beta2);
    t.set(1, 2, 6, k.beta3);
    t.set(2, 2, 6, k.gamma);
    t.set(3, 2, 5, k.beta1);
    t.set(3, 2, 6, k.beta2);
    t.set(4, 2, 6, k.beta1);
    return t;
}

template <class F>
Tensor<F> class3_tensor(const Field<F>& f, const Class3Params<F>& k) {
    Tensor<F> t(f);
    const F one = f.one();
    const F minus_one = -one;
    for (int i = 2; i <= 5; ++i) t.set(i, 1, i + 1, one);
    for (int i = 3; i <= 5; ++i) t.set(1, i, i + 1, minus_one);
    t.set(1, 1, 6, k.theta1);
    t.set(1, 2, 3, minus_one);
    t.set(1, 2, 6, k.theta2);
    t.set(2, 2, 6, k.theta3);
    t.set(2, 3, 5, k.alpha);
    t.set(2, 3, 6, k.beta);
    t.set(3, 2, 5, -k.alpha);
    t.set(3, 2, 6, -k.beta);
    t.set(2, 4, 6, k.alpha);
    t.set(4, 2, 6, -k.alpha);
    t.set(3, 4, 6, k.delta);
    t.set(4, 3, 6, -k.delta);
    t.set(2, 5, 6, -k.delta);
    t.set(5, 2, 6, k.delta);
    return t;
}

template <class F>
mpq_class leibniz_defect(const Tensor<F>& t) {
    const auto& f = t.field();
    mpq_class worst = 0;
    for (int x = 1; x <= 6; ++x) {
        for (int y = 1; y <= 6; ++y) {
            const auto xy = t.product(t.basis(x), t.basis(y));
            for (int z = 1; z <= 6; ++z) {
                const auto lhs = t.product(t.basis(x), t.product(t.basis(y), t.basis(z)));
                const auto a = t.product(xy, t.basis(z));
                const auto b = t.product(t.product(t.basis(x), t.basis(z)), t.basis(y));
                for (std::size_t k = 0; k < 6; ++k) {
                    const F d = lhs[k] - a[k] + b[k];
                    const mpq_class n = f.norm(d);
                    if (n > worst) worst = n;
                }
            }
        }
    }
    return worst;
}

template <class F>
int rank(const Field<F>& f, std::vector<std::array<F, 6>> rows) {
    return static_cast<int>(echelon(f, std::move(rows)).size());
}

template <class F>
Vec6 lower_central_dims(const Tensor<F>& t) {
    const auto& f = t.field();
    std::vector<std::array<F, 6>> current;
    for (int i = 1; i <= 6; ++i) current.push_back(t.basis(i));
    Vec6 dims{};
    dims[0] = 6;
    for (std::size_t k = 1; k < 6; ++k) {
        std::vector<std::array<F, 6>> next;
        for (const auto& v : current) {
            for (int j = 1; j <= 6; ++j) next.push_back(t.product(v, t.basis(j)));
        }
        current = echelon(f, std::move(next));
        dims[k] = static_cast<int>(current.size());
    }
    return dims;
}

template <class F>
Class3Params<F> transform_class3(const Field<F>& f, const Class3Params<F>& k, const BasisChange<F>& c) {
    const F& a1 = c.a[0];
    const F& a2 = c.a[1];
    const F& b2 = c.b[1];
    const F& b3 = c.b[2];
    const F& b4 = c.b[3];
    if (f.is_zero(a1) || f.is_zero(b2)) throw DomainError("the formulas need A_1 B_2 != 0");
    const F lin = a1 + a2 * k.delta;
    if (f.is_zero(lin)) throw DomainError("the formulas need A_1 + A_2 delta != 0");
    const F two = f.from(2);
    const F a1sq = a1 * a1;
    const F b2sq = b2 * b2;
    const F alpha_sq = k.alpha * k.alpha;
    const F den = a1sq * a1 * lin;
    Class3Params<F> out{f.zero(), f.zero(), f.zero(), f.zero(), f.zero(), f.zero()};
    out.theta1 = (a1sq * k.theta1 + a1 * a2 * k.theta2 + a2 * a2 * k.theta3) / (den * b2);
    out.theta2 = (a1 * k.theta2 + two * a2 * k.theta3) / den;
    out.theta3 = b2 * k.theta3 / den;
    out.alpha = b2 * k.alpha / a1sq;
    const F num = k.beta * a1sq * b2sq + two * alpha_sq * a1 * a2 * b2sq +
                  alpha_sq * k.delta * a2 * a2 * b2sq + k.delta * a1sq * b3 * b3 -
                  two * k.delta * a1sq * b2 * b4;
    out.beta = num / (a1sq * a1sq * b2 * lin);
    out.delta = b2 * k.delta / lin;
    return out;
}

template <class F>
Tensor<F> change_of_basis(const Tensor<F>& t, const BasisChange<F>& change) {
    const auto& f = t.field();
    auto e = filled<std::array<F, 6>, 6>(change.a);
    e[1] = change.b;
    for (std::size_t i = 1; i < 5; ++i) e[i + 1] = t.product(e[i], e[0]);
    const auto inv = inverse_of_columns(f, e);
    if (!inv) throw DomainError("degenerate change: the generated vectors are not a basis");
    Tensor<F> out(f);
    for (int i = 1; i <= 6; ++i) {
        for (int j = 1; j <= 6; ++j) {
            const auto v = t.product(e[static_cast<std::size_t>(i - 1)], e[static_cast<std::size_t>(j - 1)]);
            for (int k = 1; k <= 6; ++k) {
                F s = f.zero();
                for (std::size_t m = 0; m < 6; ++m) {
                    if (!f.is_zero(v[m])) s = s + (*inv)[static_cast<std::size_t>(k - 1)][m] * v[m];
                }
                out.set(i, j, k, s);
            }
        }
    }
    return out;
}

template <class F>
Class3Params<F> class3_params(const Tensor<F>& t) {
    return {t.at(1, 1, 6), t.at(1, 2, 6), t.at(2, 2, 6), t.at(2, 3, 5), t.at(2, 3, 6), t.at(3, 4, 6)};
}

template <class F>
bool has_class3_shape(const Tensor<F>& t) {
    return t.close_to(class3_tensor(t.field(), class3_params(t)));
}

#define PADIX_INSTANTIATE(F)                                                                  \
    template class Tensor<F>;                                                                 \
    template struct BasisChange<F>;                                                           \
    template Tensor<F> class3_tensor(const Field<F>&, const Class3Params<F>&);                \
    template mpq_class leibniz_defect(const Tensor<F>&);                                      \
    template Vec6 lower_central_dims(const Tensor<F>&);                                       \
    template int rank(const Field<F>&, std::vector<std::array<F, 6>>);                        \
    template Class3Params<F> transform_class3(const Field<F>&, const Class3Params<F>&,        \
                                              const BasisChange<F>&);                         \
    template Tensor<F> change_of_basis(const Tensor<F>&, const BasisChange<F>&);              \
    template Class3Params<F> class3_params(const Tensor<F>&);                                 \
    template bool has_class3_shape(const Tensor<F>&);

PADIX_INSTANTIATE(mpq_class)
PADIX_INSTANTIATE(PadicNumber)

#undef PADIX_INSTANTIATE

}  // namespace padix
