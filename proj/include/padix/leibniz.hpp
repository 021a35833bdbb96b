#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "padix/padic.hpp"

namespace padix {

/// Scalar operations the algebra code needs, for exact rationals and for
/// finite-precision p-adics.
template <class F>
struct Field;

template <>
struct Field<mpq_class> {
    Prime prime;

    mpq_class zero() const { return 0; }
    mpq_class one() const { return 1; }
    mpq_class from(const mpq_class& q) const { return q; }
    bool is_zero(const mpq_class& x) const { return x == 0; }
    bool close(const mpq_class& a, const mpq_class& b) const { return a == b; }
    /// p-adic absolute value.
    mpq_class norm(const mpq_class& x) const;
    /// Pivot preference: smaller is better; exact arithmetic takes any nonzero.
    long weight(const mpq_class&) const { return 0; }
    /// Nothing to check: exact zero is zero.
    void require_decided(const mpq_class&) const {}
};

template <>
struct Field<PadicNumber> {
    PrecisionContext ctx;
    int slack = 4;  // digits allowed to drift in close()

    PadicNumber zero() const { return PadicNumber::zero(ctx.prime); }
    PadicNumber one() const { return from_integer(1, ctx); }
    PadicNumber from(const mpq_class& q) const { return from_rational(q, ctx); }
    /// Exact zero or exhausted.
    bool is_zero(const PadicNumber& x) const { return x.is_zero_like(); }
    /// a - b vanishes to within `slack` digits of the coarser operand.
    bool close(const PadicNumber& a, const PadicNumber& b) const;
    /// Exhausted values count as 0.
    mpq_class norm(const PadicNumber& x) const;
    long weight(const PadicNumber& x) const { return x.valuation(); }
    /// Throws PrecisionError for an exhausted value that may still hide a unit.
    void require_decided(const PadicNumber& x) const;
};

using Vec6 = std::array<int, 6>;

/// An array with every slot set to v (the scalars have no default value).
template <class T, std::size_t N>
std::array<T, N> filled(const T& v) {
    return [&]<std::size_t... I>(std::index_sequence<I...>) {
        return std::array<T, N>{((void)I, v)...};
    }(std::make_index_sequence<N>{});
}

/// Structure constants of a 6-dimensional algebra: [e_i, e_j] = sum_k c(i, j, k) e_k,
/// indices 1-based.
template <class F>
class Tensor {
public:
    using Vector = std::array<F, 6>;

    explicit Tensor(Field<F> field);

    const Field<F>& field() const { return field_; }
    const F& at(int i, int j, int k) const { return c_[index(i, j, k)]; }
    void set(int i, int j, int k, const F& v) { c_[index(i, j, k)] = v; }
    /// Bilinear product of coordinate vectors.
    Vector product(const Vector& x, const Vector& y) const;
    Vector basis(int i) const;
    /// (i, j, k, coefficient) for every nonzero constant, in index order.
    std::vector<std::tuple<int, int, int, F>> nonzero() const;
    /// Entrywise close().
    bool close_to(const Tensor& other) const;

private:
    static std::size_t index(int i, int j, int k);

    Field<F> field_;
    std::vector<F> c_;
};

struct Class1Params {
    mpq_class alpha1, alpha2, alpha3, beta;
};

struct Class2Params {
    mpq_class beta1, beta2, beta3, gamma;
};

/// L_3(theta1, theta2, theta3, alpha, beta, delta).  delta is 0 or 1 in the
/// class table; transformed tuples may carry any delta.
template <class F>
struct Class3Params {
    F theta1, theta2, theta3, alpha, beta, delta;

    std::array<F, 6> values() const { return {theta1, theta2, theta3, alpha, beta, delta}; }
    static Class3Params from_values(const std::array<F, 6>& v) { return {v[0], v[1], v[2], v[3], v[4], v[5]}; }
};

/// e_1' = sum A_i e_i, e_2' = sum B_i e_i; the rest is generated as
/// e_{i+1}' = [e_i', e_1'].
template <class F>
struct BasisChange {
    std::array<F, 6> a;
    std::array<F, 6> b;

    static BasisChange identity(const Field<F>& f);
};

Tensor<mpq_class> class1_tensor(Prime p, const Class1Params& params);
Tensor<mpq_class> class2_tensor(Prime p, const Class2Params& params);
template <class F>
Tensor<F> class3_tensor(const Field<F>& f, const Class3Params<F>& params);

/// Max p-adic norm of [x,[y,z]] - [[x,y],z] + [[x,z],y] over basis triples.
template <class F>
mpq_class leibniz_defect(const Tensor<F>& t);

/// dim L^1 .. dim L^6 of the lower central series.
template <class F>
Vec6 lower_central_dims(const Tensor<F>& t);

inline bool is_filiform(const Vec6& dims) { return dims == Vec6{6, 4, 3, 2, 1, 0}; }

/// Number of independent vectors.  Throws PrecisionError when the p-adic
/// elimination cannot tell a remaining entry from zero.
template <class F>
int rank(const Field<F>& f, std::vector<std::array<F, 6>> rows);

/// The closed formulas for the class III parameters after a change.
/// Throws DomainError if A_1 B_2 = 0 or A_1 + A_2 delta = 0.
template <class F>
Class3Params<F> transform_class3(const Field<F>& f, const Class3Params<F>& params,
                                 const BasisChange<F>& change);

/// The tensor in the generated basis.  Throws DomainError if the generated
/// vectors are not a basis.
template <class F>
Tensor<F> change_of_basis(const Tensor<F>& t, const BasisChange<F>& change);

/// Reads theta1..delta off a tensor: c(1,1,6), c(1,2,6), c(2,2,6), c(2,3,5),
/// c(2,3,6), c(3,4,6).
template <class F>
Class3Params<F> class3_params(const Tensor<F>& t);

/// The tensor equals the class III table at its own extracted parameters.
template <class F>
bool has_class3_shape(const Tensor<F>& t);

}  // namespace padix
