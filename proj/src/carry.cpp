#include "padix/carry.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

namespace padix {

namespace {

mpz_class factorial(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// counts[1..part] with sum(j counts[j]) == remaining and at most `parts_left` parts
void enumerate(int part, int remaining, int parts_left, std::vector<int>& counts,
               std::vector<ExponentTuple>& out) {
    if (remaining == 0) {
        out.push_back(ExponentTuple{counts});
        return;
    }
    if (part == 0) return;
    const int most = std::min(remaining / part, parts_left);
    for (int c = most; c >= 0; --c) {
        counts[static_cast<std::size_t>(part)] = c;
        enumerate(part - 1, remaining - c * part, parts_left - c, counts, out);
    }
    counts[static_cast<std::size_t>(part)] = 0;
}

mpz_class evaluate_terms(const std::vector<CarryTerm>& terms, std::span<const long> x,
                         int k, bool reduced, long p) {
    if (static_cast<int>(x.size()) < k) {
        throw DomainError("N_" + std::to_string(k) + " needs " + std::to_string(k) + " digits");
    }
    mpz_class sum = 0;
    for (const auto& term : terms) {
        mpz_class t = reduced ? mpz_class(term.coefficient / p) : term.coefficient;
        for (std::size_t j = 0; j < term.tuple.exponents.size(); ++j) {
            const int e = term.tuple.exponents[j];
            if (e == 0) continue;
            mpz_class f;
            mpz_class base = x[j];
            mpz_pow_ui(f.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
            t *= f;
        }
        sum += t;
    }
    return sum;
}

}  // namespace

int ExponentTuple::index() const {
    int s = 0;
    for (std::size_t j = 0; j < exponents.size(); ++j) s += static_cast<int>(j) * exponents[j];
    return s;
}

int ExponentTuple::degree() const {
    int s = 0;
    for (const int l : exponents) s += l;
    return s;
}

std::vector<std::vector<int>> carry_partitions(int k, int max_parts) {
    if (k < 1) throw DomainError("carry index must be positive");
    std::vector<ExponentTuple> found;
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    enumerate(k - 1, k, max_parts, counts, found);
    std::vector<std::vector<int>> out;
    out.reserve(found.size());
    for (auto& t : found) out.push_back(std::move(t.exponents));
    return out;
}

std::vector<ExponentTuple> summand_list(Prime p, int k) {
    const long pv = p.value();
    std::vector<ExponentTuple> out;
    for (auto& counts : carry_partitions(k, static_cast<int>(std::min<long>(pv, k)))) {
        int used = 0;
        for (std::size_t j = 1; j < counts.size(); ++j) used += counts[j];
        if (std::find(counts.begin() + 1, counts.end(), pv) != counts.end()) continue;
        counts[0] = static_cast<int>(pv) - used;
        out.push_back(ExponentTuple{std::move(counts)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

const CarryPolynomial& carry_polynomial(Prime p, int k) {
    static std::mutex mutex;
    static std::map<std::pair<long, int>, CarryPolynomial> cache;
    {
        const std::lock_guard lock(mutex);
        if (auto it = cache.find({p.value(), k}); it != cache.end()) return it->second;
    }
    std::vector<CarryTerm> terms;
    const mpz_class top = factorial(static_cast<int>(p.value()));
    for (auto& t : summand_list(p, k)) {
        mpz_class c = top;
        for (const int l : t.exponents) c /= factorial(l);
        terms.push_back(CarryTerm{c, std::move(t)});
    }
    CarryPolynomial poly(p, k, std::move(terms));
    const std::lock_guard lock(mutex);
    return cache.try_emplace({p.value(), k}, std::move(poly)).first->second;
}

mpz_class CarryPolynomial::evaluate(std::span<const long> x) const {
    return evaluate_terms(terms_, x, index_, false, prime_.value());
}

mpz_class CarryPolynomial::evaluate_reduced(std::span<const long> x) const {
    return evaluate_terms(terms_, x, index_, true, prime_.value());
}

std::vector<int> digit_recursion(std::span<const int> a_digits, Prime p, int stages) {
    const long pv = p.value();
    if (stages < 1) throw DomainError("at least one stage");
    if (stages > pv - 1) {
        throw DomainError("the recursion covers x^(p^m) only for m <= p - 1");
    }
    if (static_cast<int>(a_digits.size()) < stages + 2) {
        throw DomainError("need at least m + 2 digits");
    }
    std::vector<int> a(a_digits.begin(), a_digits.end());
    for (int stage = 0; stage < stages; ++stage) {
        const int k = static_cast<int>(a.size());
        const std::vector<long> wide(a.begin(), a.end());
        std::vector<int> out(static_cast<std::size_t>(k - 1));
        out[0] = a[0];
        for (int j = 1; j <= k - 2; ++j) {
            mpz_class v = a[static_cast<std::size_t>(j + 1)];
            if (j >= 2) v -= carry_polynomial(p, j).evaluate_reduced(wide);
            out[static_cast<std::size_t>(j)] =
                static_cast<int>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(pv)));
        }
        a = std::move(out);
    }
    return a;
}

}  // namespace padix
