#include "padix/criterion.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "padix/carry.hpp"

namespace padix {

namespace {

std::string rational_text(const mpq_class& q) { return q.get_str(); }

const char* const superscript_digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
const char* const subscript_digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};

std::string map_digits(const std::string& s, const char* const table[]) {
    std::string out;
    for (const char ch : s) {
        if (ch >= '0' && ch <= '9') {
            out += table[ch - '0'];
        } else if (ch == '-') {
            out += table == superscript_digits ? "⁻" : "-";
        } else if (ch == '+') {
            out += table == superscript_digits ? "⁺" : "+";
        } else if (ch == 'p') {
            out += table == superscript_digits ? "ᵖ" : "p";
        } else if (ch != ' ') {
            out += ch;
        }
    }
    return out;
}

std::string unicode_minus(const std::string& s) {
    std::string out;
    for (const char ch : s) {
        if (ch == '-') {
            out += "−";
        } else {
            out += ch;
        }
    }
    return out;
}

mpz_class mod_power(const mpz_class& base, long e, const mpz_class& m) {
    mpz_class r;
    mpz_class b = base;
    mpz_powm_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e), m.get_mpz_t());
    return r;
}

bool negative_leading(const PrimePolynomial& c) {
    return !c.is_zero() && sgn(c.coefficients().back()) < 0;
}

}  // namespace

PrimePolynomial::PrimePolynomial(mpq_class constant) {
    coeffs_.push_back(std::move(constant));
    trim();
}

PrimePolynomial PrimePolynomial::p() {
    PrimePolynomial r;
    r.coeffs_ = {0, 1};
    return r;
}

void PrimePolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::optional<mpq_class> PrimePolynomial::constant_value() const {
    if (coeffs_.empty()) return mpq_class(0);
    if (coeffs_.size() == 1) return coeffs_[0];
    return std::nullopt;
}

mpq_class PrimePolynomial::evaluate(long p) const {
    mpq_class r = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * p + coeffs_[i];
    return r;
}

PrimePolynomial PrimePolynomial::operator+(const PrimePolynomial& o) const {
    PrimePolynomial r;
    r.coeffs_.assign(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    r.trim();
    return r;
}

PrimePolynomial PrimePolynomial::operator-() const {
    PrimePolynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

PrimePolynomial PrimePolynomial::operator-(const PrimePolynomial& o) const { return *this + (-o); }

PrimePolynomial PrimePolynomial::operator*(const PrimePolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    PrimePolynomial r;
    r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    r.trim();
    return r;
}

std::string PrimePolynomial::to_string() const {
    if (auto c = constant_value()) return rational_text(*c);
    if (negative_leading(*this)) return "-" + (-*this).to_string();
    // clear denominators, pull the content, split off integer roots
    mpz_class den = 1;
    for (const auto& c : coeffs_) den = lcm(den, mpz_class(c.get_den()));
    std::vector<mpz_class> ints;
    for (const auto& c : coeffs_) ints.push_back(mpz_class(c * den));
    mpz_class content = 0;
    for (const auto& c : ints) content = gcd(content, c);
    for (auto& c : ints) c /= content;
    std::vector<long> roots;
    for (long r : {0L, 1L, 2L, 3L, 4L, 5L, 6L, -1L, -2L, -3L}) {
        while (ints.size() > 1) {
            mpz_class value = 0;
            for (std::size_t i = ints.size(); i-- > 0;) value = value * r + ints[i];
            if (value != 0) break;
            // synthetic division by (p - r)
            std::vector<mpz_class> q(ints.size() - 1);
            mpz_class carry = 0;
            for (std::size_t i = ints.size(); i-- > 1;) {
                carry = carry * r + ints[i];
                q[i - 1] = carry;
            }
            ints = std::move(q);
            roots.push_back(r);
        }
    }
    mpq_class scale(content, den);
    scale.canonicalize();
    std::ostringstream os;
    std::string rest;
    if (ints.size() == 1) {
        scale *= ints[0];
        scale.canonicalize();
    } else {
        std::ostringstream rs;
        bool first = true;
        for (std::size_t i = ints.size(); i-- > 0;) {
            if (ints[i] == 0) continue;
            const mpz_class mag = abs(ints[i]);
            rs << (first ? (ints[i] < 0 ? "-" : "") : (ints[i] < 0 ? " - " : " + "));
            if (i == 0 || mag != 1) rs << mag.get_str();
            if (i > 0) rs << (mag != 1 ? "*p" : "p") << (i > 1 ? "^" + std::to_string(i) : "");
            first = false;
        }
        rest = "(" + rs.str() + ")";
    }
    if (scale.get_num() != 1) os << scale.get_num().get_str();
    for (const long r : roots) {
        if (r == 0) {
            os << "p";
        } else {
            os << "(p " << (r > 0 ? "- " : "+ ") << std::labs(r) << ")";
        }
    }
    os << rest;
    if (scale.get_den() != 1) os << "/" << scale.get_den().get_str();
    return os.str();
}

std::string LinearExponent::to_string() const {
    std::ostringstream os;
    if (per_p != 0) {
        if (per_p == -1) {
            os << "-";
        } else if (per_p != 1) {
            os << per_p;
        }
        os << "p";
        if (constant > 0) os << "+" << constant;
        if (constant < 0) os << "-" << -constant;
    } else {
        os << constant;
    }
    return os.str();
}

DigitPolynomial::DigitPolynomial(PrimePolynomial constant) {
    if (!constant.is_zero()) terms_.emplace(Monomial{}, std::move(constant));
}

DigitPolynomial DigitPolynomial::digit(int index, LinearExponent exponent) {
    DigitPolynomial r;
    Monomial m;
    if (!exponent.is_zero()) m.emplace(index, exponent);
    r.terms_.emplace(std::move(m), PrimePolynomial(1));
    return r;
}

int DigitPolynomial::max_digit() const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
        for (const auto& [i, e] : m) best = std::max(best, i);
    }
    return best;
}

void DigitPolynomial::add_term(const Monomial& m, const PrimePolynomial& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DigitPolynomial DigitPolynomial::operator+(const DigitPolynomial& o) const {
    DigitPolynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

DigitPolynomial DigitPolynomial::operator-(const DigitPolynomial& o) const {
    DigitPolynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

DigitPolynomial DigitPolynomial::operator*(const DigitPolynomial& o) const {
    DigitPolynomial r;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m = m1;
            for (const auto& [i, e] : m2) {
                auto [it, inserted] = m.try_emplace(i, e);
                if (!inserted) {
                    it->second = it->second + e;
                    if (it->second.is_zero()) m.erase(it);
                }
            }
            r.add_term(m, c1 * c2);
        }
    }
    return r;
}

DigitPolynomial DigitPolynomial::pow(unsigned e) const {
    DigitPolynomial r(PrimePolynomial(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

DigitPolynomial DigitPolynomial::substitute(const std::vector<DigitPolynomial>& images) const {
    DigitPolynomial r;
    for (const auto& [m, c] : terms_) {
        DigitPolynomial t(c);
        for (const auto& [i, e] : m) {
            if (i == 0) {
                t = t * digit(0, e);
                continue;
            }
            if (e.per_p != 0 || e.constant < 0) {
                throw DomainError("substitution needs constant exponents");
            }
            if (static_cast<std::size_t>(i) >= images.size()) {
                throw DomainError("no image for digit " + std::to_string(i));
            }
            t = t * images[static_cast<std::size_t>(i)].pow(static_cast<unsigned>(e.constant));
        }
        r = r + t;
    }
    return r;
}

DigitPolynomial DigitPolynomial::at_prime(long p) const {
    DigitPolynomial r;
    for (const auto& [m, c] : terms_) {
        Monomial fixed;
        for (const auto& [i, e] : m) {
            const long v = e.evaluate(p);
            if (v != 0) fixed.emplace(i, LinearExponent{0, v});
        }
        r.add_term(fixed, PrimePolynomial(c.evaluate(p)));
    }
    return r;
}

mpz_class DigitPolynomial::evaluate_mod(long p, const std::vector<int>& digits, int e) const {
    const mpz_class modulus = [&] {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
        return m;
    }();
    mpz_class sum = 0;
    for (const auto& [m, c] : terms_) {
        const mpq_class value = c.evaluate(p);
        if (value == 0) continue;
        if (mpz_divisible_ui_p(value.get_den().get_mpz_t(), static_cast<unsigned long>(p)) != 0) {
            throw DomainError("coefficient " + value.get_str() + " is not p-integral");
        }
        mpz_class den_inv;
        mpz_invert(den_inv.get_mpz_t(), value.get_den().get_mpz_t(), modulus.get_mpz_t());
        mpz_class t = value.get_num() * den_inv;
        for (const auto& [i, ex] : m) {
            const long power = ex.evaluate(p);
            if (power < 0) throw DomainError("negative digit exponent");
            if (static_cast<std::size_t>(i) >= digits.size()) {
                throw PrecisionError("digit a_" + std::to_string(i) + " is not known");
            }
            t *= mod_power(digits[static_cast<std::size_t>(i)], power, modulus);
        }
        sum += t;
    }
    mpz_class r;
    mpz_mod(r.get_mpz_t(), sum.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

namespace {

// Linear single-digit terms first, by digit index, then the rest.
std::vector<std::pair<DigitPolynomial::Monomial, PrimePolynomial>> print_order(
    const std::map<DigitPolynomial::Monomial, PrimePolynomial>& terms) {
    std::vector<std::pair<DigitPolynomial::Monomial, PrimePolynomial>> v(terms.begin(), terms.end());
    auto simple = [](const DigitPolynomial::Monomial& m) {
        return m.size() == 1 && m.begin()->second == LinearExponent{0, 1};
    };
    std::stable_sort(v.begin(), v.end(), [&](const auto& x, const auto& y) {
        const bool sx = simple(x.first);
        const bool sy = simple(y.first);
        if (sx != sy) return sx;
        if (sx) return x.first.begin()->first < y.first.begin()->first;
        return false;
    });
    return v;
}

std::string render(const std::map<DigitPolynomial::Monomial, PrimePolynomial>& terms,
                   bool unicode) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c0] : print_order(terms)) {
        PrimePolynomial c = c0;
        const bool negative = negative_leading(c);
        if (negative) c = -c;
        if (first) {
            if (negative) os << (unicode ? "−" : "-");
        } else {
            os << (negative ? (unicode ? " − " : " - ") : " + ");
        }
        first = false;
        const auto constant = c.constant_value();
        const bool unit_coeff = constant && *constant == 1;
        std::string coeff = c.to_string();
        if (unicode) coeff = unicode_minus(coeff);
        std::ostringstream mono;
        bool first_factor = true;
        for (const auto& [i, e] : m) {
            if (unicode) {
                mono << "a" << map_digits(std::to_string(i), subscript_digits);
                if (e != LinearExponent{0, 1}) mono << map_digits(e.to_string(), superscript_digits);
            } else {
                if (!first_factor) mono << "*";
                mono << "a_" << i;
                if (e != LinearExponent{0, 1}) {
                    const std::string et = e.to_string();
                    mono << "^" << (et.size() > 1 ? "(" + et + ")" : et);
                }
            }
            first_factor = false;
        }
        const std::string mono_text = mono.str();
        if (mono_text.empty()) {
            os << coeff;
        } else if (unit_coeff) {
            os << mono_text;
        } else if (unicode) {
            // digit-first when the coefficient is just p: a₁p
            if (coeff == "p") {
                os << mono_text << "p";
            } else {
                os << coeff << "·" << mono_text;
            }
        } else {
            os << coeff << "*" << mono_text;
        }
    }
    return os.str();
}

}  // namespace

std::string DigitPolynomial::to_ascii() const { return render(terms_, false); }
std::string DigitPolynomial::to_unicode() const { return render(terms_, true); }

DigitPolynomial symbolic_reduced_carry(int k) {
    DigitPolynomial n;
    if (k < 2) return n;
    const PrimePolynomial p = PrimePolynomial::p();
    for (const auto& counts : carry_partitions(k, k)) {
        int r = 0;
        mpz_class denom = 1;
        DigitPolynomial mono(PrimePolynomial(1));
        for (std::size_t i = 1; i < counts.size(); ++i) {
            if (counts[i] == 0) continue;
            r += counts[i];
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(counts[i]));
            denom *= f;
            mono = mono * DigitPolynomial::digit(static_cast<int>(i), {0, counts[i]});
        }
        // p!/((p-r)! prod c_i!) / p
        PrimePolynomial coeff(mpq_class(1, denom));
        for (int t = 1; t < r; ++t) coeff = coeff * (p - PrimePolynomial(t));
        mono = mono * DigitPolynomial::digit(0, {1, -r});
        n = n + DigitPolynomial(coeff) * mono;
    }
    return n;
}

std::vector<DigitPolynomial> stage_offsets(int m) {
    std::vector<DigitPolynomial> g(static_cast<std::size_t>(std::max(m, 2) + 1));
    const DigitPolynomial a1 = DigitPolynomial::digit(1);
    for (int j = 2; j < m; ++j) {
        std::vector<DigitPolynomial> images(static_cast<std::size_t>(j));
        for (int i = 1; i < j; ++i) images[static_cast<std::size_t>(i)] = a1 + g[static_cast<std::size_t>(i)];
        g[static_cast<std::size_t>(j + 1)] =
            g[static_cast<std::size_t>(j)] + symbolic_reduced_carry(j).substitute(images);
    }
    return g;
}

namespace {

Criterion base_criterion(std::optional<Prime> p, int m) {
    if (m < 1) throw DomainError("at least one stage");
    if (p && m > p->value() - 1) {
        throw DomainError("criteria cover x^(p^m) only for m <= p - 1");
    }
    Criterion c;
    c.prime = p;
    c.stages = m;
    const auto a0 = DigitPolynomial::digit(0);
    const auto a1 = DigitPolynomial::digit(1);
    c.congruences.push_back(Congruence{DigitPolynomial::digit(0, {1, 0}),
                                       a0 + DigitPolynomial(PrimePolynomial::p()) * a1, 2, false});
    if (m >= 2) c.congruences.push_back(Congruence{a1, DigitPolynomial::digit(2), 1, true});
    return c;
}

Criterion finish(Criterion c) {
    if (c.prime) {
        const long pv = c.prime->value();
        for (auto& line : c.congruences) {
            line.lhs = line.lhs.at_prime(pv);
            line.rhs = line.rhs.at_prime(pv);
        }
    }
    return c;
}

DigitPolynomial printed_line(int j) {
    const PrimePolynomial p = PrimePolynomial::p();
    const PrimePolynomial one(1);
    const auto a0 = [](long per_p, long c) { return DigitPolynomial::digit(0, {per_p, c}); };
    const auto a1 = [](long e) { return DigitPolynomial::digit(1, {0, e}); };
    const DigitPolynomial half_term =
        DigitPolynomial((p - one) * PrimePolynomial(mpq_class(1, 2))) * a0(1, -2) * a1(2);
    if (j == 3) return DigitPolynomial::digit(3) - half_term;
    // a_4 - ((p-1)(p-2)/6) a_0^(p-3) a_1^3 + (3(p-1)/2) a_0^(p-2) a_1^2
    const DigitPolynomial cubic =
        DigitPolynomial((p - one) * (p - PrimePolynomial(2)) * PrimePolynomial(mpq_class(1, 6))) *
        a0(1, -3) * a1(3);
    return DigitPolynomial::digit(4) - cubic + DigitPolynomial(PrimePolynomial(3)) * half_term;
}

}  // namespace

Criterion emit_criterion(std::optional<Prime> p, int m) {
    Criterion c = base_criterion(p, m);
    const auto g = m >= 5 ? stage_offsets(m) : std::vector<DigitPolynomial>{};
    for (int j = 3; j <= m; ++j) {
        DigitPolynomial rhs = j <= 4 ? printed_line(j)
                                     : DigitPolynomial::digit(j) - g[static_cast<std::size_t>(j)];
        c.congruences.push_back(Congruence{DigitPolynomial::digit(1), std::move(rhs), 1, false});
    }
    return finish(std::move(c));
}

Criterion derive_criterion(std::optional<Prime> p, int m) {
    Criterion c = base_criterion(p, m);
    const auto g = stage_offsets(m);
    for (int j = 3; j <= m; ++j) {
        c.congruences.push_back(Congruence{DigitPolynomial::digit(1),
                                           DigitPolynomial::digit(j) - g[static_cast<std::size_t>(j)],
                                           1, false});
    }
    return finish(std::move(c));
}

Criterion with_modulus(Criterion c, int first_line, int exponent) {
    for (std::size_t i = static_cast<std::size_t>(std::max(first_line, 1) - 1);
         i < c.congruences.size(); ++i) {
        c.congruences[i].modulus_exponent = exponent;
    }
    return c;
}

int Criterion::digits_needed() const {
    int best = 1;
    for (const auto& line : congruences) {
        best = std::max({best, line.lhs.max_digit() + 1, line.rhs.max_digit() + 1});
    }
    return best;
}

CriterionCheck Criterion::evaluate(const PadicNumber& a) const {
    if (a.is_zero()) throw DomainError("criterion input must be nonzero");
    const Prime p = a.prime();
    if (prime && !(*prime == p)) throw DomainError("criterion built for another prime");
    const long pv = p.value();
    if (stages >= 1 && prime && stages > pv - 1) throw DomainError("stage count out of range");
    long divisor = 1;
    for (int i = 0; i < stages; ++i) divisor *= pv;
    if (a.valuation() % divisor != 0) return {false, 0};
    const int need = digits_needed();
    if (a.precision() < need) {
        throw PrecisionError("criterion needs " + std::to_string(need) + " digits");
    }
    std::vector<int> digits(static_cast<std::size_t>(need));
    for (int i = 0; i < need; ++i) digits[static_cast<std::size_t>(i)] = a.digit(i);
    for (std::size_t i = 0; i < congruences.size(); ++i) {
        const auto& line = congruences[i];
        const auto diff = (line.lhs - line.rhs).evaluate_mod(pv, digits, line.modulus_exponent);
        if (diff != 0) return {false, static_cast<int>(i) + 1};
    }
    return {true, -1};
}

std::string Criterion::divisor_text() const {
    if (prime) {
        long d = 1;
        for (int i = 0; i < stages; ++i) d *= prime->value();
        return std::to_string(d);
    }
    return stages == 1 ? "p" : "p^" + std::to_string(stages);
}

std::string Criterion::to_unicode() const {
    std::ostringstream os;
    const std::string base = prime ? std::to_string(prime->value()) : "p";
    os << (stages == 1 || prime ? divisor_text() : "p" + map_digits(std::to_string(stages), superscript_digits))
       << " ∣ γ(a)\n";
    for (const auto& line : congruences) {
        os << line.lhs.to_unicode() << (line.digit_equality ? " = " : " ≡ ") << line.rhs.to_unicode();
        if (!line.digit_equality) {
            os << "  (mod " << base;
            if (line.modulus_exponent != 1) {
                os << map_digits(std::to_string(line.modulus_exponent), superscript_digits);
            }
            os << ")";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace padix
