#include "padix/padic.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace padix {

namespace {

long strip_prime(mpz_class& n, Prime p) {
    const mpz_class pp = p.value();
    return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

mpz_class reduce(const mpz_class& n, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
    return s;
}

mpz_class parse_integer(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) throw std::invalid_argument("empty integer");
    mpz_class n;
    if (n.set_str(std::string(s), 10) != 0) {
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    }
    return n;
}

}  // namespace

PrecisionContext::PrecisionContext(Prime p, int working_precision)
    : prime(p), precision(working_precision) {
    if (working_precision < minimum_precision) {
        throw DomainError("working precision must be at least " +
                          std::to_string(minimum_precision));
    }
}

const mpz_class& prime_power(Prime p, int n) {
    thread_local std::map<std::pair<long, int>, mpz_class> cache;
    auto [it, inserted] = cache.try_emplace({p.value(), n});
    if (inserted) {
        mpz_ui_pow_ui(it->second.get_mpz_t(), static_cast<unsigned long>(p.value()),
                      static_cast<unsigned long>(n));
    }
    return it->second;
}

PadicNumber PadicNumber::zero(Prime p) { return PadicNumber(p, State::zero); }

PadicNumber PadicNumber::exhausted(Prime p, long absolute_precision) {
    PadicNumber r(p, State::exhausted);
    r.valuation_ = absolute_precision;
    return r;
}

PadicNumber PadicNumber::from_unit(Prime p, long valuation, mpz_class unit, int precision) {
    if (precision < 1) throw DomainError("a nonzero p-adic number needs at least one digit");
    PadicNumber r(p, State::nonzero);
    r.valuation_ = valuation;
    r.precision_ = precision;
    r.unit_ = reduce(unit, prime_power(p, precision));
    if (mpz_divisible_ui_p(r.unit_.get_mpz_t(), static_cast<unsigned long>(p.value())) != 0) {
        throw DomainError("unit part is divisible by p");
    }
    return r;
}

PadicNumber PadicNumber::from_digits(Prime p, long valuation, std::span<const int> digits) {
    if (digits.empty()) throw DomainError("no digits");
    mpz_class u = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (digits[i] < 0 || digits[i] >= p.value()) {
            throw DomainError("digit out of range: " + std::to_string(digits[i]));
        }
        u = u * p.value() + digits[i];
    }
    if (digits.front() == 0) throw DomainError("leading unit digit must be nonzero");
    return from_unit(p, valuation, u, static_cast<int>(digits.size()));
}

long PadicNumber::valuation() const {
    if (state_ == State::zero) throw DomainError("zero has no valuation");
    if (state_ == State::exhausted) {
        throw PrecisionError("precision exhausted: value is only known to be O(p^" +
                             std::to_string(valuation_) + ")");
    }
    return valuation_;
}

long PadicNumber::absolute_precision() const {
    switch (state_) {
        case State::zero: return LONG_MAX;
        case State::exhausted: return valuation_;
        case State::nonzero: break;
    }
    return valuation_ + precision_;
}

const mpz_class& PadicNumber::unit() const {
    (void)valuation();
    return unit_;
}

int PadicNumber::digit(int i) const {
    (void)valuation();
    if (i < 0 || i >= precision_) {
        throw PrecisionError("digit " + std::to_string(i) + " is beyond precision " +
                             std::to_string(precision_));
    }
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), unit_.get_mpz_t(), prime_power(prime_, i).get_mpz_t());
    return static_cast<int>(mpz_fdiv_ui(q.get_mpz_t(), static_cast<unsigned long>(prime_.value())));
}

std::vector<int> PadicNumber::digits() const {
    (void)valuation();
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(precision_));
    mpz_class u = unit_;
    const auto p = static_cast<unsigned long>(prime_.value());
    for (int i = 0; i < precision_; ++i) {
        out.push_back(static_cast<int>(mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), p)));
    }
    return out;
}

PadicNumber PadicNumber::truncated(int n) const {
    if (state_ != State::nonzero || n >= precision_) return *this;
    return from_unit(prime_, valuation_, unit_, n);
}

PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
    if (!(x.prime_ == y.prime_)) throw DomainError("mixing different primes");
    using State = PadicNumber::State;
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const Prime p = x.prime_;
    if (x.is_exhausted() && y.is_exhausted()) {
        return PadicNumber::exhausted(p, std::min(x.valuation_, y.valuation_));
    }
    if (x.is_exhausted() || y.is_exhausted()) {
        const PadicNumber& z = x.is_exhausted() ? x : y;
        const PadicNumber& w = x.is_exhausted() ? y : x;
        const long k = std::min(z.valuation_, w.absolute_precision());
        if (w.valuation_ >= k) return PadicNumber::exhausted(p, k);
        return w.truncated(static_cast<int>(k - w.valuation_));
    }

    const long abs_prec = std::min(x.absolute_precision(), y.absolute_precision());
    const long m = std::min(x.valuation_, y.valuation_);
    const int width = static_cast<int>(abs_prec - m);
    const mpz_class& modulus = prime_power(p, width);
    mpz_class s = 0;
    for (const PadicNumber* t : {&x, &y}) {
        const long shift = t->valuation_ - m;
        if (shift < width) s += t->unit_ * prime_power(p, static_cast<int>(shift));
    }
    s = reduce(s, modulus);
    if (s == 0) return PadicNumber::exhausted(p, abs_prec);
    const long k = strip_prime(s, p);
    PadicNumber r(p, State::nonzero);
    r.valuation_ = m + k;
    r.precision_ = width - static_cast<int>(k);
    r.unit_ = s;
    return r;
}

PadicNumber PadicNumber::operator-() const {
    if (state_ != State::nonzero) return *this;
    PadicNumber r = *this;
    r.unit_ = prime_power(prime_, precision_) - unit_;
    return r;
}

PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
    if (!(x.prime_ == y.prime_)) throw DomainError("mixing different primes");
    const Prime p = x.prime_;
    if (x.is_zero() || y.is_zero()) return PadicNumber::zero(p);
    // for an exhausted operand valuation_ holds its O(p^k) bound
    if (x.is_exhausted() || y.is_exhausted()) {
        return PadicNumber::exhausted(p, x.valuation_ + y.valuation_);
    }
    const int n = std::min(x.precision_, y.precision_);
    PadicNumber r(p, PadicNumber::State::nonzero);
    r.valuation_ = x.valuation_ + y.valuation_;
    r.precision_ = n;
    r.unit_ = reduce(x.unit_ * y.unit_, prime_power(p, n));
    return r;
}

PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) { return x * inv(y); }

PadicNumber canonicalize_rational(const mpz_class& numerator, const mpz_class& denominator,
                                  const PrecisionContext& ctx) {
    if (denominator == 0) throw DomainError("zero denominator");
    if (numerator == 0) return PadicNumber::zero(ctx.prime);
    mpz_class n = numerator;
    mpz_class d = denominator;
    const long v = strip_prime(n, ctx.prime) - strip_prime(d, ctx.prime);
    const mpz_class& modulus = prime_power(ctx.prime, ctx.precision);
    mpz_class dinv;
    mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), modulus.get_mpz_t());
    return PadicNumber::from_unit(ctx.prime, v, n * dinv, ctx.precision);
}

PadicNumber from_integer(const mpz_class& n, const PrecisionContext& ctx) {
    return canonicalize_rational(n, 1, ctx);
}

PadicNumber from_rational(const mpq_class& q, const PrecisionContext& ctx) {
    return canonicalize_rational(q.get_num(), q.get_den(), ctx);
}

mpq_class norm(const PadicNumber& x) {
    if (x.is_zero()) return 0;
    const long v = x.valuation();
    const mpz_class& pw = prime_power(x.prime(), static_cast<int>(v < 0 ? -v : v));
    return v >= 0 ? mpq_class(1, pw) : mpq_class(pw, 1);
}

PadicNumber add(const PadicNumber& x, const PadicNumber& y) { return x + y; }
PadicNumber sub(const PadicNumber& x, const PadicNumber& y) { return x - y; }
PadicNumber mul(const PadicNumber& x, const PadicNumber& y) { return x * y; }

PadicNumber inv(const PadicNumber& x) {
    if (x.is_zero()) throw DomainError("inverse of zero");
    const long v = x.valuation();
    const mpz_class& modulus = prime_power(x.prime(), x.precision());
    mpz_class u;
    mpz_invert(u.get_mpz_t(), x.unit().get_mpz_t(), modulus.get_mpz_t());
    return PadicNumber::from_unit(x.prime(), -v, u, x.precision());
}

PadicNumber pow(const PadicNumber& x, unsigned long e) {
    if (e == 0) {
        if (x.is_zero_like()) throw DomainError("0^0 is undefined");
        return PadicNumber::from_unit(x.prime(), 0, 1, x.precision());
    }
    PadicNumber base = x;
    PadicNumber result = x;
    bool have = false;
    while (e != 0) {
        if ((e & 1UL) != 0) {
            result = have ? result * base : base;
            have = true;
        }
        e >>= 1U;
        if (e != 0) base = base * base;
    }
    return result;
}

int digit(const PadicNumber& x, int i) { return x.digit(i); }

bool equal_at(const PadicNumber& x, const PadicNumber& y, int m) {
    if (x.is_zero_like() || y.is_zero_like()) return x.is_zero_like() && y.is_zero_like();
    if (x.precision() < m || y.precision() < m) {
        throw PrecisionError("comparison at precision " + std::to_string(m) +
                             " needs that many digits on both sides");
    }
    if (x.valuation() != y.valuation()) return false;
    const mpz_class& modulus = prime_power(x.prime(), m);
    return reduce(x.unit(), modulus) == reduce(y.unit(), modulus);
}

bool agree_to(const PadicNumber& x, const PadicNumber& y, long k) {
    const PadicNumber d = x - y;
    if (d.is_zero()) return true;
    if (d.is_exhausted()) return d.absolute_precision() >= k;
    return d.valuation() >= k;
}

std::string to_text(const PadicNumber& x) {
    if (x.is_zero()) return "0";
    const long p = x.prime().value();
    if (x.is_exhausted()) {
        return "O(" + std::to_string(p) + "^" + std::to_string(x.absolute_precision()) + ")";
    }
    std::ostringstream os;
    os << p << "^" << x.valuation() << " * (";
    const auto ds = x.digits();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i > 0) os << " + ";
        os << ds[i];
        if (i == 1) os << "*" << p;
        if (i > 1) os << "*" << p << "^" << i;
    }
    os << " + ...)";
    return os.str();
}

std::string to_compact(const PadicNumber& x) {
    if (x.is_zero()) return "0";
    if (x.is_exhausted()) return "O(" + std::to_string(x.absolute_precision()) + ")";
    std::ostringstream os;
    os << x.valuation() << "|";
    const auto ds = x.digits();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i > 0) os << ",";
        os << ds[i];
    }
    return os.str();
}

PadicNumber parse_value(std::string_view text, const PrecisionContext& ctx) {
    const std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty value");
    if (s.size() > 3 && s.substr(0, 2) == "O(" && s.back() == ')') {
        return PadicNumber::exhausted(
            ctx.prime, parse_integer(s.substr(2, s.size() - 3)).get_si());
    }
    if (const auto bar = s.find('|'); bar != std::string_view::npos) {
        const long v = parse_integer(s.substr(0, bar)).get_si();
        std::vector<int> ds;
        std::string_view rest = s.substr(bar + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            ds.push_back(static_cast<int>(parse_integer(rest.substr(0, comma)).get_si()));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        return PadicNumber::from_digits(ctx.prime, v, ds);
    }
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const mpz_class d = parse_integer(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return canonicalize_rational(parse_integer(s.substr(0, slash)), d, ctx);
    }
    return from_integer(parse_integer(s), ctx);
}

}  // namespace padix
