#include "padix/prime.hpp"

#include <limits>

namespace padix {

bool is_prime(long n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (long d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

int valuation_of(long n, Prime p) {
    if (n == 0) throw DomainError("valuation of zero");
    int v = 0;
    while (n % p.value() == 0) {
        n /= p.value();
        ++v;
    }
    return v;
}

std::uint64_t ipow(Prime p, int e) {
    std::uint64_t r = 1;
    const auto base = static_cast<std::uint64_t>(p.value());
    for (int i = 0; i < e; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / base) {
            throw BudgetError("p^" + std::to_string(e) + " overflows 64 bits");
        }
        r *= base;
    }
    return r;
}

}  // namespace padix
