#include "cphi/util.hpp"

#include <algorithm>

namespace cphi {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic for all n < 2^64.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

uint64_t pollard_rho(uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        auto f = [n, c](uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    uint64_t d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<uint64_t, int>> factor_u64(uint64_t n) {
    ensure(n >= 1, "factor_u64: n must be positive");
    std::vector<uint64_t> primes;
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<uint64_t, int>> out;
    for (uint64_t p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.push_back({p, 1});
    }
    return out;
}

std::vector<uint64_t> prime_divisors_u64(uint64_t n) {
    std::vector<uint64_t> out;
    for (auto& [p, e] : factor_u64(n)) out.push_back(p);
    return out;
}

uint64_t euler_phi_u64(uint64_t n) {
    uint64_t r = n;
    for (auto& [p, e] : factor_u64(n)) r = r / p * (p - 1);
    return r;
}

uint64_t mult_order_u64(uint64_t a, uint64_t m) {
    ensure(m >= 1 && gcd_u64(a % m, m) == 1, "mult_order: arguments not coprime");
    if (m == 1) return 1;
    uint64_t order = euler_phi_u64(m);
    for (uint64_t p : prime_divisors_u64(order)) {
        while (order % p == 0 && powmod(a, order / p, m) == 1) order /= p;
    }
    return order;
}

}  // namespace cphi
