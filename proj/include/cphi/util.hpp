#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cphi {

using Int = mpz_class;
using Rat = mpq_class;

class engine_error : public std::runtime_error {
public:
    explicit engine_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw engine_error(msg);
}

// ---- 64-bit modular arithmetic ----

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = m == 1 ? 0 : 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline uint64_t lcm_u64(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_u64(a, b) * b;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

// Pollard-rho factorization; returns prime -> exponent, ascending by prime.
std::vector<std::pair<uint64_t, int>> factor_u64(uint64_t n);

std::vector<uint64_t> prime_divisors_u64(uint64_t n);

uint64_t euler_phi_u64(uint64_t n);

// Largest power of p dividing n.
inline uint64_t p_part(uint64_t n, uint64_t p) {
    uint64_t r = 1;
    while (n % p == 0) {
        n /= p;
        r *= p;
    }
    return r;
}

inline uint64_t p_prime_part(uint64_t n, uint64_t p) { return n / p_part(n, p); }

inline int valuation(uint64_t n, uint64_t p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Multiplicative order of a modulo m (gcd(a,m)=1).
uint64_t mult_order_u64(uint64_t a, uint64_t m);

// ---- hashing / seeding ----

inline uint64_t fnv1a(const std::string& s, uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Seeded generator; jobs derive independent streams from (seed, tag).
class Rng {
public:
    explicit Rng(uint64_t seed = 0) : eng_(seed ^ 0x9e3779b97f4a7c15ull) {}

    static Rng derive(uint64_t seed, const std::string& tag) {
        return Rng(seed ^ fnv1a(tag));
    }

    uint64_t next() { return eng_(); }

    // uniform in [0, n)
    uint64_t below(uint64_t n) {
        std::uniform_int_distribution<uint64_t> d(0, n - 1);
        return d(eng_);
    }

private:
    std::mt19937_64 eng_;
};

// ---- exact rational helpers ----

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    ensure(q.set_str(s, 10) == 0, "bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

inline long rat_to_long(const Rat& q) {
    ensure(rat_is_integer(q), "value is not an integer");
    ensure(q.get_num().fits_slong_p(), "integer out of machine range");
    return q.get_num().get_si();
}

}  // namespace cphi
