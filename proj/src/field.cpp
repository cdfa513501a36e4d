#include "cphi/field.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

namespace cphi {

namespace {

// Raw polynomial helpers over GF(p), dense coefficient vectors, used for
// field construction and the no-table fallback.

using Poly = std::vector<uint64_t>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_rem(Poly f, const Poly& m, uint64_t p) {
    // m monic
    int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(f.size()) - 1 >= dm) {
        uint64_t c = f.back();
        int shift = static_cast<int>(f.size()) - 1 - dm;
        if (c != 0) {
            for (int i = 0; i <= dm; ++i) {
                uint64_t t = mulmod(c, m[i], p);
                uint64_t& fi = f[i + shift];
                fi = (fi + p - t) % p;
            }
        }
        f.pop_back();
        trim(f);
        if (f.empty()) break;
    }
    return f;
}

Poly poly_mulmod_raw(const Poly& a, const Poly& b, const Poly& m, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            unsigned __int128 t = static_cast<unsigned __int128>(a[i]) * b[j] + c[i + j];
            c[i + j] = static_cast<uint64_t>(t % p);
        }
    }
    trim(c);
    return poly_rem(std::move(c), m, p);
}

Poly poly_powmod_raw(Poly base, uint64_t e, const Poly& m, uint64_t p) {
    Poly r = {1};
    base = poly_rem(std::move(base), m, p);
    while (e) {
        if (e & 1) r = poly_mulmod_raw(r, base, m, p);
        base = poly_mulmod_raw(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd_raw(Poly a, Poly b, uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        uint64_t lc = b.back();
        if (lc != 1) {
            uint64_t il = powmod(lc, p - 2, p);
            for (auto& c : b) c = mulmod(c, il, p);
        }
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(p^j) mod m, by j successive p-th powers.
Poly frob_power(const Poly& m, uint64_t p, unsigned j) {
    Poly h = {0, 1};
    for (unsigned i = 0; i < j; ++i) h = poly_powmod_raw(h, p, m, p);
    return h;
}

bool poly_is_irreducible(const Poly& f, uint64_t p) {
    unsigned k = static_cast<unsigned>(f.size()) - 1;
    if (k == 1) return true;
    // x^(p^k) == x mod f
    Poly xqk = frob_power(f, p, k);
    Poly x = {0, 1};
    if (xqk != x) return false;
    for (uint64_t t : prime_divisors_u64(k)) {
        Poly h = frob_power(f, p, k / static_cast<unsigned>(t));
        // gcd(h - x, f) must be 1
        Poly d = h;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        trim(d);
        Poly g = poly_gcd_raw(f, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

struct Field::Impl {
    uint64_t p = 0;
    unsigned k = 0;
    uint64_t q = 0;
    std::vector<uint64_t> defpoly;
    uint64_t primitive = 0;
    std::vector<std::pair<uint64_t, int>> qm1_factors;

    bool tables = false;
    std::vector<uint32_t> exp_table;  // alpha^i, i in [0, q-1)
    std::vector<uint32_t> log_table;  // index by code, log_table[0] unused

    std::vector<uint64_t> decode(uint64_t a) const {
        std::vector<uint64_t> d(k);
        for (unsigned i = 0; i < k; ++i) {
            d[i] = a % p;
            a /= p;
        }
        return d;
    }

    uint64_t encode(const std::vector<uint64_t>& digits) const {
        uint64_t a = 0;
        for (size_t i = digits.size(); i-- > 0;) a = a * p + (digits[i] % p);
        return a;
    }

    uint64_t add(uint64_t a, uint64_t b) const {
        if (k == 1) {
            uint64_t s = a + b;
            return s >= p ? s - p : s;
        }
        if (p == 2) return a ^ b;
        uint64_t r = 0, mult = 1;
        for (unsigned i = 0; i < k; ++i) {
            uint64_t s = a % p + b % p;
            if (s >= p) s -= p;
            r += s * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        return r;
    }

    uint64_t neg(uint64_t a) const {
        if (k == 1) return a == 0 ? 0 : p - a;
        if (p == 2) return a;
        uint64_t r = 0, mult = 1;
        for (unsigned i = 0; i < k; ++i) {
            uint64_t d = a % p;
            r += (d == 0 ? 0 : p - d) * mult;
            a /= p;
            mult *= p;
        }
        return r;
    }

    uint64_t mul(uint64_t a, uint64_t b) const {
        if (k == 1) return mulmod(a, b, p);
        if (a == 0 || b == 0) return 0;
        if (tables) {
            uint64_t e = log_table[a] + log_table[b];
            uint64_t qm1 = q - 1;
            if (e >= qm1) e -= qm1;
            return exp_table[e];
        }
        return encode(poly_mulmod_raw(decode(a), decode(b), defpoly, p));
    }

    uint64_t pow_(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    uint64_t inv(uint64_t a) const {
        ensure(a != 0, "division by zero in GF(" + std::to_string(q) + ")");
        if (tables) {
            uint64_t l = log_table[a];
            return exp_table[l == 0 ? 0 : q - 1 - l];
        }
        return pow_(a, q - 2);
    }
};

namespace {

// Shared construction path. Returns fully built Impl.
std::shared_ptr<Field::Impl> build_field(uint64_t p, unsigned k, uint64_t bound) {
    ensure(p >= 2 && is_prime_u64(p), "field characteristic must be prime");
    ensure(k >= 1, "field extension degree must be positive");
    uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        ensure(q <= bound / p, "field size p^k exceeds the supported bound");
        q *= p;
    }

    auto impl = std::make_shared<Field::Impl>();
    impl->p = p;
    impl->k = k;
    impl->q = q;
    impl->qm1_factors = q > 2 ? factor_u64(q - 1) : std::vector<std::pair<uint64_t, int>>{};

    std::vector<uint64_t> qm1_primes;
    for (auto& [pr, e] : impl->qm1_factors) qm1_primes.push_back(pr);

    if (k == 1) {
        for (uint64_t c = 0; c < p; ++c) {
            uint64_t root = (p - c) % p;
            if (root == 0) continue;
            bool prim = true;
            for (uint64_t r : qm1_primes)
                if (powmod(root, (q - 1) / r, p) == 1) {
                    prim = false;
                    break;
                }
            if (prim) {
                impl->defpoly = {c, 1};
                impl->primitive = root;
                break;
            }
        }
        ensure(!impl->defpoly.empty(), "no primitive root found (impossible)");
        return impl;
    }

    // k >= 2: scan monic polynomials x^k + (digits of c) in code order.
    Poly f(k + 1, 0);
    f[k] = 1;
    bool found = false;
    for (uint64_t c = 0;; ++c) {
        ensure(c < q, "no primitive defining polynomial found (impossible)");
        uint64_t t = c;
        for (unsigned i = 0; i < k; ++i) {
            f[i] = t % p;
            t /= p;
        }
        if (f[0] == 0) continue;  // divisible by x
        if (!poly_is_irreducible(f, p)) continue;
        bool prim = true;
        Poly x = {0, 1};
        for (uint64_t r : qm1_primes) {
            Poly h = poly_powmod_raw(x, (q - 1) / r, f, p);
            if (h.size() == 1 && h[0] == 1) {
                prim = false;
                break;
            }
        }
        if (prim) {
            found = true;
            break;
        }
    }
    ensure(found, "unreachable");
    impl->defpoly.assign(f.begin(), f.end());
    impl->primitive = p;  // the root x

    if (q <= (uint64_t(1) << 20)) {
        impl->tables = true;
        impl->exp_table.resize(q - 1);
        impl->log_table.assign(q, 0);
        Poly acc = {1};
        for (uint64_t i = 0; i < q - 1; ++i) {
            uint64_t code = impl->encode(acc);
            impl->exp_table[i] = static_cast<uint32_t>(code);
            impl->log_table[code] = static_cast<uint32_t>(i);
            // multiply by x and reduce
            acc.insert(acc.begin(), 0);
            acc = poly_rem(std::move(acc), f, p);
            if (acc.empty()) acc = {0};
        }
    }
    return impl;
}

struct FieldCacheKey {
    uint64_t p;
    unsigned k;
    bool operator==(const FieldCacheKey& o) const { return p == o.p && k == o.k; }
};

struct FieldCacheKeyHash {
    size_t operator()(const FieldCacheKey& key) const { return std::hash<uint64_t>()(key.p * 131 + key.k); }
};

// Fields are deterministic functions of (p, k); cache them process-wide.
std::shared_ptr<const Field::Impl> cached_field(uint64_t p, unsigned k, uint64_t bound) {
    static std::unordered_map<FieldCacheKey, std::shared_ptr<const Field::Impl>, FieldCacheKeyHash> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find({p, k});
    if (it != cache.end()) return it->second;
    auto impl = build_field(p, k, bound);
    cache[{p, k}] = impl;
    return impl;
}

}  // namespace

Field Field::create(uint64_t p, unsigned k) { return Field(cached_field(p, k, kPublicBound)); }

Field Field::create_internal(uint64_t p, unsigned k) {
    return Field(cached_field(p, k, uint64_t(1) << 62));
}

uint64_t Field::p() const { return impl_->p; }
unsigned Field::k() const { return impl_->k; }
uint64_t Field::q() const { return impl_->q; }
const std::vector<uint64_t>& Field::defining_poly() const { return impl_->defpoly; }
uint64_t Field::primitive_element() const { return impl_->primitive; }

uint64_t Field::add(uint64_t a, uint64_t b) const { return impl_->add(a, b); }
uint64_t Field::sub(uint64_t a, uint64_t b) const { return impl_->add(a, impl_->neg(b)); }
uint64_t Field::neg(uint64_t a) const { return impl_->neg(a); }
uint64_t Field::mul(uint64_t a, uint64_t b) const { return impl_->mul(a, b); }
uint64_t Field::inv(uint64_t a) const { return impl_->inv(a); }
uint64_t Field::pow(uint64_t a, uint64_t e) const { return impl_->pow_(a, e); }

uint64_t Field::from_int(long long c) const {
    long long p = static_cast<long long>(impl_->p);
    long long r = c % p;
    if (r < 0) r += p;
    return static_cast<uint64_t>(r);
}

uint64_t Field::element_order(uint64_t a) const {
    ensure(a != 0, "element_order of zero");
    uint64_t order = impl_->q - 1;
    for (auto& [r, e] : impl_->qm1_factors) {
        while (order % r == 0 && impl_->pow_(a, order / r) == 1) order /= r;
    }
    return order;
}

uint64_t Field::dlog(uint64_t a) const {
    ensure(a != 0, "dlog of zero");
    if (impl_->tables) return impl_->log_table[a];
    uint64_t n = impl_->q - 1;
    if (n == 1) return 0;
    // baby-step giant-step
    uint64_t m = static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::unordered_map<uint64_t, uint64_t> baby;
    baby.reserve(m * 2);
    uint64_t g = impl_->primitive;
    uint64_t cur = 1;
    for (uint64_t j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = impl_->mul(cur, g);
    }
    uint64_t giant = impl_->inv(cur);  // cur = g^m
    uint64_t y = a;
    for (uint64_t i = 0; i <= m; ++i) {
        auto it = baby.find(y);
        if (it != baby.end()) return (i * m + it->second) % n;
        y = impl_->mul(y, giant);
    }
    throw engine_error("dlog: not found (element outside group?)");
}

bool Field::operator==(const Field& other) const {
    return impl_ == other.impl_ || (p() == other.p() && k() == other.k());
}

uint64_t Field::encode(const std::vector<uint64_t>& coeffs) const {
    std::vector<uint64_t> d(coeffs);
    d.resize(impl_->k, 0);
    return impl_->encode(d);
}

std::vector<uint64_t> Field::decode(uint64_t a) const { return impl_->decode(a); }

Embedding::Embedding(const Field& sub, const Field& sup) : sub_(sub), sup_(sup) {
    ensure(sub.p() == sup.p(), "embedding: different characteristics");
    ensure(sup.k() % sub.k() == 0, "embedding: degree does not divide");
    // Enumerate the subfield of sup as powers of s = prim^((q-1)/(q_sub-1));
    // the image of the small generator is the least-code root of the small
    // defining polynomial among them.
    uint64_t qs = sub.q(), Q = sup.q();
    const auto& f = sub.defining_poly();
    auto eval = [&](uint64_t x) {
        uint64_t acc = 0;
        for (size_t i = f.size(); i-- > 0;) acc = sup.add(sup.mul(acc, x), f[i] % sup.p());
        return acc;
    };
    uint64_t best = 0;
    bool found = false;
    if (eval(0) == 0) {
        best = 0;
        found = true;
    }
    uint64_t s = sup.pow(sup.primitive_element(), (Q - 1) / (qs - 1));
    uint64_t cur = 1;
    for (uint64_t j = 0; j < qs - 1; ++j) {
        if (eval(cur) == 0 && (!found || cur < best)) {
            best = cur;
            found = true;
        }
        cur = sup.mul(cur, s);
    }
    ensure(found, "embedding: no root of subfield polynomial (impossible)");
    // small-field generator: root of defpoly; for k=1 the root is -c.
    gen_powers_.resize(sub.k());
    uint64_t acc = 1;
    for (unsigned i = 0; i < sub.k(); ++i) {
        gen_powers_[i] = acc;
        acc = sup.mul(acc, best);
    }
}

uint64_t Embedding::map(uint64_t a) const {
    if (sub_.k() == 1) {
        // Elements of the prime field are the constants in any extension.
        return a;
    }
    auto digits = sub_.decode(a);
    uint64_t acc = 0;
    for (unsigned i = 0; i < sub_.k(); ++i) {
        if (digits[i] == 0) continue;
        acc = sup_.add(acc, sup_.mul(digits[i], gen_powers_[i]));
    }
    return acc;
}

}  // namespace cphi
