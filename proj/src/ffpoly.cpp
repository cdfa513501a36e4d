#include "cphi/ffpoly.hpp"

#include <algorithm>
#include <sstream>

namespace cphi {

FFPoly FFPoly::operator+(const FFPoly& o) const {
    std::vector<uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = field_.add(coeff(i), o.coeff(i));
    return FFPoly(field_, std::move(r));
}

FFPoly FFPoly::operator-(const FFPoly& o) const {
    std::vector<uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = field_.sub(coeff(i), o.coeff(i));
    return FFPoly(field_, std::move(r));
}

FFPoly FFPoly::operator*(const FFPoly& o) const {
    if (is_zero() || o.is_zero()) return FFPoly(field_);
    std::vector<uint64_t> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r[i + j] = field_.add(r[i + j], field_.mul(c_[i], o.c_[j]));
        }
    }
    return FFPoly(field_, std::move(r));
}

FFPoly FFPoly::scaled(uint64_t s) const {
    std::vector<uint64_t> r(c_);
    for (auto& v : r) v = field_.mul(v, s);
    return FFPoly(field_, std::move(r));
}

FFPoly FFPoly::monic() const {
    ensure(!is_zero(), "monic() of zero polynomial");
    return leading() == 1 ? *this : scaled(field_.inv(leading()));
}

FFPoly FFPoly::derivative() const {
    if (c_.size() <= 1) return FFPoly(field_);
    std::vector<uint64_t> r(c_.size() - 1, 0);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = field_.mul(c_[i], field_.from_int(static_cast<long long>(i)));
    return FFPoly(field_, std::move(r));
}

FFPoly FFPoly::shifted(size_t e) const {
    if (is_zero()) return *this;
    std::vector<uint64_t> r(c_.size() + e, 0);
    std::copy(c_.begin(), c_.end(), r.begin() + static_cast<long>(e));
    return FFPoly(field_, std::move(r));
}

std::pair<FFPoly, FFPoly> FFPoly::divmod(const FFPoly& d) const {
    ensure(!d.is_zero(), "polynomial division by zero");
    if (degree() < d.degree()) return {FFPoly(field_), *this};
    std::vector<uint64_t> rem(c_);
    std::vector<uint64_t> quo(degree() - d.degree() + 1, 0);
    uint64_t ilc = field_.inv(d.leading());
    for (int i = degree(); i >= d.degree(); --i) {
        uint64_t c = rem[static_cast<size_t>(i)];
        if (c == 0) continue;
        uint64_t factor = field_.mul(c, ilc);
        quo[static_cast<size_t>(i - d.degree())] = factor;
        for (int j = 0; j <= d.degree(); ++j) {
            size_t idx = static_cast<size_t>(i - d.degree() + j);
            rem[idx] = field_.sub(rem[idx], field_.mul(factor, d.c_[static_cast<size_t>(j)]));
        }
    }
    return {FFPoly(field_, std::move(quo)), FFPoly(field_, std::move(rem))};
}

uint64_t FFPoly::eval(uint64_t x) const {
    uint64_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
    return acc;
}

bool FFPoly::lex_less(const FFPoly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    }
    return false;
}

std::string FFPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i >= 1) {
            if (c_[i] != 1) os << "*";
            os << "x";
            if (i >= 2) os << "^" << i;
        }
    }
    return os.str();
}

FFPoly poly_gcd(FFPoly a, FFPoly b) {
    while (!b.is_zero()) {
        FFPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

FFPoly poly_powmod(const FFPoly& base, const Int& e, const FFPoly& mod) {
    FFPoly r = FFPoly::one(base.field());
    FFPoly b = base % mod;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = (r * r) % mod;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % mod;
    }
    return r;
}

namespace {

Int q_as_int(const Field& f) { return Int(static_cast<unsigned long>(f.q())); }

// p-th root of a polynomial whose derivative vanishes: f = g(x^p) with
// g coefficients the p-th roots (c^(q/p)) of f's.
FFPoly pth_root(const FFPoly& f) {
    const Field& F = f.field();
    uint64_t p = F.p();
    std::vector<uint64_t> g;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) {
        uint64_t c = f.coeff(static_cast<size_t>(i));
        // c^(q/p) is the p-th root in GF(q)
        g.push_back(F.pow(c, F.q() / p));
    }
    return FFPoly(F, std::move(g));
}

void squarefree_rec(const FFPoly& f, int mult_scale, std::vector<std::pair<FFPoly, int>>& out) {
    const Field& F = f.field();
    if (f.degree() <= 0) return;
    FFPoly d = f.derivative();
    if (d.is_zero()) {
        squarefree_rec(pth_root(f), mult_scale * static_cast<int>(F.p()), out);
        return;
    }
    FFPoly t = poly_gcd(f, d);
    FFPoly w = f / t;
    int i = 1;
    while (!w.is_one()) {
        FFPoly y = poly_gcd(w, t);
        FFPoly z = w / y;
        if (z.degree() > 0) out.push_back({z.monic(), i * mult_scale});
        w = std::move(y);
        t = t / w;
        ++i;
    }
    if (t.degree() > 0) squarefree_rec(t, mult_scale, out);
}

// Equal-degree splitting of a squarefree product of irreducibles of degree d.
void edf(const FFPoly& f, int d, Rng& rng, std::vector<FFPoly>& out) {
    const Field& F = f.field();
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    Int q = q_as_int(F);
    int n = f.degree();
    while (true) {
        // random nonzero polynomial of degree < n
        std::vector<uint64_t> rc(static_cast<size_t>(n));
        for (auto& c : rc) c = rng.below(F.q());
        FFPoly u(F, std::move(rc));
        if (u.is_zero()) continue;
        FFPoly g = poly_gcd(u, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(f / g, d, rng, out);
            return;
        }
        FFPoly split(F);
        if (F.p() == 2) {
            // trace map over GF(2^k): sum of u^(2^i), i < k*d
            unsigned steps = F.k() * static_cast<unsigned>(d);
            FFPoly acc = u % f;
            FFPoly term = u % f;
            for (unsigned i = 1; i < steps; ++i) {
                term = (term * term) % f;
                acc = acc + term;
            }
            split = acc;
        } else {
            Int e = 1;
            for (int i = 0; i < d; ++i) e *= q;
            e = (e - 1) / 2;
            split = poly_powmod(u, e, f) - FFPoly::one(F);
        }
        g = poly_gcd(split, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(f / g, d, rng, out);
            return;
        }
    }
}

// Distinct-degree factorization of squarefree monic f: (product, degree) list.
std::vector<std::pair<FFPoly, int>> ddf(const FFPoly& f) {
    const Field& F = f.field();
    Int q = q_as_int(F);
    std::vector<std::pair<FFPoly, int>> out;
    FFPoly rest = f;
    FFPoly h = FFPoly::x(F) % rest;
    int d = 0;
    while (rest.degree() > 0) {
        ++d;
        if (2 * d > rest.degree()) {
            out.push_back({rest, rest.degree()});
            break;
        }
        h = poly_powmod(h, q, rest);
        FFPoly g = poly_gcd(h - FFPoly::x(F), rest);
        if (g.degree() > 0) {
            out.push_back({g, d});
            rest = rest / g;
            h = h % rest;
        }
    }
    return out;
}

}  // namespace

PolyFactorization poly_factor(const FFPoly& f, Rng& rng) {
    ensure(!f.is_zero(), "poly_factor of zero polynomial");
    PolyFactorization result;
    result.unit = f.leading();
    if (f.degree() == 0) return result;

    std::vector<std::pair<FFPoly, int>> squarefree;
    squarefree_rec(f.monic(), 1, squarefree);

    for (auto& [sf, mult] : squarefree) {
        for (auto& [prod, d] : ddf(sf)) {
            std::vector<FFPoly> irr;
            edf(prod, d, rng, irr);
            for (auto& g : irr) result.factors.push_back({g, mult});
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& a, const auto& b) { return a.first.lex_less(b.first); });
    return result;
}

bool poly_is_irreducible(const FFPoly& f) {
    ensure(f.degree() >= 1, "irreducibility undefined for constants");
    const Field& F = f.field();
    Int q = q_as_int(F);
    int k = f.degree();
    FFPoly x = FFPoly::x(F);
    FFPoly h = x % f;
    // x^(q^k) == x mod f and gcd(x^(q^(k/t)) - x, f) = 1 for prime t | k
    std::vector<uint64_t> prime_divs = prime_divisors_u64(static_cast<uint64_t>(k));
    std::vector<FFPoly> powers;  // x^(q^i) as needed
    FFPoly cur = h;
    for (int i = 1; i <= k; ++i) {
        cur = poly_powmod(cur, q, f);
        for (uint64_t t : prime_divs) {
            if (static_cast<uint64_t>(k) / t == static_cast<uint64_t>(i)) {
                if (!poly_gcd(cur - x, f).is_one()) return false;
            }
        }
        if (i == k && !(cur == x % f)) return false;
    }
    return true;
}

std::vector<std::pair<uint64_t, int>> poly_roots(const FFPoly& f, Rng& rng) {
    std::vector<std::pair<uint64_t, int>> roots;
    auto fact = poly_factor(f, rng);
    for (auto& [g, m] : fact.factors) {
        if (g.degree() == 1) {
            // x + c -> root -c
            roots.push_back({f.field().neg(g.coeff(0)), m});
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace cphi
