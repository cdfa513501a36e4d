#include "cphi/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace cphi {

namespace {

// integer polynomial helpers (dense, ascending degree)
using ZPoly = std::vector<Int>;

void ztrim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// exact division of integer polynomials, divisor monic up to sign
ZPoly zdiv_exact(ZPoly num, const ZPoly& den) {
    ZPoly q(num.size() - den.size() + 1, 0);
    for (size_t i = q.size(); i-- > 0;) {
        Int c = num[i + den.size() - 1] / den.back();
        q[i] = c;
        if (c != 0) {
            for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
        }
    }
    for (const Int& r : num) ensure(r == 0, "cyclotomic polynomial division not exact");
    return q;
}

ZPoly cyclotomic_poly(uint64_t e, std::map<uint64_t, ZPoly>& memo) {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    // x^e - 1 divided by all proper-divisor cyclotomics
    ZPoly f(e + 1, 0);
    f[0] = -1;
    f[e] = 1;
    for (uint64_t d = 1; d < e; ++d) {
        if (e % d == 0) f = zdiv_exact(std::move(f), cyclotomic_poly(d, memo));
    }
    ztrim(f);
    memo[e] = f;
    return f;
}

std::shared_ptr<const CycloContext> build_context(uint64_t e) {
    ensure(e >= 1, "conductor must be positive");
    auto ctx = std::make_shared<CycloContext>();
    ctx->e = e;
    ctx->phi = static_cast<size_t>(euler_phi_u64(e));
    static std::map<uint64_t, ZPoly> memo;
    static std::mutex memo_mutex;
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        ctx->cyclo_poly = cyclotomic_poly(e, memo);
    }
    size_t phi = ctx->phi;
    ensure(ctx->cyclo_poly.size() == phi + 1, "cyclotomic degree mismatch");
    size_t nrows = std::max<size_t>(e, 2 * phi > 0 ? 2 * phi - 1 : 1);
    ctx->power_row.resize(nrows);
    for (size_t t = 0; t < nrows; ++t) {
        std::vector<Int> row(phi, 0);
        if (t < phi) {
            row[t] = 1;
        } else {
            const auto& prev = ctx->power_row[t - 1];
            // multiply by x, fold x^phi = -(low part of Phi_e)
            Int lead = prev[phi - 1];
            for (size_t j = phi; j-- > 1;) row[j] = prev[j - 1];
            row[0] = 0;
            if (lead != 0) {
                for (size_t j = 0; j < phi; ++j) row[j] -= lead * ctx->cyclo_poly[j];
            }
        }
        ctx->power_row[t] = std::move(row);
    }
    return ctx;
}

}  // namespace

std::shared_ptr<const CycloContext> CycloContext::get(uint64_t e) {
    static std::map<uint64_t, std::shared_ptr<const CycloContext>> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    auto ctx = build_context(e);
    cache[e] = ctx;
    return ctx;
}

Cyclotomic::Cyclotomic(uint64_t e) : ctx_(CycloContext::get(e)), c_(ctx_->phi, Rat(0)) {}

Cyclotomic::Cyclotomic(uint64_t e, std::vector<Rat> coeffs) : ctx_(CycloContext::get(e)), c_(std::move(coeffs)) {
    ensure(c_.size() == ctx_->phi, "cyclotomic coefficient vector has wrong length");
    for (auto& r : c_) r.canonicalize();
}

Cyclotomic Cyclotomic::from_rat(uint64_t e, const Rat& r) {
    Cyclotomic x(e);
    x.c_[0] = r;
    return x;
}

Cyclotomic Cyclotomic::root_of_unity(uint64_t e, uint64_t j) {
    Cyclotomic x(e);
    x.add_monomial(Rat(1), j % e);
    return x;
}

void Cyclotomic::add_monomial(const Rat& coeff, uint64_t power) {
    const auto& row = ctx_->power_row[power];
    for (size_t i = 0; i < ctx_->phi; ++i) {
        if (row[i] != 0) c_[i] += coeff * Rat(row[i]);
    }
}

bool Cyclotomic::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Cyclotomic::to_rational() const {
    ensure(is_rational(), "cyclotomic value is not rational");
    return c_[0];
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    ensure(conductor() == o.conductor(), "conductor mismatch (embed first)");
    Cyclotomic r(conductor());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    ensure(conductor() == o.conductor(), "conductor mismatch (embed first)");
    Cyclotomic r(conductor());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r(conductor());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    ensure(conductor() == o.conductor(), "conductor mismatch (embed first)");
    size_t phi = ctx_->phi;
    std::vector<Rat> conv(2 * phi - 1, Rat(0));
    for (size_t i = 0; i < phi; ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < phi; ++j) {
            if (o.c_[j] == 0) continue;
            conv[i + j] += c_[i] * o.c_[j];
        }
    }
    Cyclotomic r(conductor());
    for (size_t t = 0; t < conv.size(); ++t) {
        if (conv[t] == 0) continue;
        if (t < phi)
            r.c_[t] += conv[t];
        else
            r.add_monomial(conv[t], t);
    }
    return r;
}

Cyclotomic Cyclotomic::scaled(const Rat& s) const {
    Cyclotomic r(conductor());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    return conductor() == o.conductor() && c_ == o.c_;
}

Cyclotomic Cyclotomic::galois(uint64_t t) const {
    uint64_t e = conductor();
    ensure(gcd_u64(t % e, e) == 1, "galois exponent not coprime to conductor");
    Cyclotomic r(e);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        r.add_monomial(c_[i], (static_cast<uint64_t>(i) * (t % e)) % e);
    }
    return r;
}

Cyclotomic Cyclotomic::embed(uint64_t E) const {
    uint64_t e = conductor();
    ensure(E % e == 0, "cannot embed: conductor does not divide target");
    if (E == e) return *this;
    uint64_t scale = E / e;
    Cyclotomic r(E);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        r.add_monomial(c_[i], static_cast<uint64_t>(i) * scale % E);
    }
    return r;
}

std::optional<Cyclotomic> Cyclotomic::descend(uint64_t d) const {
    uint64_t e = conductor();
    ensure(e % d == 0, "descend: target conductor must divide");
    if (d == e) return *this;
    // Solve embed(y) = *this as a rational linear system in y's phi(d) coords.
    auto dctx = CycloContext::get(d);
    size_t cols = dctx->phi, rows = ctx_->phi;
    // column j = embed(zeta_d^j) coefficients
    std::vector<std::vector<Rat>> mat(rows, std::vector<Rat>(cols + 1, Rat(0)));
    for (size_t j = 0; j < cols; ++j) {
        Cyclotomic basis = Cyclotomic::root_of_unity(e, static_cast<uint64_t>(j) * (e / d));
        for (size_t i = 0; i < rows; ++i) mat[i][j] = basis.coeffs()[i];
    }
    for (size_t i = 0; i < rows; ++i) mat[i][cols] = c_[i];
    // rational gaussian elimination
    size_t r = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t pr = rows;
        for (size_t i = r; i < rows; ++i)
            if (mat[i][col] != 0) {
                pr = i;
                break;
            }
        if (pr == rows) continue;
        std::swap(mat[r], mat[pr]);
        Rat inv = 1 / mat[r][col];
        for (auto& x : mat[r]) x *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || mat[i][col] == 0) continue;
            Rat f = mat[i][col];
            for (size_t j = col; j <= cols; ++j) mat[i][j] -= f * mat[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (mat[i][cols] != 0) return std::nullopt;
    std::vector<Rat> y(cols, Rat(0));
    for (size_t i = 0; i < pivot_col.size(); ++i) y[pivot_col[i]] = mat[i][cols];
    return Cyclotomic(d, std::move(y));
}

bool Cyclotomic::lex_less(const Cyclotomic& o) const {
    ensure(conductor() == o.conductor(), "lex_less: conductor mismatch");
    for (size_t i = 0; i < c_.size(); ++i) {
        int c = cmp(c_[i], o.c_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string Cyclotomic::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c_[i].get_str();
        } else {
            if (c_[i] != 1) os << c_[i].get_str() << "*";
            os << "z" << conductor();
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace cphi
