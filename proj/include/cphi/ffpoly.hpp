#pragma once

#include <vector>

#include "cphi/field.hpp"

namespace cphi {

// Dense univariate polynomial over a Field. Coefficient i belongs to x^i;
// the zero polynomial has an empty coefficient vector.
class FFPoly {
public:
    explicit FFPoly(Field f) : field_(std::move(f)) {}
    FFPoly(Field f, std::vector<uint64_t> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

    static FFPoly zero(const Field& f) { return FFPoly(f); }
    static FFPoly one(const Field& f) { return FFPoly(f, {1}); }
    static FFPoly constant(const Field& f, uint64_t c) { return FFPoly(f, {c}); }
    static FFPoly x(const Field& f) { return FFPoly(f, {0, 1}); }

    const Field& field() const { return field_; }
    const std::vector<uint64_t>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }

    bool operator==(const FFPoly& o) const { return c_ == o.c_; }
    bool operator!=(const FFPoly& o) const { return c_ != o.c_; }

    FFPoly operator+(const FFPoly& o) const;
    FFPoly operator-(const FFPoly& o) const;
    FFPoly operator*(const FFPoly& o) const;
    FFPoly scaled(uint64_t s) const;
    FFPoly monic() const;
    FFPoly derivative() const;
    FFPoly shifted(size_t e) const;  // * x^e

    // Division with remainder; divisor nonzero.
    std::pair<FFPoly, FFPoly> divmod(const FFPoly& d) const;
    FFPoly operator/(const FFPoly& d) const { return divmod(d).first; }
    FFPoly operator%(const FFPoly& d) const { return divmod(d).second; }

    uint64_t eval(uint64_t x) const;

    // (deg, coefficients highest-first) ordering used to canonicalize factor lists.
    bool lex_less(const FFPoly& o) const;

    std::string to_string() const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    Field field_;
    std::vector<uint64_t> c_;
};

FFPoly poly_gcd(FFPoly a, FFPoly b);  // monic result
FFPoly poly_powmod(const FFPoly& base, const Int& e, const FFPoly& mod);

bool poly_is_irreducible(const FFPoly& f);

struct PolyFactorization {
    uint64_t unit;  // leading coefficient of the input
    std::vector<std::pair<FFPoly, int>> factors;  // monic irreducible, sorted, with multiplicities
};

// Squarefree split + distinct-degree split + Cantor-Zassenhaus equal-degree
// split (trace map in characteristic 2). Deterministic for a fixed rng state.
PolyFactorization poly_factor(const FFPoly& f, Rng& rng);

// Roots in the coefficient field, with multiplicities, ascending by code.
std::vector<std::pair<uint64_t, int>> poly_roots(const FFPoly& f, Rng& rng);

}  // namespace cphi
