#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cphi/util.hpp"

namespace cphi {

// Shared per-conductor data: the cyclotomic polynomial and power-reduction
// rows x^t mod Phi_e for every exponent that can appear.
struct CycloContext {
    uint64_t e = 1;
    size_t phi = 1;
    std::vector<Int> cyclo_poly;             // Phi_e, monic, length phi+1
    std::vector<std::vector<Int>> power_row; // x^t mod Phi_e, t < max(e, 2*phi-1)

    static std::shared_ptr<const CycloContext> get(uint64_t e);
};

// Exact element of Q(zeta_e) in the power basis {zeta^i : i < phi(e)},
// always reduced mod Phi_e, so equality is coefficient-wise.
class Cyclotomic {
public:
    explicit Cyclotomic(uint64_t e = 1);
    Cyclotomic(uint64_t e, std::vector<Rat> coeffs);

    static Cyclotomic from_rat(uint64_t e, const Rat& r);
    // zeta_e^j (j mod e)
    static Cyclotomic root_of_unity(uint64_t e, uint64_t j);

    uint64_t conductor() const { return ctx_->e; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat to_rational() const;  // throws if not rational

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic scaled(const Rat& r) const;

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // zeta_e -> zeta_e^t for gcd(t, e) = 1; conj() is t = e-1.
    Cyclotomic galois(uint64_t t) const;
    Cyclotomic conj() const { return galois(conductor() - 1); }

    // Re-express in conductor E, e | E.
    Cyclotomic embed(uint64_t E) const;
    // Try to express in conductor d, d | e; nullopt if the value is not there.
    std::optional<Cyclotomic> descend(uint64_t d) const;

    // Lexicographic on coefficient vectors; used only for canonical sorting.
    bool lex_less(const Cyclotomic& o) const;

    std::string to_string() const;

private:
    void add_monomial(const Rat& coeff, uint64_t power);  // power < e
    std::shared_ptr<const CycloContext> ctx_;
    std::vector<Rat> c_;
};

}  // namespace cphi
