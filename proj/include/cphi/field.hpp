#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cphi/util.hpp"

namespace cphi {

// GF(p^k). Elements are integer codes sum a_i p^i encoding sum a_i x^i in
// GF(p)[x]/(defining polynomial). The defining polynomial is the
// lexicographically least monic irreducible of degree k (coefficient codes
// compared as integers, constant term least significant) whose root is a
// generator of the multiplicative group; that root (code p for k > 1) is the
// designated primitive element.
class Field {
public:
    static constexpr uint64_t kPublicBound = uint64_t(1) << 31;

    // Spec-facing constructor, bound p^k <= 2^31.
    static Field create(uint64_t p, unsigned k);

    // Lift fields for Brauer-character eigenvalues may exceed the public
    // bound; arithmetic falls back to polynomial representation.
    static Field create_internal(uint64_t p, unsigned k);

    uint64_t p() const;
    unsigned k() const;
    uint64_t q() const;  // p^k
    const std::vector<uint64_t>& defining_poly() const;  // length k+1, monic
    uint64_t primitive_element() const;

    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;
    uint64_t div(uint64_t a, uint64_t b) const { return mul(a, inv(b)); }
    uint64_t pow(uint64_t a, uint64_t e) const;

    uint64_t from_int(long long c) const;  // c mod p as a constant
    uint64_t frobenius(uint64_t a) const { return pow(a, p()); }

    // Multiplicative order; a != 0.
    uint64_t element_order(uint64_t a) const;

    // Discrete log base the designated primitive element.
    uint64_t dlog(uint64_t a) const;

    bool same_field(const Field& other) const { return impl_ == other.impl_; }
    bool operator==(const Field& other) const;

    // Code of the element sum coeffs[i] * x^i (coeffs mod p).
    uint64_t encode(const std::vector<uint64_t>& coeffs) const;
    std::vector<uint64_t> decode(uint64_t a) const;

    struct Impl;

private:
    explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

// Deterministic subfield embedding GF(p^a) -> GF(p^b), a | b: the generator
// of the small field maps to the least-code root of its defining polynomial
// in the big field.
class Embedding {
public:
    Embedding(const Field& sub, const Field& sup);
    uint64_t map(uint64_t a) const;
    const Field& sub() const { return sub_; }
    const Field& sup() const { return sup_; }

private:
    Field sub_, sup_;
    std::vector<uint64_t> gen_powers_;  // images of x^i, i < k(sub)
};

}  // namespace cphi
