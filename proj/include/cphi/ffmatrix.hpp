#pragma once

#include <cstdint>
#include <vector>

#include "cphi/ffpoly.hpp"

namespace cphi {

// Dense matrix over a Field, row-major. Module elements are row vectors
// acting on the right: v -> v*M.
class FFMatrix {
public:
    FFMatrix(Field f, size_t rows, size_t cols)
        : field_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FFMatrix identity(const Field& f, size_t n);

    const Field& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint64_t at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    uint64_t& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const uint64_t* row(size_t i) const { return a_.data() + i * cols_; }
    uint64_t* row(size_t i) { return a_.data() + i * cols_; }

    bool operator==(const FFMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    FFMatrix operator+(const FFMatrix& o) const;
    FFMatrix operator-(const FFMatrix& o) const;
    FFMatrix operator*(const FFMatrix& o) const;  // OpenMP kernel
    FFMatrix scaled(uint64_t s) const;
    FFMatrix transpose() const;
    void add_scalar_diag(uint64_t s);  // M += s*I

    bool is_zero() const;

    std::string to_string() const;

private:
    Field field_;
    size_t rows_, cols_;
    std::vector<uint64_t> a_;
};

// Serial reference kernel, kept for validating the parallel one.
FFMatrix mat_mul_serial(const FFMatrix& a, const FFMatrix& b);

// Row vector times matrix.
std::vector<uint64_t> vec_mat_mul(const Field& f, const std::vector<uint64_t>& v, const FFMatrix& m);

// In-place reduced row echelon form; returns pivot column indices.
// rref uses the OpenMP elimination kernel, rref_serial the reference one;
// both produce identical output.
std::vector<size_t> rref(FFMatrix& m);
std::vector<size_t> rref_serial(FFMatrix& m);

size_t rank(FFMatrix m);

// Canonical basis of {x : M x = 0}, one kernel vector per row.
FFMatrix kernel_basis(const FFMatrix& m);

// Canonical basis of {v : v M = 0}, one vector per row.
FFMatrix left_kernel(const FFMatrix& m);

// Inverse of a square invertible matrix.
FFMatrix inverse(const FFMatrix& m);

// Matrix polynomial evaluation f(M), Horner.
FFMatrix eval_poly(const FFPoly& f, const FFMatrix& m);

// Characteristic polynomial by relative minimal polynomials along a flag of
// cyclic subspaces (O(n^3), exact).
FFPoly charpoly(const FFMatrix& m);

// Exact solver for A X = B: particular solution + kernel of A + rank.
struct LinearSolution {
    bool consistent = false;
    size_t rank = 0;
    FFMatrix particular;      // one solution, cols(B) columns
    FFMatrix kernel;          // rows form the canonical kernel basis of A
};
LinearSolution ff_solve(const FFMatrix& a, const FFMatrix& b);

}  // namespace cphi
