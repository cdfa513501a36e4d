#include "cphi/ffmatrix.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cphi {

namespace {

bool kernels_may_parallelize() {
#ifdef _OPENMP
    // Corpus jobs already run in a parallel region; keep inner kernels serial there.
    return omp_get_level() == 0;
#else
    return false;
#endif
}

// dst += mult * src over the field.
void row_axpy(const Field& f, uint64_t* dst, const uint64_t* src, uint64_t mult, size_t len) {
    if (mult == 0) return;
    if (f.k() == 1) {
        uint64_t p = f.p();
        if (p < (uint64_t(1) << 31)) {
            for (size_t j = 0; j < len; ++j) dst[j] = (dst[j] + mult * src[j]) % p;
            return;
        }
        for (size_t j = 0; j < len; ++j) dst[j] = (dst[j] + mulmod(mult, src[j], p)) % p;
        return;
    }
    for (size_t j = 0; j < len; ++j) dst[j] = f.add(dst[j], f.mul(mult, src[j]));
}

void row_scale(const Field& f, uint64_t* dst, uint64_t s, size_t len) {
    if (s == 1) return;
    for (size_t j = 0; j < len; ++j) dst[j] = f.mul(dst[j], s);
}

FFMatrix mat_mul_impl(const FFMatrix& a, const FFMatrix& b, bool parallel) {
    ensure(a.field() == b.field(), "matrix product: field mismatch");
    ensure(a.cols() == b.rows(), "matrix product: dimension mismatch");
    const Field& f = a.field();
    size_t R = a.rows(), K = a.cols(), C = b.cols();
    FFMatrix c(f, R, C);
    if (f.k() == 1 && f.p() < (uint64_t(1) << 20)) {
        // With p < 2^20 and K <= 4096 the u64 accumulators cannot overflow.
        uint64_t p = f.p();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && R >= 48)
#endif
        for (long long i = 0; i < static_cast<long long>(R); ++i) {
            std::vector<uint64_t> acc(C, 0);
            for (size_t l = 0; l < K; ++l) {
                uint64_t v = a.at(static_cast<size_t>(i), l);
                if (v == 0) continue;
                const uint64_t* br = b.row(l);
                for (size_t j = 0; j < C; ++j) acc[j] += v * br[j];
            }
            uint64_t* cr = c.row(static_cast<size_t>(i));
            for (size_t j = 0; j < C; ++j) cr[j] = acc[j] % p;
        }
        return c;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && R >= 48)
#endif
    for (long long i = 0; i < static_cast<long long>(R); ++i) {
        for (size_t l = 0; l < K; ++l) {
            uint64_t v = a.at(static_cast<size_t>(i), l);
            if (v == 0) continue;
            const uint64_t* br = b.row(l);
            uint64_t* cr = c.row(static_cast<size_t>(i));
            for (size_t j = 0; j < C; ++j) cr[j] = f.add(cr[j], f.mul(v, br[j]));
        }
    }
    return c;
}

std::vector<size_t> rref_impl(FFMatrix& m, bool parallel) {
    const Field f = m.field();
    size_t R = m.rows(), C = m.cols();
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t col = 0; col < C && r < R; ++col) {
        size_t pr = R;
        for (size_t i = r; i < R; ++i) {
            if (m.at(i, col) != 0) {
                pr = i;
                break;
            }
        }
        if (pr == R) continue;
        if (pr != r) {
            for (size_t j = 0; j < C; ++j) std::swap(m.at(r, j), m.at(pr, j));
        }
        row_scale(f, m.row(r), f.inv(m.at(r, col)), C);
        const uint64_t* prow = m.row(r);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && R >= 64)
#endif
        for (long long i = 0; i < static_cast<long long>(R); ++i) {
            if (static_cast<size_t>(i) == r) continue;
            uint64_t v = m.at(static_cast<size_t>(i), col);
            if (v == 0) continue;
            row_axpy(f, m.row(static_cast<size_t>(i)), prow, f.neg(v), C);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

}  // namespace

FFMatrix FFMatrix::identity(const Field& f, size_t n) {
    FFMatrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FFMatrix FFMatrix::operator+(const FFMatrix& o) const {
    ensure(rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_, "matrix add: shape mismatch");
    FFMatrix r(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.add(a_[i], o.a_[i]);
    return r;
}

FFMatrix FFMatrix::operator-(const FFMatrix& o) const {
    ensure(rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_, "matrix sub: shape mismatch");
    FFMatrix r(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.sub(a_[i], o.a_[i]);
    return r;
}

FFMatrix FFMatrix::operator*(const FFMatrix& o) const { return mat_mul_impl(*this, o, kernels_may_parallelize()); }

FFMatrix mat_mul_serial(const FFMatrix& a, const FFMatrix& b) { return mat_mul_impl(a, b, false); }

FFMatrix FFMatrix::scaled(uint64_t s) const {
    FFMatrix r(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.mul(a_[i], s);
    return r;
}

FFMatrix FFMatrix::transpose() const {
    FFMatrix r(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

void FFMatrix::add_scalar_diag(uint64_t s) {
    ensure(rows_ == cols_, "add_scalar_diag: square matrix required");
    for (size_t i = 0; i < rows_; ++i) at(i, i) = field_.add(at(i, i), s);
}

bool FFMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](uint64_t v) { return v == 0; });
}

std::string FFMatrix::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (size_t j = 0; j < cols_; ++j) os << at(i, j) << (j + 1 < cols_ ? " " : "");
        os << (i + 1 < rows_ ? "\n" : "]");
    }
    return os.str();
}

std::vector<uint64_t> vec_mat_mul(const Field& f, const std::vector<uint64_t>& v, const FFMatrix& m) {
    ensure(v.size() == m.rows(), "vec_mat_mul: dimension mismatch");
    std::vector<uint64_t> out(m.cols(), 0);
    if (f.k() == 1 && f.p() < (uint64_t(1) << 20)) {
        uint64_t p = f.p();
        for (size_t l = 0; l < v.size(); ++l) {
            if (v[l] == 0) continue;
            const uint64_t* r = m.row(l);
            for (size_t j = 0; j < out.size(); ++j) out[j] += v[l] * r[j];
        }
        for (auto& x : out) x %= p;
        return out;
    }
    for (size_t l = 0; l < v.size(); ++l) {
        if (v[l] == 0) continue;
        const uint64_t* r = m.row(l);
        for (size_t j = 0; j < out.size(); ++j) out[j] = f.add(out[j], f.mul(v[l], r[j]));
    }
    return out;
}

std::vector<size_t> rref(FFMatrix& m) { return rref_impl(m, kernels_may_parallelize()); }
std::vector<size_t> rref_serial(FFMatrix& m) { return rref_impl(m, false); }

size_t rank(FFMatrix m) { return rref(m).size(); }

FFMatrix kernel_basis(const FFMatrix& m) {
    FFMatrix r = m;
    std::vector<size_t> pivots = rref(r);
    const Field& f = m.field();
    size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (size_t p : pivots) is_pivot[p] = true;
    FFMatrix out(f, C - pivots.size(), C);
    size_t row = 0;
    for (size_t j = 0; j < C; ++j) {
        if (is_pivot[j]) continue;
        out.at(row, j) = 1;
        for (size_t i = 0; i < pivots.size(); ++i) out.at(row, pivots[i]) = f.neg(r.at(i, j));
        ++row;
    }
    return out;
}

FFMatrix left_kernel(const FFMatrix& m) { return kernel_basis(m.transpose()); }

FFMatrix inverse(const FFMatrix& m) {
    ensure(m.rows() == m.cols(), "inverse: square matrix required");
    size_t n = m.rows();
    const Field& f = m.field();
    FFMatrix aug(f, n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    ensure(pivots.size() == n && pivots.back() == n - 1, "inverse: matrix is singular");
    FFMatrix out(f, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
}

FFMatrix eval_poly(const FFPoly& f, const FFMatrix& m) {
    ensure(m.rows() == m.cols(), "eval_poly: square matrix required");
    const Field& F = m.field();
    size_t n = m.rows();
    FFMatrix acc(F, n, n);
    if (f.is_zero()) return acc;
    for (size_t i = 0; i < n; ++i) acc.at(i, i) = f.leading();
    for (int d = f.degree() - 1; d >= 0; --d) {
        acc = acc * m;
        acc.add_scalar_diag(f.coeff(static_cast<size_t>(d)));
    }
    return acc;
}

FFPoly charpoly(const FFMatrix& m) {
    ensure(m.rows() == m.cols(), "charpoly: square matrix required");
    const Field& f = m.field();
    size_t n = m.rows();
    FFPoly cp = FFPoly::one(f);
    if (n == 0) return cp;

    struct Row {
        std::vector<uint64_t> v;
        size_t pivot;
    };
    struct ChainRow {
        std::vector<uint64_t> v;
        size_t pivot;
        std::vector<uint64_t> expr;  // coordinates in {seed*A^i}
    };

    std::vector<Row> basis;  // mutually reduced, sorted by pivot
    auto reduce_against_basis = [&](std::vector<uint64_t>& cur) {
        for (const Row& rw : basis) {
            uint64_t c = cur[rw.pivot];
            if (c != 0) row_axpy(f, cur.data(), rw.v.data(), f.neg(c), n);
        }
    };

    size_t dim = 0;
    for (size_t seed = 0; seed < n && dim < n; ++seed) {
        std::vector<ChainRow> chain;
        auto reduce_against_chain = [&](std::vector<uint64_t>& cur, std::vector<uint64_t>& expr) {
            for (const ChainRow& rw : chain) {
                uint64_t c = cur[rw.pivot];
                if (c == 0) continue;
                uint64_t nc = f.neg(c);
                row_axpy(f, cur.data(), rw.v.data(), nc, n);
                if (expr.size() < rw.expr.size()) expr.resize(rw.expr.size(), 0);
                row_axpy(f, expr.data(), rw.expr.data(), nc, rw.expr.size());
            }
        };

        std::vector<uint64_t> cur(n, 0);
        cur[seed] = 1;
        std::vector<uint64_t> expr = {1};
        while (true) {
            reduce_against_basis(cur);
            reduce_against_chain(cur, expr);
            size_t pivot = n;
            for (size_t j = 0; j < n; ++j) {
                if (cur[j] != 0) {
                    pivot = j;
                    break;
                }
            }
            if (pivot == n) {
                // dependence: expr encodes the relative minimal polynomial
                FFPoly g(f, expr);
                if (g.degree() >= 1) cp = cp * g.monic();
                break;
            }
            uint64_t s = f.inv(cur[pivot]);
            row_scale(f, cur.data(), s, n);
            std::vector<uint64_t> sexpr = expr;
            row_scale(f, sexpr.data(), s, sexpr.size());
            // keep chain rows mutually reduced
            for (ChainRow& rw : chain) {
                uint64_t c = rw.v[pivot];
                if (c == 0) continue;
                uint64_t nc = f.neg(c);
                row_axpy(f, rw.v.data(), cur.data(), nc, n);
                if (rw.expr.size() < sexpr.size()) rw.expr.resize(sexpr.size(), 0);
                row_axpy(f, rw.expr.data(), sexpr.data(), nc, sexpr.size());
            }
            chain.push_back({cur, pivot, sexpr});
            ++dim;
            // next vector in the cyclic chain: previous * A, expr shifted
            std::vector<uint64_t> nxt = vec_mat_mul(f, cur, m);
            expr.assign(sexpr.size() + 1, 0);
            for (size_t i = 0; i < sexpr.size(); ++i) expr[i + 1] = sexpr[i];
            cur = std::move(nxt);
        }
        if (chain.empty()) continue;
        // merge the chain into the global basis, restoring mutual reduction
        for (const ChainRow& cr : chain) {
            for (Row& rw : basis) {
                uint64_t c = rw.v[cr.pivot];
                if (c != 0) row_axpy(f, rw.v.data(), cr.v.data(), f.neg(c), n);
            }
            basis.push_back({cr.v, cr.pivot});
        }
        std::sort(basis.begin(), basis.end(), [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
    }
    return cp;
}

LinearSolution ff_solve(const FFMatrix& a, const FFMatrix& b) {
    ensure(a.field() == b.field(), "ff_solve: field mismatch");
    ensure(a.rows() == b.rows(), "ff_solve: row count mismatch");
    const Field& f = a.field();
    size_t R = a.rows(), C = a.cols(), W = b.cols();
    FFMatrix aug(f, R, C + W);
    for (size_t i = 0; i < R; ++i) {
        for (size_t j = 0; j < C; ++j) aug.at(i, j) = a.at(i, j);
        for (size_t j = 0; j < W; ++j) aug.at(i, C + j) = b.at(i, j);
    }
    auto pivots = rref(aug);
    LinearSolution sol{false, 0, FFMatrix(f, C, W), FFMatrix(f, 0, 0)};
    size_t a_pivots = 0;
    while (a_pivots < pivots.size() && pivots[a_pivots] < C) ++a_pivots;
    sol.rank = a_pivots;
    if (a_pivots != pivots.size()) return sol;  // pivot in the B block: inconsistent
    sol.consistent = true;
    for (size_t i = 0; i < a_pivots; ++i)
        for (size_t j = 0; j < W; ++j) sol.particular.at(pivots[i], j) = aug.at(i, C + j);
    sol.kernel = kernel_basis(a);
    return sol;
}

}  // namespace cphi
