#pragma once

// Dense linear algebra over Real: Cholesky factorization, LU determinant and
// solve with partial pivoting. Sizes here are small (a few hundred at most),
// so plain O(n^3) loops with fused multiply-adds are all that is needed.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gcs/errors.hpp"
#include "gcs/precision.hpp"
#include "gcs/real.hpp"

namespace gcs {

class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, mpfr_prec_t bits)
        : rows_(rows), cols_(cols), a_(rows * cols, Real(0l, bits)) {}

    static Matrix identity(std::size_t n, mpfr_prec_t bits) {
        Matrix m(n, n, bits);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Real(1l, bits);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Real& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Real& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Real> a_;
};

// Lower-triangular L with L*L^T = G. Throws NotPositiveDefinite when a pivot
// (before the square root) falls below comparison_tolerance times the largest
// diagonal entry of G.
inline Matrix cholesky(const Matrix& G, const PrecisionPolicy& policy) {
    if (G.rows() != G.cols()) throw std::invalid_argument("cholesky: matrix must be square");
    const std::size_t n = G.rows();
    const mpfr_prec_t bits = policy.internal_bits();
    Real max_diag(0l, bits);
    for (std::size_t i = 0; i < n; ++i) max_diag = max(max_diag, abs(G.at(i, i)));
    const Real threshold = policy.comparison_tolerance() * max_diag;

    Matrix L(n, n, bits);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Real s = G.at(i, j);
            for (std::size_t k = 0; k < j; ++k) dec_mul(s, L.at(i, k), L.at(j, k));
            if (i == j) {
                if (s <= threshold) throw NotPositiveDefinite(i);
                L.at(i, i) = sqrt(s);
            } else {
                L.at(i, j) = s / L.at(j, j);
            }
        }
    }
    return L;
}

// Solve L y = rhs (forward) then L^T x = y (backward) on the leading m-by-m
// block of a Cholesky factor.
inline std::vector<Real> cholesky_solve(const Matrix& L, std::vector<Real> rhs) {
    const std::size_t m = rhs.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < i; ++k) dec_mul(rhs[i], L.at(i, k), rhs[k]);
        rhs[i] /= L.at(i, i);
    }
    for (std::size_t ii = m; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < m; ++k) dec_mul(rhs[ii], L.at(k, ii), rhs[k]);
        rhs[ii] /= L.at(ii, ii);
    }
    return rhs;
}

namespace detail {

struct Lu {
    Matrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
};

inline Lu lu_factor(const Matrix& G, const PrecisionPolicy& policy) {
    if (G.rows() != G.cols()) throw std::invalid_argument("lu: matrix must be square");
    const std::size_t n = G.rows();
    Lu f{G, std::vector<std::size_t>(n), 1};
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

    Real max_entry(0l, policy.internal_bits());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) max_entry = max(max_entry, abs(G.at(i, j)));
    const Real threshold = policy.comparison_tolerance() * max_entry;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (abs(f.lu.at(i, k)) > abs(f.lu.at(p, k))) p = i;
        if (abs(f.lu.at(p, k)) <= threshold) throw Singular(k);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu.at(p, j), f.lu.at(k, j));
            std::swap(f.perm[p], f.perm[k]);
            f.sign = -f.sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            f.lu.at(i, k) /= f.lu.at(k, k);
            for (std::size_t j = k + 1; j < n; ++j)
                dec_mul(f.lu.at(i, j), f.lu.at(i, k), f.lu.at(k, j));
        }
    }
    return f;
}

}  // namespace detail

// Determinant by LU with partial pivoting; the route independent of Cholesky.
inline Real determinant_lu(const Matrix& G, const PrecisionPolicy& policy) {
    if (G.rows() == 0) return policy.real(1);
    auto f = detail::lu_factor(G, policy);
    Real d(static_cast<long>(f.sign), policy.internal_bits());
    for (std::size_t k = 0; k < G.rows(); ++k) d *= f.lu.at(k, k);
    return d;
}

// Determinant: product of squared Cholesky pivots when G is symmetric
// positive definite, LU with partial pivoting otherwise.
inline Real determinant(const Matrix& G, const PrecisionPolicy& policy) {
    if (G.rows() == 0) return policy.real(1);
    if (G.is_symmetric()) {
        try {
            Matrix L = cholesky(G, policy);
            Real d(1l, policy.internal_bits());
            for (std::size_t k = 0; k < G.rows(); ++k) {
                d *= L.at(k, k);
                d *= L.at(k, k);
            }
            return d;
        } catch (const NotPositiveDefinite&) {
            // symmetric but indefinite: fall through to LU
        }
    }
    return determinant_lu(G, policy);
}

// Solve G x = rhs by LU with partial pivoting.
inline std::vector<Real> solve(const Matrix& G, const std::vector<Real>& rhs,
                               const PrecisionPolicy& policy) {
    if (G.rows() != rhs.size()) throw std::invalid_argument("solve: dimension mismatch");
    const std::size_t n = G.rows();
    auto f = detail::lu_factor(G, policy);
    std::vector<Real> x(n, Real(0l, policy.internal_bits()));
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k) dec_mul(x[i], f.lu.at(i, k), x[k]);
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) dec_mul(x[ii], f.lu.at(ii, k), x[k]);
        x[ii] /= f.lu.at(ii, ii);
    }
    return x;
}

}  // namespace gcs
