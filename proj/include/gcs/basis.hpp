#pragma once

// Falling-factorial basis phi_n(x) = x(x-1)...(x-n+1): evaluation, the
// difference operators Delta / nabla and the shift S, the product
// linearization phi_n*phi_m = sum_k C(n,k)C(m,k)k! phi_{n+m-k}, and exact
// conversions to and from the monomial basis via Stirling numbers.
//
// Polynomials are stored on the phi basis by default; every inner product and
// moment in this library is written against phi_k, so the monomial form is a
// derived view, not the canonical one. Conversions are exact in the integer
// tables but the round trip loses O(n log n) bits to cancellation at large
// degree.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gcs/integers.hpp"
#include "gcs/precision.hpp"
#include "gcs/real.hpp"

namespace gcs {

// Pochhammer symbol (c)_n = c(c+1)...(c+n-1), (c)_0 = 1.
inline Real pochhammer(const Real& c, unsigned long n) {
    Real r(1l, c.prec());
    Real f = c;
    for (unsigned long j = 0; j < n; ++j) {
        r *= f;
        f += Real(1l, c.prec());
    }
    return r;
}

// phi_n(x) = x(x-1)...(x-n+1), phi_0 = 1.
inline Real falling_factorial_eval(unsigned long n, const Real& x) {
    Real r(1l, x.prec());
    for (unsigned long k = 0; k < n; ++k) r *= x - static_cast<long>(k);
    return r;
}

class MonomialPolynomial;

class FactorialPolynomial {
public:
    FactorialPolynomial() = default;
    explicit FactorialPolynomial(std::vector<Real> coeffs) : c_(std::move(coeffs)) { trim(); }

    // phi_n as a basis element.
    static FactorialPolynomial basis(std::size_t n, mpfr_prec_t bits) {
        std::vector<Real> c(n + 1, Real(0l, bits));
        c[n] = Real(1l, bits);
        return FactorialPolynomial(std::move(c));
    }

    static FactorialPolynomial constant(Real v) {
        return FactorialPolynomial(std::vector<Real>{std::move(v)});
    }

    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Real>& coeffs() const { return c_; }

    // Coefficient of phi_k (zero beyond the stored range).
    Real coeff(std::size_t k) const {
        if (k < c_.size()) return c_[k];
        return Real(0l, working_prec());
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1l; }

    Real eval(const Real& x) const {
        Real s(0l, x.prec());
        Real phi(1l, x.prec());
        for (std::size_t k = 0; k < c_.size(); ++k) {
            acc_mul(s, c_[k], phi);
            phi *= x - static_cast<long>(k);
        }
        return s;
    }

    FactorialPolynomial& operator+=(const FactorialPolynomial& o) {
        grow(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }

    FactorialPolynomial& operator-=(const FactorialPolynomial& o) {
        grow(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }

    FactorialPolynomial& operator*=(const Real& s) {
        for (auto& ck : c_) ck *= s;
        trim();
        return *this;
    }

    friend FactorialPolynomial operator+(FactorialPolynomial a, const FactorialPolynomial& b) {
        a += b;
        return a;
    }
    friend FactorialPolynomial operator-(FactorialPolynomial a, const FactorialPolynomial& b) {
        a -= b;
        return a;
    }
    friend FactorialPolynomial operator*(FactorialPolynomial a, const Real& s) {
        a *= s;
        return a;
    }

    mpfr_prec_t working_prec() const {
        mpfr_prec_t p = kMinPrecisionBits;
        for (const auto& ck : c_)
            if (ck.prec() > p) p = ck.prec();
        return p;
    }

private:
    void grow(std::size_t n) {
        if (c_.size() < n) c_.resize(n, Real(0l, working_prec()));
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Real> c_;
};

class MonomialPolynomial {
public:
    MonomialPolynomial() = default;
    explicit MonomialPolynomial(std::vector<Real> coeffs) : c_(std::move(coeffs)) { trim(); }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Real>& coeffs() const { return c_; }

    Real coeff(std::size_t k) const {
        if (k < c_.size()) return c_[k];
        return Real(0l, kMinPrecisionBits);
    }

    Real eval(const Real& x) const {
        Real s(0l, x.prec());
        for (std::size_t k = c_.size(); k-- > 0;) {
            s *= x;
            s += c_[k];
        }
        return s;
    }

    // p(x + t) by binomial re-expansion, t an integer.
    MonomialPolynomial translate(long t) const {
        if (c_.empty()) return {};
        const mpfr_prec_t bits = c_.front().prec();
        std::vector<Real> out(c_.size(), Real(0l, bits));
        for (std::size_t k = 0; k < c_.size(); ++k) {
            Real tp(1l, bits);  // t^(k-j)
            for (std::size_t jj = 0; jj <= k; ++jj) {
                std::size_t j = k - jj;  // descending power of x
                Real term = c_[k] * to_real(binomial_z(k, j), bits) * tp;
                out[j] += term;
                tp *= Real(t, bits);
            }
        }
        return MonomialPolynomial(std::move(out));
    }

    friend MonomialPolynomial operator-(MonomialPolynomial a, const MonomialPolynomial& b) {
        if (a.c_.size() < b.c_.size()) a.c_.resize(b.c_.size(), Real(0l, a.prec_or(64)));
        for (std::size_t k = 0; k < b.c_.size(); ++k) a.c_[k] -= b.c_[k];
        a.trim();
        return a;
    }

private:
    mpfr_prec_t prec_or(mpfr_prec_t fallback) const {
        return c_.empty() ? fallback : c_.front().prec();
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Real> c_;
};

// Delta[p] = p(x+1) - p(x), using Delta phi_k = k phi_{k-1}. Degree drops by
// exactly one for nonconstant p; Delta of a constant is zero.
inline FactorialPolynomial delta(const FactorialPolynomial& p) {
    if (p.degree() <= 0) return {};
    const auto& c = p.coeffs();
    std::vector<Real> out(c.size() - 1, Real(0l, p.working_prec()));
    for (std::size_t k = 1; k < c.size(); ++k) out[k - 1] = c[k] * static_cast<long>(k);
    return FactorialPolynomial(std::move(out));
}

// S[p] = p(x+1) = p + Delta[p].
inline FactorialPolynomial shift(const FactorialPolynomial& p) { return p + delta(p); }

// p(x-1) on the phi basis, by the exact expansion
// phi_k(x-1) = phi_k(x) - k phi_{k-1}(x-1) unrolled bottom-up.
inline FactorialPolynomial shift_down(const FactorialPolynomial& p) {
    const auto& c = p.coeffs();
    if (c.empty()) return {};
    const mpfr_prec_t bits = p.working_prec();
    // rows[j] = coefficient of phi_j in phi_k(x-1), built incrementally in k
    std::vector<mpz_class> row{mpz_class(1)};
    std::vector<Real> out(c.size(), Real(0l, bits));
    out[0] += c[0];
    for (std::size_t k = 1; k < c.size(); ++k) {
        std::vector<mpz_class> next(k + 1);
        next[k] = 1;
        for (std::size_t j = 0; j < k; ++j) next[j] = -static_cast<long>(k) * row[j];
        row = std::move(next);
        if (!c[k].is_zero())
            for (std::size_t j = 0; j <= k; ++j) acc_mul(out[j], c[k], to_real(row[j], bits));
    }
    return FactorialPolynomial(std::move(out));
}

// nabla[p] = p(x) - p(x-1).
inline FactorialPolynomial nabla(const FactorialPolynomial& p) { return p - shift_down(p); }

// x * p, using the exact relation x phi_k = phi_{k+1} + k phi_k.
inline FactorialPolynomial times_x(const FactorialPolynomial& p) {
    const auto& c = p.coeffs();
    if (c.empty()) return {};
    std::vector<Real> out(c.size() + 1, Real(0l, p.working_prec()));
    for (std::size_t k = 0; k < c.size(); ++k) {
        out[k + 1] += c[k];
        if (k > 0) acc_mul(out[k], c[k], Real(static_cast<long>(k), p.working_prec()));
    }
    return FactorialPolynomial(std::move(out));
}

struct LinearTerm {
    std::size_t index;   // n + m - k
    mpz_class coeff;     // C(n,k) C(m,k) k!, exact
};

// phi_n * phi_m = sum_{k=0}^{min(n,m)} C(n,k) C(m,k) k! phi_{n+m-k}.
inline std::vector<LinearTerm> linearize(std::size_t n, std::size_t m) {
    std::vector<LinearTerm> out;
    const std::size_t kmax = n < m ? n : m;
    out.reserve(kmax + 1);
    for (std::size_t k = 0; k <= kmax; ++k)
        out.push_back({n + m - k, binomial_z(n, k) * binomial_z(m, k) * factorial_z(k)});
    return out;
}

// Product of two polynomials on the phi basis, through the linearization.
inline FactorialPolynomial multiply(const FactorialPolynomial& p, const FactorialPolynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    const mpfr_prec_t bits = p.working_prec() > q.working_prec() ? p.working_prec() : q.working_prec();
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    std::vector<Real> out(a.size() + b.size() - 1, Real(0l, bits));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            Real ab = a[i] * b[j];
            for (const auto& t : linearize(i, j)) acc_mul(out[t.index], ab, to_real(t.coeff, bits));
        }
    }
    return FactorialPolynomial(std::move(out));
}

// phi -> monomial via signed Stirling numbers of the first kind.
inline MonomialPolynomial to_monomial(const FactorialPolynomial& p) {
    const auto& c = p.coeffs();
    if (c.empty()) return {};
    const mpfr_prec_t bits = p.working_prec();
    std::vector<Real> out(c.size(), Real(0l, bits));
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        const auto& row = Stirling1::row(k);
        for (std::size_t j = 0; j <= k; ++j)
            if (row[j] != 0) acc_mul(out[j], c[k], to_real(row[j], bits));
    }
    return MonomialPolynomial(std::move(out));
}

// monomial -> phi via Stirling numbers of the second kind.
inline FactorialPolynomial from_monomial(const MonomialPolynomial& m) {
    const auto& c = m.coeffs();
    if (c.empty()) return {};
    mpfr_prec_t bits = kMinPrecisionBits;
    for (const auto& ck : c)
        if (ck.prec() > bits) bits = ck.prec();
    std::vector<Real> out(c.size(), Real(0l, bits));
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        const auto& row = Stirling2::row(k);
        for (std::size_t j = 0; j <= k; ++j)
            if (row[j] != 0) acc_mul(out[j], c[k], to_real(row[j], bits));
    }
    return FactorialPolynomial(std::move(out));
}

}  // namespace gcs
