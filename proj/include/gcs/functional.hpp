#pragma once

// The weight functional L[p] = sum_{x>=0} p(x) z^x / ((b+1)_x x!), its
// moments nu_n = L[phi_n] on the falling-factorial basis, the Gram entries
// nu_{i,j} = L[phi_i phi_j] and mu_{i,j} = <phi_i, phi_j> of the
// difference-Sobolev inner product, and the Pearson-equation residual.
//
// Moments come from the closed hypergeometric form
//   nu_n = z^n / ((b+1)_n) * 0F1(; b+n+1; z),
// a series with strictly positive terms; the direct summation of L is kept as
// an independent cross-check route.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gcs/basis.hpp"
#include "gcs/linalg.hpp"
#include "gcs/precision.hpp"
#include "gcs/real.hpp"
#include "gcs/series.hpp"

namespace gcs {

// The parameter triple (b, z, lambda). z > 0 and b > -1 make every weight
// value positive, so L is positive definite; lambda >= 0 keeps the Sobolev
// form positive definite. Only real parameters are accepted.
struct Params {
    Real b;
    Real z;
    Real lambda;

    Params(Real b_, Real z_, Real lambda_)
        : b(std::move(b_)), z(std::move(z_)), lambda(std::move(lambda_)) {
        if (z.is_nan() || !(z > 0l)) throw std::domain_error("z must be positive");
        if (b.is_nan() || !(b > -1l)) throw std::domain_error("b must be greater than -1");
        if (lambda.is_nan() || !(lambda >= 0l))
            throw std::domain_error("lambda must be nonnegative");
    }

    static Params from_strings(std::string_view b, std::string_view z, std::string_view lambda,
                               const PrecisionPolicy& policy) {
        return Params(policy.real(b), policy.real(z), policy.real(lambda));
    }
};

// nu_n = z^n / ((b+1)_n) * 0F1(; b+n+1; z), certified summation.
inline Real moment_nu(std::size_t n, const Params& params, const PrecisionPolicy& policy) {
    const mpfr_prec_t bits = policy.internal_bits();
    const Real one(1l, bits);
    Real term_state = one;
    std::size_t next_k = 0;
    auto term = [&](std::size_t k) -> Real {
        // ratio t_{k+1}/t_k = z / ((b+n+1+k)(k+1)); called with increasing k
        if (k == 0) {
            term_state = one;
            next_k = 1;
            return term_state;
        }
        if (k != next_k) throw std::logic_error("series terms must be requested in order");
        ++next_k;
        term_state *= params.z / ((params.b + static_cast<long>(n + k)) *
                                  Real(static_cast<long>(k), bits));
        return term_state;
    };
    auto ratio = [&](std::size_t k) -> Real {
        return params.z / ((params.b + static_cast<long>(n + k + 1)) *
                           Real(static_cast<long>(k + 1), bits));
    };
    Real f01 = sum_certified(term, ratio, policy);
    return pow_si(params.z, static_cast<long>(n)) / pochhammer(params.b + 1l, n) * f01;
}

namespace detail {

// Certified sum of L over a polynomial with NONNEGATIVE phi coefficients:
// all terms are >= 0 from x = deg(q) on, and the term ratio is bounded by
// z / ((x+1-deg)(b+1+x)) there.
inline Real sum_L_nonnegative(const FactorialPolynomial& q, const Params& params,
                              const PrecisionPolicy& policy) {
    if (q.is_zero()) return policy.real(0);
    const mpfr_prec_t bits = policy.internal_bits();
    const long d = q.degree();
    Real weight(1l, bits);  // z^x / ((b+1)_x x!)
    std::size_t next_x = 0;
    auto term = [&](std::size_t x) -> Real {
        if (x != next_x) throw std::logic_error("series terms must be requested in order");
        ++next_x;
        Real t = q.eval(Real(static_cast<long>(x), bits)) * weight;
        weight *= params.z / ((params.b + static_cast<long>(x + 1)) *
                              Real(static_cast<long>(x + 1), bits));
        return t;
    };
    auto ratio = [&](std::size_t x) -> Real {
        return params.z / (Real(static_cast<long>(x) + 1 - d, bits) *
                           (params.b + static_cast<long>(x + 1)));
    };
    return sum_certified(term, ratio, policy, static_cast<std::size_t>(d) + 1);
}

}  // namespace detail

// L[p] by direct summation of the weighted series. The polynomial is split
// into its positive- and negative-coefficient parts so each half is a
// positive-term series with a provable ratio bound.
inline Real apply_L(const FactorialPolynomial& p, const Params& params,
                    const PrecisionPolicy& policy) {
    const mpfr_prec_t bits = policy.internal_bits();
    std::vector<Real> pos, neg;
    const auto& c = p.coeffs();
    pos.reserve(c.size());
    neg.reserve(c.size());
    for (const auto& ck : c) {
        if (ck.sign() >= 0) {
            pos.push_back(ck);
            neg.push_back(Real(0l, bits));
        } else {
            pos.push_back(Real(0l, bits));
            neg.push_back(-ck);
        }
    }
    Real s = detail::sum_L_nonnegative(FactorialPolynomial(std::move(pos)), params, policy);
    s -= detail::sum_L_nonnegative(FactorialPolynomial(std::move(neg)), params, policy);
    return s;
}

// nu_{i,j} = L[phi_i phi_j] = sum_k C(i,k)C(j,k)k! nu_{i+j-k}.
inline Real gram_nu(std::size_t i, std::size_t j, const Params& params,
                    const PrecisionPolicy& policy) {
    const mpfr_prec_t bits = policy.internal_bits();
    Real s(0l, bits);
    for (const auto& t : linearize(i, j))
        acc_mul(s, to_real(t.coeff, bits), moment_nu(t.index, params, policy));
    return s;
}

// mu_{i,j} = nu_{i,j} + lambda * i * j * nu_{i-1,j-1}; mu_{i,0} = nu_{i,0}.
inline Real gram_mu(std::size_t i, std::size_t j, const Params& params,
                    const PrecisionPolicy& policy) {
    Real s = gram_nu(i, j, params, policy);
    if (i >= 1 && j >= 1) {
        Real ij(static_cast<long>(i * j), policy.internal_bits());
        acc_mul(s, params.lambda * ij, gram_nu(i - 1, j - 1, params, policy));
    }
    return s;
}

// Cached moments and Gram matrices for a fixed (params, size, precision).
// Covers nu_n for n <= 2*max_index and the (max_index+1)^2 matrices
// (nu_{i,j}) and (mu_{i,j}). Immutable once built.
struct MomentTable {
    Params params;
    PrecisionPolicy policy;
    std::size_t max_index;
    std::vector<Real> nu;  // nu_0 .. nu_{2*max_index}
    Matrix nu2;            // nu_{i,j},  0 <= i,j <= max_index
    Matrix mu2;            // mu_{i,j},  0 <= i,j <= max_index

    static MomentTable build(const Params& params, std::size_t max_index,
                             const PrecisionPolicy& policy) {
        const mpfr_prec_t bits = policy.internal_bits();
        MomentTable t{params, policy, max_index, {}, Matrix(max_index + 1, max_index + 1, bits),
                      Matrix(max_index + 1, max_index + 1, bits)};
        t.nu.reserve(2 * max_index + 1);
        for (std::size_t n = 0; n <= 2 * max_index; ++n)
            t.nu.push_back(moment_nu(n, params, policy));

        // exact integer tables as Reals, to keep the assembly loop in mpfr
        std::vector<std::vector<Real>> binom(max_index + 1);
        std::vector<Real> fact;
        fact.reserve(max_index + 1);
        for (std::size_t n = 0; n <= max_index; ++n) {
            fact.push_back(to_real(factorial_z(n), bits));
            binom[n].reserve(n + 1);
            for (std::size_t k = 0; k <= n; ++k) binom[n].push_back(to_real(binomial_z(n, k), bits));
        }

        for (std::size_t i = 0; i <= max_index; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                Real s(0l, bits);
                for (std::size_t k = 0; k <= j; ++k)
                    acc_mul(s, binom[i][k] * binom[j][k], fact[k] * t.nu[i + j - k]);
                t.nu2.at(i, j) = s;
                t.nu2.at(j, i) = std::move(s);
            }
        }
        for (std::size_t i = 0; i <= max_index; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                Real s = t.nu2.at(i, j);
                if (i >= 1 && j >= 1)
                    acc_mul(s, params.lambda * Real(static_cast<long>(i * j), bits),
                            t.nu2.at(i - 1, j - 1));
                t.mu2.at(i, j) = s;
                t.mu2.at(j, i) = std::move(s);
            }
        }
        return t;
    }

    // Same moments with a different lambda: nu and the nu Gram are
    // lambda-independent, only the mu Gram is reassembled.
    MomentTable with_lambda(const Real& new_lambda) const {
        const mpfr_prec_t bits = policy.internal_bits();
        MomentTable t{Params(params.b, params.z, new_lambda), policy, max_index, nu, nu2,
                      Matrix(max_index + 1, max_index + 1, bits)};
        for (std::size_t i = 0; i <= max_index; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                Real s = nu2.at(i, j);
                if (i >= 1 && j >= 1)
                    acc_mul(s, new_lambda * Real(static_cast<long>(i * j), bits),
                            nu2.at(i - 1, j - 1));
                t.mu2.at(i, j) = s;
                t.mu2.at(j, i) = std::move(s);
            }
        }
        return t;
    }

    // L[p q] through the cached nu Gram matrix.
    Real bilinear_nu(const FactorialPolynomial& p, const FactorialPolynomial& q) const {
        return bilinear(nu2, p, q);
    }

    // <p, q> through the cached mu Gram matrix.
    Real bilinear_mu(const FactorialPolynomial& p, const FactorialPolynomial& q) const {
        return bilinear(mu2, p, q);
    }

    // L[p] = sum_k coeff_k nu_k: the moment route for a single application.
    Real moment_route(const FactorialPolynomial& p) const {
        Real s(0l, policy.internal_bits());
        const auto& c = p.coeffs();
        for (std::size_t k = 0; k < c.size(); ++k) acc_mul(s, c[k], nu[k]);
        return s;
    }

private:
    Real bilinear(const Matrix& G, const FactorialPolynomial& p,
                  const FactorialPolynomial& q) const {
        const auto& a = p.coeffs();
        const auto& bb = q.coeffs();
        if (a.size() > G.rows() || bb.size() > G.rows())
            throw std::invalid_argument("MomentTable: polynomial degree exceeds table size");
        Real s(0l, policy.internal_bits());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_zero()) continue;
            Real row(0l, policy.internal_bits());
            for (std::size_t j = 0; j < bb.size(); ++j) acc_mul(row, G.at(i, j), bb[j]);
            acc_mul(s, a[i], row);
        }
        return s;
    }
};

// |L[psi Sp] - L[phi p]| / scale for the Pearson pair phi(x) = x(x+b),
// psi(x) = z, both sides through the direct series route. On the phi basis
// x(x+b) = phi_2 + (b+1) phi_1.
inline Real check_pearson(const FactorialPolynomial& p, const Params& params,
                          const PrecisionPolicy& policy) {
    const mpfr_prec_t bits = policy.internal_bits();
    FactorialPolynomial phi_poly =
        FactorialPolynomial::basis(2, bits) + FactorialPolynomial::basis(1, bits) * (params.b + 1l);
    Real lhs = params.z * apply_L(shift(p), params, policy);
    Real rhs = apply_L(multiply(phi_poly, p), params, policy);
    Real scale = max(max(abs(lhs), abs(rhs)), Real(1l, bits));
    return abs(lhs - rhs) / scale;
}

// Equivalent form: |L[psi Delta p] - L[(phi - psi) p]| / scale.
inline Real check_pearson_delta_form(const FactorialPolynomial& p, const Params& params,
                                     const PrecisionPolicy& policy) {
    const mpfr_prec_t bits = policy.internal_bits();
    FactorialPolynomial phi_minus_psi =
        FactorialPolynomial::basis(2, bits) + FactorialPolynomial::basis(1, bits) * (params.b + 1l) -
        FactorialPolynomial::constant(params.z);
    Real lhs = params.z * apply_L(delta(p), params, policy);
    Real rhs = apply_L(multiply(phi_minus_psi, p), params, policy);
    Real scale = max(max(abs(lhs), abs(rhs)), Real(1l, bits));
    return abs(lhs - rhs) / scale;
}

}  // namespace gcs
