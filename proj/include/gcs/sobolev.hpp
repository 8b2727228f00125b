#pragma once

// Monic polynomials S_n orthogonal for the difference-Sobolev inner product
//   <p, q> = L[p q] + lambda L[Delta p Delta q],
// their norms h~_n (direct Gram route and the nonlinear recurrence), and the
// connection coefficient a_n with P_n = S_n + a_n S_{n-1}.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gcs/basis.hpp"
#include "gcs/charlier.hpp"
#include "gcs/errors.hpp"
#include "gcs/functional.hpp"
#include "gcs/real.hpp"

namespace gcs {

struct SobolevSet {
    std::vector<FactorialPolynomial> polys;  // S_0 .. S_N, monic
    std::vector<Real> h_tilde;               // h~_0 .. h~_N
    std::vector<Real> a_from_1;              // a_1 .. a_N (a_1 = 0)
    Params params;
    mpfr_prec_t precision_bits;

    const Real& a(std::size_t n) const {
        if (n < 1 || n - 1 >= a_from_1.size()) throw std::out_of_range("a_n is defined for n >= 1");
        return a_from_1[n - 1];
    }
};

// <p, q> = L[pq] + lambda L[Delta p Delta q], both applications through the
// cached nu Gram matrix.
inline Real sobolev_inner(const FactorialPolynomial& p, const FactorialPolynomial& q,
                          const MomentTable& table) {
    Real s = table.bilinear_nu(p, q);
    if (!(table.params.lambda.is_zero()))
        s += table.params.lambda * table.bilinear_nu(delta(p), delta(q));
    return s;
}

// Closed form a_n = (n-1) lambda / z * h_n / h~_{n-1}; a_1 = 0.
inline Real connection_a(std::size_t n, const std::vector<Real>& h,
                         const std::vector<Real>& h_tilde, const Params& params,
                         const PrecisionPolicy& policy) {
    if (n < 1) throw std::invalid_argument("connection_a: n must be >= 1");
    if (n == 1) return policy.real(0);
    return Real(static_cast<long>(n) - 1, policy.internal_bits()) * params.lambda / params.z *
           h.at(n) / h_tilde.at(n - 1);
}

// Gram route: S_n from the mu Gram system, h~_n from the squared Cholesky
// pivots (the determinant ratio H~_{n+1}/H~_n), a_n from the closed form.
// Requires the Charlier norms h_0..h_N for the connection coefficients.
inline SobolevSet build_sn(std::size_t N, const MomentTable& table,
                           const std::vector<Real>& charlier_h) {
    if (table.max_index < N)
        throw std::invalid_argument("build_sn: moment table too small");
    if (charlier_h.size() < N + 1)
        throw std::invalid_argument("build_sn: need Charlier norms up to N");
    const PrecisionPolicy& policy = table.policy;

    SobolevSet out{{}, {}, {}, table.params, policy.internal_bits()};
    detail::gram_orthogonalize(table.mu2, N + 1, policy, out.polys, out.h_tilde);
    out.a_from_1.reserve(N);
    for (std::size_t n = 1; n <= N; ++n)
        out.a_from_1.push_back(connection_a(n, charlier_h, out.h_tilde, table.params, policy));
    return out;
}

// Coefficientwise residual of P_n = S_n + a_n S_{n-1}, normalized by the
// largest coefficient magnitude involved.
inline Real connection_residual(std::size_t n, const OrthogonalPolySet& charlier,
                                const SobolevSet& sobolev, const PrecisionPolicy& policy) {
    if (n < 1) throw std::invalid_argument("connection_residual: n must be >= 1");
    const mpfr_prec_t bits = policy.internal_bits();
    FactorialPolynomial rhs = sobolev.polys.at(n) + sobolev.polys.at(n - 1) * sobolev.a(n);
    const FactorialPolynomial& lhs = charlier.polys.at(n);
    Real scale = max(max(detail::max_abs_coeff(lhs, bits), detail::max_abs_coeff(rhs, bits)),
                     Real(1l, bits));
    return detail::max_abs_coeff(lhs - rhs, bits) / scale;
}

// Forward iteration of the norm recurrence
//   h~_n = lambda n^2 h_{n-1} + (1 + lambda gamma_n gamma_{n-1} / z^2) h_n
//          - (n-1)^2 lambda^2/z^2 h_n^2 / h~_{n-1},
// seeded with h~_0 = h_0. Returns h~_0..h~_N.
inline std::vector<Real> htilde_recurrence(std::size_t N, const CoeffSequences& seqs,
                                           const Params& params, const PrecisionPolicy& policy) {
    const mpfr_prec_t bits = policy.internal_bits();
    const Real z2 = params.z * params.z;
    std::vector<Real> ht;
    ht.reserve(N + 1);
    ht.push_back(seqs.h.at(0));
    for (std::size_t n = 1; n <= N; ++n) {
        // the norms are strictly positive for valid parameters; a sign flip
        // means the iteration has run out of digits
        if (!(ht[n - 1] > 0l)) throw Degenerate(n - 1);
        const Real nn(static_cast<long>(n), bits);
        const Real nm1(static_cast<long>(n) - 1, bits);
        Real v = params.lambda * nn * nn * seqs.h.at(n - 1) +
                 (Real(1l, bits) + params.lambda * seqs.gamma.at(n) * seqs.gamma.at(n - 1) / z2) *
                     seqs.h.at(n) -
                 nm1 * nm1 * params.lambda * params.lambda / z2 * seqs.h.at(n) * seqs.h.at(n) /
                     ht[n - 1];
        ht.push_back(std::move(v));
    }
    return ht;
}

// Forward iteration of the connection-coefficient recurrence
//   n gamma_{n+1} / (z a_{n+1}) = n^2/gamma_n + 1/lambda
//                                 + gamma_n gamma_{n-1}/z^2 - (n-1) a_n / z,
// seeded with a_1 = 0 and a_2. Requires lambda > 0 and gamma up to N.
// Returns a_1..a_N.
inline std::vector<Real> a_recurrence(std::size_t N, const CoeffSequences& seqs,
                                      const Params& params, const Real& a2_seed,
                                      const PrecisionPolicy& policy) {
    if (!(params.lambda > 0l))
        throw std::domain_error("a_recurrence: lambda must be positive");
    const mpfr_prec_t bits = policy.internal_bits();
    const Real tol = policy.comparison_tolerance();
    std::vector<Real> a;
    a.reserve(N);
    a.push_back(Real(0l, bits));  // a_1
    if (N >= 2) a.push_back(a2_seed);
    for (std::size_t n = 2; n + 1 <= N; ++n) {
        const Real nn(static_cast<long>(n), bits);
        Real bracket = nn * nn / seqs.gamma.at(n) + Real(1l, bits) / params.lambda +
                       seqs.gamma.at(n) * seqs.gamma.at(n - 1) / (params.z * params.z) -
                       (nn - 1l) * a[n - 1] / params.z;
        Real scale = max(nn * nn / seqs.gamma.at(n), Real(1l, bits) / params.lambda);
        if (abs(bracket) <= tol * scale) throw ZeroDenominator(n);
        a.push_back(nn * seqs.gamma.at(n + 1) / (params.z * bracket));
    }
    return a;
}

// Residual of the a_n recurrence evaluated on externally supplied values
// (used to confirm that the closed-form a_n satisfies it).
inline Real a_recurrence_residual(std::size_t n, const std::vector<Real>& a_from_1,
                                  const CoeffSequences& seqs, const Params& params,
                                  const PrecisionPolicy& policy) {
    const mpfr_prec_t bits = policy.internal_bits();
    const Real nn(static_cast<long>(n), bits);
    Real lhs = nn * seqs.gamma.at(n + 1) / (params.z * a_from_1.at(n));  // a_{n+1}
    Real rhs = nn * nn / seqs.gamma.at(n) + Real(1l, bits) / params.lambda +
               seqs.gamma.at(n) * seqs.gamma.at(n - 1) / (params.z * params.z) -
               (nn - 1l) * a_from_1.at(n - 1) / params.z;
    Real scale = max(max(abs(lhs), abs(rhs)), Real(1l, bits));
    return abs(lhs - rhs) / scale;
}

}  // namespace gcs
