#pragma once

// Monic generalized Charlier polynomials P_n and their recurrence data.
//
// The ground-truth route builds P_n by orthogonalizing phi_n against the
// cached nu Gram matrix through a single Cholesky factorization; the squared
// pivots are the norms h_n = H_{n+1}/H_n. The Laguerre-Freud forward
// iteration
//   beta_n + beta_{n-1} = n - 1 - b + n z / gamma_n
//   (gamma_{n+1} - z)(gamma_n - z) = z (beta_n - n)(beta_n - n + b)
// is the fast secondary route; gamma_n -> z makes gamma_n - z cancel, so the
// iteration sheds digits as n grows and is checked against the Gram route.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "gcs/basis.hpp"
#include "gcs/errors.hpp"
#include "gcs/functional.hpp"
#include "gcs/linalg.hpp"
#include "gcs/real.hpp"

namespace gcs {

enum class Route { gram, laguerre_freud };

// Aligned sequences beta_n, gamma_n, h_n and xi_n = gamma_n gamma_{n-1} / z.
// gamma[0] = 0 exactly; h_n = gamma_n h_{n-1}; xi is indexed from 2.
struct CoeffSequences {
    std::vector<Real> beta;
    std::vector<Real> gamma;
    std::vector<Real> h;
    std::vector<Real> xi_from_2;
    Route route = Route::gram;

    std::size_t max_n() const { return gamma.empty() ? 0 : gamma.size() - 1; }

    const Real& xi(std::size_t n) const {
        if (n < 2 || n - 2 >= xi_from_2.size())
            throw std::out_of_range("xi is defined for n >= 2");
        return xi_from_2[n - 2];
    }
};

struct OrthogonalPolySet {
    std::vector<FactorialPolynomial> polys;  // P_0 .. P_{size-1}, monic
    Params params;
    mpfr_prec_t precision_bits;
};

struct CharlierBuild {
    OrthogonalPolySet set;
    CoeffSequences seqs;
};

namespace detail {

inline Matrix leading_block(const Matrix& G, std::size_t m, mpfr_prec_t bits) {
    Matrix B(m, m, bits);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) B.at(i, j) = G.at(i, j);
    return B;
}

// Monic orthogonal polynomials from a Gram matrix: p_n = phi_n + sum c_k
// phi_k with G[<n] c = -(G[k][n])_{k<n}; norms are the squared pivots.
inline void gram_orthogonalize(const Matrix& G, std::size_t count, const PrecisionPolicy& policy,
                               std::vector<FactorialPolynomial>& polys, std::vector<Real>& norms) {
    const mpfr_prec_t bits = policy.internal_bits();
    Matrix L = cholesky(leading_block(G, count, bits), policy);
    polys.clear();
    norms.clear();
    polys.reserve(count);
    norms.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        std::vector<Real> coeffs(n + 1, Real(0l, bits));
        if (n > 0) {
            std::vector<Real> rhs;
            rhs.reserve(n);
            for (std::size_t k = 0; k < n; ++k) rhs.push_back(-G.at(k, n));
            // forward/backward substitution on the leading n-by-n block of L
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < i; ++k) dec_mul(rhs[i], L.at(i, k), rhs[k]);
                rhs[i] /= L.at(i, i);
            }
            for (std::size_t ii = n; ii-- > 0;) {
                for (std::size_t k = ii + 1; k < n; ++k) dec_mul(rhs[ii], L.at(k, ii), rhs[k]);
                rhs[ii] /= L.at(ii, ii);
            }
            for (std::size_t k = 0; k < n; ++k) coeffs[k] = std::move(rhs[k]);
        }
        coeffs[n] = Real(1l, bits);
        polys.emplace_back(std::move(coeffs));
        norms.push_back(L.at(n, n) * L.at(n, n));
    }
}

}  // namespace detail

// Gram/Cholesky route. Builds P_0..P_{N+1} and beta, gamma, h up to index
// N+1 (one index beyond the request, so downstream recurrences always have
// gamma_{N+1} available). The table must cover phi indices up to N+2.
inline CharlierBuild build_pn_gram(std::size_t N, const MomentTable& table) {
    if (table.max_index < N + 2)
        throw std::invalid_argument("build_pn_gram: moment table too small (need N+2)");
    const PrecisionPolicy& policy = table.policy;
    const mpfr_prec_t bits = policy.internal_bits();
    const std::size_t count = N + 2;  // P_0 .. P_{N+1}

    CharlierBuild out{{{}, table.params, bits}, {}};
    detail::gram_orthogonalize(table.nu2, count, policy, out.set.polys, out.seqs.h);

    out.seqs.route = Route::gram;
    out.seqs.beta.reserve(count);
    out.seqs.gamma.reserve(count);
    out.seqs.gamma.push_back(Real(0l, bits));  // gamma_0 = 0
    for (std::size_t n = 0; n < count; ++n) {
        FactorialPolynomial xp = times_x(out.set.polys[n]);
        out.seqs.beta.push_back(table.bilinear_nu(xp, out.set.polys[n]) / out.seqs.h[n]);
        if (n >= 1)
            out.seqs.gamma.push_back(table.bilinear_nu(xp, out.set.polys[n - 1]) /
                                     out.seqs.h[n - 1]);
    }
    out.seqs.xi_from_2.reserve(count - 2);
    for (std::size_t n = 2; n < count; ++n)
        out.seqs.xi_from_2.push_back(out.seqs.gamma[n] * out.seqs.gamma[n - 1] / table.params.z);
    return out;
}

// Laguerre-Freud forward iteration, seeded with beta_0 and gamma_1 from the
// Gram route. Returns beta_0..beta_N and gamma_0..gamma_{N+1}. Throws
// DivergedFromOracle when gamma_n - z underflows: the true gamma_n tends to
// z, so the divisor is a cancellation and the iteration eventually exhausts
// the working precision.
inline CoeffSequences build_coeffs_laguerre_freud(std::size_t N, const Params& params,
                                                  const Real& beta0, const Real& gamma1,
                                                  const PrecisionPolicy& policy) {
    const mpfr_prec_t bits = policy.internal_bits();
    const Real guard = policy.comparison_tolerance() * params.z;

    CoeffSequences s;
    s.route = Route::laguerre_freud;
    s.beta.push_back(beta0);
    s.gamma.push_back(Real(0l, bits));
    s.gamma.push_back(gamma1);
    for (std::size_t n = 1; n <= N; ++n) {
        if (abs(s.gamma[n] - params.z) <= guard) throw DivergedFromOracle(n);
        Real bn = Real(static_cast<long>(n) - 1, bits) - params.b +
                  Real(static_cast<long>(n), bits) * params.z / s.gamma[n] - s.beta[n - 1];
        Real gnext = params.z + params.z * (bn - static_cast<long>(n)) *
                                    (bn - static_cast<long>(n) + params.b) /
                                    (s.gamma[n] - params.z);
        s.beta.push_back(std::move(bn));
        s.gamma.push_back(std::move(gnext));
    }
    s.h.push_back(moment_nu(0, params, policy));
    for (std::size_t n = 1; n < s.gamma.size(); ++n) s.h.push_back(s.gamma[n] * s.h[n - 1]);
    for (std::size_t n = 2; n < s.gamma.size(); ++n)
        s.xi_from_2.push_back(s.gamma[n] * s.gamma[n - 1] / params.z);
    return s;
}

// Structure coefficients of z p_n(x+1) = sum_k A_k(n) p_{n+k}: for this
// weight the only nonzero ones are A_0 = z, A_{-1} = n z, A_{-2} =
// gamma_n gamma_{n-1}.
inline std::map<long, Real> structure_coeffs(std::size_t n, const CoeffSequences& seqs,
                                             const Params& params) {
    if (n < 2) throw std::invalid_argument("structure_coeffs: n must be >= 2");
    std::map<long, Real> a;
    a[0] = params.z;
    a[-1] = params.z * static_cast<long>(n);
    a[-2] = seqs.gamma.at(n) * seqs.gamma.at(n - 1);
    return a;
}

namespace detail {

inline Real structure_A(long k, std::size_t n, const CoeffSequences& seqs, const Params& params,
                        mpfr_prec_t bits) {
    switch (k) {
        case 0:
            return params.z;
        case -1:
            return params.z * static_cast<long>(n);
        case -2:
            return seqs.gamma.at(n) * seqs.gamma.at(n - 1);
        default:
            return Real(0l, bits);
    }
}

}  // namespace detail

// Residual of the structure-coefficient recurrence
//   gamma_{n+k+1} A_{k+1}(n) - gamma_n A_{k+1}(n-1)
//     + A_{k-1}(n) - A_{k-1}(n+1) = (beta_n - beta_{n+k} - 1) A_k(n)
// at a given k in {-2,-1,0}, normalized by the largest magnitude involved.
// k = -1 and k = -2 are the two identities that link gamma and beta jumps.
inline Real structure_recurrence_residual(long k, std::size_t n, const CoeffSequences& seqs,
                                          const Params& params, const PrecisionPolicy& policy) {
    const mpfr_prec_t bits = policy.internal_bits();
    auto A = [&](long kk, std::size_t nn) { return detail::structure_A(kk, nn, seqs, params, bits); };
    const auto idx = [n](long off) { return static_cast<std::size_t>(static_cast<long>(n) + off); };
    Real lhs = seqs.gamma.at(idx(k + 1)) * A(k + 1, n) -
               seqs.gamma.at(n) * A(k + 1, n - 1) + A(k - 1, n) - A(k - 1, n + 1);
    Real rhs = (seqs.beta.at(n) - seqs.beta.at(idx(k)) - 1l) * A(k, n);
    Real scale = max(max(abs(lhs), abs(rhs)), Real(1l, bits));
    return abs(lhs - rhs) / scale;
}

namespace detail {

inline Real max_abs_coeff(const FactorialPolynomial& p, mpfr_prec_t bits) {
    Real m(0l, bits);
    for (const auto& c : p.coeffs()) m = max(m, abs(c));
    return m;
}

}  // namespace detail

// Residual of Delta P_n = n P_{n-1} + xi_n P_{n-2} (and of the unscaled form
// z P_n(x+1) = z P_n + n z P_{n-1} + gamma_n gamma_{n-1} P_{n-2}), measured
// as the largest phi-basis coefficient of the difference divided by the
// largest coefficient magnitude among the summands. P_{-1} = P_{-2} = 0.
inline Real check_delta_identity(std::size_t n, const OrthogonalPolySet& set,
                                 const CoeffSequences& seqs, const PrecisionPolicy& policy) {
    const mpfr_prec_t bits = policy.internal_bits();
    const Params& params = set.params;
    const FactorialPolynomial& pn = set.polys.at(n);

    FactorialPolynomial lhs1 = delta(pn);
    FactorialPolynomial rhs1;
    if (n >= 1) rhs1 += set.polys[n - 1] * Real(static_cast<long>(n), bits);
    if (n >= 2) rhs1 += set.polys[n - 2] * seqs.xi(n);
    Real scale1 = max(max(detail::max_abs_coeff(lhs1, bits), detail::max_abs_coeff(rhs1, bits)),
                      Real(1l, bits));
    Real r1 = detail::max_abs_coeff(lhs1 - rhs1, bits) / scale1;

    FactorialPolynomial lhs2 = shift(pn) * params.z;
    FactorialPolynomial rhs2 = pn * params.z;
    if (n >= 1) rhs2 += set.polys[n - 1] * (params.z * static_cast<long>(n));
    if (n >= 2) rhs2 += set.polys[n - 2] * (seqs.gamma[n] * seqs.gamma[n - 1]);
    Real scale2 = max(max(detail::max_abs_coeff(lhs2, bits), detail::max_abs_coeff(rhs2, bits)),
                      Real(1l, bits));
    Real r2 = detail::max_abs_coeff(lhs2 - rhs2, bits) / scale2;

    return max(r1, r2);
}

// Residual of the three-term recurrence x P_n = P_{n+1} + beta_n P_n +
// gamma_n P_{n-1}, checked coefficientwise on the monomial basis.
inline Real three_term_residual_monomial(std::size_t n, const OrthogonalPolySet& set,
                                         const CoeffSequences& seqs,
                                         const PrecisionPolicy& policy) {
    const mpfr_prec_t bits = policy.internal_bits();
    MonomialPolynomial pn = to_monomial(set.polys.at(n));
    MonomialPolynomial pnp1 = to_monomial(set.polys.at(n + 1));

    // x * p on the monomial basis is a coefficient shift
    std::vector<Real> xs(pn.coeffs().size() + 1, Real(0l, bits));
    for (std::size_t k = 0; k < pn.coeffs().size(); ++k) xs[k + 1] = pn.coeffs()[k];
    MonomialPolynomial lhs(std::move(xs));

    std::vector<Real> rhs(pnp1.coeffs().size(), Real(0l, bits));
    for (std::size_t k = 0; k < pnp1.coeffs().size(); ++k) rhs[k] = pnp1.coeffs()[k];
    for (std::size_t k = 0; k < pn.coeffs().size(); ++k) acc_mul(rhs[k], seqs.beta.at(n), pn.coeffs()[k]);
    if (n >= 1) {
        MonomialPolynomial pm1 = to_monomial(set.polys[n - 1]);
        for (std::size_t k = 0; k < pm1.coeffs().size(); ++k)
            acc_mul(rhs[k], seqs.gamma.at(n), pm1.coeffs()[k]);
    }
    MonomialPolynomial diff = lhs - MonomialPolynomial(std::move(rhs));

    Real scale(1l, bits);
    for (const auto& c : lhs.coeffs()) scale = max(scale, abs(c));
    Real worst(0l, bits);
    for (const auto& c : diff.coeffs()) worst = max(worst, abs(c));
    return worst / scale;
}

// Hankel determinants H_0..H_{count} as cumulative products of the norms:
// H_0 = 1, H_{n+1} = H_n h_n.
inline std::vector<Real> hankel_from_norms(const std::vector<Real>& h, std::size_t count,
                                           const PrecisionPolicy& policy) {
    std::vector<Real> H;
    H.reserve(count + 1);
    H.push_back(policy.real(1));
    for (std::size_t n = 0; n < count; ++n) H.push_back(H.back() * h.at(n));
    return H;
}

}  // namespace gcs
