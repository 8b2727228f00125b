#pragma once

// Large-n expansion tables for gamma_n, beta_n, a_n/z, P_n/phi_n and
// S_n/phi_n, empirical residual measurement against computed sequences, and
// a log-log order fit.
//
// The sigma-difference tables d_k = sigma_k - omega_k come in two variants
// generated by the same recursion
//   d_{k+1} = m * d_k + z [ alpha_k + sum_{j=1}^{k-1} alpha_{k-j}
//                                     sum_{i=0}^{j-1} C(j-1,i) sigma_{i+1} ]
// with multiplier m = x ("nominal", matching the commonly tabulated closed
// forms) or m = x+1 ("corrected", which is what the down-shift identity
// phi_n(x) = (x-n+1) phi_{n-1}(x) requires and what the computed polynomial
// families reproduce).

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcs/basis.hpp"
#include "gcs/charlier.hpp"
#include "gcs/functional.hpp"
#include "gcs/precision.hpp"
#include "gcs/real.hpp"
#include "gcs/sobolev.hpp"

namespace gcs {

// ---------------------------------------------------------------- order fit

struct OrderFit {
    std::vector<std::pair<std::size_t, Real>> residuals;  // (n, |residual|)
    Real slope;
    Real intercept;
    bool degenerate = false;  // residuals underflowed: expansion already exact
};

// Least-squares slope of log|residual| against log n. At least 5 points.
inline OrderFit fit_order(std::vector<std::pair<std::size_t, Real>> residuals,
                          const PrecisionPolicy& policy) {
    if (residuals.size() < 5) throw std::invalid_argument("fit_order: need at least 5 points");
    const mpfr_prec_t bits = policy.internal_bits();
    OrderFit fit{std::move(residuals), Real(0l, bits), Real(0l, bits), false};

    Real top(0l, bits);
    for (const auto& [n, r] : fit.residuals) top = max(top, abs(r));
    if (top <= policy.comparison_tolerance()) {
        fit.degenerate = true;
        return fit;
    }

    Real sx(0l, bits), sy(0l, bits), sxx(0l, bits), sxy(0l, bits);
    const long m = static_cast<long>(fit.residuals.size());
    for (const auto& [n, r] : fit.residuals) {
        Real lx = log(Real(static_cast<long>(n), bits));
        Real ly = log(abs(r));
        sx += lx;
        sy += ly;
        acc_mul(sxx, lx, lx);
        acc_mul(sxy, lx, ly);
    }
    Real denom = Real(m, bits) * sxx - sx * sx;
    fit.slope = (Real(m, bits) * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / Real(m, bits);
    return fit;
}

// ------------------------------------------------------- expansion tables

// gamma_n = z - z b/n + z b^2/n^2 - b z (2z + b^2)/n^3 + O(n^-4):
// coefficients of n^0..n^-3.
inline std::array<Real, 4> gamma_expansion_coeffs(const Params& p) {
    return {p.z, -p.z * p.b, p.z * p.b * p.b, -p.b * p.z * (p.z * 2l + p.b * p.b)};
}

// beta_n - n = 0/n + b z/n^2 - b(2b+1) z/n^3 + O(n^-4): coefficients of
// n^-1..n^-3 (the n^0 offset is n itself).
inline std::array<Real, 3> beta_expansion_coeffs(const Params& p) {
    const mpfr_prec_t bits = p.z.prec();
    return {Real(0l, bits), p.b * p.z, -p.b * (p.b * 2l + 1l) * p.z};
}

// a_n/z ~ alpha_1/n + alpha_2/n^2 + alpha_3/n^3 with
// alpha_1 = 1, alpha_2 = 1 - 2b, alpha_3 = 1 + 3b(b-1) - z/lambda.
inline std::array<Real, 3> alpha_coeffs(const Params& p) {
    if (!(p.lambda > 0l)) throw std::domain_error("alpha_coeffs: lambda must be positive");
    const mpfr_prec_t bits = p.z.prec();
    return {Real(1l, bits), Real(1l, bits) - p.b * 2l,
            Real(1l, bits) + Real(3l, bits) * p.b * (p.b - 1l) - p.z / p.lambda};
}

// P_n/phi_n ~ sum omega_k n^-k with omega_0 = 1, omega_1 = z,
// omega_2 = (x+1-b) z + z^2/2,
// omega_3 = [(x+1)(x+1-b) + b^2] z + [2(x+1-b)+1] z^2/2 + z^3/6.
inline std::array<Real, 4> omega_coeffs(const Real& x, const Params& p) {
    const mpfr_prec_t bits = p.z.prec();
    const Real one(1l, bits);
    const Real z2 = p.z * p.z;
    const Real xp1 = x + 1l;
    Real om2 = (xp1 - p.b) * p.z + z2 / 2l;
    Real om3 = (xp1 * (xp1 - p.b) + p.b * p.b) * p.z + ((xp1 - p.b) * 2l + 1l) * z2 / 2l +
               z2 * p.z / 6l;
    return {one, p.z, std::move(om2), std::move(om3)};
}

// sigma_k - omega_k difference tables (d_1 = 0 and sigma_0 = omega_0,
// sigma_1 = omega_1 are identities).
struct SigmaDiffs {
    Real d2, d3, d4;
};

// Closed forms as commonly tabulated: d_2 = z, d_3 = [x+z+alpha_2] z,
// d_4 = [x^2 + (z+alpha_2)x + z(2+alpha_2) + omega_2 + alpha_3] z.
inline SigmaDiffs sigma_diffs_nominal(const Real& x, const Params& p) {
    auto al = alpha_coeffs(p);
    auto om = omega_coeffs(x, p);
    Real d3 = (x + p.z + al[1]) * p.z;
    Real d4 = (x * x + (p.z + al[1]) * x + p.z * (al[1] + 2l) + om[2] + al[2]) * p.z;
    return {p.z, std::move(d3), std::move(d4)};
}

// Same brackets with x replaced by x+1: the variant consistent with
// phi_n(x) = (x-n+1) phi_{n-1}(x). This is the one the computed families
// match empirically.
inline SigmaDiffs sigma_diffs_corrected(const Real& x, const Params& p) {
    auto al = alpha_coeffs(p);
    auto om = omega_coeffs(x, p);
    const Real xp1 = x + 1l;
    Real d3 = (xp1 + p.z + al[1]) * p.z;
    Real d4 = (xp1 * xp1 + (p.z + al[1]) * xp1 + p.z * (al[1] + 2l) + om[2] + al[2]) * p.z;
    return {p.z, std::move(d3), std::move(d4)};
}

// The recursion generator, driven by alpha_1..alpha_3 and sigma_1 = z, with
// multiplier m = x (nominal) or m = x+1 (corrected).
inline SigmaDiffs sigma_diffs_from_recursion(const Real& x, const Params& p, bool corrected) {
    const mpfr_prec_t bits = p.z.prec();
    auto al = alpha_coeffs(p);
    auto om = omega_coeffs(x, p);
    const Real m = corrected ? x + 1l : x;

    std::vector<Real> d{Real(0l, bits), Real(0l, bits)};  // d_0 (unused), d_1 = 0
    auto sigma = [&](std::size_t j) { return om.at(j) + d.at(j); };
    for (std::size_t k = 1; k <= 3; ++k) {
        Real inner = al.at(k - 1);  // alpha_k
        for (std::size_t j = 1; j + 1 <= k; ++j) {
            Real s(0l, bits);
            for (std::size_t i = 0; i < j; ++i)
                s += to_real(binomial_z(j - 1, i), bits) * sigma(i + 1);
            acc_mul(inner, al.at(k - j - 1), s);
        }
        d.push_back(m * d[k] + p.z * inner);
    }
    return {d[2], d[3], d[4]};
}

// -------------------------------------------------- empirical measurements

// P_n(x)/phi_n(x); x must not be one of the integer roots 0..n-1 of phi_n.
inline Real poly_over_phi(const FactorialPolynomial& p, std::size_t n, const Real& x) {
    Real phi = falling_factorial_eval(n, x);
    if (phi.is_zero()) throw std::domain_error("poly_over_phi: x is a root of phi_n");
    return p.eval(x) / phi;
}

// |gamma_n - 4-term partial sum| over a window.
inline std::vector<std::pair<std::size_t, Real>> gamma_expansion_residuals(
    const CoeffSequences& seqs, const Params& p, std::size_t lo, std::size_t hi) {
    auto c = gamma_expansion_coeffs(p);
    const mpfr_prec_t bits = p.z.prec();
    std::vector<std::pair<std::size_t, Real>> out;
    out.reserve(hi - lo + 1);
    for (std::size_t n = lo; n <= hi; ++n) {
        const Real invn = Real(1l, bits) / Real(static_cast<long>(n), bits);
        Real sum = c[0] + (c[1] + (c[2] + c[3] * invn) * invn) * invn;
        out.emplace_back(n, abs(seqs.gamma.at(n) - sum));
    }
    return out;
}

// |beta_n - n - bz/n^2 + b(2b+1)z/n^3| over a window.
inline std::vector<std::pair<std::size_t, Real>> beta_expansion_residuals(
    const CoeffSequences& seqs, const Params& p, std::size_t lo, std::size_t hi) {
    auto c = beta_expansion_coeffs(p);
    const mpfr_prec_t bits = p.z.prec();
    std::vector<std::pair<std::size_t, Real>> out;
    out.reserve(hi - lo + 1);
    for (std::size_t n = lo; n <= hi; ++n) {
        const Real nn(static_cast<long>(n), bits);
        const Real invn = Real(1l, bits) / nn;
        Real sum = nn + (c[0] + (c[1] + c[2] * invn) * invn) * invn;
        out.emplace_back(n, abs(seqs.beta.at(n) - sum));
    }
    return out;
}

// (a_n/z - alpha_1/n - alpha_2/n^2) n^3, which tends to alpha_3.
inline Real alpha3_measurement(std::size_t n, const Real& a_n, const Params& p) {
    const mpfr_prec_t bits = p.z.prec();
    auto al = alpha_coeffs(p);
    const Real nn(static_cast<long>(n), bits);
    return (a_n / p.z - al[0] / nn - al[1] / (nn * nn)) * nn * nn * nn;
}

// n^2 (S_n/phi_n - P_n/phi_n), which tends to d_2 = z.
inline Real d2_measurement(std::size_t n, const OrthogonalPolySet& charlier,
                           const SobolevSet& sobolev, const Real& x) {
    Real diff = poly_over_phi(sobolev.polys.at(n), n, x) - poly_over_phi(charlier.polys.at(n), n, x);
    const Real nn(static_cast<long>(n), x.prec());
    return nn * nn * diff;
}

// n^3 (S_n/phi_n - P_n/phi_n - z/n^2), which tends to d_3.
inline Real d3_measurement(std::size_t n, const OrthogonalPolySet& charlier,
                           const SobolevSet& sobolev, const Real& x, const Params& p) {
    Real diff = poly_over_phi(sobolev.polys.at(n), n, x) - poly_over_phi(charlier.polys.at(n), n, x);
    const Real nn(static_cast<long>(n), x.prec());
    return nn * nn * nn * (diff - p.z / (nn * nn));
}

// n^4 (P_n/phi_n - sum_{k<=3} omega_k/n^k): tends to omega_4, which has no
// closed form here and is only ever reported as measured data.
inline Real omega_tail_measurement(std::size_t n, const OrthogonalPolySet& charlier, const Real& x,
                                   const Params& p) {
    auto om = omega_coeffs(x, p);
    const Real nn(static_cast<long>(n), x.prec());
    const Real invn = Real(1l, x.prec()) / nn;
    Real partial = om[0] + (om[1] + (om[2] + om[3] * invn) * invn) * invn;
    return (poly_over_phi(charlier.polys.at(n), n, x) - partial) * nn * nn * nn * nn;
}

// Richardson extrapolation of the omega tail at n and 2n: for a measurement
// m(n) = w + c/n, 2 m(2n) - m(n) = w + O(n^-2).
inline Real omega4_richardson(std::size_t n, const OrthogonalPolySet& charlier, const Real& x,
                              const Params& p) {
    Real m1 = omega_tail_measurement(n, charlier, x, p);
    Real m2 = omega_tail_measurement(2 * n, charlier, x, p);
    return m2 * 2l - m1;
}

// ------------------------------------------------------------ norm limits

struct LimitChecks {
    // n^2 h_{n+1}/h~_n -> z^2/lambda and h~_n/(n^2 h_n) -> lambda/z
    std::vector<std::pair<std::size_t, Real>> h_ratio;        // n^2 h_{n+1}/h~_n
    std::vector<std::pair<std::size_t, Real>> htilde_ratio;   // h~_n/(n^2 h_n)
    Real h_ratio_target, htilde_ratio_target;
    Real h_ratio_dev_at_top, htilde_ratio_dev_at_top;  // relative deviations at n = hi
};

inline LimitChecks limit_checks(const CoeffSequences& seqs, const std::vector<Real>& h_tilde,
                                const Params& p, std::size_t lo, std::size_t hi) {
    if (!(p.lambda > 0l)) throw std::domain_error("limit_checks: lambda must be positive");
    const mpfr_prec_t bits = p.z.prec();
    LimitChecks out{{},
                    {},
                    p.z * p.z / p.lambda,
                    p.lambda / p.z,
                    Real(0l, bits),
                    Real(0l, bits)};
    for (std::size_t n = lo; n <= hi; ++n) {
        const Real nn(static_cast<long>(n), bits);
        out.h_ratio.emplace_back(n, nn * nn * seqs.h.at(n + 1) / h_tilde.at(n));
        out.htilde_ratio.emplace_back(n, h_tilde.at(n) / (nn * nn * seqs.h.at(n)));
    }
    out.h_ratio_dev_at_top = abs(out.h_ratio.back().second / out.h_ratio_target - 1l);
    out.htilde_ratio_dev_at_top = abs(out.htilde_ratio.back().second / out.htilde_ratio_target - 1l);
    return out;
}

}  // namespace gcs
