#pragma once

// The named check suite behind `verify` and the acceptance tests: every
// module invariant evaluated at a configured (b, z, lambda, n_max,
// precision), returning one record per check with measured value, target,
// tolerance and pass flag. Checks are independent and read-only over shared
// tables, so they can fan out to a thread pool; results keep a fixed order
// regardless of thread count.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gcs/asymptotics.hpp"
#include "gcs/basis.hpp"
#include "gcs/charlier.hpp"
#include "gcs/errors.hpp"
#include "gcs/functional.hpp"
#include "gcs/linalg.hpp"
#include "gcs/sobolev.hpp"

namespace gcs {

struct CheckResult {
    std::string name;
    Real value;      // measured residual or quantity
    Real target;     // 0 for pure residual checks
    Real tolerance;  // |value - target| threshold used for pass
    bool pass = false;
    std::string note;
};

inline CheckResult residual_check(std::string name, Real value, Real tolerance,
                                  std::string note = {}) {
    CheckResult c{std::move(name), std::move(value), Real(0l, tolerance.prec()),
                  std::move(tolerance), false, std::move(note)};
    c.pass = abs(c.value) <= c.tolerance;
    return c;
}

// |value - target| <= max(rel_tol * |target|, abs_floor)
inline CheckResult target_check(std::string name, Real value, Real target, Real rel_tol,
                                Real abs_floor, std::string note = {}) {
    Real band = max(rel_tol * abs(target), abs_floor);
    CheckResult c{std::move(name), std::move(value), std::move(target), std::move(band), false,
                  std::move(note)};
    c.pass = abs(c.value - c.target) <= c.tolerance;
    return c;
}

inline CheckResult bool_check(std::string name, bool ok, const PrecisionPolicy& policy,
                              std::string note = {}) {
    CheckResult c{std::move(name), policy.real(ok ? 1 : 0), policy.real(1), policy.real(0), ok,
                  std::move(note)};
    return c;
}

// Deterministic pseudo-random rationals for property checks. Only the raw
// 64-bit stream of mt19937_64 is used, so values are stable across platforms.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : eng_(seed) {}

    long int_in(long lo, long hi) {
        return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // integer/denominator in [lo, hi], exact as a Real
    Real rational(long lo, long hi, long denominator, mpfr_prec_t bits) {
        return Real(int_in(lo, hi), bits) / Real(denominator, bits);
    }

    FactorialPolynomial poly(long max_degree, long coeff_range, mpfr_prec_t bits) {
        long d = int_in(0, max_degree);
        std::vector<Real> c;
        c.reserve(static_cast<std::size_t>(d) + 1);
        for (long k = 0; k <= d; ++k) c.emplace_back(int_in(-coeff_range, coeff_range), bits);
        if (c.back().is_zero()) c.back() = Real(1l, bits);
        return FactorialPolynomial(std::move(c));
    }

private:
    std::mt19937_64 eng_;
};

inline std::vector<CheckResult> run_jobs(std::vector<std::function<CheckResult()>> jobs,
                                         unsigned threads) {
    std::vector<CheckResult> results(jobs.size());
    auto run_one = [&](std::size_t i) {
        try {
            results[i] = jobs[i]();
        } catch (const std::exception& e) {
            results[i] = CheckResult{"check_" + std::to_string(i) + ".exception", Real(), Real(),
                                     Real(), false, e.what()};
        }
    };
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            run_one(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned count = threads < jobs.size() ? threads : static_cast<unsigned>(jobs.size());
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

struct VerifyConfig {
    Params params;
    PrecisionPolicy policy;
    std::size_t n_max = 20;
    unsigned threads = 1;
    std::uint64_t seed = 424243;
};

namespace detail {

inline Real rel_dev_from_one(const Real& ratio) { return abs(ratio - 1l); }

// max normalized off-diagonal |<p_i, p_j>| / sqrt(norm_i norm_j)
inline Real max_offdiag(const std::vector<FactorialPolynomial>& polys,
                        const std::vector<Real>& norms, const MomentTable& table, bool use_mu,
                        std::size_t n_max) {
    Real worst(0l, table.policy.internal_bits());
    for (std::size_t i = 0; i + 1 <= n_max; ++i) {
        for (std::size_t j = i + 1; j <= n_max; ++j) {
            Real ip = use_mu ? table.bilinear_mu(polys[i], polys[j])
                             : table.bilinear_nu(polys[i], polys[j]);
            worst = max(worst, abs(ip) / sqrt(norms[i] * norms[j]));
        }
    }
    return worst;
}

}  // namespace detail

namespace detail {
inline std::vector<CheckResult> run_verify_impl(const VerifyConfig& cfg);
}

// The full invariant suite at one configuration. Small-z leading-order
// checks only run when z <= 1e-6 (they are statements about the z -> 0
// limit and have no pass meaning at order-one z). A Cholesky failure while
// building the shared tables is reported as a single failed check instead of
// propagating, so under-precision runs still produce a report.
inline std::vector<CheckResult> run_verify(const VerifyConfig& cfg) {
    try {
        return detail::run_verify_impl(cfg);
    } catch (const NotPositiveDefinite& e) {
        return {bool_check("build.moment_gram_cholesky", false, cfg.policy,
                           std::string(e.what()) + "; raise --precision")};
    }
}

namespace detail {

inline std::vector<CheckResult> run_verify_impl(const VerifyConfig& cfg) {
    if (cfg.n_max < 6) throw std::invalid_argument("verify requires n_max >= 6");
    const PrecisionPolicy& policy = cfg.policy;
    const Params& params = cfg.params;
    const mpfr_prec_t bits = policy.internal_bits();
    const std::size_t N = cfg.n_max;

    const Real tol_tight = Real::two_pow(-(policy.working_bits - policy.guard_bits), bits);
    const Real tol_pearson = Real::two_pow(-(policy.working_bits - 2 * policy.guard_bits), bits);
    const Real tol_half_bits = Real::two_pow(-policy.working_bits / 2, bits);

    // shared read-only state
    const MomentTable table = MomentTable::build(params, N + 2, policy);
    const CharlierBuild ch = build_pn_gram(N, table);
    const SobolevSet sob = build_sn(N, table, ch.seqs.h);

    std::vector<std::function<CheckResult()>> jobs;

    // ----------------------------------------------------------- arith
    jobs.push_back([&] {
        // determinant via LU equals the product of squared Cholesky pivots
        std::size_t m = N >= 6 ? 7 : N + 1;
        Matrix block = detail::leading_block(table.nu2, m, bits);
        Real lu = determinant_lu(block, policy);
        Real piv(1l, bits);
        for (std::size_t k = 0; k < m; ++k) piv *= ch.seqs.h[k];
        return residual_check("arith.det_lu_vs_pivot_product", abs(lu / piv - 1l), tol_tight);
    });
    jobs.push_back([&] {
        std::size_t m = N >= 4 ? 5 : N + 1;
        Matrix block = detail::leading_block(table.nu2, m, bits);
        Matrix L = cholesky(block, policy);
        Real worst(0l, bits);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                Real s(0l, bits);
                for (std::size_t k = 0; k < m; ++k) acc_mul(s, L.at(i, k), L.at(j, k));
                worst = max(worst, abs(s - block.at(i, j)) / abs(block.at(i, i)));
            }
        }
        return residual_check("arith.cholesky_reconstruct", worst, tol_tight);
    });
    jobs.push_back([&] {
        // doubling the working precision moves a certified sum by < 2^-working
        PrecisionPolicy doubled(policy.working_bits * 2, policy.guard_bits);
        Params p2(params.b.at_prec(doubled.internal_bits()),
                  params.z.at_prec(doubled.internal_bits()),
                  params.lambda.at_prec(doubled.internal_bits()));
        Real lo = moment_nu(3, params, policy);
        Real hi = moment_nu(3, p2, doubled);
        return residual_check("arith.series_precision_doubling", abs(lo / hi - 1l),
                              Real::two_pow(-policy.working_bits, bits));
    });

    // ----------------------------------------------------------- basis
    jobs.push_back([&, seed = cfg.seed] {
        TestRng rng(seed);
        std::vector<Real> points;
        points.reserve(20);
        for (int i = 0; i < 20; ++i) points.push_back(rng.rational(-80, 80, 7, bits));
        Real worst(0l, bits);
        for (std::size_t n = 0; n <= 10; ++n) {
            for (std::size_t m = 0; m <= 10; ++m) {
                auto terms = linearize(n, m);
                for (const Real& x : points) {
                    Real direct = falling_factorial_eval(n, x) * falling_factorial_eval(m, x);
                    Real lin(0l, bits);
                    for (const auto& t : terms)
                        acc_mul(lin, to_real(t.coeff, bits), falling_factorial_eval(t.index, x));
                    Real scale = max(abs(direct), Real(1l, bits));
                    worst = max(worst, abs(direct - lin) / scale);
                }
            }
        }
        return residual_check("basis.linearization_pointwise", worst, tol_tight);
    });
    jobs.push_back([&, seed = cfg.seed + 1] {
        TestRng rng(seed);
        Real worst(0l, bits);
        for (std::size_t n = 0; n <= 10; ++n) {
            for (std::size_t m = 0; m <= 10; ++m) {
                Real x = rng.rational(-60, 60, 11, bits);
                Real lhs = falling_factorial_eval(n + m, x);
                Real rhs = falling_factorial_eval(n, x) *
                           falling_factorial_eval(m, x - static_cast<long>(n));
                Real scale = max(abs(lhs), Real(1l, bits));
                worst = max(worst, abs(lhs - rhs) / scale);
            }
        }
        return residual_check("basis.phi_index_split", worst, tol_tight);
    });
    jobs.push_back([&] {
        // phi_n(x) = n! C(x,n) at integer x >= n: exact integer agreement
        bool ok = true;
        for (unsigned long n = 0; n <= 10 && ok; ++n) {
            for (unsigned long x = n; x <= n + 12 && ok; ++x) {
                Real lhs = falling_factorial_eval(n, Real(static_cast<long>(x), bits));
                Real rhs = to_real(factorial_z(n) * binomial_z(x, n), bits);
                ok = (lhs == rhs);
            }
        }
        return bool_check("basis.phi_binomial_form", ok, policy);
    });
    jobs.push_back([&, seed = cfg.seed + 2] {
        // Delta(pq) = Sp * Delta q + q * Delta p
        TestRng rng(seed);
        Real worst(0l, bits);
        for (int rep = 0; rep < 10; ++rep) {
            FactorialPolynomial p = rng.poly(8, 9, bits);
            FactorialPolynomial q = rng.poly(8, 9, bits);
            FactorialPolynomial lhs = delta(multiply(p, q));
            FactorialPolynomial rhs = multiply(shift(p), delta(q)) + multiply(q, delta(p));
            Real scale = max(detail::max_abs_coeff(lhs, bits), Real(1l, bits));
            worst = max(worst, detail::max_abs_coeff(lhs - rhs, bits) / scale);
        }
        return residual_check("basis.discrete_product_rule", worst, tol_tight);
    });
    jobs.push_back([&, seed = cfg.seed + 3] {
        TestRng rng(seed);
        Real worst(0l, bits);
        for (int rep = 0; rep < 10; ++rep) {
            FactorialPolynomial p = rng.poly(12, 9, bits);
            FactorialPolynomial back = from_monomial(to_monomial(p));
            Real scale = max(detail::max_abs_coeff(p, bits), Real(1l, bits));
            worst = max(worst, detail::max_abs_coeff(p - back, bits) / scale);
        }
        return residual_check("basis.monomial_roundtrip", worst, tol_tight);
    });
    jobs.push_back([&, seed = cfg.seed + 4] {
        // nabla by phi down-shift vs monomial translate route
        TestRng rng(seed);
        Real worst(0l, bits);
        for (int rep = 0; rep < 8; ++rep) {
            FactorialPolynomial p = rng.poly(10, 9, bits);
            FactorialPolynomial route1 = nabla(p);
            MonomialPolynomial m = to_monomial(p);
            FactorialPolynomial route2 = p - from_monomial(m.translate(-1));
            Real scale = max(detail::max_abs_coeff(route1, bits), Real(1l, bits));
            worst = max(worst, detail::max_abs_coeff(route1 - route2, bits) / scale);
        }
        return residual_check("basis.nabla_dual_route", worst, tol_tight);
    });

    // ------------------------------------------------------ functional
    jobs.push_back([&, seed = cfg.seed + 5] {
        TestRng rng(seed);
        Real worst(0l, bits);
        const long max_deg = static_cast<long>(table.max_index) < 12
                                 ? static_cast<long>(table.max_index)
                                 : 12;
        for (int rep = 0; rep < 50; ++rep) {
            FactorialPolynomial p = rng.poly(max_deg, 9, bits);
            Real direct = apply_L(p, params, policy);
            Real via_moments = table.moment_route(p);
            Real scale = max(max(abs(direct), abs(via_moments)), Real(1l, bits));
            worst = max(worst, abs(direct - via_moments) / scale);
        }
        return residual_check("functional.applyL_dual_route", worst, tol_tight);
    });
    jobs.push_back([&] {
        std::size_t m = table.max_index < 25 ? table.max_index + 1 : 26;
        bool ok = true;
        try {
            cholesky(detail::leading_block(table.nu2, m, bits), policy);
        } catch (const NotPositiveDefinite&) {
            ok = false;
        }
        return bool_check("functional.nu_gram_positive_definite", ok, policy);
    });
    jobs.push_back([&] {
        std::size_t m = table.max_index < 25 ? table.max_index + 1 : 26;
        bool ok = true;
        try {
            cholesky(detail::leading_block(table.mu2, m, bits), policy);
        } catch (const NotPositiveDefinite&) {
            ok = false;
        }
        return bool_check("functional.mu_gram_positive_definite", ok, policy);
    });
    jobs.push_back([&] {
        Real worst(0l, bits);
        for (std::size_t k = 0; k <= 15; ++k)
            worst = max(worst, check_pearson(FactorialPolynomial::basis(k, bits), params, policy));
        return residual_check("functional.pearson_phi_basis", worst, tol_pearson);
    });
    jobs.push_back([&, seed = cfg.seed + 6] {
        TestRng rng(seed);
        Real worst(0l, bits);
        for (int rep = 0; rep < 20; ++rep)
            worst = max(worst, check_pearson(rng.poly(10, 9, bits), params, policy));
        return residual_check("functional.pearson_random", worst, tol_pearson);
    });
    jobs.push_back([&, seed = cfg.seed + 7] {
        TestRng rng(seed);
        Real worst(0l, bits);
        for (std::size_t k = 0; k <= 8; ++k)
            worst = max(worst,
                        check_pearson_delta_form(FactorialPolynomial::basis(k, bits), params, policy));
        for (int rep = 0; rep < 8; ++rep)
            worst = max(worst, check_pearson_delta_form(rng.poly(10, 9, bits), params, policy));
        return residual_check("functional.pearson_delta_form", worst, tol_pearson);
    });
    jobs.push_back([&] {
        // closed-form moments against the direct series route
        Real worst(0l, bits);
        for (std::size_t n = 0; n <= (table.max_index < 12 ? table.max_index : 12); ++n) {
            Real direct = apply_L(FactorialPolynomial::basis(n, bits), params, policy);
            Real scale = max(abs(table.nu[n]), Real(1l, bits));
            worst = max(worst, abs(direct - table.nu[n]) / scale);
        }
        return residual_check("functional.moment_closed_vs_series", worst, tol_tight);
    });

    // -------------------------------------------------------- charlier
    jobs.push_back([&] {
        return residual_check(
            "charlier.orthogonality_offdiag",
            detail::max_offdiag(ch.set.polys, ch.seqs.h, table, false, N), tol_tight);
    });
    jobs.push_back([&] {
        Real worst(0l, bits);
        for (std::size_t n = 0; n <= N; ++n)
            worst = max(worst, three_term_residual_monomial(n, ch.set, ch.seqs, policy));
        return residual_check("charlier.three_term_monomial", worst, tol_tight);
    });
    jobs.push_back([&] {
        Real worst(0l, bits);
        for (std::size_t n = 1; n <= N + 1; ++n)
            worst = max(worst,
                        abs(ch.seqs.h[n] - ch.seqs.gamma[n] * ch.seqs.h[n - 1]) / ch.seqs.h[n]);
        return residual_check("charlier.gamma_norm_link", worst, tol_tight);
    });
    jobs.push_back([&] {
        Real worst(0l, bits);
        for (std::size_t n = 2; n <= N; ++n)
            worst = max(worst, check_delta_identity(n, ch.set, ch.seqs, policy));
        return residual_check("charlier.delta_identity", worst, tol_tight);
    });
    jobs.push_back([&] {
        CheckResult out;
        try {
            std::size_t lf_n = N < 15 ? N : 15;
            CoeffSequences lf = build_coeffs_laguerre_freud(lf_n, params, ch.seqs.beta[0],
                                                            ch.seqs.gamma[1], policy);
            Real wb(0l, bits), wg(0l, bits);
            for (std::size_t n = 0; n <= lf_n; ++n)
                wb = max(wb, abs(lf.beta[n] / ch.seqs.beta[n] - 1l));
            for (std::size_t n = 1; n <= lf_n; ++n)
                wg = max(wg, abs(lf.gamma[n] / ch.seqs.gamma[n] - 1l));
            out = residual_check("charlier.lf_vs_gram", max(wb, wg), policy.real("1e-20"));
        } catch (const DivergedFromOracle& e) {
            out = bool_check("charlier.lf_vs_gram", false, policy,
                             "diverged at n = " + std::to_string(e.index));
        }
        return out;
    });
    jobs.push_back([&] {
        Real worst(0l, bits);
        std::size_t top = N >= 2 ? N - 1 : 1;
        for (std::size_t n = 2; n <= top; ++n)
            worst = max(worst, structure_recurrence_residual(-1, n, ch.seqs, params, policy));
        return residual_check("charlier.structure_identity_k1", worst, tol_tight);
    });
    jobs.push_back([&] {
        Real worst(0l, bits);
        std::size_t top = N >= 2 ? N - 1 : 1;
        for (std::size_t n = 2; n <= top; ++n)
            worst = max(worst, structure_recurrence_residual(-2, n, ch.seqs, params, policy));
        return residual_check("charlier.structure_identity_k2", worst, tol_tight);
    });
    jobs.push_back([&] {
        Real worst(0l, bits);
        std::size_t top = N >= 2 ? N - 1 : 1;
        for (std::size_t n = 2; n <= top; ++n)
            worst = max(worst, structure_recurrence_residual(0, n, ch.seqs, params, policy));
        return residual_check("charlier.structure_identity_k0", worst, tol_tight);
    });
    jobs.push_back([&] {
        // Hankel determinants by LU against the cumulative pivot products
        std::size_t top = N < 8 ? N : 8;
        auto H = hankel_from_norms(ch.seqs.h, top, policy);
        Real worst(0l, bits);
        for (std::size_t n = 1; n <= top; ++n) {
            Real lu = determinant_lu(detail::leading_block(table.nu2, n, bits), policy);
            worst = max(worst, abs(lu / H[n] - 1l));
        }
        return residual_check("charlier.hankel_lu_vs_pivots", worst, tol_tight);
    });

    // --------------------------------------------------------- sobolev
    jobs.push_back([&] {
        Real worst(0l, bits);
        std::size_t top = N < 10 ? N : 10;
        for (std::size_t i = 0; i <= top; ++i) {
            for (std::size_t j = 0; j <= top; ++j) {
                Real ip = sobolev_inner(FactorialPolynomial::basis(i, bits),
                                        FactorialPolynomial::basis(j, bits), table);
                Real scale = max(abs(table.mu2.at(i, j)), Real(1l, bits));
                worst = max(worst, abs(ip - table.mu2.at(i, j)) / scale);
            }
        }
        return residual_check("sobolev.inner_matches_mu_gram", worst, tol_tight);
    });
    jobs.push_back([&] {
        return residual_check(
            "sobolev.orthogonality_offdiag",
            detail::max_offdiag(sob.polys, sob.h_tilde, table, true, N), tol_tight);
    });
    jobs.push_back([&] {
        Real worst(0l, bits);
        for (std::size_t n = 2; n <= N; ++n)
            worst = max(worst, connection_residual(n, ch.set, sob, policy));
        return residual_check("sobolev.connection_identity", worst, tol_tight);
    });
    jobs.push_back([&] {
        Real closed = ch.seqs.h[1] + params.lambda * ch.seqs.h[0];
        return residual_check("sobolev.htilde1_closed_form", abs(sob.h_tilde[1] / closed - 1l),
                              tol_tight);
    });
    jobs.push_back([&] {
        const auto& h = ch.seqs.h;
        const auto& g = ch.seqs.gamma;
        const Real z2 = params.z * params.z;
        Real closed = h[2] + (h[1] * 4l + g[1] * g[2] * h[2] / z2 -
                              params.lambda / z2 * h[2] * h[2] /
                                  (h[1] + params.lambda * h[0])) *
                                 params.lambda;
        return residual_check("sobolev.htilde2_closed_form", abs(sob.h_tilde[2] / closed - 1l),
                              tol_tight);
    });
    jobs.push_back([&] {
        auto ht = htilde_recurrence(N, ch.seqs, params, policy);
        Real worst(0l, bits);
        for (std::size_t n = 0; n <= N; ++n)
            worst = max(worst, abs(ht[n] / sob.h_tilde[n] - 1l));
        return residual_check("sobolev.htilde_recurrence_vs_direct", worst, tol_half_bits);
    });
    jobs.push_back([&] {
        CheckResult out;
        if (params.lambda.is_zero()) {
            Real worst(0l, bits);
            for (std::size_t n = 1; n <= N; ++n) worst = max(worst, abs(sob.a(n)));
            out = residual_check("sobolev.a_recurrence_vs_closed", worst, tol_tight,
                                 "lambda = 0: a_n = 0 identically, recurrence not applicable");
        } else {
            std::size_t top = N < 15 ? N : 15;
            auto a_rec = a_recurrence(top, ch.seqs, params, sob.a_from_1.size() >= 2
                                                               ? sob.a(2)
                                                               : policy.real(0),
                                      policy);
            Real worst(0l, bits);
            for (std::size_t n = 2; n <= top; ++n) {
                Real closed = sob.a(n);
                worst = max(worst, abs(a_rec[n - 1] - closed) / abs(closed));
            }
            out = residual_check("sobolev.a_recurrence_vs_closed", worst, policy.real("1e-20"));
        }
        return out;
    });
    jobs.push_back([&] {
        return residual_check("sobolev.a1_zero", abs(sob.a(1)), Real(0l, bits),
                              "a_1 is exactly zero");
    });
    jobs.push_back([&] {
        // the n = 1 recurrence step self-starts from a_1 = 0 and gives a_2
        CheckResult out;
        if (params.lambda.is_zero()) {
            out = bool_check("sobolev.a_recurrence_selfstart", true, policy, "skipped at lambda = 0");
        } else {
            Real bracket = Real(1l, bits) / ch.seqs.gamma[1] + Real(1l, bits) / params.lambda;
            Real a2 = ch.seqs.gamma[2] / (params.z * bracket);
            out = residual_check("sobolev.a_recurrence_selfstart", abs(a2 / sob.a(2) - 1l),
                                 tol_tight);
        }
        return out;
    });
    jobs.push_back([&] {
        std::size_t top = N < 8 ? N : 8;
        auto Ht = hankel_from_norms(sob.h_tilde, top, policy);
        Real worst(0l, bits);
        for (std::size_t n = 1; n <= top; ++n) {
            Real lu = determinant_lu(detail::leading_block(table.mu2, n, bits), policy);
            worst = max(worst, abs(lu / Ht[n] - 1l));
        }
        return residual_check("sobolev.htilde_det_ratio", worst, tol_tight);
    });
    jobs.push_back([&] {
        CheckResult out;
        if (params.lambda.is_zero()) {
            out = bool_check("sobolev.req_an_eta_equivalence", true, policy, "skipped at lambda = 0");
        } else {
            Real worst(0l, bits);
            std::size_t top = N < 10 ? N - 1 : 10;
            for (std::size_t n = 2; n <= top; ++n)
                worst = max(worst, a_recurrence_residual(n, sob.a_from_1, ch.seqs, params, policy));
            out = residual_check("sobolev.req_an_eta_equivalence", worst, tol_tight);
        }
        return out;
    });
    jobs.push_back([&] {
        // lambda = 0 degenerates the Sobolev family to the Charlier family
        PrecisionPolicy small_policy = policy;
        Params p0(params.b, params.z, Real(0l, bits));
        std::size_t n0 = N < 10 ? N : 10;
        MomentTable t0 = MomentTable::build(p0, n0 + 2, small_policy);
        CharlierBuild c0 = build_pn_gram(n0, t0);
        SobolevSet s0 = build_sn(n0, t0, c0.seqs.h);
        Real worst(0l, bits);
        for (std::size_t n = 0; n <= n0; ++n) {
            FactorialPolynomial diff = s0.polys[n] - c0.set.polys[n];
            Real scale = max(detail::max_abs_coeff(c0.set.polys[n], bits), Real(1l, bits));
            worst = max(worst, detail::max_abs_coeff(diff, bits) / scale);
        }
        return residual_check("sobolev.lambda_zero_degenerates", worst, tol_tight);
    });

    // ------------------------------------------- sigma difference tables
    if (params.lambda > 0l) {
        jobs.push_back([&, seed = cfg.seed + 8] {
            TestRng rng(seed);
            Real worst(0l, bits);
            for (int rep = 0; rep < 10; ++rep) {
                Real x = rng.rational(-24, 24, 8, bits);
                Params pr(rng.rational(-7, 24, 8, bits), rng.rational(1, 32, 8, bits),
                          rng.rational(1, 32, 8, bits));
                SigmaDiffs gen = sigma_diffs_from_recursion(x, pr, false);
                SigmaDiffs closed = sigma_diffs_nominal(x, pr);
                Real scale = max(max(abs(closed.d2), abs(closed.d3)),
                                 max(abs(closed.d4), Real(1l, bits)));
                Real dev = max(max(abs(gen.d2 - closed.d2), abs(gen.d3 - closed.d3)),
                               abs(gen.d4 - closed.d4)) /
                           scale;
                worst = max(worst, dev);
            }
            return residual_check("sigma.generator_matches_nominal", worst, policy.real("1e-40"));
        });
        jobs.push_back([&, seed = cfg.seed + 8] {
            TestRng rng(seed);
            Real worst(0l, bits);
            for (int rep = 0; rep < 10; ++rep) {
                Real x = rng.rational(-24, 24, 8, bits);
                Params pr(rng.rational(-7, 24, 8, bits), rng.rational(1, 32, 8, bits),
                          rng.rational(1, 32, 8, bits));
                SigmaDiffs gen = sigma_diffs_from_recursion(x, pr, true);
                SigmaDiffs closed = sigma_diffs_corrected(x, pr);
                Real scale = max(max(abs(closed.d2), abs(closed.d3)),
                                 max(abs(closed.d4), Real(1l, bits)));
                Real dev = max(max(abs(gen.d2 - closed.d2), abs(gen.d3 - closed.d3)),
                               abs(gen.d4 - closed.d4)) /
                           scale;
                worst = max(worst, dev);
            }
            return residual_check("sigma.generator_matches_corrected", worst, policy.real("1e-40"));
        });
    }

    // ------------------------------------------------- small-z leading orders
    if (params.z <= policy.real("1e-6") && N >= 6) {
        const Real tol_smallz = policy.real("1e-6");
        const Real one(1l, bits);
        jobs.push_back([&, tol_smallz, one] {
            Real worst(0l, bits);
            for (std::size_t n = 0; n <= 6; ++n) {
                Real lead = pow_si(params.z, static_cast<long>(n)) / pochhammer(params.b + 1l, n);
                worst = max(worst, abs(table.nu[n] / lead - one));
            }
            return residual_check("smallz.nu_leading", worst, tol_smallz);
        });
        jobs.push_back([&, tol_smallz, one] {
            Real worst(0l, bits);
            for (std::size_t n = 1; n <= 5; ++n) {
                for (std::size_t m = 0; m <= n; ++m) {
                    Real lead = to_real(binomial_z(n, m) * factorial_z(m), bits) /
                                pochhammer(params.b + 1l, n) * pow_si(params.z, static_cast<long>(n));
                    worst = max(worst, abs(table.nu2.at(n, m) / lead - one));
                }
            }
            return residual_check("smallz.nu_gram_leading", worst, tol_smallz);
        });
        if (params.lambda > 0l) jobs.push_back([&, tol_smallz, one] {
            Real worst(0l, bits);
            for (std::size_t i = 1; i <= 5; ++i) {
                for (std::size_t j = 1; j <= i; ++j) {
                    Real lead = params.lambda * static_cast<long>(j) *
                                to_real(factorial_z(i), bits) / to_real(factorial_z(i - j), bits) *
                                pow_si(params.z, static_cast<long>(i) - 1) /
                                pochhammer(params.b + 1l, i - 1);
                    worst = max(worst, abs(table.mu2.at(i, j) / lead - one));
                }
            }
            return residual_check("smallz.mu_gram_leading", worst, tol_smallz);
        });
        jobs.push_back([&, tol_smallz, one] {
            Real worst(0l, bits);
            for (std::size_t n = 0; n <= 5; ++n) {
                Real lead = to_real(factorial_z(n), bits) / pochhammer(params.b + 1l, n) *
                            pow_si(params.z, static_cast<long>(n));
                worst = max(worst, abs(ch.seqs.h[n] / lead - one));
            }
            return residual_check("smallz.h_leading", worst, tol_smallz);
        });
        if (params.lambda > 0l) {
            jobs.push_back([&, tol_smallz, one] {
                Real worst(0l, bits);
                for (std::size_t n = 1; n <= 5; ++n) {
                    Real lead = params.lambda * static_cast<long>(n) *
                                to_real(factorial_z(n), bits) *
                                pow_si(params.z, static_cast<long>(n) - 1) /
                                pochhammer(params.b + 1l, n - 1);
                    worst = max(worst, abs(sob.h_tilde[n] / lead - one));
                }
                return residual_check("smallz.htilde_leading", worst, tol_smallz);
            });
            jobs.push_back([&, tol_smallz, one] {
                Real worst(0l, bits);
                for (std::size_t n = 2; n <= 5; ++n) {
                    Real lead = static_cast<long>(n) * params.z /
                                ((params.b + static_cast<long>(n)) *
                                 (params.b + static_cast<long>(n) - 1l));
                    worst = max(worst, abs(sob.a(n) / lead - one));
                }
                return residual_check("smallz.a_leading", worst, tol_smallz);
            });
        }
        jobs.push_back([&, tol_smallz, one] {
            auto H = hankel_from_norms(ch.seqs.h, 6, policy);
            Real worst(0l, bits);
            for (std::size_t n = 1; n <= 6; ++n) {
                Real lead = pow_si(params.z, static_cast<long>(n * (n - 1) / 2));
                for (std::size_t k = 1; k + 1 <= n; ++k)
                    lead *= to_real(factorial_z(k), bits) / pochhammer(params.b + 1l, k);
                worst = max(worst, abs(H[n] / lead - one));
            }
            return residual_check("smallz.hankel_H_leading", worst, tol_smallz);
        });
        if (params.lambda > 0l) jobs.push_back([&, tol_smallz, one] {
            auto Ht = hankel_from_norms(sob.h_tilde, 6, policy);
            Real worst(0l, bits);
            for (std::size_t n = 1; n <= 6; ++n) {
                Real lead = pow_si(params.lambda, static_cast<long>(n) - 1) *
                            pow_si(params.z, static_cast<long>((n - 1) * (n - 2) / 2));
                for (std::size_t k = 1; k + 2 <= n; ++k)
                    lead *= Real(static_cast<long>(k) + 1, bits) * to_real(factorial_z(k + 1), bits) /
                            pochhammer(params.b + 1l, k);
                worst = max(worst, abs(Ht[n] / lead - one));
            }
            return residual_check("smallz.hankel_Htilde_leading", worst, tol_smallz);
        });
        if (params.lambda > 0l) jobs.push_back([&, one] {
            // second coefficient of the h~ small-z series: reported only, the
            // printed form's trailing order is inconsistent and not asserted
            Real worst(0l, bits);
            for (std::size_t n = 1; n <= 5; ++n) {
                const Real nn(static_cast<long>(n), bits);
                if (abs(nn + params.b - 1l) <= policy.comparison_tolerance()) continue;
                Real lead = params.lambda * nn * to_real(factorial_z(n), bits) *
                            pow_si(params.z, static_cast<long>(n) - 1) /
                            pochhammer(params.b + 1l, n - 1);
                Real measured = (sob.h_tilde[n] - lead) / pow_si(params.z, static_cast<long>(n));
                Real printed = to_real(factorial_z(n), bits) *
                               (nn + params.b - 1l + params.b * params.lambda * nn) /
                               ((nn + params.b - 1l) * pochhammer(params.b + 1l, n));
                worst = max(worst, abs(measured / printed - one));
            }
            CheckResult c = bool_check("smallz.htilde_second_coeff_report", true, policy,
                                       "diagnostic only, not asserted; worst relative deviation " +
                                           worst.to_string(6));
            c.value = worst;
            return c;
        });
    }

    return run_jobs(std::move(jobs), cfg.threads);
}

}  // namespace detail

}  // namespace gcs
