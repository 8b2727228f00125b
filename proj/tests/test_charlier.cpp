#include <doctest.h>

#include "gcs/gcs.hpp"
#include "test_util.hpp"

using namespace gcs;
using testutil::close_rel;

namespace {
PrecisionPolicy policy;
const mpfr_prec_t bits = policy.internal_bits();
}  // namespace

TEST_SUITE("charlier") {
    TEST_CASE("first polynomials at b=0, z=1 match the oracle ratio") {
        Params p = Params::from_strings("0", "1", "1", policy);
        MomentTable t = MomentTable::build(p, 8, policy);
        CharlierBuild ch = build_pn_gram(6, t);

        CHECK(ch.set.polys[0].degree() == 0);
        CHECK(ch.set.polys[0].coeff(0) == Real(1l, bits));

        // P_1 = phi_1 - beta_0 with beta_0 = nu_1/nu_0
        Real beta0 = Real::from_string(testutil::kBeta0_b0_z1, bits);
        CHECK(close_rel(ch.seqs.beta[0], beta0, policy.real("1e-140")));
        CHECK(close_rel(-ch.set.polys[1].coeff(0), beta0, policy.real("1e-140")));
        CHECK(ch.set.polys[1].coeff(1) == Real(1l, bits));

        CHECK(ch.seqs.gamma[0].is_zero());
        for (std::size_t n = 0; n <= 6; ++n) CHECK(ch.set.polys[n].is_monic());
    }

    TEST_CASE("orthogonality and norms at moderate size") {
        Params p = Params::from_strings("0.5", "1", "1", policy);
        MomentTable t = MomentTable::build(p, 12, policy);
        CharlierBuild ch = build_pn_gram(10, t);
        for (std::size_t i = 0; i <= 10; ++i) {
            CHECK(ch.seqs.h[i] > 0l);
            for (std::size_t j = 0; j < i; ++j) {
                Real ip = t.bilinear_nu(ch.set.polys[i], ch.set.polys[j]);
                CHECK(abs(ip) / sqrt(ch.seqs.h[i] * ch.seqs.h[j]) <
                      Real::two_pow(-(policy.working_bits - policy.guard_bits), bits));
            }
            Real hn_direct = t.bilinear_nu(ch.set.polys[i], ch.set.polys[i]);
            CHECK(close_rel(hn_direct, ch.seqs.h[i], Real::two_pow(-500, bits)));
        }
        for (std::size_t n = 1; n <= 10; ++n) CHECK(ch.seqs.gamma[n] > 0l);
    }

    TEST_CASE("h_n leading order at small z") {
        Params p = Params::from_strings("0.5", "1e-8", "1", policy);
        MomentTable t = MomentTable::build(p, 7, policy);
        CharlierBuild ch = build_pn_gram(5, t);
        Real lead = to_real(factorial_z(4), bits) / pochhammer(p.b + 1l, 4) * pow_si(p.z, 4);
        CHECK(abs(ch.seqs.h[4] / lead - 1l) < policy.real("1e-6"));
    }

    TEST_CASE("Hankel determinants have the stated small-z leading product") {
        Params p = Params::from_strings("0.5", "1e-8", "1", policy);
        MomentTable t = MomentTable::build(p, 8, policy);
        CharlierBuild ch = build_pn_gram(6, t);
        auto H = hankel_from_norms(ch.seqs.h, 6, policy);
        for (std::size_t n = 1; n <= 6; ++n) {
            Real lead = pow_si(p.z, static_cast<long>(n * (n - 1) / 2));
            for (std::size_t k = 1; k + 1 <= n; ++k)
                lead *= to_real(factorial_z(k), bits) / pochhammer(p.b + 1l, k);
            CHECK(abs(H[n] / lead - 1l) < policy.real("1e-6"));
        }
    }

    TEST_CASE("Laguerre-Freud route agrees with the Gram route") {
        Params p = Params::from_strings("0.5", "1", "1", policy);
        MomentTable t = MomentTable::build(p, 17, policy);
        CharlierBuild ch = build_pn_gram(15, t);
        CoeffSequences lf =
            build_coeffs_laguerre_freud(15, p, ch.seqs.beta[0], ch.seqs.gamma[1], policy);
        CHECK(lf.route == Route::laguerre_freud);
        for (std::size_t n = 0; n <= 15; ++n)
            CHECK(abs(lf.beta[n] / ch.seqs.beta[n] - 1l) < policy.real("1e-20"));
        for (std::size_t n = 1; n <= 15; ++n)
            CHECK(abs(lf.gamma[n] / ch.seqs.gamma[n] - 1l) < policy.real("1e-20"));

        // the two jump identities hold on the LF output as well
        for (std::size_t n = 2; n <= 14; ++n) {
            CHECK(structure_recurrence_residual(-1, n, lf, p, policy) < policy.real("1e-30"));
            CHECK(structure_recurrence_residual(-2, n, lf, p, policy) < policy.real("1e-30"));
        }
    }

    TEST_CASE("Laguerre-Freud detects the gamma -> z cancellation") {
        Params p = Params::from_strings("0.5", "1", "1", policy);
        // seeding gamma_1 = z lands exactly on the singular divisor
        CHECK_THROWS_AS(
            build_coeffs_laguerre_freud(10, p, policy.real("0.4"), p.z, policy),
            DivergedFromOracle);
    }

    TEST_CASE("structure coefficients") {
        Params p = Params::from_strings("0.5", "2", "1", policy);
        MomentTable t = MomentTable::build(p, 8, policy);
        CharlierBuild ch = build_pn_gram(6, t);
        auto A3 = structure_coeffs(3, ch.seqs, p);
        CHECK(A3.at(0) == p.z);
        CHECK(A3.at(-1) == p.z * 3l);
        CHECK(close_rel(A3.at(-2), ch.seqs.gamma[3] * ch.seqs.gamma[2],
                        policy.comparison_tolerance()));
        CHECK_THROWS_AS(structure_coeffs(1, ch.seqs, p), std::invalid_argument);

        // k = 0 residual is exactly A_{-1}(n+1) - A_{-1}(n) = z
        for (std::size_t n = 2; n <= 5; ++n)
            CHECK(structure_recurrence_residual(0, n, ch.seqs, p, policy).is_zero());
    }

    TEST_CASE("difference identity for P_n") {
        Params p = Params::from_strings("0.5", "2", "1", policy);
        MomentTable t = MomentTable::build(p, 12, policy);
        CharlierBuild ch = build_pn_gram(10, t);

        CHECK(check_delta_identity(2, ch.set, ch.seqs, policy) < Real::two_pow(-448, bits));
        CHECK(check_delta_identity(10, ch.set, ch.seqs, policy) < Real::two_pow(-400, bits));

        // n = 1 degenerate: Delta P_1 = P_0, no xi term
        FactorialPolynomial d1 = delta(ch.set.polys[1]);
        CHECK(d1.degree() == 0);
        CHECK(d1.coeff(0) == Real(1l, bits));

        CHECK_THROWS_AS(ch.seqs.xi(1), std::out_of_range);
        CHECK(close_rel(ch.seqs.xi(2), ch.seqs.gamma[2] * ch.seqs.gamma[1] / p.z,
                        policy.comparison_tolerance()));
    }

    TEST_CASE("three-term recurrence holds coefficientwise in the monomial basis") {
        Params p = Params::from_strings("0.25", "1.5", "1", policy);
        MomentTable t = MomentTable::build(p, 11, policy);
        CharlierBuild ch = build_pn_gram(9, t);
        for (std::size_t n = 0; n <= 9; ++n)
            CHECK(three_term_residual_monomial(n, ch.set, ch.seqs, policy) <
                  Real::two_pow(-(policy.working_bits - policy.guard_bits), bits));
    }

    TEST_CASE("norm-gamma link h_n = gamma_n h_{n-1}") {
        Params p = Params::from_strings("1.5", "0.5", "1", policy);
        MomentTable t = MomentTable::build(p, 10, policy);
        CharlierBuild ch = build_pn_gram(8, t);
        for (std::size_t n = 1; n <= 9; ++n)
            CHECK(close_rel(ch.seqs.h[n], ch.seqs.gamma[n] * ch.seqs.h[n - 1],
                            Real::two_pow(-500, bits)));
    }

    TEST_CASE("b = 0 parameters are valid and consistent") {
        Params p = Params::from_strings("0", "1", "1", policy);
        MomentTable t = MomentTable::build(p, 8, policy);
        CharlierBuild ch = build_pn_gram(6, t);
        CoeffSequences lf =
            build_coeffs_laguerre_freud(6, p, ch.seqs.beta[0], ch.seqs.gamma[1], policy);
        for (std::size_t n = 1; n <= 6; ++n)
            CHECK(abs(lf.gamma[n] / ch.seqs.gamma[n] - 1l) < policy.real("1e-30"));
    }

    TEST_CASE("LF divergence index grows with the working precision") {
        auto divergence_index = [&](long working_bits) {
            PrecisionPolicy pp(working_bits, working_bits / 8);
            Params p = Params::from_strings("0.5", "1", "1", pp);
            MomentTable t = MomentTable::build(p, 42, pp);
            CharlierBuild ch = build_pn_gram(40, t);
            std::size_t div = 41;  // no divergence observed
            try {
                CoeffSequences lf =
                    build_coeffs_laguerre_freud(40, p, ch.seqs.beta[0], ch.seqs.gamma[1], pp);
                for (std::size_t n = 1; n <= 40; ++n) {
                    if (abs(lf.gamma[n] / ch.seqs.gamma[n] - 1l) > pp.real("1e-10")) {
                        div = n;
                        break;
                    }
                }
            } catch (const DivergedFromOracle& e) {
                div = e.index;
            }
            return div;
        };
        std::size_t at128 = divergence_index(128);
        std::size_t at320 = divergence_index(320);
        CHECK(at128 <= 40);   // loses the 1e-10 agreement inside the window
        CHECK(at320 == 41);   // holds through the whole window
        CHECK(at128 < at320);
    }

    TEST_CASE("build_pn_gram validates the table size") {
        Params p = Params::from_strings("0.5", "1", "1", policy);
        MomentTable t = MomentTable::build(p, 5, policy);
        CHECK_THROWS_AS(build_pn_gram(5, t), std::invalid_argument);
        CHECK_NOTHROW(build_pn_gram(3, t));
    }
}
