#include <doctest.h>

#include "gcs/gcs.hpp"
#include "test_util.hpp"

using namespace gcs;
using testutil::close_rel;

namespace {
PrecisionPolicy policy;
const mpfr_prec_t bits = policy.internal_bits();
}  // namespace

TEST_SUITE("basis") {
    TEST_CASE("pochhammer") {
        CHECK(pochhammer(Real(7l, bits), 0) == Real(1l, bits));
        CHECK(pochhammer(Real(2l, bits), 3) == Real(24l, bits));
        Real half3 = Real::from_string("1.5", bits);
        CHECK(pochhammer(half3, 2) == Real(15l, bits) / 4l);
    }

    TEST_CASE("falling factorial evaluation") {
        CHECK(falling_factorial_eval(0, Real::from_string("123.456", bits)) == Real(1l, bits));
        CHECK(falling_factorial_eval(3, Real(5l, bits)) == Real(60l, bits));
        for (unsigned long n = 0; n <= 8; ++n) {
            Real expect = to_real(factorial_z(n), bits);
            if (n % 2 == 1) expect = -expect;
            CHECK(falling_factorial_eval(n, Real(-1l, bits)) == expect);
        }
    }

    TEST_CASE("delta on basis elements") {
        // Delta phi_k = k phi_{k-1}
        FactorialPolynomial d3 = delta(FactorialPolynomial::basis(3, bits));
        CHECK(d3.degree() == 2);
        CHECK(d3.coeff(2) == Real(3l, bits));
        CHECK(d3.coeff(1).is_zero());
        CHECK(delta(FactorialPolynomial::basis(1, bits)).coeff(0) == Real(1l, bits));
        CHECK(delta(FactorialPolynomial::constant(Real(1l, bits))).is_zero());
        CHECK(delta(FactorialPolynomial{}).is_zero());  // zero polynomial, degree -1
        CHECK(FactorialPolynomial{}.degree() == -1);
    }

    TEST_CASE("shift and nabla") {
        FactorialPolynomial phi1 = FactorialPolynomial::basis(1, bits);
        FactorialPolynomial s = shift(phi1);
        CHECK(s.coeff(0) == Real(1l, bits));
        CHECK(s.coeff(1) == Real(1l, bits));
        CHECK(nabla(phi1).coeff(0) == Real(1l, bits));
        CHECK(nabla(phi1).degree() == 0);

        TestRng rng(7);
        for (int rep = 0; rep < 12; ++rep) {
            FactorialPolynomial p = rng.poly(8, 9, bits);
            FactorialPolynomial lhs = shift(p) - p;
            FactorialPolynomial rhs = delta(p);
            CHECK((lhs - rhs).is_zero());
        }
    }

    TEST_CASE("shift and nabla agree with pointwise evaluation") {
        TestRng rng(11);
        for (int rep = 0; rep < 6; ++rep) {
            FactorialPolynomial p = rng.poly(7, 9, bits);
            Real x = rng.rational(-40, 40, 9, bits);
            CHECK(close_rel(shift(p).eval(x), p.eval(x + 1l), Real::two_pow(-500, bits)));
            CHECK(close_rel(nabla(p).eval(x), p.eval(x) - p.eval(x - 1l),
                            Real::two_pow(-500, bits)));
        }
    }

    TEST_CASE("linearize basic shapes") {
        auto t11 = linearize(1, 1);
        REQUIRE(t11.size() == 2);
        CHECK(t11[0].index == 2);
        CHECK(t11[0].coeff == 1);
        CHECK(t11[1].index == 1);
        CHECK(t11[1].coeff == 1);

        auto tn0 = linearize(5, 0);
        REQUIRE(tn0.size() == 1);
        CHECK(tn0[0].index == 5);
        CHECK(tn0[0].coeff == 1);
    }

    TEST_CASE("linearize (2,2) against the forward-difference oracle") {
        // oracle: phi-coefficients of p(x) = (x(x-1))^2 by Newton forward
        // differences at the nodes 0..4
        auto p = [](long x) {
            Real v = Real(x, bits) * Real(x - 1, bits);
            return v * v;
        };
        auto oracle = testutil::newton_phi_coeffs(p, 4, bits);
        CHECK(oracle[4] == Real(1l, bits));
        CHECK(oracle[3] == Real(4l, bits));
        CHECK(oracle[2] == Real(2l, bits));
        CHECK(oracle[1].is_zero());
        CHECK(oracle[0].is_zero());

        auto t22 = linearize(2, 2);
        REQUIRE(t22.size() == 3);
        for (const auto& term : t22)
            CHECK(to_real(term.coeff, bits) == oracle[term.index]);
    }

    TEST_CASE("linearization holds pointwise for n,m <= 10") {
        TestRng rng(13);
        Real worst(0l, bits);
        for (std::size_t n = 0; n <= 10; ++n) {
            for (std::size_t m = 0; m <= 10; ++m) {
                auto terms = linearize(n, m);
                for (int rep = 0; rep < 3; ++rep) {
                    Real x = rng.rational(-70, 70, 13, bits);
                    Real direct = falling_factorial_eval(n, x) * falling_factorial_eval(m, x);
                    Real lin(0l, bits);
                    for (const auto& t : terms)
                        acc_mul(lin, to_real(t.coeff, bits), falling_factorial_eval(t.index, x));
                    Real scale = max(abs(direct), Real(1l, bits));
                    worst = max(worst, abs(direct - lin) / scale);
                }
            }
        }
        CHECK(worst < Real::two_pow(-(policy.working_bits - policy.guard_bits), bits));
    }

    TEST_CASE("index split phi_{n+m}(x) = phi_n(x) phi_m(x-n)") {
        TestRng rng(17);
        for (std::size_t n = 0; n <= 10; ++n) {
            for (std::size_t m = 0; m <= 10; m += 2) {
                Real x = rng.rational(-50, 50, 7, bits);
                Real lhs = falling_factorial_eval(n + m, x);
                Real rhs =
                    falling_factorial_eval(n, x) * falling_factorial_eval(m, x - static_cast<long>(n));
                CHECK(close_rel(lhs, rhs, Real::two_pow(-500, bits)));
            }
        }
    }

    TEST_CASE("multiply agrees with pointwise products") {
        TestRng rng(19);
        for (int rep = 0; rep < 8; ++rep) {
            FactorialPolynomial p = rng.poly(6, 9, bits);
            FactorialPolynomial q = rng.poly(6, 9, bits);
            FactorialPolynomial pq = multiply(p, q);
            Real x = rng.rational(-30, 30, 11, bits);
            CHECK(close_rel(pq.eval(x), p.eval(x) * q.eval(x), Real::two_pow(-480, bits)));
        }
        CHECK(multiply(FactorialPolynomial{}, FactorialPolynomial::basis(3, bits)).is_zero());
    }

    TEST_CASE("monomial conversions round trip and match the difference oracle") {
        TestRng rng(23);
        for (int rep = 0; rep < 8; ++rep) {
            FactorialPolynomial p = rng.poly(10, 9, bits);
            MonomialPolynomial m = to_monomial(p);
            FactorialPolynomial back = from_monomial(m);
            CHECK((p - back).is_zero());

            // independent conversion: Newton forward differences of the
            // monomial evaluation
            auto eval = [&](long x) { return m.eval(Real(x, bits)); };
            auto oracle =
                testutil::newton_phi_coeffs(eval, static_cast<std::size_t>(p.degree()), bits);
            for (std::size_t k = 0; k < oracle.size(); ++k)
                CHECK(close_rel(p.coeff(k), oracle[k], Real::two_pow(-480, bits)));
        }
    }

    TEST_CASE("times_x matches monomial multiplication") {
        TestRng rng(29);
        for (int rep = 0; rep < 6; ++rep) {
            FactorialPolynomial p = rng.poly(9, 9, bits);
            FactorialPolynomial xp = times_x(p);
            Real x = rng.rational(-20, 20, 3, bits);
            CHECK(close_rel(xp.eval(x), x * p.eval(x), Real::two_pow(-480, bits)));
        }
    }

    TEST_CASE("monic flag matches in both bases") {
        TestRng rng(31);
        for (int rep = 0; rep < 6; ++rep) {
            FactorialPolynomial p = rng.poly(8, 9, bits);
            // force monic
            std::vector<Real> c = p.coeffs();
            c.back() = Real(1l, bits);
            FactorialPolynomial monic{std::move(c)};
            CHECK(monic.is_monic());
            CHECK(to_monomial(monic).coeffs().back() == Real(1l, bits));
        }
    }
}
