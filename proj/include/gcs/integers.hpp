#pragma once

// Exact integer tables: binomials, factorials and Stirling numbers of both
// kinds. Stirling rows are cached per thread up to the largest degree seen.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstddef>
#include <vector>

#include "gcs/real.hpp"

namespace gcs {

inline mpz_class binomial_z(unsigned long n, unsigned long k) {
    mpz_class r;
    if (k > n) return r;  // 0
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline mpz_class factorial_z(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// Signed Stirling numbers of the first kind: phi_n(x) = sum_k s(n,k) x^k,
// s(n+1,k) = s(n,k-1) - n*s(n,k).
class Stirling1 {
public:
    static const std::vector<mpz_class>& row(std::size_t n) {
        auto& rows = cache();
        while (rows.size() <= n) {
            const auto& prev = rows.back();
            std::size_t m = rows.size();
            std::vector<mpz_class> next(m + 1);
            for (std::size_t k = 0; k <= m; ++k) {
                if (k > 0) next[k] = prev[k - 1];
                if (k < m) next[k] -= static_cast<long>(m - 1) * prev[k];
            }
            rows.push_back(std::move(next));
        }
        return rows[n];
    }

private:
    static std::vector<std::vector<mpz_class>>& cache() {
        thread_local std::vector<std::vector<mpz_class>> rows{{mpz_class(1)}};
        return rows;
    }
};

// Stirling numbers of the second kind: x^n = sum_k S(n,k) phi_k(x),
// S(n+1,k) = S(n,k-1) + k*S(n,k).
class Stirling2 {
public:
    static const std::vector<mpz_class>& row(std::size_t n) {
        auto& rows = cache();
        while (rows.size() <= n) {
            const auto& prev = rows.back();
            std::size_t m = rows.size();
            std::vector<mpz_class> next(m + 1);
            for (std::size_t k = 0; k <= m; ++k) {
                if (k > 0) next[k] = prev[k - 1];
                if (k < m) next[k] += static_cast<long>(k) * prev[k];
            }
            rows.push_back(std::move(next));
        }
        return rows[n];
    }

private:
    static std::vector<std::vector<mpz_class>>& cache() {
        thread_local std::vector<std::vector<mpz_class>> rows{{mpz_class(1)}};
        return rows;
    }
};

inline Real to_real(const mpz_class& z, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

}  // namespace gcs
