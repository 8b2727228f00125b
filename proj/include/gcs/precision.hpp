#pragma once

#include <stdexcept>

#include "gcs/real.hpp"

namespace gcs {

// Precision policy shared by every computation. `working_bits` is the nominal
// precision of results; `guard_bits` extra bits absorb rounding so that
// certified series truncation at 2^-(working+guard) leaves results correct to
// the working precision. Comparisons against zero always go through
// `comparison_tolerance`, scaled by the magnitudes involved.
struct PrecisionPolicy {
    long working_bits = 512;
    long guard_bits = 64;
    long max_series_index = 1000000;

    PrecisionPolicy() = default;
    PrecisionPolicy(long working, long guard) : working_bits(working), guard_bits(guard) {
        validate();
    }

    void validate() const {
        if (working_bits < kMinPrecisionBits)
            throw std::invalid_argument("working_bits must be at least 64");
        if (guard_bits <= 0 || guard_bits >= working_bits)
            throw std::invalid_argument("guard_bits must be positive and smaller than working_bits");
    }

    // Precision at which intermediate values are carried.
    mpfr_prec_t internal_bits() const { return working_bits + guard_bits; }

    // 2^(-working_bits/2): the scale-relative zero threshold.
    Real comparison_tolerance() const { return Real::two_pow(-working_bits / 2, internal_bits()); }

    // 2^(-(working_bits+guard_bits)): certified series truncation threshold.
    Real truncation_tolerance() const {
        return Real::two_pow(-(working_bits + guard_bits), internal_bits());
    }

    Real real(long n) const { return Real(n, internal_bits()); }
    Real real(std::string_view s) const { return Real::from_string(s, internal_bits()); }
};

}  // namespace gcs
