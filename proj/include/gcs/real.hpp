#pragma once

// Arbitrary-precision real numbers on top of MPFR. Each value carries its own
// precision in bits; binary operations work at the larger of the two operand
// precisions and the result carries that precision.

#include <mpfr.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace gcs {

inline constexpr long kMinPrecisionBits = 64;

class Real {
public:
    // NaN at the requested precision.
    explicit Real(mpfr_prec_t bits = kMinPrecisionBits) {
        mpfr_init2(v_, clamp(bits));
    }

    Real(long n, mpfr_prec_t bits) {
        mpfr_init2(v_, clamp(bits));
        mpfr_set_si(v_, n, MPFR_RNDN);
    }

    Real(unsigned long n, mpfr_prec_t bits) {
        mpfr_init2(v_, clamp(bits));
        mpfr_set_ui(v_, n, MPFR_RNDN);
    }

    Real(int n, mpfr_prec_t bits) : Real(static_cast<long>(n), bits) {}

    // Decimal string -> Real, rounded to nearest at `bits`. Never goes
    // through double.
    static Real from_string(std::string_view s, mpfr_prec_t bits) {
        Real r(bits);
        std::string buf(s);
        if (buf.empty() || mpfr_set_str(r.v_, buf.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("not a valid decimal number: \"" + buf + "\"");
        return r;
    }

    // 2^e, exact.
    static Real two_pow(long e, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_ui_2exp(r.v_, 1u, e, MPFR_RNDN);
        return r;
    }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    Real(Real&& o) noexcept {
        mpfr_init2(v_, kMinPrecisionBits);
        mpfr_swap(v_, o.v_);
    }

    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }

    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    // Same value at another precision (exact when bits >= prec()).
    Real at_prec(mpfr_prec_t bits) const {
        Real r(bits);
        mpfr_set(r.raw(), v_, MPFR_RNDN);
        return r;
    }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Scientific-notation decimal string with `digits` significant digits.
    // Deterministic for a given value and digit count.
    std::string to_string(int digits = 20) const {
        if (digits < 2) digits = 2;
        char small[128];
        int need = mpfr_snprintf(small, sizeof(small), "%.*Re", digits - 1, v_);
        if (need < static_cast<int>(sizeof(small))) return std::string(small);
        std::string big(static_cast<std::size_t>(need) + 1, '\0');
        mpfr_snprintf(big.data(), big.size(), "%.*Re", digits - 1, v_);
        big.resize(static_cast<std::size_t>(need));
        return big;
    }

    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { return inplace2(mpfr_add, o); }
    Real& operator-=(const Real& o) { return inplace2(mpfr_sub, o); }
    Real& operator*=(const Real& o) { return inplace2(mpfr_mul, o); }
    Real& operator/=(const Real& o) { return inplace2(mpfr_div, o); }

    friend Real operator+(const Real& a, const Real& b) { return binop(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return binop(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return binop(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return binop(mpfr_div, a, b); }

    friend Real operator+(const Real& a, long b) { return si_op(mpfr_add_si, a, b); }
    friend Real operator-(const Real& a, long b) { return si_op(mpfr_sub_si, a, b); }
    friend Real operator*(const Real& a, long b) { return si_op(mpfr_mul_si, a, b); }
    friend Real operator/(const Real& a, long b) { return si_op(mpfr_div_si, a, b); }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator-(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

private:
    static mpfr_prec_t clamp(mpfr_prec_t bits) {
        return bits < kMinPrecisionBits ? kMinPrecisionBits : bits;
    }

    using mpfr_binfn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using mpfr_sifn = int (*)(mpfr_ptr, mpfr_srcptr, long, mpfr_rnd_t);

    static Real binop(mpfr_binfn fn, const Real& a, const Real& b) {
        Real r(a.prec() > b.prec() ? a.prec() : b.prec());
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    static Real si_op(mpfr_sifn fn, const Real& a, long b) {
        Real r(a.prec());
        fn(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }

    Real& inplace2(mpfr_binfn fn, const Real& o) {
        if (o.prec() > prec()) {
            Real t(o.prec());
            fn(t.v_, v_, o.v_, MPFR_RNDN);
            mpfr_swap(v_, t.v_);
        } else {
            fn(v_, v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    mpfr_t v_;
};

inline Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

inline Real sqrt(const Real& a) {
    Real r(a.prec());
    mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

inline Real log(const Real& a) {
    Real r(a.prec());
    mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

inline Real exp(const Real& a) {
    Real r(a.prec());
    mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

inline Real pow_si(const Real& a, long e) {
    Real r(a.prec());
    mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }

// acc += a*b and acc -= a*b with a single rounding into acc's precision.
inline void acc_mul(Real& acc, const Real& a, const Real& b) {
    mpfr_fma(acc.raw(), a.raw(), b.raw(), acc.raw(), MPFR_RNDN);
}

inline void dec_mul(Real& acc, const Real& a, const Real& b) {
    mpfr_fms(acc.raw(), a.raw(), b.raw(), acc.raw(), MPFR_RNDN);
    mpfr_neg(acc.raw(), acc.raw(), MPFR_RNDN);
}

}  // namespace gcs
