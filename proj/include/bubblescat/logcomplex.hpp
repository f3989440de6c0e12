#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace bubblescat {

using cplx = std::complex<double>;

// Complex number with an unbounded binary exponent: value = mant * 2^exp.
// The mantissa is kept with max(|re|, |im|) in [0.5, 1) so products of
// thousands of factors never overflow.  Zero is a separate flag.
class LogComplex {
public:
    LogComplex() = default;
    LogComplex(double x) : LogComplex(cplx(x, 0.0)) {}
    LogComplex(cplx z) {
        if (z == cplx(0.0, 0.0)) return;
        mant_ = z;
        zero_ = false;
        renorm();
    }

    static LogComplex zero() { return LogComplex(); }

    // exp(w) without forming the native value.
    static LogComplex from_exp(cplx w) {
        constexpr double ln2 = 0.69314718055994530942;
        double e2 = std::floor(w.real() / ln2);
        LogComplex r;
        r.zero_ = false;
        r.mant_ = std::polar(std::exp(w.real() - e2 * ln2), w.imag());
        r.exp_ = static_cast<std::int64_t>(e2);
        r.renorm();
        return r;
    }

    static LogComplex from_log10_polar(double log10_mag, double phase) {
        constexpr double ln10 = 2.30258509299404568402;
        return from_exp(cplx(log10_mag * ln10, phase));
    }

    bool is_zero() const { return zero_; }

    double log10_magnitude() const {
        if (zero_) return -std::numeric_limits<double>::infinity();
        constexpr double log10_2 = 0.30102999566398119521;
        return std::log10(std::abs(mant_)) + static_cast<double>(exp_) * log10_2;
    }
    double ln_magnitude() const {
        if (zero_) return -std::numeric_limits<double>::infinity();
        constexpr double ln2 = 0.69314718055994530942;
        return std::log(std::abs(mant_)) + static_cast<double>(exp_) * ln2;
    }
    double phase() const { return zero_ ? 0.0 : std::arg(mant_); }

    // Native value; overflows to inf / underflows to 0 outside double range.
    cplx value() const {
        if (zero_) return {0.0, 0.0};
        if (exp_ > 4000) return {mant_.real() * HUGE_VAL, mant_.imag() * HUGE_VAL};
        if (exp_ < -4000) return {0.0, 0.0};
        int e = static_cast<int>(exp_);
        return {std::ldexp(mant_.real(), e), std::ldexp(mant_.imag(), e)};
    }
    double abs() const { return std::abs(value()); }

    cplx mantissa() const { return mant_; }
    std::int64_t exponent2() const { return exp_; }

    LogComplex conj() const {
        LogComplex r = *this;
        r.mant_ = std::conj(mant_);
        return r;
    }

    LogComplex& operator*=(const LogComplex& o) {
        if (zero_ || o.zero_) return *this = LogComplex();
        mant_ *= o.mant_;
        exp_ += o.exp_;
        renorm();
        return *this;
    }
    LogComplex& operator/=(const LogComplex& o) {
        if (o.zero_) {
            mant_ = {std::numeric_limits<double>::infinity(), 0.0};
            zero_ = false;
            return *this;
        }
        if (zero_) return *this;
        mant_ /= o.mant_;
        exp_ -= o.exp_;
        renorm();
        return *this;
    }
    LogComplex& operator+=(const LogComplex& o) {
        if (o.zero_) return *this;
        if (zero_) return *this = o;
        std::int64_t d = exp_ - o.exp_;
        if (d >= 0) {
            if (d < 1100) mant_ += std::ldexp(1.0, static_cast<int>(-d)) * o.mant_;
        } else {
            if (-d < 1100)
                mant_ = o.mant_ + std::ldexp(1.0, static_cast<int>(d)) * mant_;
            else
                mant_ = o.mant_;
            exp_ = o.exp_;
        }
        if (mant_ == cplx(0.0, 0.0)) return *this = LogComplex();
        renorm();
        return *this;
    }
    LogComplex operator-() const {
        LogComplex r = *this;
        r.mant_ = -mant_;
        return r;
    }
    LogComplex& operator-=(const LogComplex& o) { return *this += -o; }

    friend LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
    friend LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }
    friend LogComplex operator+(LogComplex a, const LogComplex& b) { return a += b; }
    friend LogComplex operator-(LogComplex a, const LogComplex& b) { return a -= b; }

    LogComplex pow(int p) const {
        if (p == 0) return LogComplex(1.0);
        if (zero_) return LogComplex();
        LogComplex base = p > 0 ? *this : LogComplex(1.0) / *this;
        unsigned q = static_cast<unsigned>(p > 0 ? p : -p);
        LogComplex r(1.0);
        while (q) {
            if (q & 1u) r *= base;
            base *= base;
            q >>= 1u;
        }
        return r;
    }

    // a / b as a native complex, safe when both are huge or tiny.
    static cplx ratio(const LogComplex& a, const LogComplex& b) { return (a / b).value(); }

private:
    void renorm() {
        double m = std::max(std::abs(mant_.real()), std::abs(mant_.imag()));
        if (!std::isfinite(m) || m == 0.0) return;
        int e = 0;
        std::frexp(m, &e);
        mant_ = {std::ldexp(mant_.real(), -e), std::ldexp(mant_.imag(), -e)};
        exp_ += e;
    }

    cplx mant_{0.0, 0.0};
    std::int64_t exp_ = 0;
    bool zero_ = true;
};

}  // namespace bubblescat
