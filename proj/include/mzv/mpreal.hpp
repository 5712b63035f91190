#ifndef MZV_MPREAL_HPP
#define MZV_MPREAL_HPP

#include <mpfr.h>

#include <stdexcept>
#include <string>

#include "mzv/exact.hpp"

namespace mzv {

/// Raised when an accumulated error bound exceeds the caller's tolerance.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Working precision for every numeric routine: values are produced with an
/// absolute error of at most 10^-target_digits, computed internally at
/// target_digits + guard_digits decimal digits.
class EvalContext {
public:
    explicit EvalContext(int target_digits = 40, int guard_digits = 10);

    int target_digits() const { return target_; }
    int guard_digits() const { return guard_; }
    int working_digits() const { return target_ + guard_; }
    mpfr_prec_t bits() const { return bits_; }

private:
    int target_;
    int guard_;
    mpfr_prec_t bits_;
};

/// RAII multiprecision float. Binary operations round to nearest at the
/// larger of the two operand precisions.
class MPReal {
public:
    explicit MPReal(mpfr_prec_t bits = 128);
    MPReal(long v, mpfr_prec_t bits);
    MPReal(const Rational& q, mpfr_prec_t bits);
    static MPReal from_string(const std::string& s, mpfr_prec_t bits);

    MPReal(const MPReal& o);
    MPReal(MPReal&& o) noexcept;
    MPReal& operator=(const MPReal& o);
    MPReal& operator=(MPReal&& o) noexcept;
    ~MPReal();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    MPReal& operator+=(const MPReal& o);
    MPReal& operator-=(const MPReal& o);
    MPReal& operator*=(const MPReal& o);
    MPReal& operator/=(const MPReal& o);
    MPReal operator-() const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// log10 |x|, -infinity for zero.
    double log10_abs() const;

    /// Fixed scientific rendering with `digits` significant digits.
    std::string to_string(int digits) const;

private:
    mpfr_t v_;
};

MPReal operator+(MPReal a, const MPReal& b);
MPReal operator-(MPReal a, const MPReal& b);
MPReal operator*(MPReal a, const MPReal& b);
MPReal operator/(MPReal a, const MPReal& b);
bool operator<(const MPReal& a, const MPReal& b);
bool operator<=(const MPReal& a, const MPReal& b);
bool operator>(const MPReal& a, const MPReal& b);

MPReal abs(const MPReal& x);
MPReal sqrt(const MPReal& x);
MPReal log(const MPReal& x);
/// x^k for integer k.
MPReal pow(const MPReal& x, long k);
/// n^{-e} for positive integer n.
MPReal inv_pow(unsigned long n, long e, mpfr_prec_t bits);
MPReal const_pi(mpfr_prec_t bits);
MPReal const_log2(mpfr_prec_t bits);
/// 10^{-d}
MPReal ten_to_minus(int d, mpfr_prec_t bits);

}  // namespace mzv

#endif
