#include "mzv/mpreal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mzv {

EvalContext::EvalContext(int target_digits, int guard_digits)
    : target_(target_digits), guard_(guard_digits) {
    if (target_digits < 10) throw DomainError("precision must be at least 10 digits");
    if (guard_digits < 1) throw DomainError("guard digits must be positive");
    bits_ = static_cast<mpfr_prec_t>(std::ceil((target_ + guard_) * 3.3219280948873623)) + 16;
}

MPReal::MPReal(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

MPReal::MPReal(long v, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

MPReal::MPReal(const Rational& q, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

MPReal MPReal::from_string(const std::string& s, mpfr_prec_t bits) {
    MPReal r(bits);
    mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
    return r;
}

MPReal::MPReal(const MPReal& o) {
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

MPReal::MPReal(MPReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

MPReal& MPReal::operator=(const MPReal& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.precision());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

MPReal& MPReal::operator=(MPReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

MPReal::~MPReal() { mpfr_clear(v_); }

namespace {
void widen(mpfr_ptr v, mpfr_prec_t bits) {
    if (mpfr_get_prec(v) < bits) mpfr_prec_round(v, bits, MPFR_RNDN);
}
}  // namespace

MPReal& MPReal::operator+=(const MPReal& o) {
    widen(v_, o.precision());
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

MPReal& MPReal::operator-=(const MPReal& o) {
    widen(v_, o.precision());
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

MPReal& MPReal::operator*=(const MPReal& o) {
    widen(v_, o.precision());
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

MPReal& MPReal::operator/=(const MPReal& o) {
    widen(v_, o.precision());
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

MPReal MPReal::operator-() const {
    MPReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

double MPReal::log10_abs() const {
    if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    const double mant = mpfr_get_d_2exp(&exp2, v_, MPFR_RNDN);
    return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * std::log10(2.0);
}

std::string MPReal::to_string(int digits) const {
    if (digits < 1) digits = 1;
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    const std::string fmt = "%." + std::to_string(digits - 1) + "Re";
    int n = mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), v_);
    if (n >= static_cast<int>(buf.size())) {
        buf.resize(static_cast<size_t>(n) + 1);
        mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), v_);
    }
    return std::string(buf.data());
}

MPReal operator+(MPReal a, const MPReal& b) { return a += b; }
MPReal operator-(MPReal a, const MPReal& b) { return a -= b; }
MPReal operator*(MPReal a, const MPReal& b) { return a *= b; }
MPReal operator/(MPReal a, const MPReal& b) { return a /= b; }
bool operator<(const MPReal& a, const MPReal& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator<=(const MPReal& a, const MPReal& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>(const MPReal& a, const MPReal& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }

MPReal abs(const MPReal& x) {
    MPReal r(x);
    mpfr_abs(r.get(), r.get(), MPFR_RNDN);
    return r;
}

MPReal sqrt(const MPReal& x) {
    MPReal r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

MPReal log(const MPReal& x) {
    MPReal r(x.precision());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

MPReal pow(const MPReal& x, long k) {
    MPReal r(x.precision());
    mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
    return r;
}

MPReal inv_pow(unsigned long n, long e, mpfr_prec_t bits) {
    MPReal r(static_cast<long>(n), bits);
    mpfr_pow_si(r.get(), r.get(), -e, MPFR_RNDN);
    return r;
}

MPReal const_pi(mpfr_prec_t bits) {
    MPReal r(bits);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

MPReal const_log2(mpfr_prec_t bits) {
    MPReal r(bits);
    mpfr_const_log2(r.get(), MPFR_RNDN);
    return r;
}

MPReal ten_to_minus(int d, mpfr_prec_t bits) {
    MPReal r(10, bits);
    mpfr_pow_si(r.get(), r.get(), -d, MPFR_RNDN);
    return r;
}

}  // namespace mzv
