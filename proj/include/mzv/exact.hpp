#ifndef MZV_EXACT_HPP
#define MZV_EXACT_HPP

#include <gmpxx.h>

#include <stdexcept>

namespace mzv {

using Integer = mpz_class;

/// Exact fraction. GMP keeps mpq_class results in lowest terms with a
/// positive denominator; construct through make_rational() when starting
/// from a raw numerator/denominator pair.
using Rational = mpq_class;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

Rational make_rational(const Integer& num, const Integer& den);

/// Bernoulli number B_n with B_1 = -1/2, so that
/// 2 (2n)! zeta(2n) = (-1)^{n+1} (2 pi)^{2n} B_{2n}.
/// Backed by a shared memo table; computing B_n fills every lower index.
Rational bernoulli(unsigned n);

/// Euler (secant) number: E_0 = 1, E_2 = -1, E_4 = 5, odd indices vanish.
Integer euler_number(unsigned n);

/// C(n, k); zero when k < 0 or k > n.
Integer binomial(long n, long k);

Integer factorial(unsigned n);

/// H_n = 1 + 1/2 + ... + 1/n (H_0 = 0).
Rational harmonic(unsigned n);

/// Bernoulli polynomial B_n(x) at a rational point.
Rational bernoulli_poly(unsigned n, const Rational& x);

/// sum_{k=0}^{m} (-1)^k / C(n, k), m <= n.
Rational inv_binomial_sum(unsigned n, unsigned m);

/// 2F1(1, 2n+2; n+2; -1), defined through the terminating sum
/// (-1)^{n+1} C(2n+1, n) F = 2^{-n-1} - sum_{k=0}^{n} (-1)^k C(n+k, k).
Rational hyp2f1_special(unsigned n);

/// base^exp for a rational base and (possibly negative) integer exponent.
Rational rational_pow(const Rational& base, long exp);

}  // namespace mzv

#endif
