#include "mzv/exact.hpp"

#include <mutex>
#include <vector>

namespace mzv {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

// Lock-on-miss memo tables. Entries are appended under the lock and never
// mutated afterwards, so readers always see fully formed values.
class BernoulliCache {
public:
    Rational get(unsigned n) {
        std::lock_guard lock(mutex_);
        while (table_.size() <= n) {
            const unsigned m = static_cast<unsigned>(table_.size());
            if (m == 0) {
                table_.emplace_back(1);
                continue;
            }
            if (m > 1 && m % 2 == 1) {
                table_.emplace_back(0);
                continue;
            }
            Rational acc = 0;
            for (unsigned k = 0; k < m; ++k)
                acc += Rational(binomial(m + 1, k)) * table_[k];
            table_.push_back(-acc / Rational(m + 1));
        }
        return table_[n];
    }

private:
    std::mutex mutex_;
    std::vector<Rational> table_;
};

class EulerCache {
public:
    Integer get(unsigned n) {
        if (n % 2 == 1) return 0;
        std::lock_guard lock(mutex_);
        const unsigned half = n / 2;
        while (even_.size() <= half) {
            const unsigned m = static_cast<unsigned>(even_.size());
            if (m == 0) {
                even_.emplace_back(1);
                continue;
            }
            Integer acc = 0;
            for (unsigned k = 0; k < m; ++k)
                acc += binomial(2 * m, 2 * k) * even_[k];
            even_.push_back(-acc);
        }
        return even_[half];
    }

private:
    std::mutex mutex_;
    std::vector<Integer> even_;  // E_0, E_2, E_4, ...
};

BernoulliCache& bernoulli_cache() {
    static BernoulliCache cache;
    return cache;
}

EulerCache& euler_cache() {
    static EulerCache cache;
    return cache;
}

}  // namespace

Rational bernoulli(unsigned n) { return bernoulli_cache().get(n); }

Integer euler_number(unsigned n) { return euler_cache().get(n); }

Integer binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Rational harmonic(unsigned n) {
    Rational h = 0;
    for (unsigned k = 1; k <= n; ++k) h += Rational(1, k);
    return h;
}

Rational bernoulli_poly(unsigned n, const Rational& x) {
    Rational acc = 0;
    Rational xp = 1;  // x^{n-k}, built from k = n downwards
    for (long k = n; k >= 0; --k) {
        acc += Rational(binomial(n, k)) * bernoulli(static_cast<unsigned>(k)) * xp;
        xp *= x;
    }
    return acc;
}

Rational inv_binomial_sum(unsigned n, unsigned m) {
    if (m > n) throw DomainError("inv_binomial_sum requires m <= n");
    Rational acc = 0;
    for (unsigned k = 0; k <= m; ++k) {
        Rational term(Integer(1), binomial(n, k));
        if (k % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

Rational hyp2f1_special(unsigned n) {
    if (n < 1) throw DomainError("hyp2f1_special requires n >= 1");
    Integer partial = 0;
    for (unsigned k = 0; k <= n; ++k) {
        if (k % 2 == 0)
            partial += binomial(n + k, k);
        else
            partial -= binomial(n + k, k);
    }
    const Rational lhs = rational_pow(Rational(2), -static_cast<long>(n) - 1) - Rational(partial);
    Rational scale(binomial(2 * n + 1, n));
    if ((n + 1) % 2 == 1) scale = -scale;
    return lhs / scale;
}

Rational rational_pow(const Rational& base, long exp) {
    if (exp == 0) return 1;
    if (exp < 0) {
        if (base == 0) throw DomainError("zero to a negative power");
        return rational_pow(1 / base, -exp);
    }
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exp));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exp));
    return make_rational(num, den);
}

}  // namespace mzv
