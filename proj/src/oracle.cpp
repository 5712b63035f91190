#include <cmath>
#include <limits>
#include <vector>

#include "mzv/numerics.hpp"
#include "mzv/witten.hpp"

namespace mzv {

namespace {

constexpr mpfr_prec_t kOracleBits = 128;
constexpr long double kZeta2Bound = 1.6450L;  // >= zeta(2) >= zeta(t) for t >= 2

// Bound for sum_{k > N} k^-e h(k), with h = c (constant) or h = 1 + log k.
long double tail_const(long double c, int e, long N) {
    return c * std::pow(static_cast<long double>(N), 1 - e) / (e - 1);
}

long double tail_log(int e, long N, long double shift = 0) {
    const long double Nl = static_cast<long double>(N);
    const long double d = e - 1;
    return std::pow(Nl, 1 - e) * ((1 + shift + std::log(Nl)) / d + 1 / (d * d));
}

// Bound for sum_{k > N} k^-e * (k / 2).
long double tail_linear(int e, long N) {
    return 0.5L * std::pow(static_cast<long double>(N), 2 - e) / (e - 2);
}

// Bound on the inner partial sum sum_{m < n} m^-x for n > N.
long double inner_tail(int e, int x, long N) {
    if (x >= 2) return tail_const(kZeta2Bound, e, N);
    if (x == 1) return tail_log(e, N);
    return tail_linear(e, N);
}

OracleResult finish(long double value, long double abs_sum, long count, long double tail, long double unit) {
    const long double rounding = static_cast<long double>(count + 8) * unit * abs_sum;
    MPReal v(kOracleBits);
    mpfr_set_ld(v.get(), value, MPFR_RNDN);
    MPReal b(kOracleBits);
    mpfr_set_ld(b.get(), tail + rounding, MPFR_RNDU);
    return {v, b};
}

OracleResult char_dzeta_oracle(CharId p, CharId q, int s, int t, long N) {
    if (s < 2 || t < 1) throw DomainError("oracle supports s >= 2, t >= 1");
    long double inner = 0, inner_abs = 0, value = 0, abs_sum = 0;
    for (long n = 1; n <= N; ++n) {
        const int cp = chi(p, n);
        if (cp != 0) {
            const long double term = cp * inner * std::pow(static_cast<long double>(n), -s);
            value += term;
            abs_sum += inner_abs * std::pow(static_cast<long double>(n), -s);
        }
        const int cq = chi(q, n);
        if (cq != 0) {
            const long double w = std::pow(static_cast<long double>(n), -t);
            inner += cq * w;
            inner_abs += w;
        }
    }
    const long double tail = inner_tail(s, t, N);
    const long double unit = std::numeric_limits<long double>::epsilon();
    return finish(value, abs_sum, 2 * N, tail, unit);
}

OracleResult dzeta_oracle(int a, int b, long N) {
    if (a < 2 || b < 1) throw DomainError("oracle needs a >= 2, b >= 1");
    return char_dzeta_oracle(CharId::One, CharId::One, a, b, N);
}

OracleResult harmonic_oracle(HarmonicKind kind, int s, long N) {
    const long double unit = std::numeric_limits<long double>::epsilon();
    long double value = 0, H = 0;
    if (kind == HarmonicKind::OddDenominator) {
        if (s < 2) throw DomainError("oracle needs s >= 2");
        for (long n = 0; n <= N; ++n) {
            if (n > 0) H += 1.0L / n;
            value += H * std::pow(static_cast<long double>(2 * n + 1), -s);
        }
        // H_n (2n+1)^-s <= 2^-s (1 + log n) n^-s
        const long double tail = std::pow(2.0L, -s) * tail_log(s, N);
        return finish(value, value, 2 * N, tail, unit);
    }
    if (s < 1) throw DomainError("oracle needs s >= 1");
    for (long n = 1; n <= N; ++n) {
        H += 1.0L / (2 * n - 1) + 1.0L / (2 * n);
        value += H * std::pow(static_cast<long double>(n), -2 * s);
    }
    // H_2n <= 1 + log 2 + log n
    const long double tail = tail_log(2 * s, N, std::log(2.0L));
    return finish(value, value, 3 * N, tail, unit);
}

// Direct double sum over n + m = K <= N as a convolution in K.
OracleResult witten_oracle(int r, int s, int t, long N) {
    if (!witten_convergent(r, s, t)) throw DomainError("Witten sum diverges");
    std::vector<double> a(static_cast<size_t>(N) + 1), b(static_cast<size_t>(N) + 1);
    for (long n = 1; n <= N; ++n) {
        a[static_cast<size_t>(n)] = std::pow(static_cast<double>(n), -r);
        b[static_cast<size_t>(n)] = std::pow(static_cast<double>(n), -s);
    }
    long double value = 0;
    for (long K = 2; K <= N; ++K) {
        double conv = 0;
        const double* pa = a.data() + 1;
        const double* pb = b.data() + (K - 1);
        for (long n = 1; n < K; ++n) conv += pa[n - 1] * pb[1 - n];
        value += static_cast<long double>(conv) * std::pow(static_cast<long double>(K), -t);
    }
    // For n + m = K: the half with n <= K/2 has (K-n)^-s <= (2/K)^s; symmetrically for m.
    const long double tail = std::pow(2.0L, s) * inner_tail(t + s, r, N) +
                             std::pow(2.0L, r) * inner_tail(t + r, s, N);
    const long double unit = std::numeric_limits<double>::epsilon();
    return finish(value, value, N, tail, unit);
}

}  // namespace

OracleResult brute_force_oracle(OracleSeries series, const OracleParams& params, long N) {
    if (N < 2) throw DomainError("oracle needs N >= 2");
    switch (series) {
        case OracleSeries::DZeta: return dzeta_oracle(params.a, params.b, N);
        case OracleSeries::CharDZeta: return char_dzeta_oracle(params.p, params.q, params.a, params.b, N);
        case OracleSeries::Witten: return witten_oracle(params.a, params.b, params.c, N);
        case OracleSeries::Harmonic: return harmonic_oracle(params.kind, params.a, N);
    }
    throw DomainError("unknown oracle series");
}

}  // namespace mzv
