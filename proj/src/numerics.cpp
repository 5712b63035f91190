#include "mzv/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "mzv/witten.hpp"

namespace mzv {

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

int chi(CharId p, long n) {
    const long r = ((n % 4) + 4) % 4;  // 0 stands for n = 4 in the table
    switch (p) {
        case CharId::One: return 1;
        case CharId::TwoA: return (r % 2 == 1) ? 1 : 0;
        case CharId::TwoB: return (r % 2 == 1) ? 1 : -1;
        case CharId::M4: return r == 1 ? 1 : (r == 3 ? -1 : 0);
    }
    return 0;
}

CharId char_product(CharId p, CharId q) {
    if (p == CharId::One) return q;
    if (q == CharId::One) return p;
    if (p == q) return (p == CharId::TwoB) ? CharId::One : CharId::TwoA;
    // Remaining mixed pairs all vanish on even n.
    if (p == CharId::M4 || q == CharId::M4) return CharId::M4;
    return CharId::TwoA;
}

bool mean_zero(CharId p) { return p == CharId::TwoB || p == CharId::M4; }

std::string_view char_name(CharId p) {
    switch (p) {
        case CharId::One: return "1";
        case CharId::TwoA: return "2a";
        case CharId::TwoB: return "2b";
        case CharId::M4: return "m4";
    }
    return "?";
}

CharId parse_char(std::string_view s) {
    if (s == "1") return CharId::One;
    if (s == "2a") return CharId::TwoA;
    if (s == "2b") return CharId::TwoB;
    if (s == "m4" || s == "-4") return CharId::M4;
    throw DomainError("unknown character '" + std::string(s) + "'");
}

namespace {

constexpr mpfr_prec_t kBoundBits = 64;

std::array<int, 4> char_weights(CharId p) {
    return {chi(p, 0), chi(p, 1), chi(p, 2), chi(p, 3)};
}

std::array<int, 4> residue_indicator(int rho) {
    std::array<int, 4> w{0, 0, 0, 0};
    w[static_cast<size_t>(rho)] = 1;
    return w;
}

// Cutoff where direct summation hands over to the asymptotic expansion.
long handover(const EvalContext& ctx) { return 2L * (ctx.working_digits() + 5) + 4; }

// Rounding slack for a sum of `count` terms whose absolute values sum to abs_sum.
MPReal rounding_bound(long count, const MPReal& abs_sum, mpfr_prec_t bits) {
    MPReal r(count + 16, kBoundBits);
    r *= abs_sum;
    mpfr_mul_2si(r.get(), r.get(), -static_cast<long>(bits) + 1, MPFR_RNDU);
    return r;
}

MPReal bound_zero() { return MPReal(0L, kBoundBits); }

MPReal to_bound(const MPReal& x) {
    MPReal r(kBoundBits);
    mpfr_abs(r.get(), x.get(), MPFR_RNDU);
    return r;
}

void check_budget(const Approx& a, const EvalContext& ctx, const char* what) {
    const MPReal limit = ten_to_minus(ctx.target_digits(), kBoundBits);
    if (limit < a.error)
        throw PrecisionError(std::string(what) + ": error bound " + a.error.to_string(3) +
                             " exceeds 10^-" + std::to_string(ctx.target_digits()));
}

// Shared memo for Approx values keyed by a small integer tuple plus precision.
using Key = std::tuple<int, int, int, int, long, long>;

class ApproxCache {
public:
    template <class F>
    Approx get(const Key& key, F&& compute) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) return it->second;
        }
        Approx value = compute();
        std::lock_guard lock(mutex_);
        return table_.emplace(key, std::move(value)).first->second;
    }

private:
    std::mutex mutex_;
    std::map<Key, Approx> table_;
};

ApproxCache& cache() {
    static ApproxCache c;
    return c;
}

// B_k(delta/4) for delta = 0..3 as MPReal at a given precision.
class BernoulliPolyTable {
public:
    const MPReal& at(unsigned k, int delta, mpfr_prec_t bits) {
        std::lock_guard lock(mutex_);
        auto& rows = tables_[bits];
        while (rows.size() <= k) {
            const unsigned m = static_cast<unsigned>(rows.size());
            std::array<MPReal, 4> row{MPReal(bits), MPReal(bits), MPReal(bits), MPReal(bits)};
            for (int d = 0; d < 4; ++d) row[static_cast<size_t>(d)] = MPReal(bernoulli_poly(m, make_rational(d, 4)), bits);
            rows.push_back(std::move(row));
        }
        return rows[k][static_cast<size_t>(delta)];
    }

private:
    std::mutex mutex_;
    std::map<mpfr_prec_t, std::vector<std::array<MPReal, 4>>> tables_;
};

BernoulliPolyTable& bpoly() {
    static BernoulliPolyTable t;
    return t;
}

Approx periodic_tail_uncached(const std::array<int, 4>& w, int e, long N, const EvalContext& ctx) {
    const mpfr_prec_t bits = ctx.bits();
    const int wsum = w[0] + w[1] + w[2] + w[3];
    const int wabs = std::abs(w[0]) + std::abs(w[1]) + std::abs(w[2]) + std::abs(w[3]);
    if (e < 1 || (e == 1 && wsum != 0)) throw DomainError("periodic tail diverges");

    const long start = N + 1;
    // Large exponents need a later start for the expansion to converge.
    const long M = std::max(start, handover(ctx) + e);
    MPReal value(bits);
    MPReal abs_sum = bound_zero();
    long count = 0;
    for (long n = start; n < M; ++n) {
        const int c = w[static_cast<size_t>(n % 4)];
        if (c == 0) continue;
        MPReal term = inv_pow(static_cast<unsigned long>(n), e, bits);
        if (c != 1) term *= MPReal(c, bits);
        abs_sum += to_bound(term);
        value += term;
        ++count;
    }
    if (wabs == 0) return {value, bound_zero()};

    // Euler-Maclaurin on each residue class n = M + delta + 4i, expanded in
    // X = M/4 with Bernoulli polynomials at delta/4.
    MPReal X(M, bits);
    X /= MPReal(4, bits);
    MPReal scale = inv_pow(4, e, bits);  // 4^-e

    if (wsum != 0) {
        MPReal t0 = pow(X, 1 - e);
        t0 *= scale;
        t0 *= MPReal(wsum, bits);
        t0 /= MPReal(e - 1, bits);
        abs_sum += to_bound(t0);
        value += t0;
        ++count;
    }

    // Relative to the tail size, so residue-class tails stay accurate when
    // multiplied by large expansion coefficients.
    MPReal target = ten_to_minus(ctx.working_digits() + 2, kBoundBits);
    target *= pow(MPReal(start, kBoundBits), 1 - e);
    const MPReal two_pi_X = [&] {
        MPReal r = const_pi(kBoundBits);
        r *= MPReal(2, kBoundBits);
        r *= MPReal(M, kBoundBits);
        r /= MPReal(4, kBoundBits);
        return r;
    }();
    MPReal Xlow(M, kBoundBits);
    Xlow /= MPReal(4, kBoundBits);

    // f_k = (e)_{k-1}/k! X^{1-e-k};  b_K = (e)_{K-1} X^{1-e-K} / (2 pi)^K
    MPReal f = pow(X, -e);
    MPReal b = pow(Xlow, -e) / (const_pi(kBoundBits) * MPReal(2, kBoundBits));
    MPReal remainder = bound_zero();
    const unsigned kmax = static_cast<unsigned>(4.0 * M_PI * Xlow.to_double()) + 64;
    bool converged = false;
    for (unsigned k = 1; k <= kmax; ++k) {
        MPReal coeff(bits);
        for (int d = 0; d < 4; ++d) {
            const int c = w[static_cast<size_t>((M + d) % 4)];
            if (c == 0) continue;
            MPReal t = bpoly().at(k, d, bits);
            if (c != 1) t *= MPReal(c, bits);
            coeff += t;
        }
        MPReal term = f * coeff;
        term *= scale;
        if (k % 2 == 1) term = -term;
        abs_sum += to_bound(term);
        value += term;
        ++count;

        // Bound on everything after term k: 4^-e * sum|w| * 4 * b_{k+1}.
        b *= MPReal(static_cast<long>(e + k - 1), kBoundBits);
        b /= two_pi_X;
        remainder = b;
        remainder *= MPReal(4L * wabs, kBoundBits);
        remainder *= to_bound(scale);
        if (remainder < target) {
            converged = true;
            break;
        }
        f *= MPReal(static_cast<long>(e + k - 1), bits);
        f /= MPReal(static_cast<long>(k + 1), bits);
        f /= X;
    }
    if (!converged) throw PrecisionError("periodic tail expansion did not converge");

    MPReal err = remainder + rounding_bound(count, abs_sum, bits);
    return {value, err};
}

Approx add(Approx a, const Approx& b) {
    a.value += b.value;
    a.error += b.error;
    return a;
}

Approx mul(const Approx& a, const Approx& b) {
    Approx r{a.value * b.value, bound_zero()};
    r.error = to_bound(a.value) * b.error;
    r.error += to_bound(b.value) * a.error;
    r.error += a.error * b.error;
    r.error += rounding_bound(1, to_bound(r.value), r.value.precision());
    return r;
}

Approx scale_by(const Approx& a, const Rational& c) {
    MPReal cv(c, a.value.precision());
    Approx r{a.value * cv, a.error * to_bound(MPReal(c, kBoundBits))};
    r.error += rounding_bound(1, to_bound(r.value), r.value.precision());
    return r;
}

Approx L_approx(CharId p, int s, const EvalContext& ctx) {
    if (s < 1 || (s == 1 && !mean_zero(p)))
        throw DomainError("L_" + std::string(char_name(p)) + "(" + std::to_string(s) + ") diverges");
    const Key key{1, static_cast<int>(p), s, 0, 0, ctx.bits()};
    return cache().get(key, [&] {
        const mpfr_prec_t bits = ctx.bits();
        const long N = handover(ctx);
        MPReal value(bits);
        MPReal abs_sum = bound_zero();
        for (long n = 1; n <= N; ++n) {
            const int c = chi(p, n);
            if (c == 0) continue;
            MPReal term = inv_pow(static_cast<unsigned long>(n), s, bits);
            if (c < 0) term = -term;
            abs_sum += to_bound(term);
            value += term;
        }
        Approx tail = periodic_tail(char_weights(p), s, N, ctx);
        Approx out{value, rounding_bound(N, abs_sum, bits)};
        return add(out, tail);
    });
}

Approx zeta_approx(int s, const EvalContext& ctx) { return L_approx(CharId::One, s, ctx); }

// zeta(s-1, 1) = (s-1)/2 zeta(s) - 1/2 sum_{j=2}^{s-2} zeta(j) zeta(s-j)
Approx dzeta_b1_approx(int a, const EvalContext& ctx) {
    const int s = a + 1;
    Approx acc = scale_by(zeta_approx(s, ctx), make_rational(s - 1, 2));
    for (int j = 2; j <= s - 2; ++j)
        acc = add(acc, scale_by(mul(zeta_approx(j, ctx), zeta_approx(s - j, ctx)), Rational(-1, 2)));
    return acc;
}

Approx dzeta_approx(int a, int b, const EvalContext& ctx) {
    if (a < 2 || b < 1)
        throw DomainError("zeta(" + std::to_string(a) + "," + std::to_string(b) + ") diverges");
    if (b == 1) return dzeta_b1_approx(a, ctx);
    return char_dzeta_approx(CharId::One, CharId::One, a, b, ctx);
}

Approx witten_approx(int r, int s, int t, const EvalContext& ctx) {
    const WittenExpansion ex = witten_expand(r, s, t);
    Approx acc{MPReal(ctx.bits()), bound_zero()};
    for (const auto& [ab, c] : ex.dz)
        acc = add(acc, scale_by(dzeta_approx(ab.first, ab.second, ctx), Rational(c)));
    for (const auto& [ij, c] : ex.zeta_products)
        acc = add(acc, scale_by(mul(zeta_approx(ij.first, ctx), zeta_approx(ij.second, ctx)), Rational(c)));
    for (const auto& [k, c] : ex.zeta_single)
        acc = add(acc, scale_by(zeta_approx(k, ctx), Rational(c)));
    return acc;
}

Approx harmonic_approx(HarmonicKind kind, int s, const EvalContext& ctx) {
    if (kind == HarmonicKind::OddDenominator) {
        if (s < 2) throw DomainError("sum H_n/(2n+1)^s needs s >= 2");
        // For odd N = 2n+1 the inner prefix difference of [2a,1] and [2a,2a] is H_n / 2.
        Approx d = add(char_dzeta_approx(CharId::TwoA, CharId::One, s, 1, ctx),
                       scale_by(char_dzeta_approx(CharId::TwoA, CharId::TwoA, s, 1, ctx), Rational(-1)));
        return scale_by(d, Rational(2));
    }
    if (s < 1) throw DomainError("sum H_2n/n^2s needs s >= 1");
    // 4^s ( zeta(2s,1) - [2a,1](2s,1) + 2^{-2s-1} zeta(2s+1) ): restrict to even N.
    Approx acc = dzeta_approx(2 * s, 1, ctx);
    acc = add(acc, scale_by(char_dzeta_approx(CharId::TwoA, CharId::One, 2 * s, 1, ctx), Rational(-1)));
    acc = add(acc, scale_by(zeta_approx(2 * s + 1, ctx), rational_pow(Rational(2), -2 * s - 1)));
    return scale_by(acc, rational_pow(Rational(4), s));
}

Approx li4_half_approx(const EvalContext& ctx) {
    const Key key{7, 0, 0, 0, 0, ctx.bits()};
    return cache().get(key, [&] {
        const mpfr_prec_t bits = ctx.bits();
        const long N = static_cast<long>(std::ceil((ctx.working_digits() + 2) * 3.3219280948873623)) + 2;
        MPReal value(bits);
        MPReal abs_sum = bound_zero();
        for (long n = 1; n <= N; ++n) {
            MPReal term = inv_pow(static_cast<unsigned long>(n), 4, bits);
            mpfr_mul_2si(term.get(), term.get(), -n, MPFR_RNDN);
            abs_sum += to_bound(term);
            value += term;
        }
        // sum_{n>N} 2^-n n^-4 <= 2^-N
        MPReal tail(1, kBoundBits);
        mpfr_mul_2si(tail.get(), tail.get(), -N, MPFR_RNDU);
        return Approx{value, tail + rounding_bound(N, abs_sum, bits)};
    });
}

MPReal checked(const Approx& a, const EvalContext& ctx, const char* what) {
    check_budget(a, ctx, what);
    return a.value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

Approx periodic_tail(const std::array<int, 4>& w, int e, long N, const EvalContext& ctx) {
    // Cache by packing the weights (each in -1..1) into one integer.
    const int packed = (w[0] + 1) + 3 * (w[1] + 1) + 9 * (w[2] + 1) + 27 * (w[3] + 1);
    const bool small = std::abs(w[0]) <= 1 && std::abs(w[1]) <= 1 && std::abs(w[2]) <= 1 && std::abs(w[3]) <= 1;
    if (!small) return periodic_tail_uncached(w, e, N, ctx);
    const Key key{2, packed, e, 0, N, ctx.bits()};
    return cache().get(key, [&] { return periodic_tail_uncached(w, e, N, ctx); });
}

Approx char_dzeta_approx(CharId p, CharId q, int s, int t, const EvalContext& ctx) {
    if (t < 1 || s < 1 || (s == 1 && !mean_zero(p)))
        throw DomainError("[" + std::string(char_name(p)) + "," + std::string(char_name(q)) + "](" +
                          std::to_string(s) + "," + std::to_string(t) + ") diverges");
    const Key key{3, static_cast<int>(p) * 4 + static_cast<int>(q), s, t, 0, ctx.bits()};
    return cache().get(key, [&] {
        const mpfr_prec_t bits = ctx.bits();
        const long N = handover(ctx);

        // [p,q](s,t) = sum_m chi_q(m) m^-t T_p(m) - L_pq(s+t), T_p(m) = sum_{n>=m} chi_p(n) n^-s.
        Approx T = periodic_tail(char_weights(p), s, N, ctx);
        MPReal tail_val = T.value;
        MPReal tail_abs = to_bound(T.value);  // bounds |tail_val| throughout
        MPReal value(bits);
        MPReal abs_sum = bound_zero();
        MPReal inner_weight = bound_zero();  // sum |chi_q(m)| m^-t
        for (long m = N; m >= 1; --m) {
            const int cp = chi(p, m);
            if (cp != 0) {
                MPReal term = inv_pow(static_cast<unsigned long>(m), s, bits);
                if (cp < 0) term = -term;
                tail_abs += to_bound(term);
                tail_val += term;
            }
            const int cq = chi(q, m);
            if (cq == 0) continue;
            MPReal w = inv_pow(static_cast<unsigned long>(m), t, bits);
            inner_weight += to_bound(w);
            MPReal term = w * tail_val;
            if (cq < 0) term = -term;
            abs_sum += to_bound(term);
            value += term;
        }
        // Each partial tail carries T's error plus its own accumulated rounding.
        MPReal err = (T.error + rounding_bound(N, tail_abs, bits)) * inner_weight;
        err += rounding_bound(2 * N, abs_sum, bits);

        // Tail m > N: expand T_p(m) = sum_k A_k(m mod 4) m^{1-s-k}; every power
        // of m then becomes a residue-class tail.
        const MPReal target = ten_to_minus(ctx.working_digits() + 2, kBoundBits);
        const int pabs = std::abs(chi(p, 0)) + std::abs(chi(p, 1)) + std::abs(chi(p, 2)) + std::abs(chi(p, 3));
        MPReal coef_k(1, bits);  // 4^{k-1} (s)_{k-1} / k! for k >= 1
        MPReal rem(bits);
        MPReal Nlow(N, kBoundBits);
        MPReal two_pi = const_pi(kBoundBits) * MPReal(2, kBoundBits);
        // C_K = pabs 4^K (s)_{K-1} / (2 pi)^K ; remainder <= C_K N^{2-s-t-K}/(s+t+K-2)
        MPReal CK(pabs, kBoundBits);
        CK *= MPReal(4, kBoundBits);
        CK /= two_pi;  // K = 1
        bool converged = false;
        const unsigned kmax = static_cast<unsigned>(2.0 * M_PI * static_cast<double>(N)) + 64;
        for (unsigned k = 0; k <= kmax; ++k) {
            std::array<MPReal, 4> A{MPReal(bits), MPReal(bits), MPReal(bits), MPReal(bits)};
            bool any = false;
            for (int rho = 0; rho < 4; ++rho) {
                MPReal c(bits);
                if (k == 0) {
                    int sw = 0;
                    for (int d = 0; d < 4; ++d) sw += chi(p, rho + d);
                    if (sw == 0) continue;
                    c = MPReal(sw, bits);
                    c /= MPReal(s - 1, bits);
                    c /= MPReal(4, bits);
                } else {
                    for (int d = 0; d < 4; ++d) {
                        const int cp = chi(p, rho + d);
                        if (cp == 0) continue;
                        MPReal bv = bpoly().at(k, d, bits);
                        if (cp < 0) bv = -bv;
                        c += bv;
                    }
                    c *= coef_k;
                    if (k % 2 == 1) c = -c;
                }
                if (!c.is_zero()) any = true;
                A[static_cast<size_t>(rho)] = c;
            }
            if (any) {
                const int e = s + t - 1 + static_cast<int>(k);
                for (int rho = 0; rho < 4; ++rho) {
                    const int cq = chi(q, rho);
                    if (cq == 0 || A[static_cast<size_t>(rho)].is_zero()) continue;
                    Approx tau = periodic_tail(residue_indicator(rho), e, N, ctx);
                    MPReal term = A[static_cast<size_t>(rho)] * tau.value;
                    if (cq < 0) term = -term;
                    value += term;
                    err += to_bound(A[static_cast<size_t>(rho)]) * tau.error;
                    err += rounding_bound(2, to_bound(term), bits);
                }
            }
            if (k >= 1) {
                // Remainder after terms 0..k, i.e. K = k + 1.
                CK *= MPReal(4L * static_cast<long>(s + k - 1), kBoundBits);
                CK /= two_pi;
                MPReal r = CK;
                r *= pow(Nlow, 2 - s - t - static_cast<long>(k + 1));
                r /= MPReal(s + t + static_cast<long>(k + 1) - 2, kBoundBits);
                if (r < target) {
                    rem = r;
                    converged = true;
                    break;
                }
                // next coefficient 4^k (s)_k / (k+1)!
                coef_k *= MPReal(4L * static_cast<long>(s + k - 1), bits);
                coef_k /= MPReal(static_cast<long>(k + 1), bits);
            }
        }
        if (!converged) throw PrecisionError("character double sum expansion did not converge");
        err += to_bound(rem);

        Approx out{value, err};
        Approx lpq = L_approx(char_product(p, q), s + t, ctx);
        out.value -= lpq.value;
        out.error += lpq.error;
        return out;
    });
}

// ---------------------------------------------------------------------------
// Public evaluators
// ---------------------------------------------------------------------------

MPReal zeta_num(int s, const EvalContext& ctx) {
    if (s < 2) throw DomainError("zeta(" + std::to_string(s) + ") is outside s >= 2");
    return checked(zeta_approx(s, ctx), ctx, "zeta");
}

MPReal periodic_tail_num(CharId p, int s, long N, const EvalContext& ctx) {
    if (s < 2) throw DomainError("periodic tail needs s >= 2");
    return checked(periodic_tail(char_weights(p), s, N, ctx), ctx, "periodic tail");
}

MPReal L_num(CharId p, int s, const EvalContext& ctx) { return checked(L_approx(p, s, ctx), ctx, "L"); }

MPReal dzeta_num(int a, int b, const EvalContext& ctx) {
    return checked(dzeta_approx(a, b, ctx), ctx, "double zeta");
}

MPReal char_dzeta_num(CharId p, CharId q, int s, int t, const EvalContext& ctx) {
    return checked(char_dzeta_approx(p, q, s, t, ctx), ctx, "character double sum");
}

MPReal witten_num(int r, int s, int t, const EvalContext& ctx) {
    return checked(witten_approx(r, s, t, ctx), ctx, "Witten sum");
}

MPReal harmonic_sum_num(HarmonicKind kind, int s, const EvalContext& ctx) {
    return checked(harmonic_approx(kind, s, ctx), ctx, "harmonic sum");
}

MPReal li4_half_num(const EvalContext& ctx) { return checked(li4_half_approx(ctx), ctx, "Li4(1/2)"); }

MPReal generator_num(const ConstGenerator& g, const EvalContext& ctx) {
    switch (g.kind) {
        case ConstGenerator::Kind::Pi: return const_pi(ctx.bits());
        case ConstGenerator::Kind::Log2: return const_log2(ctx.bits());
        case ConstGenerator::Kind::ZetaOdd: return zeta_num(g.index, ctx);
        case ConstGenerator::Kind::Li4Half: return li4_half_num(ctx);
    }
    throw DomainError("unknown generator");
}

}  // namespace mzv
