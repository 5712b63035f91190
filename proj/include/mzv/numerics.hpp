#ifndef MZV_NUMERICS_HPP
#define MZV_NUMERICS_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "mzv/generator.hpp"
#include "mzv/mpreal.hpp"

namespace mzv {

/// The four 4-periodic sequences chi_p, tabulated on n = 1, 2, 3, 4 (mod 4):
///   One  : 1  1  1  1
///   TwoA : 1  0  1  0
///   TwoB : 1 -1  1 -1
///   M4   : 1  0 -1  0
/// Their pointwise products stay inside the set.
enum class CharId { One, TwoA, TwoB, M4 };

inline constexpr std::array<CharId, 4> kAllChars = {CharId::One, CharId::TwoA, CharId::TwoB,
                                                    CharId::M4};

int chi(CharId p, long n);
CharId char_product(CharId p, CharId q);
/// Characters summing to zero over a period; their L-series converge at s = 1.
bool mean_zero(CharId p);
std::string_view char_name(CharId p);
/// Accepts "1", "2a", "2b", "m4" (and "-4").
CharId parse_char(std::string_view s);

/// A value together with a rigorous bound on its absolute error.
struct Approx {
    MPReal value;
    MPReal error;
};

// ---------------------------------------------------------------------------
// Public evaluators. Each returns a value within 10^-P of the true value, or
// throws PrecisionError if its internal error budget is exceeded.
// ---------------------------------------------------------------------------

MPReal zeta_num(int s, const EvalContext& ctx);

/// sum_{n > N} chi_p(n) n^-s.
MPReal periodic_tail_num(CharId p, int s, long N, const EvalContext& ctx);

/// L_p(s) = sum chi_p(n) n^-s. s = 1 is allowed for the mean-zero characters.
MPReal L_num(CharId p, int s, const EvalContext& ctx);

/// zeta(a, b) = sum_{n > m >= 1} n^-a m^-b.
MPReal dzeta_num(int a, int b, const EvalContext& ctx);

/// [p,q](s,t) = sum_{n > m >= 1} chi_p(n) n^-s chi_q(m) m^-t.
MPReal char_dzeta_num(CharId p, CharId q, int s, int t, const EvalContext& ctx);

/// W(r,s,t) = sum_{n,m >= 1} n^-r m^-s (n+m)^-t, via the two-term recursion.
MPReal witten_num(int r, int s, int t, const EvalContext& ctx);

enum class HarmonicKind {
    OddDenominator,  ///< sum_{n>=0} H_n / (2n+1)^s
    HalfIndex,       ///< sum_{n>=1} H_{2n} / n^{2s}
};
MPReal harmonic_sum_num(HarmonicKind kind, int s, const EvalContext& ctx);

MPReal generator_num(const ConstGenerator& g, const EvalContext& ctx);

/// Li_4(1/2).
MPReal li4_half_num(const EvalContext& ctx);

// ---------------------------------------------------------------------------
// Kernels with explicit error bounds (working precision is ctx.bits()).
// ---------------------------------------------------------------------------

/// sum_{n > N} w(n mod 4) n^-e; w indexed by n mod 4 (w[0] is n = 0 mod 4).
/// Needs e >= 2, or e = 1 with sum(w) = 0.
Approx periodic_tail(const std::array<int, 4>& w, int e, long N, const EvalContext& ctx);

Approx char_dzeta_approx(CharId p, CharId q, int s, int t, const EvalContext& ctx);

// ---------------------------------------------------------------------------
// Brute-force oracle: direct truncated summation with an elementary tail bound.
// ---------------------------------------------------------------------------

enum class OracleSeries { DZeta, CharDZeta, Witten, Harmonic };

struct OracleParams {
    CharId p = CharId::One;
    CharId q = CharId::One;
    int a = 0, b = 0, c = 0;  // (a,b) for dzeta/char_dzeta, (a,b,c)=(r,s,t) for Witten
    HarmonicKind kind = HarmonicKind::OddDenominator;
};

struct OracleResult {
    MPReal value;
    MPReal bound;  ///< truncation + rounding bound
};

/// N counts outer terms; for Witten it bounds n + m.
OracleResult brute_force_oracle(OracleSeries series, const OracleParams& params, long N);

}  // namespace mzv

#endif
