#ifndef MZV_DISCOVERY_HPP
#define MZV_DISCOVERY_HPP

#include <array>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mzv/const_expr.hpp"
#include "mzv/exact.hpp"
#include "mzv/mpreal.hpp"

namespace mzv {

enum class Parity { Any, Even, Odd };

struct ParityFilter {
    Parity j = Parity::Any;
    Parity s = Parity::Any;

    bool admits_j(long j) const;
    bool admits_s(long s) const;
    std::string name() const;  ///< e.g. "j:even,s:any"
    auto operator<=>(const ParityFilter&) const = default;
};

/// The nine (j, s) parity combinations.
std::vector<ParityFilter> all_parity_filters();

using WeightFn = std::function<ConstExpr(long s, long j)>;

/// sum over j in [2, w-1] with the given parity of weight(w, j) * zeta(j, w-j),
/// reduced exactly. Weights must be rational (DomainError otherwise); 3 <= w <= 7.
ConstExpr reduce_weighted_sum(const WeightFn& weight, int w, Parity j_parity = Parity::Any);

/// Rationals a of height <= H (|num|, |den| <= H) for which
/// sum_{j=2}^{w-1} a^j zeta(j, w-j) is a rational multiple of zeta(w).
/// Roots come from the rational root theorem applied to each vanishing condition.
std::set<Rational> solve_power_base(int w, long height = 16, Parity j_parity = Parity::Any);

/// f(s) = c0 + c1 s + c2 s^2 + c3 2^s + c4 4^s + c5 s 4^s.
struct SpanFunction {
    std::array<Rational, 6> c;

    Rational operator()(long s) const;
    bool is_zero() const;
    std::string render(const std::string& var = "s") const;
    bool operator==(const SpanFunction&) const = default;
};

/// Minimal-support fit through the points; at least one point is left over as a
/// check whenever there are two or more. Returns nothing if no subset fits.
std::optional<SpanFunction> fit_span(const std::vector<std::pair<long, Rational>>& points);

enum class Family { Power, Alternating, Affine, SymmetricEven, Poly };
std::string family_name(Family f);
Family parse_family(const std::string& s);  ///< DomainError on unknown names

enum class Certification { Exact, NumericScreened, Rejected };
std::string certification_name(Certification c);

struct CandidateIdentity {
    Family family = Family::Power;
    ParityFilter parity;
    /// Power/Alternating {a}; Affine {a, b, c, d} for a b^j + c^s d^j;
    /// SymmetricEven {d}; Poly coefficients of {1, s, j, s^2, s j, j^2}.
    std::vector<Rational> params;
    /// Terms are zeta(2j, 2s-2j) for j in [1+trim, s-1-trim] instead of zeta(j, s-j).
    bool even_arg = false;
    int trim = 0;
    SpanFunction f;
    Certification status = Certification::Rejected;
    long min_s = 3;
    std::vector<long> exact_points;
    std::vector<long> screened_points;
    double worst_screen_log10 = 0;  ///< log10 of the largest screening residual
    /// Matching corpus id, if the candidate is one of the known sums.
    std::string known_as;
    /// Expressible through the constant, 2^j and (-1)^j sums (and parity splits).
    bool derived = false;

    Rational weight(long s, long j) const;
    /// Summation indices for parameter s.
    std::vector<long> indices(long s) const;
    std::string weight_text(const std::string& jvar = "j") const;
    /// One corpus-language identity line.
    std::string dsl(const std::string& id) const;
    std::string summary() const;
};

struct SearchConfig {
    std::set<Family> families = {Family::Power, Family::Alternating, Family::Affine,
                                 Family::SymmetricEven};
    std::vector<ParityFilter> parities = all_parity_filters();
    long height = 16;
    int degree = 2;  ///< polynomial family only
    int precision = 40;
};

/// Exact solving and certification at low weight, then numeric screening
/// (tolerance 10^-25) at two higher weights. Only survivors are returned,
/// sorted by family, parity and parameters.
std::vector<CandidateIdentity> search_general(const SearchConfig& cfg);

/// Polynomial weights p(s, j) of total degree <= cfg.degree, on zeta(j, s-j)
/// for each parity filter and on zeta(2j, 2s-2j) with symmetric p.
std::vector<CandidateIdentity> search_poly_weights(const SearchConfig& cfg);

}  // namespace mzv

#endif
