#ifndef MZV_CONST_EXPR_HPP
#define MZV_CONST_EXPR_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mzv/exact.hpp"
#include "mzv/generator.hpp"
#include "mzv/mpreal.hpp"
#include "mzv/numerics.hpp"

namespace mzv {

/// No closed form is known within the generator basis.
struct NotReducible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Product of generator powers, kept sorted by generator with positive exponents.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(ConstGenerator g, int exp = 1);

    const std::vector<std::pair<ConstGenerator, int>>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    /// Total weight: pi and log2 count 1, z<k> counts k, li4h counts 4.
    int weight() const;
    bool divides(const Monomial& other) const;

    Monomial operator*(const Monomial& o) const;
    /// Requires divides(); throws DomainError otherwise.
    Monomial operator/(const Monomial& o) const;

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<std::pair<ConstGenerator, int>> factors_;
};

/// Q-linear combination of monomials in the generators.
class ConstExpr {
public:
    ConstExpr() = default;
    ConstExpr(const Rational& c);  // NOLINT(implicit)
    ConstExpr(long c) : ConstExpr(Rational(c)) {}  // NOLINT(implicit)
    static ConstExpr generator(ConstGenerator g, int exp = 1);
    static ConstExpr monomial(const Monomial& m, const Rational& c);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    /// Constant term (zero if absent).
    Rational rational_part() const;
    /// Largest monomial weight, or -1 for zero.
    int max_weight() const;
    bool is_homogeneous() const;

    ConstExpr& operator+=(const ConstExpr& o);
    ConstExpr& operator-=(const ConstExpr& o);
    ConstExpr& operator*=(const ConstExpr& o);
    ConstExpr operator-() const;
    ConstExpr pow(unsigned k) const;
    /// Exact division; the divisor must be a single term dividing every term.
    ConstExpr divide(const ConstExpr& d) const;

    bool operator==(const ConstExpr&) const = default;

    /// e.g. "7/4*z3 - 1/4*pi^2*log2"; "0" for zero.
    std::string render() const;
    /// Inverse of render(); throws DomainError on malformed input.
    static ConstExpr parse(const std::string& text);

    MPReal evaluate(const EvalContext& ctx) const;

private:
    std::map<Monomial, Rational> terms_;
};

ConstExpr operator+(ConstExpr a, const ConstExpr& b);
ConstExpr operator-(ConstExpr a, const ConstExpr& b);
ConstExpr operator*(ConstExpr a, const ConstExpr& b);

/// zeta(s), s >= 2: a rational multiple of pi^s for even s, z<s> for odd s.
ConstExpr zeta_sym(int s);
/// L_{m4}(s) for odd s >= 1: a rational multiple of pi^s.
ConstExpr beta_sym(int s);
/// L_p(s) where a closed form exists; NotReducible otherwise.
ConstExpr L_sym(CharId p, int s);

}  // namespace mzv

#endif
