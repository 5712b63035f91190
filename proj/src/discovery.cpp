#include "mzv/discovery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <mutex>
#include <sstream>
#include <tuple>

#include "mzv/numerics.hpp"
#include "mzv/reductions.hpp"

namespace mzv {

namespace {

constexpr int kExactLo = 3;
constexpr int kExactHi = 7;
constexpr long kEvenArgExactHi = 12;
constexpr double kScreenLog10 = -25;

bool parity_ok(Parity p, long n) {
    switch (p) {
        case Parity::Any: return true;
        case Parity::Even: return n % 2 == 0;
        case Parity::Odd: return n % 2 != 0;
    }
    return true;
}

std::string parity_text(Parity p) {
    switch (p) {
        case Parity::Any: return "any";
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
    }
    return "any";
}

std::string qstr(const Rational& q) { return q.get_str(); }

/// Nonzero rationals of height <= H, sorted.
std::vector<Rational> height_pool(long H) {
    std::set<Rational> out;
    for (long q = 1; q <= H; ++q)
        for (long p = 1; p <= H; ++p)
            if (std::gcd(p, q) == 1) {
                out.insert(make_rational(p, q));
                out.insert(make_rational(-p, q));
            }
    return {out.begin(), out.end()};
}

/// Exact k-th root of a rational, if any (both signs for even k).
std::vector<Rational> rational_roots_of(const Rational& v, long k) {
    if (v == 0) return {Rational(0)};
    if (v < 0 && k % 2 == 0) return {};
    Integer n = abs(v.get_num()), d = v.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k) || !mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k)) return {};
    Rational r = make_rational(rn, rd);
    if (v < 0) return {Rational(-r)};
    if (k % 2 == 0) return {r, Rational(-r)};
    return {r};
}

Rational horner(const std::vector<Rational>& c, const Rational& x) {
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Rational roots of height <= H; nullopt when the polynomial is identically zero.
std::optional<std::set<Rational>> bounded_rational_roots(std::vector<Rational> c, long H) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) return std::nullopt;
    std::set<Rational> roots;
    std::size_t low = 0;
    while (c[low] == 0) ++low;
    if (low > 0) roots.insert(Rational(0));
    Integer lcm = 1;
    for (const auto& x : c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    const Integer a0 = abs(Integer(c[low] * lcm));
    const Integer an = abs(Integer(c.back() * lcm));
    for (long p = 1; p <= H; ++p) {
        if (a0 % p != 0) continue;
        for (long q = 1; q <= H; ++q) {
            if (an % q != 0 || std::gcd(p, q) != 1) continue;
            for (long sign : {1L, -1L}) {
                Rational x = make_rational(sign * p, q);
                if (horner(c, x) == 0) roots.insert(x);
            }
        }
    }
    return roots;
}

Rational span_basis(int k, long s) {
    switch (k) {
        case 0: return 1;
        case 1: return s;
        case 2: return Rational(s * s);
        case 3: return rational_pow(Rational(2), s);
        case 4: return rational_pow(Rational(4), s);
        default: return Rational(s) * rational_pow(Rational(4), s);
    }
}

// ---- exact linear algebra over Q -------------------------------------------

using Row = std::vector<Rational>;

/// Reduced row echelon form, visiting columns in the given order. Returns pivots.
std::vector<std::size_t> rref(std::vector<Row>& A, const std::vector<std::size_t>& order) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col : order) {
        if (r == A.size()) break;
        std::size_t piv = r;
        while (piv < A.size() && A[piv][col] == 0) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[r], A[piv]);
        const Rational inv = 1 / A[r][col];
        for (auto& x : A[r]) x *= inv;
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (i == r || A[i][col] == 0) continue;
            const Rational f = A[i][col];
            for (std::size_t k = 0; k < A[i].size(); ++k) A[i][k] -= f * A[r][k];
        }
        pivots.push_back(col);
        ++r;
    }
    A.resize(r);
    return pivots;
}

std::vector<std::size_t> identity_order(std::size_t n) {
    std::vector<std::size_t> o(n);
    std::iota(o.begin(), o.end(), 0);
    return o;
}

std::vector<Row> nullspace(std::vector<Row> A, std::size_t n) {
    const auto pivots = rref(A, identity_order(n));
    std::vector<Row> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        Row v(n, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -A[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---- symbolic helpers -------------------------------------------------------

/// r with e = r * zeta(arg), or nothing if e has any other component.
std::optional<Rational> pure_ratio(const ConstExpr& e, int arg) {
    if (e.is_zero()) return Rational(0);
    const ConstExpr z = zeta_sym(arg);
    const auto& [mono, coef] = *z.terms().begin();
    if (e.terms().size() != 1 || e.terms().begin()->first != mono) return std::nullopt;
    return e.terms().begin()->second / coef;
}

/// Everything except the zeta(arg) component.
ConstExpr impure_part(const ConstExpr& e, int arg) {
    const Monomial mono = zeta_sym(arg).terms().begin()->first;
    ConstExpr out;
    for (const auto& [m, c] : e.terms())
        if (m != mono) out += ConstExpr::monomial(m, c);
    return out;
}

/// zeta(2k)/pi^(2k).
Rational even_zeta_ratio(int k2) { return zeta_sym(k2).terms().begin()->second; }

std::vector<long> j_range(long w, Parity p) {
    std::vector<long> out;
    for (long j = 2; j <= w - 1; ++j)
        if (parity_ok(p, j)) out.push_back(j);
    return out;
}

// Poly monomials {1, s, j, s^2, s j, j^2}.
constexpr std::array<int, 6> kPolyDegree = {0, 1, 1, 2, 2, 2};
constexpr std::array<bool, 6> kPolyHasJ = {false, false, true, false, true, true};

Rational poly_mono(int k, long s, long j) {
    switch (k) {
        case 0: return 1;
        case 1: return s;
        case 2: return j;
        case 3: return Rational(s * s);
        case 4: return Rational(s * j);
        default: return Rational(j * j);
    }
}

bool weights_symmetric(const CandidateIdentity& c, long s) {
    for (long j : c.indices(s))
        if (c.weight(s, j) != c.weight(s, s - j)) return false;
    return true;
}

/// Exact value of the candidate's left side at s, when reachable.
std::optional<ConstExpr> exact_sum(const CandidateIdentity& c, long s) {
    ConstExpr total;
    if (c.even_arg) {
        if (weights_symmetric(c, s)) {
            for (long j : c.indices(s)) {
                ConstExpr pair = zeta_sym(2 * j) * zeta_sym(2 * s - 2 * j) - zeta_sym(2 * s);
                total += pair * ConstExpr(c.weight(s, j) / 2);
            }
            return total;
        }
        if (2 * s > kExactHi) return std::nullopt;
        for (long j : c.indices(s)) total += dzeta_reduce(2 * j, 2 * s - 2 * j) * ConstExpr(c.weight(s, j));
        return total;
    }
    if (s > kExactHi) return std::nullopt;
    for (long j : c.indices(s)) total += dzeta_reduce(j, s - j) * ConstExpr(c.weight(s, j));
    return total;
}

MPReal numeric_residual(const CandidateIdentity& c, long s, const EvalContext& ctx) {
    MPReal lhs(0L, ctx.bits());
    for (long j : c.indices(s)) {
        const Rational w = c.weight(s, j);
        if (w == 0) continue;
        MPReal term = c.even_arg ? dzeta_num(2 * j, 2 * s - 2 * j, ctx) : dzeta_num(j, s - j, ctx);
        lhs += term * MPReal(w, ctx.bits());
    }
    const int arg = c.even_arg ? 2 * s : s;
    const MPReal rhs = zeta_num(arg, ctx) * MPReal(c.f(s), ctx.bits());
    return abs(lhs - rhs);
}

/// Exact fit and certification over `exact_s`, then screening at `screen_s`.
bool certify(CandidateIdentity& c, const std::vector<long>& exact_s, const std::vector<long>& screen_s,
             int precision) {
    std::vector<std::pair<long, Rational>> pts;
    std::vector<long> empty;
    bool any_weight = false;
    for (long s : exact_s)
        for (long j : c.indices(s)) any_weight = any_weight || c.weight(s, j) != 0;
    if (!any_weight) return false;
    for (long s : exact_s) {
        if (!c.parity.admits_s(s)) continue;
        if (c.indices(s).empty()) {
            empty.push_back(s);
            continue;
        }
        const auto value = exact_sum(c, s);
        if (!value) continue;
        const auto r = pure_ratio(*value, c.even_arg ? 2 * s : s);
        if (!r) return false;
        pts.emplace_back(s, *r);
        c.exact_points.push_back(s);
    }
    if (pts.empty()) return false;
    const auto f = fit_span(pts);
    if (!f) return false;
    c.f = *f;

    // Smallest s from which every checked parameter holds; an empty sum holds iff f(s) = 0.
    c.min_s = exact_s.front();
    for (long s : empty)
        if (c.f(s) != 0 && s >= c.min_s) c.min_s = s + 1;
    while (!c.parity.admits_s(c.min_s)) ++c.min_s;

    const EvalContext ctx(precision);
    double worst = -1e9;
    for (long s : screen_s) {
        const double lg = numeric_residual(c, s, ctx).log10_abs();
        worst = std::max(worst, lg);
        c.screened_points.push_back(s);
        if (lg > kScreenLog10) return false;
    }
    c.worst_screen_log10 = worst;
    c.status = Certification::NumericScreened;
    return true;
}

std::vector<long> exact_weights() {
    std::vector<long> w;
    for (long s = kExactLo; s <= kExactHi; ++s) w.push_back(s);
    return w;
}

std::vector<long> screen_weights(const ParityFilter& p) {
    if (p.s == Parity::Even) return {8, 10};
    return {9, 11};
}

std::vector<long> even_arg_exact() {
    std::vector<long> s;
    for (long k = 2; k <= kEvenArgExactHi; ++k) s.push_back(k);
    return s;
}

const std::vector<long> kEvenArgScreen = {kEvenArgExactHi + 1, kEvenArgExactHi + 3};

// ---- classification ---------------------------------------------------------

/// Bases b with nonzero coefficient once the j-parity indicator is expanded.
std::set<Rational> expanded_bases(const CandidateIdentity& c) {
    std::vector<Rational> bases;
    if (c.family == Family::Power || c.family == Family::Alternating) {
        bases.push_back(c.params[0]);
    } else if (c.family == Family::Affine) {
        if (c.params[0] != 0) bases.push_back(c.params[1]);
        if (c.params[2] != 0) bases.push_back(c.params[3]);
    }
    std::set<Rational> out;
    for (const auto& b : bases) {
        if (b == 0) continue;
        out.insert(b);
        if (c.parity.j != Parity::Any) out.insert(Rational(-b));
    }
    return out;
}

void classify(CandidateIdentity& c) {
    c.known_as.clear();
    c.derived = false;
    switch (c.family) {
        case Family::Power:
        case Family::Alternating:
        case Family::Affine: {
            std::set<Rational> allowed = {Rational(1), Rational(2)};
            if (c.parity.s == Parity::Even) allowed.insert(Rational(-1));
            const auto bases = expanded_bases(c);
            c.derived = std::all_of(bases.begin(), bases.end(), [&](const Rational& b) { return allowed.count(b) > 0; });
            std::optional<Rational> single;
            if (c.family == Family::Affine) {
                if (c.params[2] == 0) single = c.params[1];
            } else {
                single = c.params[0];
            }
            if (!single) break;
            if (c.parity.j == Parity::Any) {
                if (*single == 1) c.known_as = "C02";
                if (*single == 2) c.known_as = "C03";
                if (*single == -1 && c.parity.s == Parity::Even) c.known_as = "C04";
            } else if (c.parity.s == Parity::Even && (*single == 1 || *single == -1)) {
                c.known_as = "C05";
            }
            break;
        }
        case Family::SymmetricEven:
            if (c.params[0] == 4) c.known_as = "C30";
            if (c.params[0] == 1) {
                c.known_as = "C05";
                c.derived = true;
            }
            break;
        case Family::Poly: {
            const bool constant = std::all_of(c.params.begin() + 1, c.params.end(), [](const Rational& x) { return x == 0; });
            if (constant) {
                c.derived = true;
                if (c.even_arg) c.known_as = "C05";
                else if (c.parity.j == Parity::Any) c.known_as = "C02";
                else if (c.parity.s == Parity::Even) c.known_as = "C05";
            }
            // (2j-1)(2s-2j-1) = 1 - 2s + 4sj - 4j^2
            const std::vector<Rational> naka = {1, -2, 0, 0, 4, -4};
            if (c.even_arg && c.trim == 1 && c.params == naka) c.known_as = "C32";
            break;
        }
    }
}

/// Scales to coprime integers with the first nonzero entry positive.
std::vector<Rational> primitive(std::vector<Rational> v) {
    Integer lcm = 1, g = 0;
    for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    for (auto& x : v) {
        x *= lcm;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    }
    if (g == 0) return v;
    Rational scale = make_rational(1, g);
    for (const auto& x : v)
        if (x != 0) {
            if (x < 0) scale = -scale;
            break;
        }
    for (auto& x : v) x *= scale;
    return v;
}

std::tuple<int, ParityFilter, std::vector<Rational>, int> sort_key(const CandidateIdentity& c) {
    return {static_cast<int>(c.family), c.parity, c.params, c.trim};
}

void canonical_sort(std::vector<CandidateIdentity>& out) {
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return sort_key(a) < sort_key(b); });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return sort_key(a) == sort_key(b); }),
              out.end());
}

// ---- power and affine tables ------------------------------------------------

/// Impure parts of zeta(j, w - j), as coefficient vectors over a fixed monomial list.
struct ImpureTable {
    std::vector<Monomial> monos;
    std::map<long, std::vector<Rational>> by_j;
};

const ImpureTable& impure_table(long w) {
    static std::map<long, ImpureTable> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    ImpureTable t;
    std::map<long, ConstExpr> parts;
    std::set<Monomial> monos;
    for (long j = 2; j <= w - 1; ++j) {
        parts[j] = impure_part(dzeta_reduce(j, w - j), w);
        for (const auto& [m, c] : parts[j].terms()) monos.insert(m);
    }
    t.monos.assign(monos.begin(), monos.end());
    for (const auto& [j, e] : parts) {
        std::vector<Rational> v(t.monos.size(), Rational(0));
        for (std::size_t i = 0; i < t.monos.size(); ++i)
            if (auto f = e.terms().find(t.monos[i]); f != e.terms().end()) v[i] = f->second;
        t.by_j[j] = std::move(v);
    }
    return cache.emplace(w, std::move(t)).first->second;
}

/// Common power-base roots over the exact weights; nullopt when unconstrained.
std::optional<std::set<Rational>> power_roots(const ParityFilter& pf, long H) {
    std::optional<std::set<Rational>> acc;
    for (long w : exact_weights()) {
        if (!pf.admits_s(w)) continue;
        const auto& t = impure_table(w);
        for (std::size_t m = 0; m < t.monos.size(); ++m) {
            std::vector<Rational> poly(w, Rational(0));
            for (long j : j_range(w, pf.j)) poly[j] = t.by_j.at(j)[m];
            const auto roots = bounded_rational_roots(poly, H);
            if (!roots) continue;
            if (!acc) {
                acc = *roots;
            } else {
                std::set<Rational> keep;
                std::set_intersection(acc->begin(), acc->end(), roots->begin(), roots->end(),
                                      std::inserter(keep, keep.begin()));
                acc = std::move(keep);
            }
        }
    }
    return acc;
}

/// sum_j x^j * impure(zeta(j, w-j)) as a coefficient vector.
std::vector<Rational> impure_vector(long w, Parity jp, const Rational& x) {
    const auto& t = impure_table(w);
    std::vector<Rational> v(t.monos.size(), Rational(0));
    for (long j : j_range(w, jp)) {
        const Rational xj = rational_pow(x, j);
        const auto& row = t.by_j.at(j);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += xj * row[i];
    }
    return v;
}

bool is_zero_vec(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

CandidateIdentity make_candidate(Family fam, const ParityFilter& pf, std::vector<Rational> params) {
    CandidateIdentity c;
    c.family = fam;
    c.parity = pf;
    c.params = std::move(params);
    return c;
}

void try_emit(std::vector<CandidateIdentity>& out, CandidateIdentity c, const std::vector<long>& exact,
              const std::vector<long>& screen, int precision) {
    if (certify(c, exact, screen, precision)) {
        classify(c);
        out.push_back(std::move(c));
    }
}

void affine_pairs(std::vector<CandidateIdentity>& out, const ParityFilter& pf, const std::vector<Rational>& pool,
                  const std::set<Rational>& roots, int precision) {
    std::vector<long> weights;
    for (long w : exact_weights())
        if (pf.admits_s(w) && !impure_table(w).monos.empty()) weights.push_back(w);
    if (weights.empty()) return;

    std::vector<Rational> xs;
    std::vector<std::vector<std::vector<Rational>>> vecs;
    for (const auto& x : pool) {
        if (roots.count(x) || (pf.j != Parity::Any && x < 0)) continue;
        xs.push_back(x);
        std::vector<std::vector<Rational>> per_w;
        for (long w : weights) per_w.push_back(impure_vector(w, pf.j, x));
        vecs.push_back(std::move(per_w));
    }

    for (std::size_t ib = 0; ib < xs.size(); ++ib) {
        for (std::size_t id = ib + 1; id < xs.size(); ++id) {
            // b^j + gamma_w d^j must be pure at every weight, with gamma_w = c^w.
            std::vector<std::pair<long, Rational>> gammas;
            bool ok = true;
            for (std::size_t k = 0; k < weights.size() && ok; ++k) {
                const auto& vb = vecs[ib][k];
                const auto& vd = vecs[id][k];
                if (is_zero_vec(vd)) {
                    ok = is_zero_vec(vb);
                    continue;
                }
                std::size_t m = 0;
                while (vd[m] == 0) ++m;
                const Rational g = -vb[m] / vd[m];
                for (std::size_t i = 0; i < vb.size() && ok; ++i) ok = vb[i] + g * vd[i] == 0;
                if (ok) gammas.emplace_back(weights[k], g);
            }
            if (!ok || gammas.empty() || gammas.front().second == 0) continue;
            for (const auto& c : rational_roots_of(gammas.front().second, gammas.front().first)) {
                const bool all = std::all_of(gammas.begin(), gammas.end(), [&](const auto& wg) {
                    return rational_pow(c, wg.first) == wg.second;
                });
                if (!all) continue;
                try_emit(out, make_candidate(Family::Affine, pf, {Rational(1), xs[ib], c, xs[id]}), exact_weights(),
                         screen_weights(pf), precision);
            }
        }
    }
}

std::string power_text(const Rational& base, const std::string& exp) {
    if (base == 1) return "1";
    if (base.get_den() == 1 && base > 0) return qstr(base) + "^" + exp;
    return "(" + qstr(base) + ")^" + exp;
}

/// "coef*body" with the usual simplifications; returns "" for a zero coefficient.
std::string scaled(const Rational& coef, const std::string& body) {
    if (coef == 0) return "";
    if (body == "1") return qstr(coef);
    if (coef == 1) return body;
    if (coef == -1) return "-" + body;
    return qstr(coef) + "*" + body;
}

std::string join_terms(const std::vector<std::string>& terms) {
    std::string out;
    for (const auto& t : terms) {
        if (t.empty()) continue;
        if (out.empty()) {
            out = t;
        } else if (t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out.empty() ? "0" : out;
}

std::string wrap(const std::string& v) {
    return v.find_first_of("+-*/^ ") == std::string::npos ? v : "(" + v + ")";
}

}  // namespace

// ---- public -----------------------------------------------------------------

bool ParityFilter::admits_j(long n) const { return parity_ok(j, n); }
bool ParityFilter::admits_s(long n) const { return parity_ok(s, n); }
std::string ParityFilter::name() const { return "j:" + parity_text(j) + ",s:" + parity_text(s); }

std::vector<ParityFilter> all_parity_filters() {
    std::vector<ParityFilter> out;
    for (Parity pj : {Parity::Any, Parity::Even, Parity::Odd})
        for (Parity ps : {Parity::Any, Parity::Even, Parity::Odd}) out.push_back({pj, ps});
    return out;
}

ConstExpr reduce_weighted_sum(const WeightFn& weight, int w, Parity j_parity) {
    if (w < kExactLo || w > kExactHi)
        throw DomainError("weighted sums reduce exactly for weights 3..7, got " + std::to_string(w));
    ConstExpr total;
    for (long j : j_range(w, j_parity)) {
        const ConstExpr c = weight(w, j);
        if (!c.is_rational())
            throw DomainError("weight at j=" + std::to_string(j) + " is not rational: " + c.render());
        total += dzeta_reduce(static_cast<int>(j), static_cast<int>(w - j)) * c;
    }
    return total;
}

std::set<Rational> solve_power_base(int w, long height, Parity j_parity) {
    if (w < 5 || w > kExactHi) throw DomainError("power bases are solved at weights 5..7");
    const auto& t = impure_table(w);
    std::set<Rational> acc;
    bool first = true;
    for (std::size_t m = 0; m < t.monos.size(); ++m) {
        std::vector<Rational> poly(w, Rational(0));
        for (long j : j_range(w, j_parity)) poly[j] = t.by_j.at(j)[m];
        const auto roots = bounded_rational_roots(poly, height);
        if (!roots) continue;
        if (first) {
            acc = *roots;
            first = false;
        } else {
            std::set<Rational> keep;
            std::set_intersection(acc.begin(), acc.end(), roots->begin(), roots->end(),
                                  std::inserter(keep, keep.begin()));
            acc = std::move(keep);
        }
    }
    if (first) {
        auto pool = height_pool(height);
        acc.insert(pool.begin(), pool.end());
        acc.insert(Rational(0));
    }
    return acc;
}

Rational SpanFunction::operator()(long s) const {
    Rational v = 0;
    for (int k = 0; k < 6; ++k)
        if (c[k] != 0) v += c[k] * span_basis(k, s);
    return v;
}

bool SpanFunction::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; });
}

std::string SpanFunction::render(const std::string& var) const {
    const std::array<std::string, 6> names = {"1", var, var + "^2", "2^" + var, "4^" + var, var + "*4^" + var};
    std::vector<std::string> terms;
    for (int k = 0; k < 6; ++k) terms.push_back(scaled(c[k], names[k]));
    return join_terms(terms);
}

std::optional<SpanFunction> fit_span(const std::vector<std::pair<long, Rational>>& points) {
    if (std::all_of(points.begin(), points.end(), [](const auto& p) { return p.second == 0; }))
        return SpanFunction{};
    const std::size_t n = points.size();
    const std::size_t max_k = n >= 2 ? std::min<std::size_t>(6, n - 1) : 1;
    for (std::size_t k = 1; k <= max_k; ++k) {
        std::vector<int> mask(6, 0);
        std::fill(mask.begin(), mask.begin() + static_cast<long>(k), 1);
        do {
            std::vector<int> sub;
            for (int i = 0; i < 6; ++i)
                if (mask[i]) sub.push_back(i);
            std::vector<Row> A;
            for (const auto& [s, v] : points) {
                Row r;
                for (int b : sub) r.push_back(span_basis(b, s));
                r.push_back(v);
                A.push_back(std::move(r));
            }
            const auto piv = rref(A, identity_order(k + 1));
            if (piv.size() != k || std::find(piv.begin(), piv.end(), k) != piv.end()) continue;
            SpanFunction f;
            for (std::size_t i = 0; i < k; ++i) f.c[sub[i]] = A[i][k];
            return f;
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    return std::nullopt;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Power: return "power";
        case Family::Alternating: return "alternating";
        case Family::Affine: return "affine";
        case Family::SymmetricEven: return "symmetric-even";
        case Family::Poly: return "poly";
    }
    return "power";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::Power, Family::Alternating, Family::Affine, Family::SymmetricEven, Family::Poly})
        if (family_name(f) == s) return f;
    throw DomainError("unknown family '" + s + "'");
}

std::string certification_name(Certification c) {
    switch (c) {
        case Certification::Exact: return "exact";
        case Certification::NumericScreened: return "numeric-screened";
        case Certification::Rejected: return "rejected";
    }
    return "rejected";
}

Rational CandidateIdentity::weight(long s, long j) const {
    switch (family) {
        case Family::Power:
        case Family::Alternating: return rational_pow(params[0], j);
        case Family::Affine: {
            Rational w = params[0] * rational_pow(params[1], j);
            if (params[2] != 0) w += rational_pow(params[2], s) * rational_pow(params[3], j);
            return w;
        }
        case Family::SymmetricEven: return rational_pow(params[0], j) + rational_pow(params[0], s - j);
        case Family::Poly: {
            Rational w = 0;
            for (int k = 0; k < 6; ++k)
                if (params[k] != 0) w += params[k] * poly_mono(k, s, j);
            return w;
        }
    }
    return 0;
}

std::vector<long> CandidateIdentity::indices(long s) const {
    if (even_arg) {
        std::vector<long> out;
        for (long j = 1 + trim; j <= s - 1 - trim; ++j) out.push_back(j);
        return out;
    }
    return j_range(s, parity.j);
}

std::string CandidateIdentity::weight_text(const std::string& jvar) const {
    const std::string jv = wrap(jvar);
    switch (family) {
        case Family::Power:
        case Family::Alternating: return power_text(params[0], jv);
        case Family::Affine: {
            const std::string first = scaled(params[0], power_text(params[1], jv));
            std::string second;
            if (params[2] != 0) {
                const std::string cs = power_text(params[2], "s");
                const std::string dj = power_text(params[3], jv);
                second = cs == "1" ? dj : (dj == "1" ? cs : cs + "*" + dj);
            }
            return join_terms({first, second});
        }
        case Family::SymmetricEven: {
            if (params[0] == 1) return "2";
            const std::string a = power_text(params[0], jv);
            const std::string b = power_text(params[0], "(s-" + jv + ")");
            return a + " + " + b;
        }
        case Family::Poly: {
            const std::array<std::string, 6> names = {"1", "s", jv, "s^2", "s*" + jv, jv + "^2"};
            std::vector<std::string> terms;
            for (int k = 0; k < 6; ++k) terms.push_back(scaled(params[k], names[k]));
            return join_terms(terms);
        }
    }
    return "1";
}

std::string CandidateIdentity::dsl(const std::string& id) const {
    std::ostringstream os;
    os << "identity " << id << " : forall s>=" << min_s;
    if (parity.s != Parity::Any) os << ", s " << parity_text(parity.s);
    os << " : ";
    auto term = [](const std::string& w, const std::string& z) {
        return w == "1" ? z : wrap(w) + "*" + z;
    };
    if (even_arg) {
        os << "sum(j=" << 1 + trim << "..s-" << 1 + trim << ", " << term(weight_text("j"), "dz(2*j,2*s-2*j)")
           << ") == ";
    } else if (parity.j == Parity::Any) {
        os << "sum(j=2..s-1, " << term(weight_text("j"), "dz(j,s-j)") << ") == ";
    } else if (parity.j == Parity::Even) {
        os << "sum(i=1..idiv(s-1,2), " << term(weight_text("2*i"), "dz(2*i,s-2*i)") << ") == ";
    } else {
        os << "sum(i=1..idiv(s-2,2), " << term(weight_text("2*i+1"), "dz(2*i+1,s-2*i-1)") << ") == ";
    }
    const std::string z = even_arg ? "zeta(2*s)" : "zeta(s)";
    if (f.is_zero()) os << "0";
    else os << term(f.render("s"), z);
    return os.str();
}

std::string CandidateIdentity::summary() const {
    std::ostringstream os;
    os << family_name(family);
    if (even_arg) os << " even-arg j=" << 1 + trim << "..s-" << 1 + trim;
    else os << " " << parity.name();
    os << " weight " << weight_text() << "  f(s) = " << f.render() << "  [" << certification_name(status) << "]";
    if (!known_as.empty()) os << " " << known_as;
    else if (derived) os << " derived";
    return os.str();
}

std::vector<CandidateIdentity> search_general(const SearchConfig& cfg) {
    std::vector<CandidateIdentity> out;
    const bool want_power = cfg.families.count(Family::Power) || cfg.families.count(Family::Alternating);
    const bool want_affine = cfg.families.count(Family::Affine) > 0;
    const auto pool = height_pool(cfg.height);

    if (want_power || want_affine) {
        for (const auto& pf : cfg.parities) {
            const auto solved = power_roots(pf, cfg.height);
            std::set<Rational> roots = solved ? *solved : std::set<Rational>(pool.begin(), pool.end());
            roots.erase(Rational(0));
            for (const auto& r : roots) {
                // On a single j parity, (-r)^j is +-r^j: keep the positive base only.
                if (pf.j != Parity::Any && r < 0) continue;
                const Family fam = r > 0 ? Family::Power : Family::Alternating;
                if (cfg.families.count(fam))
                    try_emit(out, make_candidate(fam, pf, {r}), exact_weights(), screen_weights(pf), cfg.precision);
                if (want_affine)
                    try_emit(out, make_candidate(Family::Affine, pf, {Rational(1), r, Rational(0), Rational(0)}),
                             exact_weights(), screen_weights(pf), cfg.precision);
            }
            if (want_affine) affine_pairs(out, pf, pool, roots, cfg.precision);
        }
    }

    if (cfg.families.count(Family::SymmetricEven)) {
        for (const auto& d : pool) {
            CandidateIdentity c = make_candidate(Family::SymmetricEven, {}, {d});
            c.even_arg = true;
            try_emit(out, std::move(c), even_arg_exact(), kEvenArgScreen, cfg.precision);
        }
    }
    canonical_sort(out);
    return out;
}

std::vector<CandidateIdentity> search_poly_weights(const SearchConfig& cfg) {
    std::vector<int> cols;
    for (int k = 0; k < 6; ++k)
        if (kPolyDegree[k] <= cfg.degree) cols.push_back(k);
    const std::size_t nc = cols.size();
    std::vector<CandidateIdentity> out;

    auto poly_candidate = [&](const Row& v, const ParityFilter& pf, bool even_arg, int trim) {
        std::vector<Rational> coeffs(nc);
        for (std::size_t i = 0; i < nc; ++i) coeffs[i] = v[i];
        coeffs = primitive(coeffs);
        std::vector<Rational> params(6, Rational(0));
        for (std::size_t i = 0; i < nc; ++i) params[cols[i]] = coeffs[i];
        CandidateIdentity c = make_candidate(Family::Poly, pf, params);
        c.even_arg = even_arg;
        c.trim = trim;
        return c;
    };
    // Rows of the nullspace basis whose pivots fall on j-dependent columns
    // are the genuine candidates; the others only rescale the constant weight.
    auto j_dependent_reps = [&](std::vector<Row> basis, std::size_t width) {
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < nc; ++i)
            if (kPolyHasJ[cols[i]]) order.push_back(i);
        for (std::size_t i = 0; i < nc; ++i)
            if (!kPolyHasJ[cols[i]]) order.push_back(i);
        for (std::size_t i = nc; i < width; ++i) order.push_back(i);
        const auto piv = rref(basis, order);
        std::vector<Row> reps;
        for (std::size_t i = 0; i < piv.size(); ++i)
            if (piv[i] < nc && kPolyHasJ[cols[piv[i]]]) reps.push_back(basis[i]);
        return reps;
    };
    Row unit(nc, Rational(0));
    unit[0] = 1;

    // zeta(j, s-j): impure parts must cancel at every exactly reducible weight.
    for (const auto& pf : cfg.parities) {
        std::vector<Row> A;
        for (long w : exact_weights()) {
            if (!pf.admits_s(w)) continue;
            const auto& t = impure_table(w);
            for (std::size_t m = 0; m < t.monos.size(); ++m) {
                Row r(nc, Rational(0));
                for (long j : j_range(w, pf.j))
                    for (std::size_t i = 0; i < nc; ++i) r[i] += poly_mono(cols[i], w, j) * t.by_j.at(j)[m];
                A.push_back(std::move(r));
            }
        }
        try_emit(out, poly_candidate(unit, pf, false, 0), exact_weights(), screen_weights(pf), cfg.precision);
        for (const auto& v : j_dependent_reps(nullspace(A, nc), nc))
            try_emit(out, poly_candidate(v, pf, false, 0), exact_weights(), screen_weights(pf), cfg.precision);
    }

    // zeta(2j, 2s-2j) with symmetric p: reflection makes every s exact, so f is
    // solved for jointly (columns nc.. hold the span coefficients of f).
    for (int trim : {0, 1}) {
        const std::size_t width = nc + 6;
        std::vector<Row> A;
        for (long s = 2; s <= 7; ++s)
            for (long j = 0; j <= s; ++j) {
                Row r(width, Rational(0));
                for (std::size_t i = 0; i < nc; ++i) r[i] = poly_mono(cols[i], s, j) - poly_mono(cols[i], s, s - j);
                A.push_back(std::move(r));
            }
        for (long s : even_arg_exact()) {
            if (s - 1 - trim < 1 + trim) continue;
            Row r(width, Rational(0));
            const Rational z2s = even_zeta_ratio(static_cast<int>(2 * s));
            for (long j = 1 + trim; j <= s - 1 - trim; ++j) {
                const Rational pair =
                    (even_zeta_ratio(static_cast<int>(2 * j)) * even_zeta_ratio(static_cast<int>(2 * s - 2 * j)) / z2s - 1) / 2;
                for (std::size_t i = 0; i < nc; ++i) r[i] += poly_mono(cols[i], s, j) * pair;
            }
            for (int k = 0; k < 6; ++k) r[nc + k] = -span_basis(k, s);
            A.push_back(std::move(r));
        }
        try_emit(out, poly_candidate(unit, {}, true, trim), even_arg_exact(), kEvenArgScreen, cfg.precision);
        for (const auto& v : j_dependent_reps(nullspace(A, width), width))
            try_emit(out, poly_candidate(v, {}, true, trim), even_arg_exact(), kEvenArgScreen, cfg.precision);
    }
    canonical_sort(out);
    return out;
}

}  // namespace mzv
