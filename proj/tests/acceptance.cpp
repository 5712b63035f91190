// Prints one PASS/FAIL line per acceptance criterion.
//
// Exit status is 0 when the set of failing criteria equals the set given with
// --expect-fail (default: none), so a criterion known to be unattainable still
// prints FAIL while ctest tracks any change in either direction.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "mzv/corpus.hpp"
#include "mzv/discovery.hpp"
#include "mzv/reductions.hpp"
#include "mzv/verify.hpp"
#include "mzv/witten.hpp"

using namespace mzv;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string sci(const MPReal& x) { return x.is_zero() ? "0" : x.to_string(2); }

void fail(Outcome& o, const std::string& why) {
    if (o.pass) o.detail.clear();
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + why;
}

const std::vector<Identity>& corpus() {
    static const auto c = load_corpus(MZV_DEFAULT_CORPUS);
    return c;
}

MPReal dsl_value(const std::string& text, const EvalContext& ctx) {
    return eval_ast(*parse_expression(text), {}, ctx);
}


Outcome full_corpus() {
    const std::set<std::string> report_only = {"C07", "C10", "C37"};
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteResult r = run_suite(corpus(), SuiteConfig{});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Outcome o;
    std::map<std::string, int> bad;
    std::set<std::string> reported;
    const MPReal cap = ten_to_minus(30, 128);
    MPReal worst(0L, 128);
    for (const auto& v : r.reports) {
        if (report_only.count(v.id)) {
            if (v.error.empty()) reported.insert(v.id);
            continue;
        }
        if (!v.pass) {
            ++bad[v.id];
            continue;
        }
        if (worst < v.residual) worst = v.residual;
    }
    std::ostringstream d;
    d << r.reports.size() << " checks in " << static_cast<int>(secs + 0.5) << " s, worst must-pass residual "
      << sci(worst);
    o.detail = d.str();
    for (const auto& [id, n] : bad) fail(o, id + " fails at " + std::to_string(n) + " parameter point(s)");
    if (cap < worst) fail(o, "residual above 1e-30");
    if (reported != report_only) fail(o, "missing residual report for an annotated entry");
    if (secs > 600) fail(o, "runtime above 10 minutes");
    if (!o.pass && bad.count("C41"))
        o.detail += " (C41 is false as printed; the corpus keeps it as a report-only entry)";
    return o;
}

Outcome closed_forms() {
    const EvalContext ctx(40);
    const ConstExpr pi = ConstExpr::generator(ConstGenerator::pi());
    const ConstExpr z3 = zeta_sym(3), z5 = zeta_sym(5), z2 = zeta_sym(2);
    const std::vector<std::tuple<int, int, ConstExpr>> table = {
        {2, 1, z3},
        {2, 2, pi.pow(4) * ConstExpr(make_rational(1, 120))},
        {3, 1, pi.pow(4) * ConstExpr(make_rational(1, 360))},
        {4, 1, 2 * z5 - z2 * z3},
        {3, 2, 3 * z2 * z3 - ConstExpr(make_rational(11, 2)) * z5},
        {2, 3, ConstExpr(make_rational(9, 2)) * z5 - 2 * z2 * z3},
    };
    Outcome o;
    MPReal worst(0L, ctx.bits());
    for (const auto& [a, b, want] : table) {
        const ConstExpr got = dzeta_reduce(a, b);
        if (!(got == want)) fail(o, "zeta(" + std::to_string(a) + "," + std::to_string(b) + ") = " + got.render());
        const MPReal res = abs(got.evaluate(ctx) - dzeta_num(a, b, ctx));
        if (worst < res) worst = res;
    }
    if (ten_to_minus(30, ctx.bits()) < worst) fail(o, "numeric residual " + sci(worst));
    bool threw = false;
    try {
        dzeta_reduce(5, 3);
    } catch (const NotReducible&) {
        threw = true;
    }
    if (!threw) fail(o, "zeta(5,3) was reduced");
    if (o.pass) o.detail = "6 exact matches, worst residual " + sci(worst) + ", zeta(5,3) not reducible";
    return o;
}

Outcome named_constants() {
    const EvalContext ctx(40);
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"hsum_half(2)", "37/4*zeta(5) - 2/3*pi^2*zeta(3)"},
        {"hsum_odd(4)", "(372*zeta(5) - 21*pi^2*zeta(3) - 2*pi^4*log2)/96"},
        {"hsum_odd(5)", "(pi^6 - 294*zeta(3)^2 - 744*log2*zeta(5))/384"},
        {"cs(2b,1;2,1)", "-zeta(3)/8"},
        {"cs(2b,2b;2,2)", "-3*zeta(4)/16"},
        {"cs(2b,1;2,2)", "log2^4/6 - log2^2*pi^2/6 + 7/2*log2*zeta(3) - 13/288*pi^4 + 4*li4h"},
    };
    Outcome o;
    MPReal worst(0L, ctx.bits());
    for (const auto& [lhs, rhs] : pairs) {
        const MPReal res = abs(dsl_value(lhs, ctx) - dsl_value(rhs, ctx));
        if (ten_to_minus(30, ctx.bits()) < res) fail(o, lhs + " residual " + sci(res));
        if (worst < res) worst = res;
    }
    // The tabulated alternating values agree with the same numbers.
    const std::vector<std::tuple<bool, int, std::string>> alt = {
        {false, 1, "cs(2b,1;2,1)"}, {true, 2, "cs(2b,2b;2,2)"}, {false, 2, "cs(2b,1;2,2)"}};
    for (const auto& [bb, b, text] : alt) {
        const MPReal res = abs(alt_value_lookup(2, true, b, bb).evaluate(ctx) - dsl_value(text, ctx));
        if (ten_to_minus(30, ctx.bits()) < res) fail(o, "table value for " + text + " off by " + sci(res));
    }
    if (o.pass) o.detail = "6 constants, worst residual " + sci(worst);
    return o;
}

Outcome search_reproduction() {
    const auto general = search_general(SearchConfig{});
    const auto poly = search_poly_weights(SearchConfig{});
    Outcome o;
    const ParityFilter any{};
    auto span = [](std::array<Rational, 6> c) { return SpanFunction{c}; };

    std::set<Rational> bases;
    bool affine02 = false, affine03 = false, alt04 = false, naka = false, quad = false;
    for (const auto& c : general) {
        if (c.family == Family::Power) bases.insert(c.params[0]);
        if (c.family == Family::Affine && c.parity == any) {
            affine02 = affine02 || (c.known_as == "C02" && c.f == span({1, 0, 0, 0, 0, 0}));
            affine03 = affine03 || (c.known_as == "C03" && c.f == span({1, 1, 0, 0, 0, 0}));
        }
        if (c.family == Family::Alternating && c.known_as == "C04")
            alt04 = alt04 || c.f == span({make_rational(1, 2), 0, 0, 0, 0, 0});
        if (c.family == Family::SymmetricEven && c.params == std::vector<Rational>{Rational(4)})
            naka = c.f == span({make_rational(4, 3), 1, 0, 0, make_rational(1, 6), 0});
    }
    for (const auto& c : poly) {
        if (c.known_as != "C32" || !c.even_arg) continue;
        bool weight_ok = true;
        for (long s = 3; s <= 8; ++s)
            for (long j : c.indices(s))
                weight_ok = weight_ok && c.weight(s, j) == Rational((2 * j - 1) * (2 * s - 2 * j - 1));
        quad = weight_ok && c.f == span({make_rational(-9, 4), make_rational(3, 4), 0, 0, 0, 0});
    }
    if (bases != std::set<Rational>{Rational(1), Rational(2)}) fail(o, "power bases differ from {1, 2}");
    if (!affine02 || !affine03) fail(o, "affine family misses a power-sum identity");
    if (!alt04) fail(o, "alternating identity not found");
    if (!naka) fail(o, "4^j + 4^(s-j) identity not found");
    if (!quad) fail(o, "(2j-1)(2s-2j-1) identity not found");

    std::size_t total = 0;
    for (const auto* all : {&general, &poly})
        for (const auto& c : *all) {
            ++total;
            const bool screened = !c.screened_points.empty() && c.worst_screen_log10 <= -25;
            if ((c.known_as.empty() && !c.derived) || !screened) {
                fail(o, "unexplained survivor " + c.summary());
            }
        }
    if (o.pass)
        o.detail = std::to_string(total) + " survivors, all known or derived from the base sums; power bases {1, 2}";
    return o;
}

Outcome exact_suites() {
    Outcome o;
    auto B = [](long n) { return bernoulli(static_cast<unsigned>(n)); };
    auto C = [](long n, long k) { return Rational(binomial(n, k)); };
    for (long n = 1; n <= 40; ++n) {
        Rational s = 0;
        for (long k = 0; k <= n; ++k) s += C(n + 1, k) * B(k);
        if (s != 0) fail(o, "Bernoulli convolution n=" + std::to_string(n));
    }
    for (long n = 2; n <= 25; ++n) {
        Rational s = 0;
        for (long k = 1; k <= n - 1; ++k)
            s += (1 - C(2 * n, 2 * k)) * B(2 * k) * B(2 * n - 2 * k) / Rational(2 * k * (2 * n - 2 * k));
        if (s != harmonic(static_cast<unsigned>(2 * n)) / Rational(n) * B(2 * n))
            fail(o, "Miki recursion n=" + std::to_string(n));
    }
    for (long n = 3; n <= 25; ++n) {
        Rational s = 0;
        for (long k = 1; k <= n - 2; ++k) s += (Rational(n) - C(2 * n, 2 * k)) * B(2 * k) * B(2 * n - 2 * k - 2);
        if (s != Rational((n - 1) * (2 * n - 1)) * B(2 * n - 2)) fail(o, "twin recursion n=" + std::to_string(n));
    }
    for (long n = 4; n <= 30; n += 2) {
        Rational s = 0;
        for (long k = 0; k <= n - 2; ++k)
            s += C(n - 2, k) * Rational(euler_number(static_cast<unsigned>(k)) *
                                        euler_number(static_cast<unsigned>(n - 2 - k)));
        const Integer p = Integer(1) << n;
        if (s != Rational(p * (p - 1)) * B(n) / Rational(n)) fail(o, "Euler convolution n=" + std::to_string(n));
    }
    for (long n = 0; n <= 30; ++n) {
        Rational s = 0;
        for (long k = 0; k <= n; ++k) s += Rational(k % 2 ? -1 : 1) / C(n, k);
        if (s != make_rational((n % 2 ? 0 : 2) * (n + 1), n + 2)) fail(o, "inverse binomial n=" + std::to_string(n));
        if (inv_binomial_sum(static_cast<unsigned>(n), static_cast<unsigned>(n)) != s)
            fail(o, "inv_binomial_sum n=" + std::to_string(n));
    }
    auto f = [&](long n) {
        Rational s = 0;
        for (long k = 0; 2 * k <= n; ++k)
            s += make_rational(n % 2 ? -n : n, 2 * (n - k)) * C(2 * n - 2 * k, n - 2 * k);
        return s;
    };
    if (f(1) != -1) fail(o, "f(1) != -1");
    for (long n = 1; n <= 20; ++n) {
        const Rational sign = n % 2 ? -1 : 1;
        if (n >= 2 && 4 * f(n) - 2 * f(n - 1) != 3 * sign * C(2 * n, n))
            fail(o, "Celine recursion n=" + std::to_string(n));
        const Rational F = hyp2f1_special(static_cast<unsigned>(n));
        if (f(n) != rational_pow(make_rational(1, 2), n + 1) + sign * C(2 * n + 1, n) * F)
            fail(o, "2F1 special value n=" + std::to_string(n));
    }
    if (o.pass) o.detail = "all exact, zero tolerance";
    return o;
}

Outcome reflection_sweep() {
    const EvalContext ctx(40);
    const MPReal cap = MPReal(4L, ctx.bits()) * ten_to_minus(40, ctx.bits());
    Outcome o;
    MPReal worst(0L, ctx.bits());
    for (CharId p : kAllChars)
        for (CharId q : kAllChars)
            for (int s = 2; s <= 5; ++s)
                for (int t = 2; t <= 5; ++t) {
                    const MPReal lhs = char_dzeta_num(p, q, s, t, ctx) + char_dzeta_num(q, p, t, s, ctx);
                    const MPReal rhs = L_num(p, s, ctx) * L_num(q, t, ctx) - L_num(char_product(p, q), s + t, ctx);
                    const MPReal res = abs(lhs - rhs);
                    if (worst < res) worst = res;
                    if (cap < res)
                        fail(o, "[" + std::string(char_name(p)) + "," + std::string(char_name(q)) + "](" +
                                    std::to_string(s) + "," + std::to_string(t) + ") residual " + sci(res));
                }
    if (o.pass) o.detail = "256 cases, worst residual " + sci(worst);
    return o;
}

Outcome oracle_equivalence() {
    const EvalContext ctx(40);
    std::mt19937 rng(20240601);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    Outcome o;
    int checked = 0;
    double widest = -1e9;
    for (int i = 0; i < 20; ++i) {
        OracleParams p;
        OracleSeries kind;
        MPReal fast(ctx.bits());
        std::string label;
        switch (i % 3) {
            case 0:
                kind = OracleSeries::DZeta;
                p.a = pick(2, 6);
                p.b = pick(1, 5);
                fast = dzeta_num(p.a, p.b, ctx);
                label = "dz(" + std::to_string(p.a) + "," + std::to_string(p.b) + ")";
                break;
            case 1:
                kind = OracleSeries::CharDZeta;
                p.p = kAllChars[static_cast<std::size_t>(pick(0, 3))];
                p.q = kAllChars[static_cast<std::size_t>(pick(0, 3))];
                p.a = pick(2, 6);
                p.b = pick(1, 5);
                fast = char_dzeta_num(p.p, p.q, p.a, p.b, ctx);
                label = "cs(" + std::string(char_name(p.p)) + "," + std::string(char_name(p.q)) + ";" +
                        std::to_string(p.a) + "," + std::to_string(p.b) + ")";
                break;
            default:
                kind = OracleSeries::Witten;
                do {
                    p.a = pick(0, 4);
                    p.b = pick(0, 4);
                    p.c = pick(1, 4);
                } while (!witten_convergent(p.a, p.b, p.c) || p.a + p.c < 2 || p.b + p.c < 2);
                fast = witten_num(p.a, p.b, p.c, ctx);
                label = "W(" + std::to_string(p.a) + "," + std::to_string(p.b) + "," + std::to_string(p.c) + ")";
        }
        const OracleResult slow = brute_force_oracle(kind, p, 100000);
        const MPReal diff = abs(fast - slow.value);
        if (slow.bound < diff) fail(o, label + " differs by " + sci(diff) + " > bound " + sci(slow.bound));
        widest = std::max(widest, slow.bound.log10_abs());
        ++checked;
    }
    if (o.pass) {
        std::ostringstream d;
        d << checked << " tuples within the oracle bound (largest bound 1e" << static_cast<int>(widest) << ")";
        o.detail = d.str();
    }
    return o;
}

Outcome precision_scaling() {
    Outcome o;
    std::ostringstream d;
    for (const std::string id : {"C02", "C03", "C04", "C05"}) {
        const Identity* ident = nullptr;
        for (const auto& c : corpus())
            if (c.id == id) ident = &c;
        const Bindings b{{"s", 8}};
        const VerifyReport lo = verify_numeric(*ident, b, EvalContext(30));
        const VerifyReport hi = verify_numeric(*ident, b, EvalContext(50));
        const double gain = lo.residual.log10_abs() - hi.residual.log10_abs();
        d << id << " " << sci(lo.residual) << " -> " << sci(hi.residual) << "  ";
        if (lo.residual.is_zero())
            fail(o, id + " residual already zero at P=30, no shrink measurable");
        else if (!(gain >= 8))
            fail(o, id + " shrank by only 1e" + std::to_string(static_cast<int>(gain)));
    }
    if (o.pass) o.detail = d.str();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> expected;
    for (int i = 1; i < argc; ++i) {
        if (std::strncmp(argv[i], "--expect-fail=", 14) == 0) {
            std::stringstream list(argv[i] + 14);
            std::string item;
            while (std::getline(list, item, ',')) expected.insert(std::stoi(item));
        }
    }
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"full corpus verification", full_corpus},
        {"closed-form table", closed_forms},
        {"named constants", named_constants},
        {"search reproduction", search_reproduction},
        {"exact integer/rational suites", exact_suites},
        {"reflection sweep", reflection_sweep},
        {"oracle equivalence", oracle_equivalence},
        {"precision scaling", precision_scaling},
    };
    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const int n = static_cast<int>(i + 1);
        if (!o.pass) failed.insert(n);
        std::cout << "criterion " << n << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
                  << o.detail << (o.pass || !expected.count(n) ? "" : " [expected]") << std::endl;
    }
    return failed == expected ? 0 : 1;
}
