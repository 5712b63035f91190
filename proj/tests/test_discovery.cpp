#include <gtest/gtest.h>

#include <algorithm>

#include "mzv/corpus.hpp"
#include "mzv/discovery.hpp"
#include "mzv/verify.hpp"

using namespace mzv;

namespace {

ConstExpr z(int k) { return ConstExpr::generator(ConstGenerator::zeta(k)); }
const ConstExpr kPi = ConstExpr::generator(ConstGenerator::pi());

std::set<Rational> rats(std::initializer_list<long> v) {
    std::set<Rational> out;
    for (long x : v) out.insert(Rational(x));
    return out;
}

const std::vector<CandidateIdentity>& general() {
    static const auto found = search_general(SearchConfig{});
    return found;
}

const std::vector<CandidateIdentity>& poly() {
    static const auto found = search_poly_weights(SearchConfig{});
    return found;
}

SpanFunction span(std::array<Rational, 6> c) { return SpanFunction{c}; }

const CandidateIdentity* find(const std::vector<CandidateIdentity>& all, Family fam, ParityFilter pf,
                              const std::vector<Rational>& params) {
    for (const auto& c : all)
        if (c.family == fam && c.parity == pf && c.params == params) return &c;
    return nullptr;
}

}  // namespace

TEST(ReduceWeightedSum, Examples) {
    EXPECT_EQ(reduce_weighted_sum([](long, long) { return ConstExpr(1); }, 5), z(5));
    EXPECT_EQ(reduce_weighted_sum([](long, long j) { return ConstExpr(Rational(1L << j)); }, 4),
              make_rational(1, 18) * kPi.pow(4));
    EXPECT_EQ(reduce_weighted_sum([](long, long j) { return ConstExpr(j % 2 ? -1 : 1); }, 4),
              make_rational(1, 180) * kPi.pow(4));
}

TEST(ReduceWeightedSum, ParityFilterAndErrors) {
    auto one = [](long, long) { return ConstExpr(1); };
    EXPECT_TRUE(reduce_weighted_sum(one, 3, Parity::Odd).is_zero());
    EXPECT_EQ(reduce_weighted_sum(one, 6, Parity::Even) + reduce_weighted_sum(one, 6, Parity::Odd),
              reduce_weighted_sum(one, 6));
    EXPECT_THROW(reduce_weighted_sum(one, 8), DomainError);
    EXPECT_THROW(reduce_weighted_sum([](long, long) { return kPi; }, 5), DomainError);
}

TEST(ReduceWeightedSum, LinearInTheWeight) {
    for (int w = 3; w <= 7; ++w) {
        auto f = [](long s, long j) { return ConstExpr(Rational(s * j - 3 * j * j)); };
        auto g = [](long, long j) { return ConstExpr(Rational(1L << j)); };
        auto fg = [&](long s, long j) { return f(s, j) * ConstExpr(make_rational(-2, 7)) + g(s, j) * ConstExpr(5); };
        EXPECT_EQ(reduce_weighted_sum(fg, w),
                  reduce_weighted_sum(f, w) * ConstExpr(make_rational(-2, 7)) + reduce_weighted_sum(g, w) * ConstExpr(5));
    }
}

TEST(SolvePowerBase, OnlyOneAndTwo) {
    EXPECT_EQ(solve_power_base(5), rats({0, 1, 2}));
    EXPECT_EQ(solve_power_base(6), rats({-1, 0, 1, 2}));
    EXPECT_EQ(solve_power_base(7), rats({0, 1, 2}));
    EXPECT_EQ(solve_power_base(5, 1), rats({0, 1}));
    EXPECT_THROW(solve_power_base(4), DomainError);
    // Nonzero bases common to every weight.
    std::set<Rational> common = solve_power_base(5);
    for (int w : {6, 7}) {
        std::set<Rational> next, cur = solve_power_base(w);
        std::set_intersection(common.begin(), common.end(), cur.begin(), cur.end(), std::inserter(next, next.end()));
        common = next;
    }
    common.erase(Rational(0));
    EXPECT_EQ(common, rats({1, 2}));
}

TEST(FitSpan, RecoversKnownFunctions) {
    auto pts = [](auto f) {
        std::vector<std::pair<long, Rational>> p;
        for (long s = 3; s <= 9; ++s) p.emplace_back(s, f(s));
        return p;
    };
    const auto lin = fit_span(pts([](long s) { return Rational(s + 1); }));
    ASSERT_TRUE(lin);
    EXPECT_EQ(*lin, span({1, 1, 0, 0, 0, 0}));
    const auto nak = fit_span(pts([](long s) -> Rational {
        return Rational(s) + make_rational(4, 3) + make_rational(2, 3) * rational_pow(Rational(4), s - 1);
    }));
    ASSERT_TRUE(nak);
    EXPECT_EQ(*nak, span({make_rational(4, 3), 1, 0, 0, make_rational(1, 6), 0}));
    EXPECT_EQ(nak->render(), "4/3 + s + 1/6*4^s");
    // 3^s lies outside the span.
    EXPECT_FALSE(fit_span(pts([](long s) { return rational_pow(Rational(3), s); })));
    // A single point is fitted by a constant without a check.
    EXPECT_EQ(*fit_span({{5, Rational(7)}}), span({7, 0, 0, 0, 0, 0}));
}

TEST(Search, PowerFamilyNonzeroBasesAreOneAndTwo) {
    std::set<Rational> bases;
    for (const auto& c : general())
        if (c.family == Family::Power) bases.insert(c.params.at(0));
    EXPECT_EQ(bases, rats({1, 2}));
}

TEST(Search, ReproducesKnownSums) {
    const ParityFilter any{};
    const auto* c02 = find(general(), Family::Power, any, {Rational(1)});
    ASSERT_TRUE(c02);
    EXPECT_EQ(c02->f, span({1, 0, 0, 0, 0, 0}));
    EXPECT_EQ(c02->status, Certification::NumericScreened);
    EXPECT_EQ(c02->known_as, "C02");

    const auto* c03 = find(general(), Family::Power, any, {Rational(2)});
    ASSERT_TRUE(c03);
    EXPECT_EQ(c03->f, span({1, 1, 0, 0, 0, 0}));
    EXPECT_EQ(c03->known_as, "C03");

    const auto* c04 = find(general(), Family::Alternating, {Parity::Any, Parity::Even}, {Rational(-1)});
    ASSERT_TRUE(c04);
    EXPECT_EQ(c04->f, span({make_rational(1, 2), 0, 0, 0, 0, 0}));
    EXPECT_EQ(c04->known_as, "C04");

    const auto* naka = find(general(), Family::SymmetricEven, any, {Rational(4)});
    ASSERT_TRUE(naka);
    EXPECT_EQ(naka->f, span({make_rational(4, 3), 1, 0, 0, make_rational(1, 6), 0}));
    EXPECT_EQ(naka->known_as, "C30");

    const auto* c05 = find(general(), Family::SymmetricEven, any, {Rational(1)});
    ASSERT_TRUE(c05);
    EXPECT_EQ(c05->f, span({make_rational(3, 2), 0, 0, 0, 0, 0}));
}

TEST(Search, AffineFamilyRecoversBothPowerSums) {
    bool c02 = false, c03 = false;
    for (const auto& c : general()) {
        if (c.family != Family::Affine || c.parity != ParityFilter{}) continue;
        c02 = c02 || c.known_as == "C02";
        c03 = c03 || c.known_as == "C03";
    }
    EXPECT_TRUE(c02);
    EXPECT_TRUE(c03);
}

TEST(Search, PolynomialFamilyRecoversQuadraticWeight) {
    const CandidateIdentity* hit = nullptr;
    for (const auto& c : poly())
        if (c.known_as == "C32") hit = &c;
    ASSERT_TRUE(hit);
    EXPECT_TRUE(hit->even_arg);
    EXPECT_EQ(hit->f, span({make_rational(-9, 4), make_rational(3, 4), 0, 0, 0, 0}));
    EXPECT_EQ(hit->min_s, 3);
    for (long s = 3; s <= 9; ++s)
        for (long j : hit->indices(s)) EXPECT_EQ(hit->weight(s, j), Rational((2 * j - 1) * (2 * s - 2 * j - 1)));
}

TEST(Search, NoUnexplainedSurvivors) {
    for (const auto* all : {&general(), &poly()})
        for (const auto& c : *all) {
            EXPECT_NE(c.status, Certification::Rejected);
            EXPECT_TRUE(!c.known_as.empty() || c.derived) << c.summary();
            EXPECT_FALSE(c.screened_points.empty()) << c.summary();
            EXPECT_LE(c.worst_screen_log10, -25) << c.summary();
        }
}

TEST(Search, EmittedDslVerifies) {
    std::string text;
    std::size_t n = 0;
    for (const auto* all : {&general(), &poly()})
        for (const auto& c : *all) text += c.dsl("S" + std::to_string(++n)) + "\n";
    const auto parsed = parse_corpus(text);
    ASSERT_EQ(parsed.size(), n);
    SuiteConfig cfg;
    cfg.max_param = 9;
    cfg.symbolic = false;
    const SuiteResult r = run_suite(parsed, cfg);
    EXPECT_GE(r.reports.size(), 3 * n);
    EXPECT_TRUE(r.ok());
    for (const auto& v : r.reports)
        EXPECT_TRUE(v.pass) << v.id << " " << render_bindings(v.binding) << " " << v.error;
}

TEST(Search, DeterministicOrder) {
    const auto again = search_general(SearchConfig{});
    ASSERT_EQ(again.size(), general().size());
    for (std::size_t i = 0; i < again.size(); ++i) EXPECT_EQ(again[i].dsl("S"), general()[i].dsl("S"));
}

TEST(Search, EmptyFamilySetGivesNothing) {
    SearchConfig cfg;
    cfg.families.clear();
    EXPECT_TRUE(search_general(cfg).empty());
    cfg.parities.clear();
    cfg.families = {Family::Power};
    EXPECT_TRUE(search_general(cfg).empty());
}

TEST(Families, NamesRoundTrip) {
    for (Family f : {Family::Power, Family::Alternating, Family::Affine, Family::SymmetricEven, Family::Poly})
        EXPECT_EQ(parse_family(family_name(f)), f);
    EXPECT_THROW(parse_family("cubic"), DomainError);
    EXPECT_EQ(all_parity_filters().size(), 9u);
}
