#include <gtest/gtest.h>

#include <json.hpp>

#include "mzv/verify.hpp"

using namespace mzv;

namespace {

const std::vector<Identity>& corpus() {
    static const auto c = load_corpus(MZV_DEFAULT_CORPUS);
    return c;
}

const Identity& find(const std::string& id) {
    for (const auto& i : corpus())
        if (i.id == id) return i;
    throw std::out_of_range(id);
}

}  // namespace

TEST(Tolerance, ScalesWithNodeCount) {
    EXPECT_NEAR(numeric_tolerance(40, 1).log10_abs(), -38, 1e-9);
    EXPECT_NEAR(numeric_tolerance(40, 10).log10_abs(), -37, 1e-9);
    EXPECT_NEAR(numeric_tolerance(40, 11).log10_abs(), -36, 1e-9);
    EXPECT_NEAR(numeric_tolerance(40, 1000).log10_abs(), -35, 1e-9);
}

TEST(VerifyNumeric, KnownInstancesPass) {
    const EvalContext ctx(40);
    EXPECT_TRUE(verify_numeric(find("C25"), {{"s", 3}}, ctx).pass);
    EXPECT_TRUE(verify_numeric(find("C28"), {{"s", 5}}, ctx).pass);
    const VerifyReport r = verify_numeric(find("C02"), {{"s", 5}}, ctx);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.mode, "numeric");
    EXPECT_TRUE(r.residual <= r.tolerance);
}

TEST(VerifyNumeric, PerturbedConstantFails) {
    const auto bad = parse_corpus(
        "identity X02 : forall s>=3 : sum(j=2..s-1, dz(j,s-j)) == 1000001/1000000*zeta(s)\n"
        "identity X05 : forall s>=2 : sum(j=1..s-1, dz(2*j,2*s-2*j)) == 3/4*zeta(2*s) + li4h/10^25\n");
    const EvalContext ctx(40);
    for (long s = 3; s <= 8; ++s) {
        const VerifyReport r = verify_numeric(bad[0], {{"s", s}}, ctx);
        EXPECT_FALSE(r.pass) << s;
        EXPECT_GT(r.residual.log10_abs(), -7);
    }
    // Far below the screening scale but far above the tolerance.
    EXPECT_FALSE(verify_numeric(bad[1], {{"s", 4}}, ctx).pass);
}

TEST(VerifyNumeric, EvaluationErrorsBecomeFailures) {
    const auto c = parse_corpus("identity X : forall s>=1 : zeta(s) == 1\n");
    const VerifyReport r = verify_numeric(c[0], {{"s", 1}}, EvalContext(30));
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.error.empty());
}

TEST(VerifySymbolic, ExactEqualities) {
    EXPECT_EQ(verify_symbolic(find("C01"), {{"a", 2}, {"b", 3}}).symbolic, "pass");
    EXPECT_EQ(verify_symbolic(find("C32"), {{"s", 4}}).symbolic, "pass");
    EXPECT_EQ(verify_symbolic(find("C29"), {}).symbolic, "pass");
    // weight 16: beyond reduction scope
    EXPECT_EQ(verify_symbolic(find("C05"), {{"s", 8}}).symbolic, "numeric-only");
}

TEST(VerifySymbolic, ImpliesNumericPass) {
    const EvalContext ctx(40);
    for (const auto& id : corpus()) {
        if (id.report_only) continue;
        for (const auto& b : id.domain.enumerate(6)) {
            const VerifyReport s = verify_symbolic(id, b);
            if (s.symbolic != "pass") continue;
            EXPECT_TRUE(verify_numeric(id, b, ctx).pass) << id.id << " " << render_bindings(b);
        }
    }
}

TEST(Suite, ExactRationalIdentities) {
    SuiteConfig cfg;
    cfg.ids = std::vector<std::string>{"C36", "C40", "C42"};
    const SuiteResult r = run_suite(corpus(), cfg);
    EXPECT_TRUE(r.ok());
    EXPECT_GT(r.passed, 0u);
    for (const auto& v : r.reports) {
        EXPECT_EQ(v.mode, "exact") << v.id << " " << render_bindings(v.binding);
        EXPECT_TRUE(v.residual.is_zero());
    }
}

TEST(Suite, EmptyIdListGivesEmptyReport) {
    SuiteConfig cfg;
    cfg.ids = std::vector<std::string>{};
    const SuiteResult r = run_suite(corpus(), cfg);
    EXPECT_TRUE(r.reports.empty());
    EXPECT_TRUE(r.ok());
    const auto j = nlohmann::json::parse(suite_json(r, cfg, false));
    EXPECT_TRUE(j.contains("reports"));
    EXPECT_TRUE(j["reports"].empty());
}

TEST(Suite, UnknownIdIsAnError) {
    SuiteConfig cfg;
    cfg.ids = std::vector<std::string>{"C99"};
    EXPECT_THROW(run_suite(corpus(), cfg), DomainError);
}

TEST(Suite, ReportsAreDeterministic) {
    SuiteConfig cfg;
    cfg.ids = std::vector<std::string>{"C01", "C34"};
    cfg.max_param = 5;
    const SuiteResult a = run_suite(corpus(), cfg), b = run_suite(corpus(), cfg);
    EXPECT_EQ(suite_json(a, cfg, false), suite_json(b, cfg, false));
    EXPECT_EQ(suite_tsv(a), suite_tsv(b));
    const std::string tsv = suite_tsv(a);
    EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), static_cast<long>(a.reports.size()) + 1);
}

TEST(Suite, ResidualsShrinkWithPrecision) {
    const Identity& c45 = find("C45");
    for (long s = 2; s <= 5; ++s)
        for (long t = 2; t <= 5; ++t) {
            const Bindings b{{"s", s}, {"t", t}};
            const VerifyReport lo = verify_numeric(c45, b, EvalContext(30));
            const VerifyReport hi = verify_numeric(c45, b, EvalContext(50));
            ASSERT_TRUE(lo.pass && hi.pass) << render_bindings(b);
            EXPECT_TRUE(hi.residual.is_zero() || hi.residual < lo.residual || lo.residual.is_zero());
            EXPECT_TRUE(hi.residual <= numeric_tolerance(50, hi.nodes));
        }
}
