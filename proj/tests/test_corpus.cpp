#include <gtest/gtest.h>

#include <set>

#include "mzv/corpus.hpp"

using namespace mzv;

namespace {

const std::string kCorpus = MZV_DEFAULT_CORPUS;

template <class E>
E expect_error(const std::string& text) {
    try {
        parse_corpus(text);
    } catch (const E& e) {
        return e;
    } catch (const std::exception& e) {
        ADD_FAILURE() << "wrong exception: " << e.what();
        throw;
    }
    ADD_FAILURE() << "no exception for: " << text;
    throw std::logic_error("unreachable");
}

Rational exact(const std::string& text, const Bindings& b = {}) {
    std::set<std::string> names;
    for (const auto& [k, v] : b) names.insert(k);
    const auto v = eval_value(*parse_expression(text, names), b, EvalContext(30));
    EXPECT_TRUE(v.exact.has_value()) << text;
    return v.exact.value_or(0);
}

}  // namespace

TEST(Corpus, ShipsAllIdentities) {
    const auto corpus = load_corpus(kCorpus);
    ASSERT_EQ(corpus.size(), 46u);
    std::set<std::string> report;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        char id[8];
        std::snprintf(id, sizeof id, "C%02zu", i + 1);
        EXPECT_EQ(corpus[i].id, id);
        EXPECT_FALSE(corpus[i].chains.empty());
        if (corpus[i].report_only) report.insert(corpus[i].id);
    }
    EXPECT_EQ(report, (std::set<std::string>{"C07", "C10", "C37", "C41"}));
}

TEST(Parser, RoundTrip) {
    for (const std::string text :
         {"dz(2,1)", "sum(j=2..s-1, 2^j*dz(j,s-j))", "-(3/4)*zeta(2*s) + pi^2*log2", "cs(2b,m4;2,1)",
          "(-1)^(n+1)*binom(2*n,n)/B(2*n)", "L(m4,3) - pi^3/32", "W(1,2,3)*hyp2f1sp(n) - li4h"}) {
        const ExprPtr a = parse_expression(text, {"s", "n"});
        const ExprPtr b = parse_expression(render(*a), {"s", "n"});
        EXPECT_TRUE(ast_equal(*a, *b)) << text << " -> " << render(*a);
    }
}

TEST(Parser, Precedence) {
    EXPECT_EQ(exact("2+3*4^2"), 50);
    EXPECT_EQ(exact("-2^2"), -4);
    EXPECT_EQ(exact("2^3^2"), 512);
    EXPECT_EQ(exact("1/2/3"), make_rational(1, 6));
    EXPECT_EQ(exact("(-1)^n", {{"n", 3}}), -1);
    EXPECT_EQ(exact("2^(-3)"), make_rational(1, 8));
}

TEST(Parser, ErrorKindsCarryPositions) {
    const auto p = expect_error<ParseError>("identity X1 : forall s>=2 :\n    dz(2,1) == zeta(3) +\n");
    EXPECT_GE(p.line, 2);
    const auto a = expect_error<ArityError>("identity X1 :\n  dz(2) == 1\n");
    EXPECT_EQ(a.line, 2);
    EXPECT_EQ(a.column, 3);
    const auto u = expect_error<UnboundSymbol>("identity X1 : forall s>=2 :\n  zeta(t) == 1\n");
    EXPECT_EQ(u.line, 2);
    EXPECT_EQ(u.column, 8);
    expect_error<ParseError>("identity : dz(2,1) == zeta(3)\n");
    expect_error<ParseError>("identity X1 : dz(2,1) == zeta(3)\nidentity X1 : 1 == 1\n");
    expect_error<ArityError>("identity X1 : foo(2) == 1\n");
    EXPECT_THROW(parse_expression("cs(1,3;2,1)"), ParseError);
}

TEST(Parser, CommentsAndContinuations) {
    const auto c = parse_corpus(
        "# header\n"
        "identity A1 : forall n>=1, n odd :   # trailing\n"
        "    sum(k=1..n, k)\n"
        "    == n*(n+1)/2\n"
        "    && 1 == 1 == 1\n");
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].chains.size(), 2u);
    EXPECT_EQ(c[0].chains[1].size(), 3u);
    EXPECT_EQ(c[0].domain.parity.at("n"), 1);
}

TEST(Domain, EnumerationRespectsConstraints) {
    const auto c = parse_corpus("identity D1 : forall n>=0, m>=1, m<=n, n even : 1 == 1\n");
    const auto all = c[0].domain.enumerate(6);
    // n in {2,4,6}, 1 <= m <= n
    EXPECT_EQ(all.size(), 2u + 4u + 6u);
    for (const auto& b : all) {
        EXPECT_EQ(b.at("n") % 2, 0);
        EXPECT_LE(b.at("m"), b.at("n"));
        EXPECT_TRUE(c[0].domain.admits(b));
    }
    EXPECT_FALSE(c[0].domain.admits({{"n", 3}, {"m", 1}}));
    // A lower bound above the cap still yields its smallest instance.
    const auto hi = parse_corpus("identity D2 : forall s>=12 : 1 == 1\n");
    EXPECT_EQ(hi[0].domain.enumerate(10).size(), 1u);
}

TEST(Eval, HelperFunctionsExact) {
    EXPECT_EQ(exact("fact(5) + abs(-3) + idiv(7,2)"), 126);
    EXPECT_EQ(exact("B(12)"), make_rational(-691, 2730));
    EXPECT_EQ(exact("E(6)"), -61);
    EXPECT_EQ(exact("Hrat(4)"), make_rational(25, 12));
    EXPECT_EQ(exact("binom(6,7)"), 0);
    EXPECT_EQ(exact("sum(k=3..2, k)"), 0);
}

TEST(Eval, NumericMatchesReduction) {
    const EvalContext ctx(40);
    for (const std::string text : {"dz(3,2)", "W(1,1,1)", "cs(2b,1;2,1)", "zeta(6) + L(m4,3)"}) {
        const ExprPtr e = parse_expression(text);
        const MPReal numeric = eval_ast(*e, {}, ctx);
        const ConstExpr sym = reduce_ast(*e, {});
        EXPECT_LT((numeric - sym.evaluate(ctx)).log10_abs(), -38) << text;
    }
    EXPECT_THROW(reduce_ast(*parse_expression("dz(5,3)"), {}), NotReducible);
}

TEST(Eval, NodeCountGrowsWithSums) {
    std::size_t small = 0, large = 0;
    const EvalContext ctx(20);
    eval_value(*parse_expression("sum(j=2..s-1, dz(j,s-j))", {"s"}), {{"s", 4}}, ctx, &small);
    eval_value(*parse_expression("sum(j=2..s-1, dz(j,s-j))", {"s"}), {{"s", 10}}, ctx, &large);
    EXPECT_GT(large, small);
}
