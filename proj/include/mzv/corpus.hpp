#ifndef MZV_CORPUS_HPP
#define MZV_CORPUS_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzv/const_expr.hpp"
#include "mzv/exact.hpp"
#include "mzv/mpreal.hpp"

namespace mzv {

/// Base for corpus-language errors; carries a 1-based source position.
struct CorpusError : std::runtime_error {
    CorpusError(const std::string& what, int line, int column);
    int line;
    int column;
};
struct ParseError : CorpusError {
    using CorpusError::CorpusError;
};
struct ArityError : CorpusError {
    using CorpusError::CorpusError;
};
struct UnboundSymbol : CorpusError {
    using CorpusError::CorpusError;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        Number,    ///< non-negative integer literal
        Symbol,    ///< parameter or summation index
        Constant,  ///< pi, log2, li4h
        Char,      ///< character literal 1, 2a, 2b, m4 (call arguments only)
        Neg,
        Add,
        Sub,
        Mul,
        Div,
        Pow,
        Sum,   ///< name = index; args = {lo, hi, body}
        Call,  ///< name = function; args in call order
    };

    Kind kind = Kind::Number;
    Integer number = 0;
    std::string name;
    std::vector<ExprPtr> args;
    int line = 0;
    int column = 0;
};

bool ast_equal(const Expr& a, const Expr& b);
std::string render(const Expr& e);

using Bindings = std::map<std::string, long>;

struct Domain {
    struct Param {
        std::string name;
        long lower = 0;
        std::optional<long> upper;
    };
    std::vector<Param> params;
    std::map<std::string, int> parity;                          ///< name -> 0 even, 1 odd
    std::vector<std::pair<std::string, std::string>> ordered;  ///< (a, b) means a <= b

    bool admits(const Bindings& b) const;
    /// Every admissible binding with each parameter in [lower, max(lower, cap)].
    std::vector<Bindings> enumerate(long cap) const;
};

struct Identity {
    std::string id;
    bool report_only = false;  ///< `expect: report`
    Domain domain;
    /// Each chain is e0 == e1 == ...; all chains must hold.
    std::vector<std::vector<ExprPtr>> chains;
    int line = 0;
};

/// Parses a whole corpus file. Throws ParseError, ArityError or UnboundSymbol.
std::vector<Identity> parse_corpus(const std::string& text);
std::vector<Identity> load_corpus(const std::string& path);

/// Parses a single expression whose free symbols must be in `bound`.
ExprPtr parse_expression(const std::string& text, const std::set<std::string>& bound = {});

/// Result of numeric evaluation: exact when every operation stayed rational.
struct NumValue {
    std::optional<Rational> exact;
    MPReal approx;
};

/// Evaluates numerically; `nodes` accumulates the node count after sum expansion.
NumValue eval_value(const Expr& e, const Bindings& b, const EvalContext& ctx, std::size_t* nodes = nullptr);
MPReal eval_ast(const Expr& e, const Bindings& b, const EvalContext& ctx);

/// Exact reduction; NotReducible when any call is outside reduction scope.
ConstExpr reduce_ast(const Expr& e, const Bindings& b);

std::string render_bindings(const Bindings& b);

}  // namespace mzv

#endif
