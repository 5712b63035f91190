#include "mzv/corpus.hpp"

#include <cctype>
#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "mzv/numerics.hpp"
#include "mzv/reductions.hpp"

namespace mzv {

CorpusError::CorpusError(const std::string& what, int line_, int column_)
    : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + what),
      line(line_),
      column(column_) {}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok { Int, Ident, CharLit, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        const char c = s[i];
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        std::size_t j = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) {
                while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
                t.kind = Tok::CharLit;
            } else {
                t.kind = Tok::Int;
            }
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            t.kind = Tok::Ident;
        } else {
            static const char* two[] = {"==", "&&", "<=", ">=", ".."};
            t.kind = Tok::Punct;
            j = i + 1;
            for (const char* op : two)
                if (s.compare(i, 2, op) == 0) j = i + 2;
            if (j == i + 1 && std::string("+-*/^(),;=<>:").find(c) == std::string::npos)
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        t.text = s.substr(i, j - i);
        advance(j - i);
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct FnSpec {
    int arity;
    std::vector<int> char_slots;  // argument positions holding character literals
};

const std::map<std::string, FnSpec>& functions() {
    static const std::map<std::string, FnSpec> table = {
        {"zeta", {1, {}}},     {"L", {2, {0}}},         {"dz", {2, {}}},      {"cs", {4, {0, 1}}},
        {"W", {3, {}}},        {"hsum_odd", {1, {}}},   {"hsum_half", {1, {}}}, {"Hrat", {1, {}}},
        {"B", {1, {}}},        {"E", {1, {}}},          {"binom", {2, {}}},   {"hyp2f1sp", {1, {}}},
        {"fact", {1, {}}},     {"abs", {1, {}}},        {"idiv", {2, {}}},
    };
    return table;
}

bool is_constant_name(const std::string& n) { return n == "pi" || n == "log2" || n == "li4h"; }

bool is_zeta_token(const std::string& n) {
    return n.size() > 1 && n[0] == 'z' && n.find_first_not_of("0123456789", 1) == std::string::npos;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    std::vector<Identity> corpus() {
        std::vector<Identity> out;
        std::set<std::string> seen;
        while (peek().kind != Tok::End) {
            Identity id = identity();
            if (!seen.insert(id.id).second) fail("duplicate identity " + id.id);
            out.push_back(std::move(id));
        }
        return out;
    }

    ExprPtr single(const std::set<std::string>& bound) {
        scope_ = bound;
        ExprPtr e = expr();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek(std::size_t k = 0) const { return t_[std::min(pos_ + k, t_.size() - 1)]; }
    const Token& next() { return t_[std::min(pos_++, t_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why, peek().line, peek().column);
    }

    bool at(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
    bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

    void expect(const char* p) {
        if (!at(p)) fail(std::string("expected '") + p + "'");
        ++pos_;
    }

    std::string ident() {
        if (peek().kind != Tok::Ident) fail("expected identifier");
        return next().text;
    }

    long integer() {
        bool neg = false;
        if (at("-")) {
            neg = true;
            ++pos_;
        }
        if (peek().kind != Tok::Int) fail("expected integer");
        const long v = std::stol(next().text);
        return neg ? -v : v;
    }

    Identity identity() {
        if (!at_word("identity")) fail("expected 'identity'");
        Identity id;
        id.line = peek().line;
        ++pos_;
        id.id = ident();
        if (at_word("expect")) {
            ++pos_;
            expect(":");
            if (!at_word("report")) fail("expected 'report'");
            ++pos_;
            id.report_only = true;
        }
        expect(":");
        scope_.clear();
        if (at_word("forall")) {
            ++pos_;
            domain(id.domain);
            expect(":");
        }
        for (const auto& p : id.domain.params) scope_.insert(p.name);
        while (true) {
            std::vector<ExprPtr> chain{expr()};
            if (!at("==")) fail("expected '=='");
            while (at("==")) {
                ++pos_;
                chain.push_back(expr());
            }
            id.chains.push_back(std::move(chain));
            if (!at("&&")) break;
            ++pos_;
        }
        return id;
    }

    void domain(Domain& d) {
        auto find = [&](const std::string& n) -> Domain::Param* {
            for (auto& p : d.params)
                if (p.name == n) return &p;
            return nullptr;
        };
        while (true) {
            const Token& where = peek();
            const std::string v = ident();
            if (at_word("even") || at_word("odd")) {
                d.parity[v] = at_word("even") ? 0 : 1;
                ++pos_;
            } else if (at(">=") || at(">")) {
                const bool strict = at(">");
                ++pos_;
                const long lo = integer() + (strict ? 1 : 0);
                if (find(v)) fail("parameter '" + v + "' bounded twice");
                d.params.push_back({v, lo, std::nullopt});
            } else if (at("<=")) {
                ++pos_;
                if (peek().kind == Tok::Ident) {
                    d.ordered.emplace_back(v, ident());
                } else {
                    Domain::Param* p = find(v);
                    if (!p) throw UnboundSymbol("'" + v + "' has no lower bound", where.line, where.column);
                    p->upper = integer();
                }
            } else {
                fail("expected a constraint");
            }
            if (!at(",")) break;
            ++pos_;
        }
        for (const auto& [n, par] : d.parity)
            if (!find(n)) fail("parity constraint on unknown parameter '" + n + "'");
        for (const auto& [a, b] : d.ordered)
            if (!find(a) || !find(b)) fail("ordering constraint on unknown parameter");
    }

    static ExprPtr make(Expr::Kind k, const Token& at, std::vector<ExprPtr> args = {}, std::string name = {}) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->args = std::move(args);
        e->name = std::move(name);
        e->line = at.line;
        e->column = at.column;
        return e;
    }

    ExprPtr expr() {
        const Token& start = peek();
        ExprPtr lhs = term();
        while (at("+") || at("-")) {
            const Expr::Kind k = at("+") ? Expr::Kind::Add : Expr::Kind::Sub;
            ++pos_;
            lhs = make(k, start, {lhs, term()});
        }
        return lhs;
    }

    ExprPtr term() {
        const Token& start = peek();
        ExprPtr lhs = unary();
        while (at("*") || at("/")) {
            const Expr::Kind k = at("*") ? Expr::Kind::Mul : Expr::Kind::Div;
            ++pos_;
            lhs = make(k, start, {lhs, unary()});
        }
        return lhs;
    }

    ExprPtr unary() {
        if (at("-")) {
            const Token& start = next();
            return make(Expr::Kind::Neg, start, {unary()});
        }
        if (at("+")) {
            ++pos_;
            return unary();
        }
        return power();
    }

    ExprPtr power() {
        const Token& start = peek();
        ExprPtr base = atom();
        if (at("^")) {
            ++pos_;
            return make(Expr::Kind::Pow, start, {base, unary()});
        }
        return base;
    }

    ExprPtr atom() {
        const Token& tok = peek();
        if (tok.kind == Tok::Int) {
            ++pos_;
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Number;
            e->number = Integer(tok.text);
            e->line = tok.line;
            e->column = tok.column;
            return e;
        }
        if (at("(")) {
            ++pos_;
            ExprPtr e = expr();
            expect(")");
            return e;
        }
        if (tok.kind == Tok::CharLit) fail("character literal '" + tok.text + "' outside a character slot");
        if (tok.kind != Tok::Ident) fail("unexpected '" + tok.text + "'");
        const std::string name = next().text;
        if (name == "sum") return sum(tok);
        if (auto it = functions().find(name); it != functions().end()) return call(tok, name, it->second);
        if (at("(")) throw ArityError("unknown function '" + name + "'", tok.line, tok.column);
        if (is_constant_name(name)) return make(Expr::Kind::Constant, tok, {}, name);
        if (scope_.count(name)) return make(Expr::Kind::Symbol, tok, {}, name);
        if (is_zeta_token(name)) {
            auto k = std::make_shared<Expr>();
            k->kind = Expr::Kind::Number;
            k->number = Integer(name.substr(1));
            k->line = tok.line;
            k->column = tok.column;
            return make(Expr::Kind::Call, tok, {k}, "zeta");
        }
        throw UnboundSymbol("unbound symbol '" + name + "'", tok.line, tok.column);
    }

    ExprPtr sum(const Token& start) {
        expect("(");
        const std::string var = ident();
        if (scope_.count(var)) fail("index '" + var + "' shadows a bound symbol");
        expect("=");
        ExprPtr lo = expr();
        expect("..");
        ExprPtr hi = expr();
        expect(",");
        scope_.insert(var);
        ExprPtr body = expr();
        scope_.erase(var);
        expect(")");
        return make(Expr::Kind::Sum, start, {lo, hi, body}, var);
    }

    ExprPtr char_literal() {
        const Token& tok = peek();
        if ((tok.kind == Tok::Int && tok.text == "1") ||
            (tok.kind == Tok::CharLit && (tok.text == "2a" || tok.text == "2b")) ||
            (tok.kind == Tok::Ident && tok.text == "m4")) {
            ++pos_;
            return make(Expr::Kind::Char, tok, {}, tok.text);
        }
        fail("expected a character (1, 2a, 2b, m4)");
    }

    ExprPtr call(const Token& start, const std::string& name, const FnSpec& spec) {
        expect("(");
        std::vector<ExprPtr> args;
        if (!at(")")) {
            while (true) {
                const int slot = static_cast<int>(args.size());
                const bool is_char =
                    std::find(spec.char_slots.begin(), spec.char_slots.end(), slot) != spec.char_slots.end();
                args.push_back(is_char ? char_literal() : expr());
                if (!at(",") && !at(";")) break;
                ++pos_;
            }
        }
        expect(")");
        if (static_cast<int>(args.size()) != spec.arity)
            throw ArityError(name + " takes " + std::to_string(spec.arity) + " arguments, got " +
                                 std::to_string(args.size()),
                             start.line, start.column);
        return make(Expr::Kind::Call, start, std::move(args), name);
    }

    std::vector<Token> t_;
    std::size_t pos_ = 0;
    std::set<std::string> scope_;
};

}  // namespace

std::vector<Identity> parse_corpus(const std::string& text) { return Parser(lex(text)).corpus(); }

std::vector<Identity> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read corpus '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str());
}

ExprPtr parse_expression(const std::string& text, const std::set<std::string>& bound) {
    return Parser(lex(text)).single(bound);
}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

bool ast_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.name != b.name || a.number != b.number || a.args.size() != b.args.size())
        return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!ast_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

namespace {

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

std::string wrap(const Expr& e, int min_prec) {
    std::string s = render(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

std::string render(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number: return e.number.get_str();
        case Expr::Kind::Symbol:
        case Expr::Kind::Constant:
        case Expr::Kind::Char: return e.name;
        case Expr::Kind::Neg: return "-" + wrap(*e.args[0], 4);
        case Expr::Kind::Add: return wrap(*e.args[0], 1) + " + " + wrap(*e.args[1], 2);
        case Expr::Kind::Sub: return wrap(*e.args[0], 1) + " - " + wrap(*e.args[1], 2);
        case Expr::Kind::Mul: return wrap(*e.args[0], 2) + "*" + wrap(*e.args[1], 3);
        case Expr::Kind::Div: return wrap(*e.args[0], 2) + "/" + wrap(*e.args[1], 3);
        case Expr::Kind::Pow: return wrap(*e.args[0], 5) + "^" + wrap(*e.args[1], 5);
        case Expr::Kind::Sum:
            return "sum(" + e.name + "=" + render(*e.args[0]) + ".." + render(*e.args[1]) + ", " +
                   render(*e.args[2]) + ")";
        case Expr::Kind::Call: {
            std::string s = e.name + "(";
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) s += (e.name == "cs" && i == 2) ? ";" : ",";
                s += render(*e.args[i]);
            }
            return s + ")";
        }
    }
    return "?";
}

std::string render_bindings(const Bindings& b) {
    std::string s;
    for (const auto& [k, v] : b) {
        if (!s.empty()) s += ",";
        s += k + "=" + std::to_string(v);
    }
    return s;
}

bool Domain::admits(const Bindings& b) const {
    for (const auto& p : params) {
        auto it = b.find(p.name);
        if (it == b.end() || it->second < p.lower || (p.upper && it->second > *p.upper)) return false;
    }
    for (const auto& [n, par] : parity) {
        auto it = b.find(n);
        if (it == b.end() || ((it->second % 2) + 2) % 2 != par) return false;
    }
    for (const auto& [x, y] : ordered)
        if (b.at(x) > b.at(y)) return false;
    return true;
}

std::vector<Bindings> Domain::enumerate(long cap) const {
    std::vector<Bindings> out;
    Bindings cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == params.size()) {
            if (admits(cur)) out.push_back(cur);
            return;
        }
        const auto& p = params[i];
        long hi = std::max(p.lower, cap);
        if (p.upper) hi = std::min(hi, *p.upper);
        for (long v = p.lower; v <= hi; ++v) {
            cur[p.name] = v;
            rec(i + 1);
        }
        cur.erase(p.name);
    };
    rec(0);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void eval_fail(const Expr& e, const std::string& why) {
    throw DomainError(std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + why);
}

long as_long(const Expr& at, const Rational& q) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) eval_fail(at, "expected an integer, got " + q.get_str());
    return q.get_num().get_si();
}

CharId as_char(const Expr& e) {
    if (e.kind != Expr::Kind::Char) eval_fail(e, "expected a character literal");
    return parse_char(e.name);
}


class NumEval {
public:
    NumEval(const EvalContext& ctx, std::size_t* nodes) : ctx_(ctx), nodes_(nodes) {}

    NumValue exact(const Rational& q) const { return {q, MPReal(q, ctx_.bits())}; }
    NumValue approx(MPReal x) const { return {std::nullopt, std::move(x)}; }

    long integer(const Expr& e, Bindings& b) {
        NumValue v = eval(e, b);
        if (!v.exact) eval_fail(e, "expected an exact integer argument");
        return as_long(e, *v.exact);
    }

    NumValue eval(const Expr& e, Bindings& b) {
        if (nodes_) ++*nodes_;
        const mpfr_prec_t bits = ctx_.bits();
        switch (e.kind) {
            case Expr::Kind::Number: return exact(Rational(e.number));
            case Expr::Kind::Symbol: return exact(Rational(b.at(e.name)));
            case Expr::Kind::Constant:
                if (e.name == "pi") return approx(const_pi(bits));
                if (e.name == "log2") return approx(const_log2(bits));
                return approx(li4_half_num(ctx_));
            case Expr::Kind::Char: eval_fail(e, "character literal used as a value");
            case Expr::Kind::Neg: {
                NumValue v = eval(*e.args[0], b);
                if (v.exact) return exact(-*v.exact);
                return approx(-v.approx);
            }
            case Expr::Kind::Add:
            case Expr::Kind::Sub:
            case Expr::Kind::Mul:
            case Expr::Kind::Div: return binary(e, eval(*e.args[0], b), eval(*e.args[1], b));
            case Expr::Kind::Pow: {
                NumValue base = eval(*e.args[0], b);
                const long k = integer(*e.args[1], b);
                if (base.exact) {
                    if (*base.exact == 0 && k < 0) eval_fail(e, "zero to a negative power");
                    return exact(rational_pow(*base.exact, k));
                }
                return approx(mzv::pow(base.approx, k));
            }
            case Expr::Kind::Sum: {
                const long lo = integer(*e.args[0], b);
                const long hi = integer(*e.args[1], b);
                std::optional<Rational> q = Rational(0);
                MPReal x(bits);
                for (long v = lo; v <= hi; ++v) {
                    b[e.name] = v;
                    NumValue term = eval(*e.args[2], b);
                    if (q && term.exact)
                        *q += *term.exact;
                    else
                        q.reset();
                    x += term.approx;
                }
                b.erase(e.name);
                if (q) return exact(*q);
                return approx(x);
            }
            case Expr::Kind::Call: return call(e, b);
        }
        eval_fail(e, "unknown node");
    }

private:
    NumValue binary(const Expr& e, const NumValue& x, const NumValue& y) {
        if (x.exact && y.exact) {
            switch (e.kind) {
                case Expr::Kind::Add: return exact(*x.exact + *y.exact);
                case Expr::Kind::Sub: return exact(*x.exact - *y.exact);
                case Expr::Kind::Mul: return exact(*x.exact * *y.exact);
                default:
                    if (*y.exact == 0) eval_fail(e, "division by zero");
                    return exact(*x.exact / *y.exact);
            }
        }
        switch (e.kind) {
            case Expr::Kind::Add: return approx(x.approx + y.approx);
            case Expr::Kind::Sub: return approx(x.approx - y.approx);
            case Expr::Kind::Mul: return approx(x.approx * y.approx);
            default:
                if (y.approx.is_zero()) eval_fail(e, "division by zero");
                return approx(x.approx / y.approx);
        }
    }

    NumValue call(const Expr& e, Bindings& b) {
        const std::string& f = e.name;
        auto arg = [&](std::size_t i) { return integer(*e.args[i], b); };
        auto nonneg = [&](std::size_t i) {
            const long v = arg(i);
            if (v < 0) eval_fail(e, f + " needs a non-negative argument");
            return v;
        };
        if (f == "zeta") return approx(zeta_num(static_cast<int>(arg(0)), ctx_));
        if (f == "L") return approx(L_num(as_char(*e.args[0]), static_cast<int>(arg(1)), ctx_));
        if (f == "dz") return approx(dzeta_num(static_cast<int>(arg(0)), static_cast<int>(arg(1)), ctx_));
        if (f == "cs")
            return approx(char_dzeta_num(as_char(*e.args[0]), as_char(*e.args[1]), static_cast<int>(arg(2)),
                                         static_cast<int>(arg(3)), ctx_));
        if (f == "W")
            return approx(witten_num(static_cast<int>(arg(0)), static_cast<int>(arg(1)), static_cast<int>(arg(2)),
                                     ctx_));
        if (f == "hsum_odd")
            return approx(harmonic_sum_num(HarmonicKind::OddDenominator, static_cast<int>(arg(0)), ctx_));
        if (f == "hsum_half")
            return approx(harmonic_sum_num(HarmonicKind::HalfIndex, static_cast<int>(arg(0)), ctx_));
        if (f == "Hrat") return exact(harmonic(static_cast<unsigned>(nonneg(0))));
        if (f == "B") return exact(bernoulli(static_cast<unsigned>(nonneg(0))));
        if (f == "E") return exact(Rational(euler_number(static_cast<unsigned>(nonneg(0)))));
        if (f == "binom") return exact(Rational(binomial(arg(0), arg(1))));
        if (f == "hyp2f1sp") return exact(hyp2f1_special(static_cast<unsigned>(nonneg(0))));
        if (f == "fact") return exact(Rational(factorial(static_cast<unsigned>(nonneg(0)))));
        if (f == "idiv") {
            const long y = arg(1);
            if (y == 0) eval_fail(e, "idiv by zero");
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), Integer(arg(0)).get_mpz_t(), Integer(y).get_mpz_t());
            return exact(Rational(q));
        }
        if (f == "abs") {
            NumValue v = eval(*e.args[0], b);
            if (v.exact) return exact(mzv::Rational(::abs(*v.exact)));
            return approx(mzv::abs(v.approx));
        }
        eval_fail(e, "unknown function " + f);
    }

    const EvalContext& ctx_;
    std::size_t* nodes_;
};

class SymEval {
public:
    long integer(const Expr& e, Bindings& b) {
        ConstExpr v = eval(e, b);
        if (!v.is_rational()) eval_fail(e, "expected an exact integer argument");
        return as_long(e, v.rational_part());
    }

    ConstExpr eval(const Expr& e, Bindings& b) {
        switch (e.kind) {
            case Expr::Kind::Number: return ConstExpr(Rational(e.number));
            case Expr::Kind::Symbol: return ConstExpr(Rational(b.at(e.name)));
            case Expr::Kind::Constant:
                if (e.name == "pi") return ConstExpr::generator(ConstGenerator::pi());
                if (e.name == "log2") return ConstExpr::generator(ConstGenerator::log2());
                return ConstExpr::generator(ConstGenerator::li4_half());
            case Expr::Kind::Char: eval_fail(e, "character literal used as a value");
            case Expr::Kind::Neg: return -eval(*e.args[0], b);
            case Expr::Kind::Add: return eval(*e.args[0], b) + eval(*e.args[1], b);
            case Expr::Kind::Sub: return eval(*e.args[0], b) - eval(*e.args[1], b);
            case Expr::Kind::Mul: return eval(*e.args[0], b) * eval(*e.args[1], b);
            case Expr::Kind::Div: {
                ConstExpr x = eval(*e.args[0], b);
                ConstExpr y = eval(*e.args[1], b);
                if (y.is_zero()) eval_fail(e, "division by zero");
                if (y.is_rational()) return x * ConstExpr(1 / y.rational_part());
                try {
                    return x.divide(y);
                } catch (const DomainError&) {
                    throw NotReducible("quotient is not a polynomial in the generators");
                }
            }
            case Expr::Kind::Pow: {
                ConstExpr base = eval(*e.args[0], b);
                const long k = integer(*e.args[1], b);
                if (k >= 0) return base.pow(static_cast<unsigned>(k));
                if (!base.is_rational() || base.is_zero())
                    throw NotReducible("negative power of a transcendental expression");
                return ConstExpr(rational_pow(base.rational_part(), k));
            }
            case Expr::Kind::Sum: {
                const long lo = integer(*e.args[0], b);
                const long hi = integer(*e.args[1], b);
                ConstExpr acc;
                for (long v = lo; v <= hi; ++v) {
                    b[e.name] = v;
                    acc += eval(*e.args[2], b);
                }
                b.erase(e.name);
                return acc;
            }
            case Expr::Kind::Call: return call(e, b);
        }
        eval_fail(e, "unknown node");
    }

private:
    ConstExpr call(const Expr& e, Bindings& b) {
        const std::string& f = e.name;
        auto arg = [&](std::size_t i) { return static_cast<int>(integer(*e.args[i], b)); };
        if (f == "zeta") return zeta_sym(arg(0));
        if (f == "L") return L_sym(as_char(*e.args[0]), arg(1));
        if (f == "dz") return dzeta_reduce(arg(0), arg(1));
        if (f == "cs") {
            const CharId p = as_char(*e.args[0]);
            const CharId q = as_char(*e.args[1]);
            const int s = arg(2), t = arg(3);
            if (p == CharId::One && q == CharId::One) return dzeta_reduce(s, t);
            if ((p == CharId::One || p == CharId::TwoB) && (q == CharId::One || q == CharId::TwoB))
                return alt_value_lookup(s, p == CharId::TwoB, t, q == CharId::TwoB);
            throw NotReducible("character double sum has no tabulated closed form");
        }
        if (f == "W") {
            WittenReduction r = witten_reduce(arg(0), arg(1), arg(2));
            if (!r.complete()) throw NotReducible("Witten sum involves double zeta values of weight >= 8");
            return r.value;
        }
        if (f == "hsum_odd" || f == "hsum_half") throw NotReducible(f + " is evaluated numerically only");
        if (f == "abs") {
            ConstExpr v = eval(*e.args[0], b);
            if (!v.is_rational()) throw NotReducible("abs of a transcendental expression");
            return ConstExpr(Rational(::abs(v.rational_part())));
        }
        // Remaining functions are rational-valued; share the numeric evaluator's exact path.
        const EvalContext ctx(10);
        NumEval num(ctx, nullptr);
        NumValue v = num.eval(e, b);
        if (!v.exact) eval_fail(e, "expected an exact value from " + f);
        return ConstExpr(*v.exact);
    }
};

}  // namespace

NumValue eval_value(const Expr& e, const Bindings& b, const EvalContext& ctx, std::size_t* nodes) {
    Bindings local = b;
    return NumEval(ctx, nodes).eval(e, local);
}

MPReal eval_ast(const Expr& e, const Bindings& b, const EvalContext& ctx) { return eval_value(e, b, ctx).approx; }

ConstExpr reduce_ast(const Expr& e, const Bindings& b) {
    Bindings local = b;
    return SymEval().eval(e, local);
}

}  // namespace mzv
