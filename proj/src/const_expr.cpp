#include "mzv/const_expr.hpp"

#include <cctype>

namespace mzv {

ConstGenerator ConstGenerator::zeta(int k) {
    if (k < 3 || k % 2 == 0) throw DomainError("z<k> needs odd k >= 3");
    return {Kind::ZetaOdd, k};
}

std::string ConstGenerator::token() const {
    switch (kind) {
        case Kind::Pi: return "pi";
        case Kind::Log2: return "log2";
        case Kind::ZetaOdd: return "z" + std::to_string(index);
        case Kind::Li4Half: return "li4h";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial::Monomial(ConstGenerator g, int exp) {
    if (exp < 0) throw DomainError("negative generator exponent");
    if (exp > 0) factors_.emplace_back(g, exp);
}

int Monomial::weight() const {
    int w = 0;
    for (const auto& [g, e] : factors_) {
        switch (g.kind) {
            case ConstGenerator::Kind::Pi:
            case ConstGenerator::Kind::Log2: w += e; break;
            case ConstGenerator::Kind::ZetaOdd: w += g.index * e; break;
            case ConstGenerator::Kind::Li4Half: w += 4 * e; break;
        }
    }
    return w;
}

bool Monomial::divides(const Monomial& other) const {
    size_t j = 0;
    for (const auto& [g, e] : factors_) {
        while (j < other.factors_.size() && other.factors_[j].first < g) ++j;
        if (j == other.factors_.size() || other.factors_[j].first != g || other.factors_[j].second < e)
            return false;
    }
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < factors_.size() || j < o.factors_.size()) {
        if (j == o.factors_.size() || (i < factors_.size() && factors_[i].first < o.factors_[j].first)) {
            r.factors_.push_back(factors_[i++]);
        } else if (i == factors_.size() || o.factors_[j].first < factors_[i].first) {
            r.factors_.push_back(o.factors_[j++]);
        } else {
            r.factors_.emplace_back(factors_[i].first, factors_[i].second + o.factors_[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    if (!o.divides(*this)) throw DomainError("monomial division is not exact");
    Monomial r;
    size_t j = 0;
    for (const auto& [g, e] : factors_) {
        int left = e;
        if (j < o.factors_.size() && o.factors_[j].first == g) left -= o.factors_[j++].second;
        if (left > 0) r.factors_.emplace_back(g, left);
    }
    return r;
}

// ---------------------------------------------------------------------------
// ConstExpr
// ---------------------------------------------------------------------------

ConstExpr::ConstExpr(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial(), c);
}

ConstExpr ConstExpr::generator(ConstGenerator g, int exp) { return monomial(Monomial(g, exp), 1); }

ConstExpr ConstExpr::monomial(const Monomial& m, const Rational& c) {
    ConstExpr r;
    if (c != 0) r.terms_.emplace(m, c);
    return r;
}

bool ConstExpr::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational ConstExpr::rational_part() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? Rational(0) : it->second;
}

int ConstExpr::max_weight() const {
    int w = -1;
    for (const auto& [m, c] : terms_) w = std::max(w, m.weight());
    return w;
}

bool ConstExpr::is_homogeneous() const {
    const int w = max_weight();
    for (const auto& [m, c] : terms_)
        if (m.weight() != w) return false;
    return true;
}

ConstExpr& ConstExpr::operator+=(const ConstExpr& o) {
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

ConstExpr& ConstExpr::operator-=(const ConstExpr& o) { return *this += -o; }

ConstExpr& ConstExpr::operator*=(const ConstExpr& o) {
    ConstExpr r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r += monomial(m1 * m2, c1 * c2);
    *this = std::move(r);
    return *this;
}

ConstExpr ConstExpr::operator-() const {
    ConstExpr r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

ConstExpr ConstExpr::pow(unsigned k) const {
    ConstExpr r(Rational(1));
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
}

ConstExpr ConstExpr::divide(const ConstExpr& d) const {
    if (d.terms_.size() != 1) throw DomainError("division by a non-monomial expression");
    const auto& [dm, dc] = *d.terms_.begin();
    ConstExpr r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m / dm, c / dc);
    return r;
}

ConstExpr operator+(ConstExpr a, const ConstExpr& b) { return a += b; }
ConstExpr operator-(ConstExpr a, const ConstExpr& b) { return a -= b; }
ConstExpr operator*(ConstExpr a, const ConstExpr& b) { return a *= b; }

std::string ConstExpr::render() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string body;
        for (const auto& [g, e] : m.factors()) {
            if (!body.empty()) body += "*";
            body += g.token();
            if (e != 1) body += "^" + std::to_string(e);
        }
        if (body.empty())
            out += mag.get_str();
        else if (mag == 1)
            out += body;
        else
            out += mag.get_str() + "*" + body;
    }
    return out;
}

namespace {

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : s_(text) {}

    ConstExpr parse() {
        ConstExpr e = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw DomainError("constant expression: " + why + " at offset " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ConstExpr sum() {
        ConstExpr acc;
        bool neg = eat('-');
        if (!neg) eat('+');
        acc = neg ? -product() : product();
        while (true) {
            if (eat('+'))
                acc += product();
            else if (eat('-'))
                acc -= product();
            else
                return acc;
        }
    }

    ConstExpr product() {
        ConstExpr acc = factor();
        while (true) {
            if (eat('*')) {
                acc *= factor();
            } else if (eat('/')) {
                ConstExpr d = factor();
                if (!d.is_rational() || d.is_zero()) fail("only division by a nonzero rational");
                acc *= ConstExpr(1 / d.rational_part());
            } else {
                return acc;
            }
        }
    }

    long integer() {
        skip();
        const size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(s_.substr(start, pos_ - start));
    }

    ConstExpr factor() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ConstExpr e = sum();
            if (!eat(')')) fail("expected ')'");
            return power(e);
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return power(ConstExpr(Rational(Integer(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            ConstGenerator g;
            if (id == "pi")
                g = ConstGenerator::pi();
            else if (id == "log2")
                g = ConstGenerator::log2();
            else if (id == "li4h")
                g = ConstGenerator::li4_half();
            else if (id.size() > 1 && id[0] == 'z' &&
                     id.find_first_not_of("0123456789", 1) == std::string::npos)
                g = ConstGenerator::zeta(std::stoi(id.substr(1)));
            else
                fail("unknown generator '" + id + "'");
            return power(ConstExpr::generator(g));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    ConstExpr power(ConstExpr base) {
        if (!eat('^')) return base;
        return base.pow(static_cast<unsigned>(integer()));
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

ConstExpr ConstExpr::parse(const std::string& text) { return ExprParser(text).parse(); }

MPReal ConstExpr::evaluate(const EvalContext& ctx) const {
    const mpfr_prec_t bits = ctx.bits();
    std::map<ConstGenerator, MPReal> gens;
    MPReal acc(bits);
    for (const auto& [m, c] : terms_) {
        MPReal term(c, bits);
        for (const auto& [g, e] : m.factors()) {
            auto it = gens.find(g);
            if (it == gens.end()) it = gens.emplace(g, generator_num(g, ctx)).first;
            term *= mzv::pow(it->second, e);
        }
        acc += term;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

ConstExpr zeta_sym(int s) {
    if (s < 2) throw DomainError("zeta(" + std::to_string(s) + ") is outside s >= 2");
    if (s % 2 == 1) return ConstExpr::generator(ConstGenerator::zeta(s));
    const unsigned n = static_cast<unsigned>(s / 2);
    Rational c = bernoulli(2 * n) * rational_pow(Rational(2), 2 * n) / Rational(2 * factorial(2 * n));
    if (n % 2 == 0) c = -c;
    return ConstExpr::monomial(Monomial(ConstGenerator::pi(), s), c);
}

ConstExpr beta_sym(int s) {
    if (s < 1 || s % 2 == 0) throw NotReducible("L_m4(" + std::to_string(s) + ") has no closed form here");
    const unsigned n = static_cast<unsigned>(s / 2);
    Rational c = Rational(euler_number(2 * n)) / Rational(factorial(2 * n)) * rational_pow(Rational(4), -static_cast<long>(n) - 1);
    if (n % 2 == 1) c = -c;
    return ConstExpr::monomial(Monomial(ConstGenerator::pi(), s), c);
}

ConstExpr L_sym(CharId p, int s) {
    switch (p) {
        case CharId::One: return zeta_sym(s);
        case CharId::TwoA:
            return zeta_sym(s) * ConstExpr(1 - rational_pow(Rational(2), -s));
        case CharId::TwoB:
            if (s == 1) return ConstExpr::generator(ConstGenerator::log2());
            return zeta_sym(s) * ConstExpr(1 - rational_pow(Rational(2), 1 - s));
        case CharId::M4: return beta_sym(s);
    }
    throw DomainError("unknown character");
}

}  // namespace mzv
