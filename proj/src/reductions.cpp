#include "mzv/reductions.hpp"

#include <mutex>

#include "mzv/numerics.hpp"
#include "mzv/witten.hpp"

namespace mzv {

namespace {

// In-place Bareiss elimination. Returns the rank; pivot columns are recorded
// in `pivots`. The right-hand sides follow the same row operations.
std::size_t bareiss(std::vector<std::vector<Integer>>& A, std::vector<ConstExpr>* b,
                    std::vector<std::size_t>& pivots) {
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    Integer prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && A[p][col] == 0) ++p;
        if (p == m) continue;
        std::swap(A[p], A[row]);
        if (b) std::swap((*b)[p], (*b)[row]);
        const Integer piv = A[row][col];
        for (std::size_t i = row + 1; i < m; ++i) {
            const Integer f = A[i][col];
            for (std::size_t j = col; j < n; ++j) {
                Integer v = piv * A[i][j] - f * A[row][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                A[i][j] = v;
            }
            if (b) {
                ConstExpr e = (*b)[i] * ConstExpr(Rational(piv)) - (*b)[row] * ConstExpr(Rational(f));
                (*b)[i] = e * ConstExpr(make_rational(1, prev));
            }
        }
        pivots.push_back(col);
        prev = piv;
        ++row;
    }
    return row;
}

}  // namespace

std::size_t exact_rank(std::vector<std::vector<Integer>> A) {
    std::vector<std::size_t> pivots;
    return bareiss(A, nullptr, pivots);
}

std::vector<ConstExpr> solve_exact(std::vector<std::vector<Integer>> A, std::vector<ConstExpr> b) {
    if (A.size() != b.size()) throw DomainError("row count mismatch");
    const std::size_t n = A.empty() ? 0 : A[0].size();
    std::vector<std::size_t> pivots;
    const std::size_t rank = bareiss(A, &b, pivots);
    if (rank < n) throw DomainError("linear system is rank-deficient");
    for (std::size_t i = rank; i < b.size(); ++i)
        if (!b[i].is_zero()) throw DomainError("linear system is inconsistent");
    std::vector<ConstExpr> x(n);
    for (std::size_t k = n; k-- > 0;) {
        ConstExpr acc = b[k];
        for (std::size_t j = k + 1; j < n; ++j)
            if (A[k][j] != 0) acc -= x[j] * ConstExpr(Rational(A[k][j]));
        x[k] = acc * ConstExpr(make_rational(1, A[k][k]));
    }
    return x;
}

WeightSystem weight_system(int w) {
    if (w < 3) throw DomainError("weight must be at least 3");
    WeightSystem sys;
    sys.weight = w;
    const std::size_t n = static_cast<std::size_t>(w - 2);
    auto blank = [&] { return std::vector<Integer>(n, 0); };
    auto col = [](int j) { return static_cast<std::size_t>(j - 2); };
    const ConstExpr zw = zeta_sym(w);

    for (int a = 2; 2 * a <= w && w - a >= 2; ++a) {
        auto row = blank();
        row[col(a)] += 1;
        row[col(w - a)] += 1;
        sys.matrix.push_back(row);
        sys.rhs.push_back(zeta_sym(a) * zeta_sym(w - a) - zw);
        sys.labels.push_back("reflection(" + std::to_string(a) + "," + std::to_string(w - a) + ")");
    }

    auto row = blank();
    for (int j = 2; j <= w - 1; ++j) row[col(j)] = 1;
    sys.matrix.push_back(row);
    sys.rhs.push_back(zw);
    sys.labels.push_back("sum");

    row = blank();
    for (int j = 2; j <= w - 1; ++j) row[col(j)] = Integer(1) << j;
    sys.matrix.push_back(row);
    sys.rhs.push_back(zw * ConstExpr(Rational(w + 1)));
    sys.labels.push_back("power2");

    if (w % 2 == 0) {
        row = blank();
        for (int j = 2; j <= w - 1; ++j) row[col(j)] = (j % 2 == 0) ? 1 : -1;
        sys.matrix.push_back(row);
        sys.rhs.push_back(zw * ConstExpr(Rational(1, 2)));
        sys.labels.push_back("alternating");
    } else if (w == 7) {
        const int s = (w - 1) / 2;
        row = blank();
        for (int j = 2; j <= 2 * s; ++j) row[col(j)] = (j % 2 == 0) ? 1 : -1;
        sys.matrix.push_back(row);
        ConstExpr rhs = zw * ConstExpr(Rational((Integer(1) << (2 * s)) - s - 2));
        for (int k = 1; k <= s - 1; ++k) {
            const Integer c = (Integer(1) << (2 * (s - k))) - 1;
            rhs -= zeta_sym(2 * k) * zeta_sym(w - 2 * k) * ConstExpr(Rational(2 * c));
        }
        sys.rhs.push_back(rhs);
        sys.labels.push_back("alternating-odd");
    }
    return sys;
}

namespace {

const std::vector<ConstExpr>& weight_solution(int w) {
    static std::mutex mutex;
    static std::map<int, std::vector<ConstExpr>> solved;
    std::lock_guard lock(mutex);
    auto it = solved.find(w);
    if (it == solved.end()) {
        WeightSystem sys = weight_system(w);
        it = solved.emplace(w, solve_exact(sys.matrix, sys.rhs)).first;
    }
    return it->second;
}

}  // namespace

ConstExpr zeta_s1_reduce(int s) {
    if (s < 3) throw DomainError("zeta(s-1,1) needs s >= 3");
    ConstExpr acc = zeta_sym(s) * ConstExpr(make_rational(s - 1, 2));
    for (int j = 2; j <= s - 2; ++j) acc -= zeta_sym(j) * zeta_sym(s - j) * ConstExpr(Rational(1, 2));
    return acc;
}

ConstExpr dzeta_reduce(int a, int b) {
    if (a < 2 || b < 1) throw DomainError("zeta(" + std::to_string(a) + "," + std::to_string(b) + ") diverges");
    const int w = a + b;
    // stuffle on the diagonal, Euler's formula for depth-one tails
    if (w >= 8 && a == b)
        return ReductionTable::instance().get({ReductionTable::Kind::DZ, a, b, 0}, [&] {
            return (zeta_sym(a) * zeta_sym(a) - zeta_sym(2 * a)) * ConstExpr(make_rational(1, 2));
        });
    if (w >= 8 && b == 1)
        return ReductionTable::instance().get({ReductionTable::Kind::DZ, a, b, 0}, [&] { return zeta_s1_reduce(w); });
    if (w >= 8)
        throw NotReducible("zeta(" + std::to_string(a) + "," + std::to_string(b) +
                           ") has weight >= 8; no closed form in this basis");
    return ReductionTable::instance().get({ReductionTable::Kind::DZ, a, b, 0},
                                          [&] { return weight_solution(w)[static_cast<std::size_t>(a - 2)]; });
}

WittenReduction witten_reduce(int r, int s, int t) {
    const WittenExpansion ex = witten_expand(r, s, t);
    WittenReduction out;
    for (const auto& [ab, c] : ex.dz) {
        try {
            out.value += dzeta_reduce(ab.first, ab.second) * ConstExpr(Rational(c));
        } catch (const NotReducible&) {
            out.residual.emplace(ab, c);
        }
    }
    for (const auto& [ij, c] : ex.zeta_products)
        out.value += zeta_sym(ij.first) * zeta_sym(ij.second) * ConstExpr(Rational(c));
    for (const auto& [k, c] : ex.zeta_single) out.value += zeta_sym(k) * ConstExpr(Rational(c));
    if (out.complete()) {
        const ConstExpr v = out.value;
        ReductionTable::instance().get({ReductionTable::Kind::W, r, s, t}, [&] { return v; });
    }
    return out;
}

ConstExpr alt_value_lookup(int a, bool a_bar, int b, bool b_bar) {
    const ConstExpr pi = ConstExpr::generator(ConstGenerator::pi());
    const ConstExpr log2 = ConstExpr::generator(ConstGenerator::log2());
    const ConstExpr z3 = zeta_sym(3);
    auto q = [](long n, long d) { return ConstExpr(make_rational(n, d)); };
    ConstExpr v;
    if (a == 2 && b == 1 && a_bar && !b_bar) {
        v = q(-1, 8) * z3;
    } else if (a == 2 && b == 1 && !a_bar && b_bar) {
        v = q(1, 4) * pi.pow(2) * log2 - z3;
    } else if (a == 2 && b == 1 && a_bar && b_bar) {
        v = q(1, 4) * pi.pow(2) * log2 - q(13, 8) * z3;
    } else if (a == 2 && b == 2 && a_bar && !b_bar) {
        v = q(1, 6) * log2.pow(4) - q(1, 6) * log2.pow(2) * pi.pow(2) + q(7, 2) * log2 * z3 -
            q(13, 288) * pi.pow(4) + q(4, 1) * ConstExpr::generator(ConstGenerator::li4_half());
    } else if (a == 2 && b == 2 && a_bar && b_bar) {
        v = q(-3, 16) * zeta_sym(4);
    } else {
        throw NotReducible("alternating value outside the tabulated set");
    }
    const int bars = (a_bar ? 1 : 0) | (b_bar ? 2 : 0);
    return ReductionTable::instance().get({ReductionTable::Kind::Alt, a, b, bars}, [&] { return v; });
}

ReductionTable& ReductionTable::instance() {
    static ReductionTable table;
    return table;
}

void ReductionTable::insert(const Key& key, const ConstExpr& value) {
    const EvalContext ctx(40);
    MPReal numeric(ctx.bits());
    switch (key.kind) {
        case Kind::DZ: numeric = dzeta_num(key.a, key.b, ctx); break;
        case Kind::W: numeric = witten_num(key.a, key.b, key.c, ctx); break;
        case Kind::Alt:
            numeric = char_dzeta_num((key.c & 1) ? CharId::TwoB : CharId::One,
                                     (key.c & 2) ? CharId::TwoB : CharId::One, key.a, key.b, ctx);
            break;
    }
    const MPReal residual = abs(value.evaluate(ctx) - numeric);
    if (ten_to_minus(35, 64) < residual)
        throw ReductionMismatch("closed form " + value.render() + " is off by " + residual.to_string(3));
    std::unique_lock lock(mutex_);
    table_.emplace(key, value);
}

std::size_t ReductionTable::size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
}

}  // namespace mzv
