#ifndef MZV_REDUCTIONS_HPP
#define MZV_REDUCTIONS_HPP

#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mzv/const_expr.hpp"
#include "mzv/exact.hpp"

namespace mzv {

/// A stored closed form disagreed with its numeric value.
struct ReductionMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

/// Fraction-free (Bareiss) elimination for A x = b with integer A and
/// ConstExpr right-hand sides. Rows beyond the rank must reduce to 0 = 0.
/// Throws DomainError if A has rank below its column count or the system
/// is inconsistent.
std::vector<ConstExpr> solve_exact(std::vector<std::vector<Integer>> A, std::vector<ConstExpr> b);

/// Rank of an integer matrix (exact).
std::size_t exact_rank(std::vector<std::vector<Integer>> A);

/// The linear system for the unknowns zeta(j, w-j), j = 2..w-1 (column j-2).
struct WeightSystem {
    int weight = 0;
    std::vector<std::vector<Integer>> matrix;
    std::vector<ConstExpr> rhs;
    std::vector<std::string> labels;  ///< one per row
};

WeightSystem weight_system(int w);

/// zeta(s-1, 1) for s >= 3.
ConstExpr zeta_s1_reduce(int s);

/// zeta(a, b) for a >= 2, b >= 1, a + b <= 7, plus zeta(a, a) and zeta(a, 1) at any
/// weight; NotReducible otherwise.
ConstExpr dzeta_reduce(int a, int b);

struct WittenReduction {
    ConstExpr value;
    /// Double zeta values of weight >= 8 left unreduced: (a,b) -> coefficient.
    std::map<std::pair<int, int>, Integer> residual;

    bool complete() const { return residual.empty(); }
    bool operator==(const WittenReduction&) const = default;
};

/// Expands W(r,s,t) through the recursion and reduces every piece that can be.
WittenReduction witten_reduce(int r, int s, int t);

/// The tabulated alternating double zeta values: (2b,1), (2,1b), (2b,1b),
/// (2b,2), (2b,2b) where "b" marks the alternating slot. NotReducible otherwise.
ConstExpr alt_value_lookup(int a, bool a_bar, int b, bool b_bar);

/// Memo of closed forms, each checked against the numeric evaluators when
/// first inserted (residual at most 10^-35 at 40 digits).
class ReductionTable {
public:
    enum class Kind { DZ, W, Alt };
    struct Key {
        Kind kind;
        int a, b, c;
        auto operator<=>(const Key&) const = default;
    };

    static ReductionTable& instance();

    /// Returns the cached entry or computes, verifies, and stores it.
    template <class F>
    ConstExpr get(const Key& key, F&& compute) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) return it->second;
        }
        ConstExpr value = compute();
        insert(key, value);
        return value;
    }

    /// Verifies numerically and stores; throws ReductionMismatch on disagreement.
    void insert(const Key& key, const ConstExpr& value);
    std::size_t size() const;

private:
    mutable std::shared_mutex mutex_;
    std::map<Key, ConstExpr> table_;
};

}  // namespace mzv

#endif
