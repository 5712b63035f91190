#ifndef MZV_WITTEN_HPP
#define MZV_WITTEN_HPP

#include <map>
#include <utility>

#include "mzv/exact.hpp"

namespace mzv {

/// W(r,s,t) written as an integer combination of double zeta values and
/// products of Riemann zeta values, obtained by running
/// W(r,s,t) = W(r-1,s,t+1) + W(r,s-1,t+1) down to the boundary cases
/// W(r,s,0) = zeta(r) zeta(s), W(r,0,t) = W(0,r,t) = zeta(t,r) and
/// W(0,0,t) = zeta(t-1) - zeta(t).
struct WittenExpansion {
    std::map<std::pair<int, int>, Integer> dz;             ///< (a,b) -> coeff of zeta(a,b)
    std::map<std::pair<int, int>, Integer> zeta_products;  ///< (i<=j) -> coeff of zeta(i)zeta(j)
    std::map<int, Integer> zeta_single;                    ///< k -> coeff of zeta(k)

    WittenExpansion& operator+=(const WittenExpansion& o);
    bool operator==(const WittenExpansion&) const = default;
};

bool witten_convergent(int r, int s, int t);

/// Throws DomainError for a divergent triple.
WittenExpansion witten_expand(int r, int s, int t);

}  // namespace mzv

#endif
