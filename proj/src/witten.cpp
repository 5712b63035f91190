#include "mzv/witten.hpp"

#include <mutex>
#include <tuple>

namespace mzv {

namespace {
template <class Map>
void merge_into(Map& dst, const Map& src) {
    for (const auto& [k, v] : src) {
        auto& slot = dst[k];
        slot += v;
        if (slot == 0) dst.erase(k);
    }
}
}  // namespace

WittenExpansion& WittenExpansion::operator+=(const WittenExpansion& o) {
    merge_into(dz, o.dz);
    merge_into(zeta_products, o.zeta_products);
    merge_into(zeta_single, o.zeta_single);
    return *this;
}

bool witten_convergent(int r, int s, int t) {
    if (r < 0 || s < 0 || t < 0) return false;
    return r + t > 1 && s + t > 1 && r + s + t > 2;
}

namespace {

WittenExpansion expand_rec(int r, int s, int t,
                           std::map<std::tuple<int, int, int>, WittenExpansion>& memo) {
    const auto key = std::make_tuple(r, s, t);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    WittenExpansion out;
    if (t == 0) {
        out.zeta_products[{std::min(r, s), std::max(r, s)}] = 1;
    } else if (r == 0 && s == 0) {
        out.zeta_single[t - 1] = 1;
        out.zeta_single[t] = -1;
    } else if (r == 0) {
        out.dz[{t, s}] = 1;
    } else if (s == 0) {
        out.dz[{t, r}] = 1;
    } else {
        out = expand_rec(r - 1, s, t + 1, memo);
        out += expand_rec(r, s - 1, t + 1, memo);
    }
    memo.emplace(key, out);
    return out;
}

}  // namespace

WittenExpansion witten_expand(int r, int s, int t) {
    if (!witten_convergent(r, s, t))
        throw DomainError("W(" + std::to_string(r) + "," + std::to_string(s) + "," +
                          std::to_string(t) + ") diverges");
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, WittenExpansion> memo;
    std::lock_guard lock(mutex);
    return expand_rec(r, s, t, memo);
}

}  // namespace mzv
