#ifndef MZV_GENERATOR_HPP
#define MZV_GENERATOR_HPP

#include <compare>
#include <string>

namespace mzv {

/// Transcendental constants spanning the symbolic basis. Treated as
/// algebraically independent over Q when comparing normal forms.
struct ConstGenerator {
    enum class Kind { Pi, Log2, ZetaOdd, Li4Half };

    Kind kind = Kind::Pi;
    int index = 0;  ///< odd k >= 3 for ZetaOdd, otherwise 0

    static ConstGenerator pi() { return {Kind::Pi, 0}; }
    static ConstGenerator log2() { return {Kind::Log2, 0}; }
    static ConstGenerator zeta(int k);
    static ConstGenerator li4_half() { return {Kind::Li4Half, 0}; }

    /// Canonical token: pi, log2, z<k>, li4h.
    std::string token() const;

    auto operator<=>(const ConstGenerator&) const = default;
};

}  // namespace mzv

#endif
