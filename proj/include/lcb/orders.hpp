#pragma once
// Total orders and total preorders on samples, expressed as three-way comparators.

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lcb/support.hpp"

namespace lcb {

enum class Ordering { Less, Equivalent, Greater };

namespace order {

/// Lexicographic on order statistics, smallest first.
struct LexiLow {};
/// Lexicographic on order statistics, largest first.
struct LexiHigh {};
/// Compares only the i-th order statistic (1-based); ties are equivalent.
struct Quantile {
    int i;
};
/// Two classes: the anchor sample on top, every other sample equivalent below it.
struct Pointwise {
    Sample anchor;
};
/// Explicit ranks; equal ranks form an equivalence class.
struct CustomTable {
    std::map<Sample, int> rank;
};

}  // namespace order

class Preorder {
public:
    using Kind = std::variant<order::LexiLow, order::LexiHigh, order::Quantile, order::Pointwise,
                              order::CustomTable>;

    Preorder(Kind kind) : kind_(std::move(kind)) {}  // NOLINT(google-explicit-constructor)

    static Preorder lexi_low() { return Preorder(order::LexiLow{}); }
    static Preorder lexi_high() { return Preorder(order::LexiHigh{}); }
    static Preorder quantile(int i) { return Preorder(order::Quantile{i}); }
    static Preorder pointwise(Sample anchor) { return Preorder(order::Pointwise{std::move(anchor)}); }
    /// Ranks follow the position of each sample in `sequence` (first = lowest).
    static Preorder from_sequence(const std::vector<Sample>& sequence);

    const Kind& kind() const noexcept { return kind_; }

    template <class T>
    bool is() const noexcept { return std::holds_alternative<T>(kind_); }

    /// Stable name: lexi-low, lexi-high, quantile:<i>, pointwise, custom.
    std::string name() const;

private:
    Kind kind_;
};

/// Parses `lexi-low`, `lexi-high`, `quantile:<i>`. `pointwise` needs an anchor,
/// supplied by the caller. Throws std::invalid_argument.
Preorder parse_order(std::string_view selector, const Sample& anchor);

/// Position of y relative to x: Less means x <_R y.
/// Throws std::invalid_argument on mismatched samples or an out-of-range quantile.
Ordering compare(const Preorder& order, const Sample& x, const Sample& y);

/// x is at or below y (x ≲ y).
inline bool lesssim(const Preorder& order, const Sample& x, const Sample& y) {
    return compare(order, x, y) != Ordering::Greater;
}

/// Every multiset of n grid indices, in canonical (lexicographic) order.
/// Throws EnumerationLimitError above kEnumerationGuard samples.
std::vector<Sample> enumerate_omega(const SupportGrid& grid, int n);

struct UpperSet {
    Sample base;
    Preorder order;
    std::vector<Sample> members;  // canonical order

    bool contains(const Sample& y) const;
    /// Every member of this set is a member of other.
    bool subset_of(const UpperSet& other) const;
};

/// {y in omega : x ≲ y}. Throws std::invalid_argument when omega does not contain x.
UpperSet upper_set(const Sample& x, const Preorder& order, const std::vector<Sample>& omega);

/// x <= y componentwise implies x ≲ y, for every pair in omega.
bool is_monotone(const Preorder& order, const std::vector<Sample>& omega);

/// x <_pre y implies x <_total y. Throws std::invalid_argument if `total`
/// has an equivalent pair of distinct samples.
bool agrees(const Preorder& total, const Preorder& pre, const std::vector<Sample>& omega);

/// Largest sample space monotone_linear_extensions will permute.
inline constexpr std::size_t kExtensionGuard = 8;

/// All total orders of omega that extend the componentwise order, as rank tables.
/// Throws EnumerationLimitError when |omega| exceeds kExtensionGuard.
std::vector<Preorder> monotone_linear_extensions(const std::vector<Sample>& omega);

}  // namespace lcb
