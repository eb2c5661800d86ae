#include "lcb/orders.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace lcb {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Ordering three_way(int a, int b) noexcept {
    if (a < b) return Ordering::Less;
    if (a > b) return Ordering::Greater;
    return Ordering::Equivalent;
}

int table_rank(const order::CustomTable& t, const Sample& s) {
    auto it = t.rank.find(s);
    if (it == t.rank.end())
        throw std::invalid_argument("sample " + s.to_string() + " missing from the rank table");
    return it->second;
}

}  // namespace

Preorder Preorder::from_sequence(const std::vector<Sample>& sequence) {
    order::CustomTable t;
    for (std::size_t k = 0; k < sequence.size(); ++k) t.rank.emplace(sequence[k], static_cast<int>(k));
    return Preorder(std::move(t));
}

std::string Preorder::name() const {
    return std::visit(overloaded{
                          [](const order::LexiLow&) { return std::string("lexi-low"); },
                          [](const order::LexiHigh&) { return std::string("lexi-high"); },
                          [](const order::Quantile& q) { return "quantile:" + std::to_string(q.i); },
                          [](const order::Pointwise&) { return std::string("pointwise"); },
                          [](const order::CustomTable&) { return std::string("custom"); },
                      },
                      kind_);
}

Preorder parse_order(std::string_view selector, const Sample& anchor) {
    if (selector == "lexi-low") return Preorder::lexi_low();
    if (selector == "lexi-high") return Preorder::lexi_high();
    if (selector == "pointwise") return Preorder::pointwise(anchor);
    constexpr std::string_view prefix = "quantile:";
    if (selector.starts_with(prefix)) {
        auto digits = selector.substr(prefix.size());
        int i = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), i);
        if (ec == std::errc() && ptr == digits.data() + digits.size()) {
            if (i < 1 || i > anchor.n())
                throw std::invalid_argument("quantile index must lie in [1, n]");
            return Preorder::quantile(i);
        }
    }
    throw std::invalid_argument("unknown order selector '" + std::string(selector) +
                                "' (expected lexi-low, lexi-high, quantile:<i>, pointwise)");
}

Ordering compare(const Preorder& order, const Sample& x, const Sample& y) {
    if (!(x.grid() == y.grid())) throw std::invalid_argument("samples live on different grids");
    if (x.n() != y.n()) throw std::invalid_argument("samples have different lengths");
    const auto a = x.indices();
    const auto b = y.indices();
    const std::size_t n = a.size();

    return std::visit(
        overloaded{
            [&](const order::LexiLow&) {
                for (std::size_t k = 0; k < n; ++k)
                    if (a[k] != b[k]) return three_way(a[k], b[k]);
                return Ordering::Equivalent;
            },
            [&](const order::LexiHigh&) {
                for (std::size_t k = n; k-- > 0;)
                    if (a[k] != b[k]) return three_way(a[k], b[k]);
                return Ordering::Equivalent;
            },
            [&](const order::Quantile& q) {
                if (q.i < 1 || static_cast<std::size_t>(q.i) > n)
                    throw std::invalid_argument("quantile index outside [1, n]");
                const auto k = static_cast<std::size_t>(q.i - 1);
                return three_way(a[k], b[k]);
            },
            [&](const order::Pointwise& p) {
                return three_way(x == p.anchor ? 1 : 0, y == p.anchor ? 1 : 0);
            },
            [&](const order::CustomTable& t) { return three_way(table_rank(t, x), table_rank(t, y)); },
        },
        order.kind());
}

std::vector<Sample> enumerate_omega(const SupportGrid& grid, int n) {
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    const std::uint64_t count = multiset_count(grid.size(), n);
    if (count > kEnumerationGuard)
        throw EnumerationLimitError("sample space of " + std::to_string(count) +
                                    " multisets exceeds the enumeration guard");
    std::vector<Sample> out;
    out.reserve(static_cast<std::size_t>(count));
    const int top = grid.size() - 1;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        out.emplace_back(grid, idx);
        // Next non-decreasing vector in lexicographic order.
        int k = n - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == top) --k;
        if (k < 0) break;
        const int v = idx[static_cast<std::size_t>(k)] + 1;
        std::fill(idx.begin() + k, idx.end(), v);
    }
    return out;
}

bool UpperSet::contains(const Sample& y) const {
    return std::binary_search(members.begin(), members.end(), y);
}

bool UpperSet::subset_of(const UpperSet& other) const {
    return std::includes(other.members.begin(), other.members.end(), members.begin(), members.end());
}

UpperSet upper_set(const Sample& x, const Preorder& order, const std::vector<Sample>& omega) {
    if (!std::binary_search(omega.begin(), omega.end(), x))
        throw std::invalid_argument("sample " + x.to_string() + " is not in the supplied sample space");
    UpperSet u{x, order, {}};
    for (const auto& y : omega)
        if (lesssim(order, x, y)) u.members.push_back(y);
    std::sort(u.members.begin(), u.members.end());
    return u;
}

bool is_monotone(const Preorder& order, const std::vector<Sample>& omega) {
    for (const auto& x : omega)
        for (const auto& y : omega)
            if (leq_componentwise(x, y) && !lesssim(order, x, y)) return false;
    return true;
}

bool agrees(const Preorder& total, const Preorder& pre, const std::vector<Sample>& omega) {
    for (std::size_t a = 0; a < omega.size(); ++a)
        for (std::size_t b = a + 1; b < omega.size(); ++b)
            if (compare(total, omega[a], omega[b]) == Ordering::Equivalent)
                throw std::invalid_argument("order '" + total.name() + "' is not a total order");
    for (const auto& x : omega)
        for (const auto& y : omega)
            if (compare(pre, x, y) == Ordering::Less && compare(total, x, y) != Ordering::Less)
                return false;
    return true;
}

std::vector<Preorder> monotone_linear_extensions(const std::vector<Sample>& omega) {
    if (omega.size() > kExtensionGuard)
        throw EnumerationLimitError("monotone_linear_extensions is limited to " +
                                    std::to_string(kExtensionGuard) + " samples");
    const std::size_t count = omega.size();
    // below[a][b]: omega[a] < omega[b] componentwise; a permutation is monotone
    // iff no such b is placed before a.
    std::vector<std::vector<char>> below(count, std::vector<char>(count, 0));
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b)
            below[a][b] = a != b && leq_componentwise(omega[a], omega[b]);

    std::vector<std::size_t> perm(count);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<Preorder> out;
    do {
        bool ok = true;
        for (std::size_t p = 0; p < count && ok; ++p)
            for (std::size_t q = p + 1; q < count && ok; ++q)
                if (below[perm[q]][perm[p]]) ok = false;
        if (!ok) continue;
        std::vector<Sample> seq;
        seq.reserve(count);
        for (std::size_t k : perm) seq.push_back(omega[k]);
        out.push_back(Preorder::from_sequence(seq));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace lcb
