#include "lcb/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lcb {

SupportGrid::SupportGrid(double s_min, double s_max, int m) : s_min_(s_min), s_max_(s_max), m_(m) {
    if (m < 2)
        throw std::invalid_argument("support grid needs m >= 2");
    if (!std::isfinite(s_min) || !std::isfinite(s_max) || !(s_min < s_max))
        throw std::invalid_argument("support grid needs finite s_min < s_max");
}

double SupportGrid::point(int i) const {
    if (i < 0 || i >= m_)
        throw std::out_of_range("support index " + std::to_string(i) + " outside [0, " +
                                std::to_string(m_ - 1) + "]");
    // Endpoints are returned verbatim so point(m-1) - point(0) is exactly the range.
    if (i == 0) return s_min_;
    if (i == m_ - 1) return s_max_;
    return s_min_ + static_cast<double>(i) * range() / static_cast<double>(m_ - 1);
}

std::vector<double> SupportGrid::points() const {
    std::vector<double> out(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) out[static_cast<std::size_t>(i)] = point(i);
    return out;
}

int SupportGrid::index_of(double v) const noexcept {
    if (!std::isfinite(v)) return -1;
    const double pos = (v - s_min_) / spacing();
    const long nearest = std::lround(pos);
    if (nearest < 0 || nearest >= m_) return -1;
    const int i = static_cast<int>(nearest);
    const double p = point(i);
    const double scale = std::max({std::abs(s_min_), std::abs(s_max_), range()});
    if (std::abs(v - p) > 1e-9 * scale) return -1;
    return i;
}

std::uint64_t multiset_count(int m, int n) noexcept {
    if (m <= 0 || n < 0) return 0;
    // C(m+n-1, n) built incrementally; every partial product is itself a binomial.
    std::uint64_t c = 1;
    for (int k = 1; k <= n; ++k) {
        const std::uint64_t num = static_cast<std::uint64_t>(m - 1 + k);
        if (c > std::numeric_limits<std::uint64_t>::max() / num)
            return std::numeric_limits<std::uint64_t>::max();
        c = c * num / static_cast<std::uint64_t>(k);
    }
    return c;
}

Sample::Sample(SupportGrid grid, std::vector<int> idx) : grid_(grid), idx_(std::move(idx)) {
    if (idx_.empty())
        throw std::invalid_argument("sample must contain at least one value");
    for (int i : idx_)
        if (i < 0 || i >= grid_.size())
            throw std::out_of_range("sample index " + std::to_string(i) + " outside the grid");
    std::sort(idx_.begin(), idx_.end());
}

int Sample::order_stat(int k) const {
    if (k < 1 || k > n())
        throw std::out_of_range("order statistic " + std::to_string(k) + " outside [1, " +
                                std::to_string(n()) + "]");
    return idx_[static_cast<std::size_t>(k - 1)];
}

std::vector<double> Sample::values() const {
    std::vector<double> out;
    out.reserve(idx_.size());
    for (int i : idx_) out.push_back(grid_.point(i));
    return out;
}

std::vector<int> Sample::distinct_indices() const {
    std::vector<int> out(idx_);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string Sample::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t k = 0; k < idx_.size(); ++k) os << (k ? "," : "") << idx_[k];
    os << ']';
    return os.str();
}

std::strong_ordering Sample::operator<=>(const Sample& o) const noexcept {
    if (auto c = idx_.size() <=> o.idx_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(idx_.begin(), idx_.end(), o.idx_.begin(),
                                                  o.idx_.end());
}

double grid_point(const SupportGrid& grid, int i) { return grid.point(i); }

Sample make_sample(const SupportGrid& grid, std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("sample must contain at least one value");
    std::vector<int> idx;
    idx.reserve(values.size());
    for (double v : values) {
        const int i = grid.index_of(v);
        if (i < 0) {
            std::ostringstream os;
            os << "value " << v << " is not a point of the support grid";
            throw std::invalid_argument(os.str());
        }
        idx.push_back(i);
    }
    return Sample(grid, std::move(idx));
}

Sample homogeneous_sample(const SupportGrid& grid, int i, int n) {
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    if (i < 0 || i >= grid.size()) throw std::out_of_range("support index outside the grid");
    return Sample(grid, std::vector<int>(static_cast<std::size_t>(n), i));
}

static void require_comparable(const Sample& x, const Sample& y) {
    if (!(x.grid() == y.grid()))
        throw std::invalid_argument("samples live on different grids");
    if (x.n() != y.n())
        throw std::invalid_argument("samples have different lengths");
}

bool leq_componentwise(const Sample& x, const Sample& y) {
    require_comparable(x, y);
    auto a = x.indices();
    auto b = y.indices();
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

bool less_componentwise(const Sample& x, const Sample& y) {
    return leq_componentwise(x, y) && !(x == y);
}

}  // namespace lcb
