#pragma once
// Evenly spaced discrete support grids and samples drawn on them.
//
// A sample is stored as its sorted vector of grid indices, so the k-th order
// statistic is simply idx[k-1] and equality of support values is integer
// equality.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcb {

/// Thrown when the number of samples to enumerate exceeds the desk-scale guard.
class EnumerationLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest sample space (number of multisets) the enumeration-based routines accept.
inline constexpr std::uint64_t kEnumerationGuard = 1'000'000;

/// The grid s_min + i (s_max - s_min) / (m - 1), i = 0..m-1.
class SupportGrid {
public:
    SupportGrid(double s_min, double s_max, int m);

    double s_min() const noexcept { return s_min_; }
    double s_max() const noexcept { return s_max_; }
    int size() const noexcept { return m_; }
    double range() const noexcept { return s_max_ - s_min_; }
    double spacing() const noexcept { return range() / static_cast<double>(m_ - 1); }

    /// Support value at index i. Throws std::out_of_range.
    double point(int i) const;

    /// All m support values in increasing order.
    std::vector<double> points() const;

    /// Index of the grid point equal to v (relative tolerance 1e-9), or -1.
    int index_of(double v) const noexcept;

    bool operator==(const SupportGrid&) const = default;

private:
    double s_min_;
    double s_max_;
    int m_;
};

/// Number of multisets of size n over m symbols, C(m+n-1, n), saturating at UINT64_MAX.
std::uint64_t multiset_count(int m, int n) noexcept;

/// A sorted multiset of n grid indices.
class Sample {
public:
    /// Sorts idx; throws std::invalid_argument on empty input and
    /// std::out_of_range for indices outside [0, m-1].
    Sample(SupportGrid grid, std::vector<int> idx);

    const SupportGrid& grid() const noexcept { return grid_; }
    int n() const noexcept { return static_cast<int>(idx_.size()); }
    std::span<const int> indices() const noexcept { return idx_; }

    /// k-th order statistic as a grid index, 1-based k.
    int order_stat(int k) const;

    std::vector<double> values() const;

    /// True when every component is the same support point.
    bool is_homogeneous() const noexcept { return idx_.front() == idx_.back(); }

    /// Distinct indices occurring in the sample, increasing.
    std::vector<int> distinct_indices() const;

    std::string to_string() const;

    bool operator==(const Sample& o) const noexcept { return idx_ == o.idx_ && grid_ == o.grid_; }
    /// Canonical key order: by n, then lexicographic on indices.
    std::strong_ordering operator<=>(const Sample& o) const noexcept;

private:
    SupportGrid grid_;
    std::vector<int> idx_;
};

double grid_point(const SupportGrid& grid, int i);

/// Resolves every value to a grid index and returns the canonical sample.
/// Throws std::invalid_argument for an empty list or an off-grid value.
Sample make_sample(const SupportGrid& grid, std::span<const double> values);

Sample homogeneous_sample(const SupportGrid& grid, int i, int n);

/// x <= y in every order statistic. Throws std::invalid_argument on mismatched grid or n.
bool leq_componentwise(const Sample& x, const Sample& y);
bool less_componentwise(const Sample& x, const Sample& y);

}  // namespace lcb
