#pragma once
// Closed-form bound values at homogeneous samples.

#include "lcb/support.hpp"

namespace lcb {

struct Bracket {
    double lo;
    double hi;
    /// True when the upper end would need S_{i+1} beyond the top of the grid
    /// and S_max was used instead. At that index the high lexicographic upper
    /// set is the single sample, so the actual pessimal bound is the pointwise
    /// optimum, which lies above `hi` whenever n > 1.
    bool clamped_top = false;
};

/// S_min (1 - alpha^{1/n}) + S_i alpha^{1/n}: the largest value any valid
/// bound can assign to the homogeneous sample (S_i, ..., S_i).
/// Throws std::invalid_argument for alpha outside [0, 1) or n < 1, and
/// std::out_of_range for a bad index.
double optimal_pointwise_homogeneous(const SupportGrid& grid, int i, int n, double alpha);

/// Pessimal bound for the low lexicographic order at a homogeneous sample.
/// It coincides with the pointwise optimum.
double lexi_low_homogeneous(const SupportGrid& grid, int i, int n, double alpha);

/// Interval containing the pessimal bound for the high lexicographic order at
/// the homogeneous sample S_i, i >= 1:
///   lo = S_min (1-alpha)^{1/n} + S_i     (1 - (1-alpha)^{1/n})
///   hi = S_min (1-alpha)^{1/n} + S_{i+1} (1 - (1-alpha)^{1/n})
/// with S_{i+1} replaced by S_max at the top index.
Bracket lexi_high_homogeneous_bracket(const SupportGrid& grid, int i, int n, double alpha);

}  // namespace lcb
