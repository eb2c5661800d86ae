#include "lcb/closedform.hpp"

#include <cmath>
#include <stdexcept>

namespace lcb {

namespace {

void check_args(const SupportGrid& grid, int i, int n, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    if (i < 0 || i >= grid.size()) throw std::out_of_range("support index outside the grid");
}

double two_atom_mean(double low, double high, double weight_high) {
    return low * (1.0 - weight_high) + high * weight_high;
}

}  // namespace

double optimal_pointwise_homogeneous(const SupportGrid& grid, int i, int n, double alpha) {
    check_args(grid, i, n, alpha);
    const double root = std::pow(alpha, 1.0 / static_cast<double>(n));
    return two_atom_mean(grid.s_min(), grid.point(i), root);
}

double lexi_low_homogeneous(const SupportGrid& grid, int i, int n, double alpha) {
    return optimal_pointwise_homogeneous(grid, i, n, alpha);
}

Bracket lexi_high_homogeneous_bracket(const SupportGrid& grid, int i, int n, double alpha) {
    check_args(grid, i, n, alpha);
    if (i == 0) throw std::invalid_argument("the high lexicographic bracket needs i >= 1");
    // Weight on the upper atom is 1 - (1-alpha)^{1/n}.
    const double w = 1.0 - std::pow(1.0 - alpha, 1.0 / static_cast<double>(n));
    const bool top = i == grid.size() - 1;
    Bracket b;
    b.lo = two_atom_mean(grid.s_min(), grid.point(i), w);
    b.hi = two_atom_mean(grid.s_min(), top ? grid.s_max() : grid.point(i + 1), w);
    b.clamped_top = top;
    return b;
}

}  // namespace lcb
