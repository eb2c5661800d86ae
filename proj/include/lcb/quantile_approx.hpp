#pragma once
// Approximate pessimal bound for the i-th quantile preorder.
//
// The search runs over the two-atom family H_p with mass p at x_(i) and
// 1 - p at S_min. Order statistics are ascending, so y_(i) >= x_(i) holds
// exactly when at least n - i + 1 draws land on x_(i). The critical mass p*
// where that probability reaches alpha is located by bisection and the bound
// is the mean of H_{p_hat}. The result is within
// c + epsilon of the exact pessimal bound, c being the grid spacing.

#include <string_view>

#include "lcb/support.hpp"

namespace lcb {

/// P[Binomial(n, p) <= k]. k < 0 gives 0 and k >= n gives 1.
/// Throws std::invalid_argument for p outside [0, 1] or n < 0.
double binom_cdf(int k, int n, double p);

/// How the tail probability of the search event is formed.
enum class TailConvention {
    /// 1 - Bin(n-i; n, p): at least n-i+1 draws, the event y_(i) >= x_(i).
    OrderStatistic,
    /// 1 - Bin(i-1; n, p): at least i draws. Matches the order statistic
    /// event only when i = n - i + 1.
    AtLeastI,
    /// 1 - Bin(n-i-1; n, p): at least n-i draws.
    PaperLiteral,
};

std::string_view tail_convention_name(TailConvention convention) noexcept;

/// Probability of the search event for the i-th order statistic when the
/// atom at x_(i) has mass p. Throws std::invalid_argument unless 1 <= i <= n.
double tail_prob_V(int i, int n, double p, TailConvention convention = TailConvention::OrderStatistic);

struct QuantileBoundResult {
    double p_hat = 0.0;
    double bound = 0.0;
    double epsilon = 0.0;
    double delta = 0.0;   // bisection stopping width
    double c = 0.0;       // grid spacing (s_max - s_min) / (m - 1)
    int iterations = 0;
    int quantile = 0;
    double alpha = 0.0;
    TailConvention convention = TailConvention::OrderStatistic;
};

/// Runs the bisection for the i-th order statistic of x.
/// Throws std::invalid_argument for epsilon <= 0, alpha outside [0, 1) or
/// i outside [1, n].
QuantileBoundResult quantile_bound(const Sample& x, int i, double alpha, double epsilon,
                                   TailConvention convention = TailConvention::OrderStatistic);

}  // namespace lcb
