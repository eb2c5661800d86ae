#include "lcb/quantile_approx.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcb {

double binom_cdf(int k, int n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial probability must lie in [0, 1]");
    if (n < 0) throw std::invalid_argument("binomial size must be non-negative");
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;
    // P[X <= k] = 1 - I_p(k+1, n-k).
    return boost::math::ibetac(static_cast<double>(k + 1), static_cast<double>(n - k), p);
}

std::string_view tail_convention_name(TailConvention convention) noexcept {
    switch (convention) {
        case TailConvention::OrderStatistic:
            return "order-statistic";
        case TailConvention::AtLeastI:
            return "at-least-i";
        case TailConvention::PaperLiteral:
            return "paper-literal";
    }
    return "unknown";
}

double tail_prob_V(int i, int n, double p, TailConvention convention) {
    if (i < 1 || i > n) throw std::invalid_argument("tail index must lie in [1, n]");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial probability must lie in [0, 1]");
    int k = n - i;
    if (convention == TailConvention::AtLeastI) k = i - 1;
    if (convention == TailConvention::PaperLiteral) k = n - i - 1;
    if (k < 0) return 1.0;
    if (k >= n) return 0.0;
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    // 1 - P[X <= k] = I_p(k+1, n-k), evaluated directly to avoid cancellation.
    return boost::math::ibeta(static_cast<double>(k + 1), static_cast<double>(n - k), p);
}

QuantileBoundResult quantile_bound(const Sample& x, int i, double alpha, double epsilon,
                                   TailConvention convention) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
    if (i < 1 || i > x.n()) throw std::invalid_argument("quantile index must lie in [1, n]");

    const auto& grid = x.grid();
    const double atom = grid.point(x.order_stat(i));
    const double lift = atom - grid.s_min();

    QuantileBoundResult r;
    r.epsilon = epsilon;
    r.alpha = alpha;
    r.quantile = i;
    r.convention = convention;
    r.c = grid.spacing();
    // A width-delta error in p moves the mean by at most delta * lift <= epsilon.
    r.delta = epsilon / std::max(lift, epsilon);

    double a = 0.0;
    double b = 1.0;
    while (b - a > r.delta) {
        const double mid = a + (b - a) / 2.0;
        if (tail_prob_V(i, x.n(), mid, convention) < alpha)
            a = mid;
        else
            b = mid;
        ++r.iterations;
    }
    r.p_hat = a;
    r.bound = grid.s_min() * (1.0 - a) + atom * a;
    return r;
}

}  // namespace lcb
