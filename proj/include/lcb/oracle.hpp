#pragma once
// Brute-force pessimal bound: the smallest mean among distributions that give
// an upper set probability at least alpha.
//
// The search walks a simplex grid over the (possibly refined) support, keeps
// a handful of well-separated feasible incumbents, refines each with a local
// grid search whose step halves down to the configured resolution (plus
// refine_passes further halvings), and finally slides mass between pairs of
// support points along the constraint boundary. Every reported witness is
// feasible, so the value never undercuts the true minimum by more than
// rounding; the overshoot is bounded by 2 * final_step * range.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lcb/dist.hpp"
#include "lcb/orders.hpp"
#include "lcb/support.hpp"

namespace lcb {

class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, double best_prob)
        : std::runtime_error(what), best_prob_(best_prob) {}
    /// Largest upper-set probability the search reached.
    double best_prob() const noexcept { return best_prob_; }

private:
    double best_prob_;
};

enum class ConstraintMode {
    /// P_F[upper set] >= alpha (the closure of the strict constraint).
    GeqAlpha,
};

struct OracleConfig {
    double resolution = 1e-3;
    int refine_passes = 3;
    ConstraintMode constraint = ConstraintMode::GeqAlpha;
    std::optional<SupportSet> support_override;
    /// Upper limit on the number of points in the initial simplex grid; the
    /// initial step is coarser than `resolution` when the full grid would exceed it.
    std::size_t coarse_budget = 250'000;
    /// Number of separated incumbents carried into local refinement.
    int starts = 6;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct OracleResult {
    double value = 0.0;
    Distribution witness;
    double constraint_prob = 0.0;
    SupportSet support_used;
    double final_step = 0.0;
    std::size_t evaluations = 0;
};

/// Support set that suffices for the order at x: augment({x_(i)}) for
/// Quantile(i), augment(distinct values of x) for LexiLow and Pointwise, and
/// the full grid otherwise.
SupportSet refined_support(const Sample& x, const Preorder& order);

/// Minimum mean over distributions supported on `support` with
/// P[members] >= alpha. Throws InfeasibleError when no such distribution is found.
OracleResult minimize_mean(const SupportGrid& grid, std::span<const Sample> members, double alpha,
                           const SupportSet& support, const OracleConfig& cfg);

/// Pessimal bound of x under `order` on refined_support(x, order), or on
/// cfg.support_override when set.
OracleResult pessimal_bound_oracle(const Sample& x, const Preorder& order, double alpha,
                                   const OracleConfig& cfg = {});

/// Same, reusing an already enumerated sample space.
OracleResult pessimal_bound_oracle(const Sample& x, const Preorder& order, double alpha,
                                   const OracleConfig& cfg, const std::vector<Sample>& omega);

/// Pessimal bound for the singleton upper set {x}.
OracleResult pointwise_bound_oracle(const Sample& x, double alpha, const OracleConfig& cfg = {});

}  // namespace lcb
