#pragma once
// Coverage evaluation and exhaustive verification campaigns.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lcb/dist.hpp"
#include "lcb/oracle.hpp"
#include "lcb/orders.hpp"
#include "lcb/support.hpp"

namespace lcb {

/// Portable seeded stream: std::mt19937_64 keyed by (seed, stream) through
/// std::seed_seq, with doubles built from the top 53 bits. Trial t of a
/// campaign always uses stream t, so results do not depend on scheduling.
class SeededStream {
public:
    SeededStream(std::uint64_t seed, std::uint64_t stream);
    double uniform();  // [0, 1)
    std::uint64_t next() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

/// Uniform draw from the simplex over the grid's support points.
Distribution random_distribution(const SupportGrid& grid, SeededStream& rng);

/// Every distribution whose masses are multiples of `step` (1/step must be an integer).
std::vector<Distribution> simplex_sweep(const SupportGrid& grid, double step);

/// A lower confidence bound as a function of the sample.
struct BoundFn {
    std::string name;
    double alpha = 0.0;
    std::function<double(const Sample&)> eval;
};

/// The constant bound s_min.
BoundFn constant_bound(const SupportGrid& grid);

/// Values of `fn` precomputed on every sample in omega; lookups outside omega throw.
BoundFn tabulated_bound(std::string name, double alpha, const std::vector<Sample>& omega,
                        const std::function<double(const Sample&)>& fn);

/// Pessimal-bound oracle under the order named by `selector`
/// (lexi-low, lexi-high, quantile:<i>, pointwise), tabulated over the sample space.
BoundFn oracle_bound(const SupportGrid& grid, int n, const std::string& selector, double alpha,
                     const OracleConfig& cfg = {});

/// Quantile bisection bound for the i-th order statistic.
BoundFn quantile_approx_bound(int i, double alpha, double epsilon);

enum class CoverageMode { Exact, MonteCarlo };

struct CoverageReport {
    std::string method;
    double alpha = 0.0;
    int n = 0;
    Distribution distribution;
    double coverage = 0.0;
    CoverageMode mode = CoverageMode::Exact;
    std::size_t trials = 0;    // Monte Carlo only
    std::uint64_t seed = 0;    // Monte Carlo only
};

/// Sum of sample_prob(F, x) over samples with bound(x) <= mean(F) + 1e-12.
CoverageReport exact_coverage(const Distribution& F, const BoundFn& bound, int n);

/// Fraction of `trials` simulated n-samples with bound <= mean(F).
/// Throws std::invalid_argument for trials < 1.
CoverageReport mc_coverage(const Distribution& F, const BoundFn& bound, int n, std::size_t trials,
                           std::uint64_t seed);

struct VerifyReport {
    std::string theorem;
    std::size_t instances_checked = 0;
    std::vector<std::string> failures;
    double tolerance = 0.0;
    std::size_t skipped = 0;   // candidate orders filtered out as non-monotone
    double max_violation = 0.0;  // largest amount by which a value check exceeded exact equality/ordering

    bool pass() const noexcept { return failures.empty(); }
};

/// 2 * resolution * (s_max - s_min).
double default_value_tolerance(const SupportGrid& grid, const OracleConfig& cfg);

/// Upper-set inclusions and pessimal-bound chains between the lexicographic
/// orders and every monotone total order. When `candidates` is given, the
/// non-monotone ones are skipped; otherwise all monotone linear extensions of
/// the sample space are used.
VerifyReport verify_sandwich(const SupportGrid& grid, int n, double alpha, const OracleConfig& cfg,
                             std::optional<double> tolerance = std::nullopt,
                             const std::optional<std::vector<Preorder>>& candidates = std::nullopt);

/// x <_R y implies B(x) <= B(y) + tol, and x ~_R y implies |B(x) - B(y)| <= tol.
/// Throws std::invalid_argument if a sample of omega has no value.
VerifyReport verify_consistency(const Preorder& order, const std::map<Sample, double>& bound_values,
                                const std::vector<Sample>& omega, double tolerance);

/// Random G, H = transfer_to_augmented(G, C) with C the support points the
/// order looks at; checks that the upper-set probabilities agree within `tolerance`.
/// Throws std::invalid_argument for orders other than LexiLow and Quantile.
VerifyReport verify_agreement(const Sample& x, const Preorder& order, int trials, std::uint64_t seed,
                              double tolerance = 1e-12);

/// Oracle on refined_support equals the full-grid oracle within `tolerance`
/// for LexiLow and every Quantile(i) at every sample.
VerifyReport verify_refinement(const SupportGrid& grid, int n, double alpha, const OracleConfig& cfg,
                               std::optional<double> tolerance = std::nullopt);

/// Seeded random pairs of distributions checked against mean_lipschitz_check.
VerifyReport verify_mean_lipschitz(const SupportGrid& grid, int pairs, std::uint64_t seed);

/// exact_coverage(F, bound) >= 1 - alpha - 1e-9 for every F in the sweep.
VerifyReport verify_coverage_validity(const SupportGrid& grid, int n, const BoundFn& bound, double step);

}  // namespace lcb
