#pragma once
// Probability distributions on a support grid and the probabilities they
// assign to samples and sets of samples.

#include <span>
#include <vector>

#include "lcb/kernels/poly_eval.hpp"
#include "lcb/orders.hpp"
#include "lcb/support.hpp"

namespace lcb {

/// A point of the probability simplex over the grid's m support points.
class Distribution {
public:
    /// Throws std::invalid_argument unless mass has m non-negative entries
    /// summing to 1 within 1e-12.
    Distribution(SupportGrid grid, std::vector<double> mass);

    static Distribution point_mass(const SupportGrid& grid, int i);
    static Distribution uniform(const SupportGrid& grid);

    const SupportGrid& grid() const noexcept { return grid_; }
    std::span<const double> mass() const noexcept { return mass_; }
    double mass_at(int i) const { return mass_.at(static_cast<std::size_t>(i)); }
    /// P[X <= point(i)].
    double cdf_at(int i) const;

private:
    SupportGrid grid_;
    std::vector<double> mass_;
};

/// Sorted set of grid indices (a subset C of the support).
class SupportSet {
public:
    SupportSet() = default;
    /// Sorts and deduplicates; throws std::out_of_range for negative indices.
    explicit SupportSet(std::vector<int> indices);

    static SupportSet full(const SupportGrid& grid);

    std::span<const int> indices() const noexcept { return indices_; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    bool contains(int i) const noexcept;

    bool operator==(const SupportSet&) const = default;

private:
    std::vector<int> indices_;
};

double mean(const Distribution& F);

/// Probability that n i.i.d. draws from F form the multiset x.
double sample_prob(const Distribution& F, const Sample& x);

/// Sum of sample_prob over the members of U.
double prob_upper_set(const Distribution& F, const UpperSet& U);
double prob_of_samples(const Distribution& F, std::span<const Sample> samples);

/// C ∪ {0} ∪ {i+1 : i in C, i != m-1}.
SupportSet augment(const SupportSet& C, const SupportGrid& grid);

/// True iff F puts no mass (beyond 1e-15) outside C.
bool restrict_to(const Distribution& F, const SupportSet& C);

/// Pointwise and cumulative agreement on every index of C (absolute tolerance 1e-12).
bool agree_on(const Distribution& G, const Distribution& H, const SupportSet& C);

/// Builds H supported on augment(C) that agrees with G pointwise and
/// cumulatively on C: mass below min C moves to s_min, mass strictly between
/// consecutive elements of C moves to the successor of the lower one, and
/// mass above max C moves to the successor of max C.
Distribution transfer_to_augmented(const Distribution& G, const SupportSet& C);

struct LipschitzCheck {
    double lhs;   // |mean(u) - mean(v)|
    double rhs;   // sqrt(m) * max_i |S_i| * ||u - v||_2
    bool holds;   // lhs <= rhs + 1e-12
};

/// |E[u] - E[v]| <= sqrt(m) max|S_i| ||u - v||_2. max|S_i| replaces S_max so
/// the inequality also holds on grids with negative support points.
LipschitzCheck mean_lipschitz(const Distribution& u, const Distribution& v);
bool mean_lipschitz_check(const Distribution& u, const Distribution& v);

/// Coefficient n! / prod_j c_j! for the index counts of x.
double multinomial_coefficient(const Sample& x);

/// Probability polynomial of a set of samples in the masses of the points in
/// `support`. Samples using a point outside `support` contribute nothing
/// (their probability is zero for every distribution restricted to it).
kernels::MonomialTable probability_polynomial(std::span<const Sample> samples, const SupportSet& support);

}  // namespace lcb
