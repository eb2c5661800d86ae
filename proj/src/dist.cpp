#include "lcb/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lcb {

namespace {
constexpr double kMassTol = 1e-12;
constexpr double kZeroMass = 1e-15;
}  // namespace

Distribution::Distribution(SupportGrid grid, std::vector<double> mass) : grid_(grid), mass_(std::move(mass)) {
    if (mass_.size() != static_cast<std::size_t>(grid_.size()))
        throw std::invalid_argument("distribution needs one mass per support point");
    double total = 0.0;
    for (double w : mass_) {
        if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("masses must be finite and non-negative");
        total += w;
    }
    if (std::abs(total - 1.0) > kMassTol)
        throw std::invalid_argument("masses must sum to 1 (got " + std::to_string(total) + ")");
}

Distribution Distribution::point_mass(const SupportGrid& grid, int i) {
    std::vector<double> mass(static_cast<std::size_t>(grid.size()), 0.0);
    mass.at(static_cast<std::size_t>(i)) = 1.0;
    return Distribution(grid, std::move(mass));
}

Distribution Distribution::uniform(const SupportGrid& grid) {
    return Distribution(grid, std::vector<double>(static_cast<std::size_t>(grid.size()),
                                                  1.0 / static_cast<double>(grid.size())));
}

double Distribution::cdf_at(int i) const {
    if (i < 0 || i >= grid_.size()) throw std::out_of_range("support index outside the grid");
    double c = 0.0;
    for (int k = 0; k <= i; ++k) c += mass_[static_cast<std::size_t>(k)];
    return c;
}

SupportSet::SupportSet(std::vector<int> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    if (!indices_.empty() && indices_.front() < 0) throw std::out_of_range("negative support index");
}

SupportSet SupportSet::full(const SupportGrid& grid) {
    std::vector<int> all(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return SupportSet(std::move(all));
}

bool SupportSet::contains(int i) const noexcept {
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

double mean(const Distribution& F) {
    double mu = 0.0;
    for (int i = 0; i < F.grid().size(); ++i) mu += F.mass_at(i) * F.grid().point(i);
    return mu;
}

double multinomial_coefficient(const Sample& x) {
    // prod over runs of C(seen + run, run), exact for desk-scale n.
    double coef = 1.0;
    int seen = 0;
    auto idx = x.indices();
    for (std::size_t k = 0; k < idx.size();) {
        std::size_t run = 1;
        while (k + run < idx.size() && idx[k + run] == idx[k]) ++run;
        for (std::size_t r = 1; r <= run; ++r)
            coef = coef * static_cast<double>(seen + static_cast<int>(r)) / static_cast<double>(r);
        seen += static_cast<int>(run);
        k += run;
    }
    return coef;
}

double sample_prob(const Distribution& F, const Sample& x) {
    if (!(F.grid() == x.grid())) throw std::invalid_argument("sample and distribution use different grids");
    double p = multinomial_coefficient(x);
    for (int i : x.indices()) p *= F.mass_at(i);
    return p;
}

double prob_of_samples(const Distribution& F, std::span<const Sample> samples) {
    double total = 0.0;
    for (const auto& y : samples) total += sample_prob(F, y);
    return std::clamp(total, 0.0, 1.0);
}

double prob_upper_set(const Distribution& F, const UpperSet& U) { return prob_of_samples(F, U.members); }

SupportSet augment(const SupportSet& C, const SupportGrid& grid) {
    std::vector<int> out{0};
    for (int i : C.indices()) {
        if (i >= grid.size()) throw std::out_of_range("support index outside the grid");
        out.push_back(i);
        if (i != grid.size() - 1) out.push_back(i + 1);
    }
    return SupportSet(std::move(out));
}

bool restrict_to(const Distribution& F, const SupportSet& C) {
    for (int i = 0; i < F.grid().size(); ++i)
        if (!C.contains(i) && F.mass_at(i) > kZeroMass) return false;
    return true;
}

bool agree_on(const Distribution& G, const Distribution& H, const SupportSet& C) {
    if (!(G.grid() == H.grid())) throw std::invalid_argument("distributions use different grids");
    for (int i : C.indices()) {
        if (std::abs(G.mass_at(i) - H.mass_at(i)) > kMassTol) return false;
        if (std::abs(G.cdf_at(i) - H.cdf_at(i)) > kMassTol) return false;
    }
    return true;
}

Distribution transfer_to_augmented(const Distribution& G, const SupportSet& C) {
    const auto& grid = G.grid();
    const int m = grid.size();
    std::vector<double> h(static_cast<std::size_t>(m), 0.0);
    if (C.empty()) {
        h[0] = 1.0;
        return Distribution(grid, std::move(h));
    }
    auto cs = C.indices();
    for (int k = 0; k < m; ++k) {
        const double w = G.mass_at(k);
        if (w == 0.0) continue;
        int target = 0;
        if (C.contains(k)) {
            target = k;
        } else if (k < cs.front()) {
            target = 0;
        } else {
            // Largest element of C below k; its successor lies in (c, next c].
            auto it = std::upper_bound(cs.begin(), cs.end(), k);
            target = *(it - 1) + 1;
        }
        h[static_cast<std::size_t>(target)] += w;
    }
    return Distribution(grid, std::move(h));
}

LipschitzCheck mean_lipschitz(const Distribution& u, const Distribution& v) {
    if (!(u.grid() == v.grid())) throw std::invalid_argument("distributions use different grids");
    const auto& grid = u.grid();
    double sq = 0.0;
    double max_abs = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const double d = u.mass_at(i) - v.mass_at(i);
        sq += d * d;
        max_abs = std::max(max_abs, std::abs(grid.point(i)));
    }
    LipschitzCheck r{};
    r.lhs = std::abs(mean(u) - mean(v));
    r.rhs = std::sqrt(static_cast<double>(grid.size())) * max_abs * std::sqrt(sq);
    r.holds = r.lhs <= r.rhs + 1e-12;
    return r;
}

bool mean_lipschitz_check(const Distribution& u, const Distribution& v) { return mean_lipschitz(u, v).holds; }

kernels::MonomialTable probability_polynomial(std::span<const Sample> samples, const SupportSet& support) {
    kernels::MonomialTable poly;
    poly.vars = static_cast<int>(support.size());
    poly.degree = samples.empty() ? 0 : samples.front().n();
    if (poly.degree > std::numeric_limits<std::uint8_t>::max())
        throw std::invalid_argument("sample size too large for the polynomial kernel");
    auto sup = support.indices();
    std::vector<std::uint8_t> row(support.size());
    for (const auto& y : samples) {
        std::fill(row.begin(), row.end(), std::uint8_t{0});
        bool inside = true;
        for (int i : y.indices()) {
            auto it = std::lower_bound(sup.begin(), sup.end(), i);
            if (it == sup.end() || *it != i) {
                inside = false;
                break;
            }
            ++row[static_cast<std::size_t>(it - sup.begin())];
        }
        if (!inside) continue;
        poly.coef.push_back(multinomial_coefficient(y));
        poly.exps.insert(poly.exps.end(), row.begin(), row.end());
    }
    return poly;
}

}  // namespace lcb
