#include "lcb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lcb/kernels/poly_eval.hpp"

namespace lcb {

void OracleConfig::validate() const {
    if (!(resolution > 0.0 && resolution <= 1.0)) throw std::invalid_argument("oracle resolution must lie in (0, 1]");
    if (refine_passes < 0) throw std::invalid_argument("refine_passes must be >= 0");
    if (coarse_budget < 1) throw std::invalid_argument("coarse_budget must be positive");
    if (starts < 1) throw std::invalid_argument("starts must be >= 1");
}

SupportSet refined_support(const Sample& x, const Preorder& order) {
    const auto& grid = x.grid();
    if (const auto* q = std::get_if<order::Quantile>(&order.kind()))
        return augment(SupportSet({x.order_stat(q->i)}), grid);
    if (order.is<order::LexiLow>() || order.is<order::Pointwise>())
        return augment(SupportSet(x.distinct_indices()), grid);
    return SupportSet::full(grid);
}

namespace {

using Point = std::vector<double>;

constexpr std::size_t kBatch = 4096;
constexpr int kMaxMovesPerLevel = 400;
constexpr int kPolishRounds = 60;
constexpr int kBisectionSteps = 64;
constexpr int kSplitLevels = 8;

struct Candidate {
    Point mass;
    double mean = std::numeric_limits<double>::infinity();
    double prob = 0.0;
};

// Smaller mean first; ties go to the lexicographically smaller mass vector.
bool better(const Candidate& a, const Candidate& b) {
    if (a.mean != b.mean) return a.mean < b.mean;
    return std::lexicographical_compare(a.mass.begin(), a.mass.end(), b.mass.begin(), b.mass.end());
}

double linf(const Point& a, const Point& b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
    return d;
}

// C(k + d - 1, d - 1) saturating at SIZE_MAX.
std::size_t composition_count(std::size_t k, std::size_t d) {
    double c = 1.0;
    for (std::size_t r = 1; r < d; ++r) c = c * static_cast<double>(k + r) / static_cast<double>(r);
    return c >= static_cast<double>(std::numeric_limits<std::size_t>::max()) ? std::numeric_limits<std::size_t>::max()
                                                                            : static_cast<std::size_t>(std::llround(c));
}

class SimplexSearch {
public:
    SimplexSearch(const SupportGrid& grid, std::span<const Sample> members, double alpha, const SupportSet& support,
                  const OracleConfig& cfg)
        : alpha_(alpha), cfg_(cfg), d_(static_cast<int>(support.size())),
          poly_(probability_polynomial(members, support)), batch_(d_, kBatch), out_(kBatch) {
        for (int i : support.indices()) values_.push_back(grid.point(i));
    }

    Candidate run() {
        if (d_ == 1) {
            Candidate c = make({1.0});
            if (!feasible(c)) throw infeasible(c.prob);
            final_step_ = 0.0;
            return c;
        }
        auto [starts, best_prob] = coarse_scan();
        if (starts.empty()) {
            auto rescue = climb_probability(best_prob);
            if (!feasible(rescue)) throw infeasible(rescue.prob);
            starts.push_back(rescue);
        }
        Candidate best;
        for (auto& s : starts) {
            Candidate c = refine(s);
            polish(c);
            if (better(c, best)) best = c;
        }
        return best;
    }

    double final_step() const noexcept { return final_step_; }
    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    bool feasible(const Candidate& c) const { return c.prob >= alpha_; }

    InfeasibleError infeasible(double best_prob) const {
        std::ostringstream os;
        os << "no distribution on the support reaches upper-set probability " << alpha_ << " (best found "
           << best_prob << ")";
        return InfeasibleError(os.str(), best_prob);
    }

    double mean_of(const Point& u) const {
        double mu = 0.0;
        for (int j = 0; j < d_; ++j) mu += u[static_cast<std::size_t>(j)] * values_[static_cast<std::size_t>(j)];
        return mu;
    }

    Candidate make(Point u) {
        Candidate c;
        c.prob = eval_one(u);
        c.mean = mean_of(u);
        c.mass = std::move(u);
        return c;
    }

    double eval_one(const Point& u) {
        batch_.count = 1;
        for (int j = 0; j < d_; ++j) batch_.coord(j)[0] = u[static_cast<std::size_t>(j)];
        kernels::eval_polynomial(poly_, batch_, out_);
        ++evaluations_;
        return out_[0];
    }

    // Evaluates the pending batch and hands each point to `visit`.
    template <class Visit>
    void flush(std::vector<Point>& pending, Visit&& visit) {
        if (pending.empty()) return;
        batch_.count = pending.size();
        for (std::size_t p = 0; p < pending.size(); ++p)
            for (int j = 0; j < d_; ++j) batch_.coord(j)[p] = pending[p][static_cast<std::size_t>(j)];
        kernels::eval_polynomial(poly_, batch_, out_);
        evaluations_ += pending.size();
        for (std::size_t p = 0; p < pending.size(); ++p) visit(pending[p], out_[p]);
        pending.clear();
    }

    std::pair<std::vector<Candidate>, Candidate> coarse_scan() {
        const auto d = static_cast<std::size_t>(d_);
        std::size_t k = static_cast<std::size_t>(std::ceil(1.0 / cfg_.resolution - 1e-9));
        k = std::max<std::size_t>(k, 1);
        if (composition_count(k, d) > cfg_.coarse_budget) {
            // Largest k whose grid fits the budget.
            std::size_t lo = 1, hi = k;
            while (hi - lo > 1) {
                const std::size_t mid = lo + (hi - lo) / 2;
                (composition_count(mid, d) > cfg_.coarse_budget ? hi : lo) = mid;
            }
            k = lo;
        }
        step_ = 1.0 / static_cast<double>(k);
        const double separation = 2.0 * step_;

        std::vector<Candidate> kept;
        Candidate top_prob;
        top_prob.prob = -1.0;

        auto visit = [&](const Point& u, double prob) {
            if (prob > top_prob.prob) {
                top_prob.mass = u;
                top_prob.prob = prob;
                top_prob.mean = mean_of(u);
            }
            if (prob < alpha_) return;
            Candidate c{u, mean_of(u), prob};
            for (auto& e : kept) {
                if (linf(e.mass, c.mass) <= separation) {
                    if (better(c, e)) e = std::move(c);
                    return;
                }
            }
            if (kept.size() < static_cast<std::size_t>(cfg_.starts)) {
                kept.push_back(std::move(c));
                return;
            }
            auto worst = std::max_element(kept.begin(), kept.end(), better);
            if (better(c, *worst)) *worst = std::move(c);
        };

        // Compositions of k into d parts in lexicographic order.
        std::vector<std::size_t> parts(d, 0);
        parts[d - 1] = k;
        std::vector<Point> pending;
        pending.reserve(kBatch);
        const double inv = 1.0 / static_cast<double>(k);
        while (true) {
            Point u(d);
            for (std::size_t j = 0; j < d; ++j) u[j] = static_cast<double>(parts[j]) * inv;
            pending.push_back(std::move(u));
            if (pending.size() == kBatch) flush(pending, visit);
            if (parts[d - 1] > 0) {
                parts[d - 2] += 1;
                parts[d - 1] -= 1;
                continue;
            }
            // Last slot empty: bump the slot left of the rightmost non-zero one
            // and return the remainder to the last slot.
            std::size_t r = d - 2;
            while (r > 0 && parts[r] == 0) --r;
            if (r == 0) break;
            const std::size_t carry = parts[r];
            parts[r] = 0;
            parts[r - 1] += 1;
            parts[d - 1] = carry - 1;
        }
        flush(pending, visit);

        std::sort(kept.begin(), kept.end(), better);
        return {std::move(kept), std::move(top_prob)};
    }

    const std::vector<std::vector<int>>& offsets() {
        if (!offsets_.empty()) return offsets_;
        const int free = d_ - 1;
        const int radius = d_ <= 5 ? 2 : 1;
        std::vector<int> z(static_cast<std::size_t>(free), -radius);
        while (true) {
            int sum = 0;
            bool zero = true;
            for (int v : z) {
                sum += v;
                zero = zero && v == 0;
            }
            if (!zero) {
                std::vector<int> full(z);
                full.push_back(-sum);
                offsets_.push_back(std::move(full));
            }
            int pos = 0;
            while (pos < free && z[static_cast<std::size_t>(pos)] == radius) z[static_cast<std::size_t>(pos++)] = -radius;
            if (pos == free) break;
            ++z[static_cast<std::size_t>(pos)];
        }
        return offsets_;
    }

    // Local grid descent around `center` at the current step, repeated while it improves.
    Candidate descend(Candidate center, double h) {
        const auto& offs = offsets();
        std::vector<Point> pending;
        pending.reserve(kBatch);
        for (int move = 0; move < kMaxMovesPerLevel; ++move) {
            Candidate best = center;
            auto visit = [&](const Point& u, double prob) {
                if (prob < alpha_) return;
                Candidate c{u, mean_of(u), prob};
                if (better(c, best)) best = std::move(c);
            };
            for (const auto& z : offs) {
                Point u(center.mass);
                bool ok = true;
                for (std::size_t j = 0; j < u.size(); ++j) {
                    u[j] += h * static_cast<double>(z[j]);
                    if (u[j] < -1e-12) {
                        ok = false;
                        break;
                    }
                    if (u[j] < 0.0) u[j] = 0.0;
                }
                if (!ok) continue;
                pending.push_back(std::move(u));
                if (pending.size() == kBatch) flush(pending, visit);
            }
            flush(pending, visit);
            if (!better(best, center)) break;
            center = std::move(best);
        }
        return center;
    }

    Candidate refine(Candidate c) {
        double h = step_;
        c = descend(std::move(c), h);
        while (h > cfg_.resolution * (1.0 + 1e-9)) {
            h /= 2.0;
            c = descend(std::move(c), h);
        }
        for (int pass = 0; pass < cfg_.refine_passes; ++pass) {
            h /= 2.0;
            c = descend(std::move(c), h);
        }
        final_step_ = h;
        return c;
    }

    // Moves mass from a higher support point to a lower one for as long as
    // the constraint holds, over all pairs, until nothing improves.
    void polish(Candidate& c) {
        const auto d = static_cast<std::size_t>(d_);
        for (int round = 0; round < kPolishRounds; ++round) {
            bool improved = false;
            for (std::size_t hi = d; hi-- > 1;) {
                for (std::size_t lo = 0; lo < hi; ++lo) {
                    const double avail = c.mass[hi];
                    if (avail <= 0.0) continue;
                    auto shifted = [&](double t) {
                        Point u(c.mass);
                        u[hi] -= t;
                        u[lo] += t;
                        if (u[hi] < 0.0) u[hi] = 0.0;
                        return u;
                    };
                    Candidate full = make(shifted(avail));
                    full.mass[hi] = 0.0;
                    Candidate next;
                    if (feasible(full)) {
                        next = std::move(full);
                    } else {
                        double ok = 0.0, bad = avail;
                        for (int it = 0; it < kBisectionSteps && bad - ok > 0.0; ++it) {
                            const double mid = ok + (bad - ok) / 2.0;
                            if (mid <= ok || mid >= bad) break;
                            if (eval_one(shifted(mid)) >= alpha_)
                                ok = mid;
                            else
                                bad = mid;
                        }
                        if (ok <= 0.0) continue;
                        next = make(shifted(ok));
                        if (!feasible(next)) continue;
                    }
                    if (better(next, c)) {
                        improved = improved || (c.mean - next.mean) > 1e-15;
                        c = std::move(next);
                    }
                }
            }
            improved = split_moves(c) || improved;
            if (!improved) break;
        }
    }

    // Empties (part of) a support point into one lower and one higher point,
    // sending as little as the constraint allows upward. Covers corners where
    // no pairwise transfer keeps feasibility while lowering the mean.
    bool split_moves(Candidate& c) {
        const auto d = static_cast<std::size_t>(d_);
        bool improved = false;
        for (std::size_t src = 1; src + 1 < d; ++src) {
            for (std::size_t lo = 0; lo < src; ++lo) {
                for (std::size_t hi = src + 1; hi < d; ++hi) {
                    double t = c.mass[src];
                    for (int level = 0; level < kSplitLevels && t > 0.0; ++level, t /= 2.0) {
                        auto moved = [&](double v) {
                            Point u(c.mass);
                            u[src] = t == c.mass[src] ? 0.0 : std::max(0.0, u[src] - t);
                            u[lo] += t - v;
                            u[hi] += v;
                            return u;
                        };
                        double bad = 0.0, ok = t;
                        if (eval_one(moved(ok)) < alpha_) continue;
                        if (eval_one(moved(bad)) >= alpha_) {
                            ok = bad;
                        } else {
                            for (int it = 0; it < kBisectionSteps; ++it) {
                                const double mid = bad + (ok - bad) / 2.0;
                                if (mid <= bad || mid >= ok) break;
                                if (eval_one(moved(mid)) >= alpha_)
                                    ok = mid;
                                else
                                    bad = mid;
                            }
                        }
                        Candidate next = make(moved(ok));
                        if (feasible(next) && better(next, c) && c.mean - next.mean > 1e-15) {
                            c = std::move(next);
                            improved = true;
                            break;
                        }
                    }
                }
            }
        }
        return improved;
    }

    // Used only when the coarse grid missed the feasible region entirely.
    Candidate climb_probability(Candidate start) {
        const auto& offs = offsets();
        double h = step_;
        const double stop = cfg_.resolution / std::pow(2.0, cfg_.refine_passes);
        Candidate cur = std::move(start);
        while (true) {
            for (int move = 0; move < kMaxMovesPerLevel && !feasible(cur); ++move) {
                Candidate best = cur;
                for (const auto& z : offs) {
                    Point u(cur.mass);
                    bool ok = true;
                    for (std::size_t j = 0; j < u.size(); ++j) {
                        u[j] += h * static_cast<double>(z[j]);
                        if (u[j] < -1e-12) {
                            ok = false;
                            break;
                        }
                        if (u[j] < 0.0) u[j] = 0.0;
                    }
                    if (!ok) continue;
                    Candidate c = make(std::move(u));
                    if (c.prob > best.prob) best = std::move(c);
                }
                if (best.prob <= cur.prob) break;
                cur = std::move(best);
            }
            if (feasible(cur) || h <= stop) break;
            h /= 2.0;
        }
        step_ = h;
        return cur;
    }

    double alpha_;
    const OracleConfig& cfg_;
    int d_;
    std::vector<double> values_;
    kernels::MonomialTable poly_;
    kernels::PointBatch batch_;
    std::vector<double> out_;
    std::vector<std::vector<int>> offsets_;
    double step_ = 1.0;
    double final_step_ = 0.0;
    std::size_t evaluations_ = 0;
};

}  // namespace

OracleResult minimize_mean(const SupportGrid& grid, std::span<const Sample> members, double alpha,
                           const SupportSet& support, const OracleConfig& cfg) {
    cfg.validate();
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
    if (support.empty()) throw std::invalid_argument("support set is empty");
    for (int i : support.indices())
        if (i >= grid.size()) throw std::out_of_range("support index outside the grid");

    SimplexSearch search(grid, members, alpha, support, cfg);
    Candidate best = search.run();

    std::vector<double> dense(static_cast<std::size_t>(grid.size()), 0.0);
    auto sup = support.indices();
    double total = 0.0;
    for (std::size_t j = 0; j < sup.size(); ++j) total += best.mass[j];
    for (std::size_t j = 0; j < sup.size(); ++j)
        dense[static_cast<std::size_t>(sup[j])] = std::max(0.0, best.mass[j]) / total;
    Distribution witness(grid, std::move(dense));

    return OracleResult{
        .value = mean(witness),
        .witness = witness,
        .constraint_prob = prob_of_samples(witness, members),
        .support_used = support,
        .final_step = search.final_step(),
        .evaluations = search.evaluations(),
    };
}

OracleResult pessimal_bound_oracle(const Sample& x, const Preorder& order, double alpha, const OracleConfig& cfg,
                                   const std::vector<Sample>& omega) {
    const UpperSet u = upper_set(x, order, omega);
    const SupportSet support = cfg.support_override ? *cfg.support_override : refined_support(x, order);
    return minimize_mean(x.grid(), u.members, alpha, support, cfg);
}

OracleResult pessimal_bound_oracle(const Sample& x, const Preorder& order, double alpha, const OracleConfig& cfg) {
    return pessimal_bound_oracle(x, order, alpha, cfg, enumerate_omega(x.grid(), x.n()));
}

OracleResult pointwise_bound_oracle(const Sample& x, double alpha, const OracleConfig& cfg) {
    return pessimal_bound_oracle(x, Preorder::pointwise(x), alpha, cfg);
}

}  // namespace lcb
