#include "lcb/harness.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "lcb/closedform.hpp"
#include "lcb/quantile_approx.hpp"

namespace lcb {

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    gen_.seed(seq);
}

double SeededStream::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

Distribution random_distribution(const SupportGrid& grid, SeededStream& rng) {
    // Normalized unit exponentials are uniform on the simplex.
    std::vector<double> w(static_cast<std::size_t>(grid.size()));
    double total = 0.0;
    for (double& v : w) {
        v = -std::log1p(-rng.uniform());
        total += v;
    }
    for (double& v : w) v /= total;
    return Distribution(grid, std::move(w));
}

std::vector<Distribution> simplex_sweep(const SupportGrid& grid, double step) {
    const double inv = 1.0 / step;
    const long k = std::lround(inv);
    if (!(step > 0.0) || k < 1 || std::abs(inv - static_cast<double>(k)) > 1e-9)
        throw std::invalid_argument("sweep step must be 1/k for a positive integer k");
    const auto m = static_cast<std::size_t>(grid.size());
    std::vector<Distribution> out;
    std::vector<long> parts(m, 0);
    // Recursive fill of compositions of k into m parts, lexicographic.
    auto rec = [&](auto&& self, std::size_t pos, long left) -> void {
        if (pos + 1 == m) {
            parts[pos] = left;
            std::vector<double> mass(m);
            for (std::size_t j = 0; j < m; ++j) mass[j] = static_cast<double>(parts[j]) / static_cast<double>(k);
            out.emplace_back(grid, std::move(mass));
            return;
        }
        for (long v = 0; v <= left; ++v) {
            parts[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, k);
    return out;
}

BoundFn constant_bound(const SupportGrid& grid) {
    const double v = grid.s_min();
    return BoundFn{"constant-smin", 0.0, [v](const Sample&) { return v; }};
}

BoundFn tabulated_bound(std::string name, double alpha, const std::vector<Sample>& omega,
                        const std::function<double(const Sample&)>& fn) {
    auto table = std::make_shared<std::map<Sample, double>>();
    for (const auto& x : omega) table->emplace(x, fn(x));
    return BoundFn{std::move(name), alpha, [table](const Sample& x) {
                       auto it = table->find(x);
                       if (it == table->end())
                           throw std::invalid_argument("sample " + x.to_string() + " not in the tabulated bound");
                       return it->second;
                   }};
}

BoundFn oracle_bound(const SupportGrid& grid, int n, const std::string& selector, double alpha,
                     const OracleConfig& cfg) {
    const auto omega = enumerate_omega(grid, n);
    return tabulated_bound("oracle:" + selector, alpha, omega, [&](const Sample& x) {
        return pessimal_bound_oracle(x, parse_order(selector, x), alpha, cfg, omega).value;
    });
}

BoundFn quantile_approx_bound(int i, double alpha, double epsilon) {
    return BoundFn{"quantile:" + std::to_string(i), alpha,
                   [=](const Sample& x) { return quantile_bound(x, i, alpha, epsilon).bound; }};
}

CoverageReport exact_coverage(const Distribution& F, const BoundFn& bound, int n) {
    const auto omega = enumerate_omega(F.grid(), n);
    const double mu = mean(F);
    double covered = 0.0;
    for (const auto& x : omega)
        if (bound.eval(x) <= mu + 1e-12) covered += sample_prob(F, x);
    return CoverageReport{
        .method = bound.name,
        .alpha = bound.alpha,
        .n = n,
        .distribution = F,
        .coverage = std::clamp(covered, 0.0, 1.0),
        .mode = CoverageMode::Exact,
    };
}

CoverageReport mc_coverage(const Distribution& F, const BoundFn& bound, int n, std::size_t trials,
                           std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("Monte Carlo coverage needs at least one trial");
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    const auto& grid = F.grid();
    const double mu = mean(F);
    std::vector<double> cdf(static_cast<std::size_t>(grid.size()));
    double run = 0.0;
    for (int i = 0; i < grid.size(); ++i) cdf[static_cast<std::size_t>(i)] = run += F.mass_at(i);

    std::size_t covered = 0;
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (std::size_t t = 0; t < trials; ++t) {
        SeededStream rng(seed, t);
        for (int& v : idx) {
            const double u = rng.uniform() * run;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            v = static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), grid.size() - 1));
        }
        if (bound.eval(Sample(grid, idx)) <= mu + 1e-12) ++covered;
    }
    return CoverageReport{
        .method = bound.name,
        .alpha = bound.alpha,
        .n = n,
        .distribution = F,
        .coverage = static_cast<double>(covered) / static_cast<double>(trials),
        .mode = CoverageMode::MonteCarlo,
        .trials = trials,
        .seed = seed,
    };
}

double default_value_tolerance(const SupportGrid& grid, const OracleConfig& cfg) {
    return 2.0 * cfg.resolution * grid.range();
}

namespace {

std::string describe(const Sample& x) { return x.to_string(); }

void check_leq(VerifyReport& r, double a, double b, double tol, const std::string& what) {
    ++r.instances_checked;
    const double excess = a - b;
    r.max_violation = std::max(r.max_violation, excess);
    if (excess > tol) {
        std::ostringstream os;
        os.precision(12);
        os << what << ": " << a << " > " << b << " + " << tol;
        r.failures.push_back(os.str());
    }
}

}  // namespace

VerifyReport verify_sandwich(const SupportGrid& grid, int n, double alpha, const OracleConfig& cfg,
                             std::optional<double> tolerance, const std::optional<std::vector<Preorder>>& candidates) {
    VerifyReport r;
    r.theorem = "sandwich";
    r.tolerance = tolerance.value_or(default_value_tolerance(grid, cfg));
    const auto omega = enumerate_omega(grid, n);
    const int m = grid.size();

    std::vector<Preorder> orders;
    if (candidates) {
        for (const auto& t : *candidates) {
            if (is_monotone(t, omega))
                orders.push_back(t);
            else
                ++r.skipped;
        }
    } else {
        orders = monotone_linear_extensions(omega);
    }

    const Preorder low = Preorder::lexi_low();
    const Preorder high = Preorder::lexi_high();
    std::vector<Sample> homog;
    std::vector<UpperSet> up_low, up_high;
    std::vector<double> b_low, b_high;
    for (int i = 0; i < m; ++i) {
        homog.push_back(homogeneous_sample(grid, i, n));
        up_low.push_back(upper_set(homog.back(), low, omega));
        up_high.push_back(upper_set(homog.back(), high, omega));
        b_low.push_back(pessimal_bound_oracle(homog.back(), low, alpha, cfg, omega).value);
        b_high.push_back(pessimal_bound_oracle(homog.back(), high, alpha, cfg, omega).value);
    }

    for (std::size_t t = 0; t < orders.size(); ++t) {
        const auto& order = orders[t];
        const std::string tag = "order #" + std::to_string(t);
        for (int i = 0; i < m; ++i) {
            const auto ut = upper_set(homog[static_cast<std::size_t>(i)], order, omega);
            ++r.instances_checked;
            if (!up_low[static_cast<std::size_t>(i)].subset_of(ut))
                r.failures.push_back(tag + ": lexi-low upper set of S_" + std::to_string(i) + " not inside T's");
            ++r.instances_checked;
            if (!ut.subset_of(up_high[static_cast<std::size_t>(i)]))
                r.failures.push_back(tag + ": T's upper set of S_" + std::to_string(i) + " not inside lexi-high's");
        }

        std::map<Sample, double> bt;
        for (const auto& x : omega) bt.emplace(x, pessimal_bound_oracle(x, order, alpha, cfg, omega).value);

        for (int i = 0; i + 1 < m; ++i) {
            const auto& lo_s = homog[static_cast<std::size_t>(i)];
            const auto& hi_s = homog[static_cast<std::size_t>(i + 1)];
            for (const auto& x : omega) {
                if (!lesssim(order, lo_s, x) || !lesssim(order, x, hi_s)) continue;
                check_leq(r, b_high[static_cast<std::size_t>(i)], bt.at(x), r.tolerance,
                          tag + ": lexi-high bound at S_" + std::to_string(i) + " vs T at " + describe(x));
                check_leq(r, bt.at(x), b_low[static_cast<std::size_t>(i + 1)], r.tolerance,
                          tag + ": T at " + describe(x) + " vs lexi-low bound at S_" + std::to_string(i + 1));
            }
        }
        for (int i = 0; i < m; ++i) {
            const double v = bt.at(homog[static_cast<std::size_t>(i)]);
            check_leq(r, b_high[static_cast<std::size_t>(i)], v, r.tolerance,
                      tag + ": extremality lower end at S_" + std::to_string(i));
            check_leq(r, v, lexi_low_homogeneous(grid, i, n, alpha), r.tolerance,
                      tag + ": extremality upper end at S_" + std::to_string(i));
        }
    }
    return r;
}

VerifyReport verify_consistency(const Preorder& order, const std::map<Sample, double>& bound_values,
                                const std::vector<Sample>& omega, double tolerance) {
    VerifyReport r;
    r.theorem = "consistency";
    r.tolerance = tolerance;
    for (const auto& x : omega)
        if (!bound_values.contains(x)) throw std::invalid_argument("no bound value for sample " + x.to_string());
    for (const auto& x : omega) {
        for (const auto& y : omega) {
            const double bx = bound_values.at(x);
            const double by = bound_values.at(y);
            switch (compare(order, x, y)) {
                case Ordering::Less:
                    check_leq(r, bx, by, tolerance, "B" + describe(x) + " <= B" + describe(y));
                    break;
                case Ordering::Equivalent:
                    check_leq(r, std::abs(bx - by), 0.0, tolerance, "B" + describe(x) + " == B" + describe(y));
                    break;
                case Ordering::Greater:
                    break;
            }
        }
    }
    return r;
}

VerifyReport verify_agreement(const Sample& x, const Preorder& order, int trials, std::uint64_t seed,
                              double tolerance) {
    VerifyReport r;
    r.theorem = "agreement";
    r.tolerance = tolerance;
    SupportSet C;
    if (const auto* q = std::get_if<order::Quantile>(&order.kind()))
        C = SupportSet({x.order_stat(q->i)});
    else if (order.is<order::LexiLow>())
        C = SupportSet(x.distinct_indices());
    else
        throw std::invalid_argument("agreement check supports lexi-low and quantile orders only");

    const auto omega = enumerate_omega(x.grid(), x.n());
    const auto u = upper_set(x, order, omega);
    for (int t = 0; t < trials; ++t) {
        SeededStream rng(seed, static_cast<std::uint64_t>(t));
        const auto g = random_distribution(x.grid(), rng);
        const auto h = transfer_to_augmented(g, C);
        ++r.instances_checked;
        if (!agree_on(g, h, C) || !restrict_to(h, augment(C, x.grid()))) {
            r.failures.push_back("trial " + std::to_string(t) + ": constructed H does not agree with G on C");
            continue;
        }
        const double diff = std::abs(prob_upper_set(g, u) - prob_upper_set(h, u));
        r.max_violation = std::max(r.max_violation, diff);
        if (diff > tolerance) {
            std::ostringstream os;
            os.precision(17);
            os << "trial " << t << ": |P_G - P_H| = " << diff;
            r.failures.push_back(os.str());
        }
    }
    return r;
}

VerifyReport verify_refinement(const SupportGrid& grid, int n, double alpha, const OracleConfig& cfg,
                               std::optional<double> tolerance) {
    VerifyReport r;
    r.theorem = "refinement";
    r.tolerance = tolerance.value_or(2.0 * default_value_tolerance(grid, cfg));
    const auto omega = enumerate_omega(grid, n);
    OracleConfig full_cfg = cfg;
    full_cfg.support_override = SupportSet::full(grid);
    OracleConfig refined_cfg = cfg;
    refined_cfg.support_override.reset();

    std::vector<Preorder> orders{Preorder::lexi_low()};
    for (int i = 1; i <= n; ++i) orders.push_back(Preorder::quantile(i));
    for (const auto& order : orders) {
        for (const auto& x : omega) {
            const double refined = pessimal_bound_oracle(x, order, alpha, refined_cfg, omega).value;
            const double full = pessimal_bound_oracle(x, order, alpha, full_cfg, omega).value;
            check_leq(r, std::abs(refined - full), 0.0, r.tolerance,
                      order.name() + " at " + describe(x) + " refined vs full");
        }
    }
    return r;
}

VerifyReport verify_mean_lipschitz(const SupportGrid& grid, int pairs, std::uint64_t seed) {
    VerifyReport r;
    r.theorem = "mean-lipschitz";
    r.tolerance = 1e-12;
    for (int t = 0; t < pairs; ++t) {
        SeededStream rng(seed, static_cast<std::uint64_t>(t));
        const auto u = random_distribution(grid, rng);
        const auto v = random_distribution(grid, rng);
        const auto c = mean_lipschitz(u, v);
        ++r.instances_checked;
        r.max_violation = std::max(r.max_violation, c.lhs - c.rhs);
        if (!c.holds) {
            std::ostringstream os;
            os.precision(17);
            os << "pair " << t << ": " << c.lhs << " > " << c.rhs;
            r.failures.push_back(os.str());
        }
    }
    return r;
}

VerifyReport verify_coverage_validity(const SupportGrid& grid, int n, const BoundFn& bound, double step) {
    VerifyReport r;
    r.theorem = "coverage:" + bound.name;
    r.tolerance = 1e-9;
    for (const auto& f : simplex_sweep(grid, step)) {
        const auto rep = exact_coverage(f, bound, n);
        ++r.instances_checked;
        const double shortfall = (1.0 - bound.alpha) - rep.coverage;
        r.max_violation = std::max(r.max_violation, shortfall);
        if (shortfall > r.tolerance) {
            std::ostringstream os;
            os.precision(12);
            os << "F = (";
            for (int i = 0; i < grid.size(); ++i) os << (i ? "," : "") << f.mass_at(i);
            os << "): coverage " << rep.coverage;
            r.failures.push_back(os.str());
        }
    }
    return r;
}

}  // namespace lcb
