// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lcb/closedform.hpp"
#include "lcb/harness.hpp"
#include "lcb/oracle.hpp"
#include "lcb/quantile_approx.hpp"

using namespace lcb;

namespace {

struct Outcome {
    bool pass = true;
    std::size_t instances = 0;
    double worst = 0.0;  // largest observed error / violation
    std::string detail;
    std::string note;  // printed on its own line when non-empty

    void check(bool ok, double err, const std::string& what) {
        ++instances;
        worst = std::max(worst, err);
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

struct Criterion {
    int id;
    std::string title;
    double time_limit_s;  // 0 = no limit
    std::function<Outcome()> run;
};

constexpr double kResolution = 1e-3;

OracleConfig oracle_cfg() {
    OracleConfig cfg;
    cfg.resolution = kResolution;
    return cfg;
}

double value_tol(const SupportGrid& g) { return 2.0 * kResolution * g.range(); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome homogeneous_sweep(bool lexi_low) {
    Outcome o;
    const auto cfg = oracle_cfg();
    for (int m : {2, 3, 5}) {
        SupportGrid g(0, 1, m);
        for (int n : {1, 2, 3})
            for (double a : {0.05, 0.25, 0.5})
                for (int i = 0; i < m; ++i) {
                    const auto s = homogeneous_sample(g, i, n);
                    const double v = lexi_low ? pessimal_bound_oracle(s, Preorder::lexi_low(), a, cfg).value
                                              : pointwise_bound_oracle(s, a, cfg).value;
                    const double expect = g.s_min() * (1.0 - std::pow(a, 1.0 / n)) + g.point(i) * std::pow(a, 1.0 / n);
                    const double err = std::abs(v - expect);
                    o.check(err <= value_tol(g), err, fmt("m=%g n=%g alpha=%g", m, n, a));
                }
    }
    return o;
}

Outcome lexi_high_bracket() {
    Outcome o;
    const auto cfg = oracle_cfg();
    std::size_t top_fail = 0, other_fail = 0;
    double top_vs_pointwise = 0.0;
    for (int m : {2, 3, 5}) {
        SupportGrid g(0, 1, m);
        for (int n : {1, 2, 3})
            for (double a : {0.05, 0.25, 0.5})
                for (int i = 1; i < m; ++i) {
                    const auto s = homogeneous_sample(g, i, n);
                    const double v = pessimal_bound_oracle(s, Preorder::lexi_high(), a, cfg).value;
                    const auto b = lexi_high_homogeneous_bracket(g, i, n, a);
                    const double tol = value_tol(g);
                    const double err = std::max({0.0, b.lo - v, v - b.hi});
                    const bool ok = v >= b.lo - tol && v <= b.hi + tol;
                    o.check(ok, err, fmt("m=%g n=%g alpha=%g", m, n, a) + fmt(" i=%g value=%.6f bracket=[%.6f", i, v, b.lo) +
                                         fmt(", %.6f]", b.hi));
                    if (i == m - 1) {
                        top_vs_pointwise = std::max(top_vs_pointwise, std::abs(v - optimal_pointwise_homogeneous(g, i, n, a)));
                        top_fail += !ok;
                    } else {
                        other_fail += !ok;
                    }
                }
    }
    if (!o.pass)
        o.note = fmt("failures at the top index i = m-1: %g, elsewhere: %g; at the top index the oracle equals the ", top_fail,
                     other_fail) +
                 fmt("pointwise optimum S_max alpha^{1/n} within %.1e", top_vs_pointwise);
    return o;
}

Outcome quantile_vs_oracle() {
    Outcome o;
    const auto cfg = oracle_cfg();
    SupportGrid g(0, 1, 5);
    const double eps = 1e-4;
    const double c = 0.25;
    for (int n = 1; n <= 4; ++n) {
        const auto omega = enumerate_omega(g, n);
        for (double a : {0.05, 0.25})
            for (const auto& x : omega)
                for (int i = 1; i <= n; ++i) {
                    const double approx = quantile_bound(x, i, a, eps).bound;
                    const double exact = pessimal_bound_oracle(x, Preorder::quantile(i), a, cfg, omega).value;
                    const double err = std::abs(approx - exact);
                    o.check(err <= c + eps + value_tol(g), err, "x=" + x.to_string() + fmt(" i=%g alpha=%g", i, a));
                }
    }
    return o;
}

Outcome quantile_analytic() {
    Outcome o;
    double other = 0.0;
    const double eps = 1e-4;
    for (const SupportGrid& g : {SupportGrid(0, 1, 5), SupportGrid(-1, 2, 4)})
        for (int n = 1; n <= 6; ++n)
            for (double a : {0.01, 0.1, 0.5})
                for (const auto& x : enumerate_omega(g, n)) {
                    const auto r = quantile_bound(x, n, a, eps);
                    const double root = std::pow(a, 1.0 / n);
                    const double expect = g.s_min() * (1.0 - root) + g.point(x.order_stat(n)) * root;
                    const double err = std::abs(r.bound - expect);
                    o.check(err <= eps + r.delta * g.range(), err,
                            "x=" + x.to_string() + fmt(" n=%g alpha=%g bound=%.6f", n, a, r.bound) + fmt(" expected=%.6f", expect));
                    const double max_form =
                        g.s_min() + (g.point(x.order_stat(n)) - g.s_min()) * (1.0 - std::pow(1.0 - a, 1.0 / n));
                    other = std::max(other, std::abs(r.bound - max_form) - r.delta * g.range());
                }
    if (!o.pass)
        o.note = fmt("the bound follows s_min + (x_(n) - s_min)(1 - (1-alpha)^{1/n}) with excess over delta*range %.1e", other);
    return o;
}

Outcome from_report(const VerifyReport& r) {
    Outcome o;
    o.pass = r.pass();
    o.instances = r.instances_checked;
    o.worst = std::max(0.0, r.max_violation);
    if (!r.failures.empty()) o.detail = r.failures.front();
    return o;
}

void merge(Outcome& into, const Outcome& part) {
    into.instances += part.instances;
    into.worst = std::max(into.worst, part.worst);
    if (!part.pass && into.pass) into.detail = part.detail;
    into.pass = into.pass && part.pass;
}

Outcome sandwich() {
    SupportGrid g(0, 1, 3);
    return from_report(verify_sandwich(g, 2, 0.25, oracle_cfg(), 2.0 * value_tol(g)));
}

Outcome refinement() {
    Outcome o;
    for (int m = 2; m <= 4; ++m)
        for (int n = 1; n <= 3; ++n)
            for (double a : {0.05, 0.25}) {
                SupportGrid g(0, 1, m);
                merge(o, from_report(verify_refinement(g, n, a, oracle_cfg(), 2.0 * value_tol(g))));
            }
    return o;
}

Outcome agreement() {
    Outcome o;
    SupportGrid g(0, 1, 5);
    const int n = 3;
    std::uint64_t seed = 1000;
    for (const auto& x : enumerate_omega(g, n)) {
        merge(o, from_report(verify_agreement(x, Preorder::lexi_low(), 200, seed++, 1e-12)));
        for (int i = 1; i <= n; ++i)
            merge(o, from_report(verify_agreement(x, Preorder::quantile(i), 200, seed++, 1e-12)));
    }
    return o;
}

Outcome coverage() {
    Outcome o;
    const double alpha = 0.1;
    SupportGrid g(0, 1, 3);
    for (int n = 1; n <= 3; ++n) {
        std::vector<std::string> selectors{"lexi-low", "lexi-high", "quantile:" + std::to_string((n + 1) / 2)};
        for (const auto& sel : selectors) {
            const auto bound = oracle_bound(g, n, sel, alpha, oracle_cfg());
            merge(o, from_report(verify_coverage_validity(g, n, bound, 0.1)));
        }
    }
    return o;
}

Outcome lipschitz() {
    Outcome o;
    for (int m : {2, 5, 10}) {
        merge(o, from_report(verify_mean_lipschitz(SupportGrid(0, 1, m), 1000, 31 + m)));
        merge(o, from_report(verify_mean_lipschitz(SupportGrid(-3, 1, m), 1000, 71 + m)));
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "closed-form pointwise optimum at homogeneous samples", 120, [] { return homogeneous_sweep(false); }},
        {2, "lexi-low oracle at homogeneous samples", 120, [] { return homogeneous_sweep(true); }},
        {3, "lexi-high oracle inside the closed-form bracket", 0, lexi_high_bracket},
        {4, "quantile bisection within c + eps of the oracle", 300, quantile_vs_oracle},
        {5, "quantile bisection, analytic i = n family", 0, quantile_analytic},
        {6, "sandwich campaign, m=3 n=2 alpha=0.25", 0, sandwich},
        {7, "refined support matches the full grid", 0, refinement},
        {8, "agreement of upper-set probabilities", 0, agreement},
        {9, "exact coverage of oracle bounds, m=3 alpha=0.1", 0, coverage},
        {10, "mean-Lipschitz inequality", 0, lipschitz},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = o.pass;
        if (c.time_limit_s > 0 && secs > c.time_limit_s) {
            ok = false;
            o.detail = fmt("runtime %.1fs over the %.0fs limit", secs, c.time_limit_s);
        }
        if (!ok) ++failed;
        std::printf("[%s] %2d %-52s instances=%-6zu worst=%.3e time=%.1fs%s%s\n", ok ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), o.instances, o.worst, secs, o.detail.empty() ? "" : "  first failure: ",
                    o.detail.c_str());
        if (!o.note.empty()) std::printf("       note: %s\n", o.note.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
