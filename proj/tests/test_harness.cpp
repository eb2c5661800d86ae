#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lcb/closedform.hpp"
#include "lcb/harness.hpp"

using namespace lcb;

TEST_CASE("seeded streams are reproducible and distinct") {
    SeededStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    CHECK(x != d.next());
    SeededStream u(1, 2);
    for (int t = 0; t < 1000; ++t) {
        const double v = u.uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("simplex_sweep") {
    SupportGrid g(0, 1, 3);
    auto sweep = simplex_sweep(g, 0.1);
    CHECK(sweep.size() == 66);
    CHECK(simplex_sweep(SupportGrid(0, 1, 2), 0.5).size() == 3);
    CHECK_THROWS_AS(simplex_sweep(g, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(simplex_sweep(g, 0.0), std::invalid_argument);
}

TEST_CASE("exact coverage of the constant bound is one") {
    SupportGrid g(0, 1, 4);
    SeededStream rng(5, 0);
    for (int t = 0; t < 20; ++t) {
        auto f = random_distribution(g, rng);
        CHECK(exact_coverage(f, constant_bound(g), 3).coverage == doctest::Approx(1.0));
        CHECK(mc_coverage(f, constant_bound(g), 3, 50, 9).coverage == 1.0);
    }
}

TEST_CASE("point mass with the pointwise closed form is always covered") {
    SupportGrid g(0, 1, 4);
    const int n = 2;
    const double alpha = 0.25;
    auto omega = enumerate_omega(g, n);
    auto bound = tabulated_bound("closed-form", alpha, omega, [&](const Sample& x) {
        return optimal_pointwise_homogeneous(g, x.indices()[0], n, alpha);
    });
    for (int i = 0; i < g.size(); ++i) {
        auto rep = exact_coverage(Distribution::point_mass(g, i), bound, n);
        CHECK(rep.coverage == 1.0);
        CHECK(rep.mode == CoverageMode::Exact);
    }
}

TEST_CASE("uniform distribution under the lexi-low oracle bound") {
    SupportGrid g(0, 1, 2);
    auto bound = oracle_bound(g, 2, "lexi-low", 0.25);
    auto f = Distribution::uniform(g);
    auto exact = exact_coverage(f, bound, 2);
    CHECK(exact.coverage >= 0.75);

    const std::size_t trials = 100000;
    auto mc = mc_coverage(f, bound, 2, trials, 2026);
    CHECK(std::abs(mc.coverage - exact.coverage) <= 3.0 * std::sqrt(0.25 * 0.75 / static_cast<double>(trials)));
    CHECK(mc.trials == trials);
    CHECK(mc.seed == 2026);

    auto again = mc_coverage(f, bound, 2, trials, 2026);
    CHECK(again.coverage == mc.coverage);
    CHECK_THROWS_AS(mc_coverage(f, bound, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("tabulated bounds reject foreign samples") {
    SupportGrid g(0, 1, 3);
    auto b = tabulated_bound("t", 0.1, enumerate_omega(g, 1), [](const Sample&) { return 0.0; });
    CHECK(b.eval(Sample(g, {2})) == 0.0);
    CHECK_THROWS_AS(b.eval(Sample(g, {1, 2})), std::invalid_argument);
}

TEST_CASE("verify_sandwich on m = 2") {
    SupportGrid g(0, 1, 2);
    auto r = verify_sandwich(g, 2, 0.25, OracleConfig{});
    CHECK(r.pass());
    CHECK(r.instances_checked >= 3);
}

TEST_CASE("verify_sandwich on m = 3 over every monotone extension") {
    SupportGrid g(0, 1, 3);
    auto r = verify_sandwich(g, 2, 0.25, OracleConfig{});
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.pass());
    CHECK(r.skipped == 0);
}

TEST_CASE("verify_sandwich filters non-monotone candidates") {
    SupportGrid g(0, 1, 2);
    auto omega = enumerate_omega(g, 2);
    auto reversed = omega;
    std::reverse(reversed.begin(), reversed.end());
    std::vector<Preorder> cands{Preorder::from_sequence(reversed), Preorder::from_sequence(omega)};
    auto r = verify_sandwich(g, 2, 0.25, OracleConfig{}, std::nullopt, cands);
    CHECK(r.skipped == 1);
    CHECK(r.pass());
}

TEST_CASE("verify_consistency") {
    SupportGrid g(0, 1, 3);
    auto omega = enumerate_omega(g, 2);

    std::map<Sample, double> oracle_vals;
    for (const auto& x : omega) oracle_vals.emplace(x, pessimal_bound_oracle(x, Preorder::quantile(1), 0.25).value);
    CHECK(verify_consistency(Preorder::quantile(1), oracle_vals, omega, 2e-3).pass());

    std::map<Sample, double> constant;
    for (const auto& x : omega) constant.emplace(x, 0.0);
    for (const auto& order : {Preorder::lexi_low(), Preorder::lexi_high(), Preorder::quantile(2)})
        CHECK(verify_consistency(order, constant, omega, 0.0).pass());

    std::map<Sample, double> sample_mean;
    for (const auto& x : omega) {
        auto v = x.values();
        sample_mean.emplace(x, std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()));
    }
    CHECK(verify_consistency(Preorder::lexi_low(), sample_mean, omega, 1e-12).pass());
    // Quantile(1) ties [0,2] with [0,0] while their means differ.
    CHECK_FALSE(verify_consistency(Preorder::quantile(1), sample_mean, omega, 1e-12).pass());

    sample_mean.erase(omega.front());
    CHECK_THROWS_AS(verify_consistency(Preorder::lexi_low(), sample_mean, omega, 0.0), std::invalid_argument);
}

TEST_CASE("verify_agreement") {
    SupportGrid g(0, 1, 5);
    auto r = verify_agreement(Sample(g, {1, 1, 3}), Preorder::lexi_low(), 200, 11);
    CHECK(r.pass());
    CHECK(r.instances_checked == 200);
    auto q = verify_agreement(Sample(g, {0, 2, 4}), Preorder::quantile(2), 200, 12);
    CHECK(q.pass());
    CHECK_THROWS_AS(verify_agreement(Sample(g, {0, 2, 4}), Preorder::lexi_high(), 1, 1), std::invalid_argument);
}

TEST_CASE("transfer leaves distributions already on the augmented support unchanged") {
    SupportGrid g(0, 1, 5);
    SupportSet C({1, 3});
    Distribution f(g, {0.1, 0.2, 0.3, 0.4, 0.0});
    REQUIRE(restrict_to(f, augment(C, g)));
    auto h = transfer_to_augmented(f, C);
    CHECK(std::ranges::equal(h.mass(), f.mass()));
}

TEST_CASE("verify_refinement on a small grid") {
    auto r = verify_refinement(SupportGrid(0, 1, 3), 2, 0.25, OracleConfig{});
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.pass());
}

TEST_CASE("verify_mean_lipschitz") {
    auto r = verify_mean_lipschitz(SupportGrid(-3, 1, 6), 500, 77);
    CHECK(r.pass());
    CHECK(r.instances_checked == 500);
}

TEST_CASE("verify_coverage_validity flags an invalid bound") {
    SupportGrid g(0, 1, 2);
    auto omega = enumerate_omega(g, 1);
    auto greedy = tabulated_bound("sample-value", 0.1, omega, [](const Sample& x) { return x.values()[0]; });
    auto r = verify_coverage_validity(g, 1, greedy, 0.5);
    CHECK_FALSE(r.pass());
    CHECK(verify_coverage_validity(g, 1, constant_bound(g), 0.5).pass());
}
