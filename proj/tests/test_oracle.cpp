#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lcb/closedform.hpp"
#include "lcb/oracle.hpp"

using namespace lcb;

namespace {

double tol_for(const SupportGrid& g, const OracleConfig& cfg) { return 2.0 * cfg.resolution * g.range(); }

void check_witness(const OracleResult& r, double alpha) {
    CHECK(r.constraint_prob >= alpha - 1e-12);
    CHECK(restrict_to(r.witness, r.support_used));
    CHECK(r.value == doctest::Approx(mean(r.witness)).epsilon(1e-12));
}

}  // namespace

TEST_CASE("refined_support") {
    SupportGrid g(0, 1, 3);
    CHECK(refined_support(Sample(g, {1}), Preorder::quantile(1)) == SupportSet({0, 1, 2}));
    CHECK(refined_support(Sample(g, {0, 0}), Preorder::lexi_low()) == SupportSet({0, 1}));
    CHECK(refined_support(Sample(g, {0, 0}), Preorder::lexi_high()) == SupportSet::full(g));
    SupportGrid h(0, 1, 6);
    CHECK(refined_support(Sample(h, {1, 3, 3}), Preorder::lexi_low()) == SupportSet({0, 1, 2, 3, 4}));
    CHECK(refined_support(Sample(h, {1, 3, 5}), Preorder::quantile(3)) == SupportSet({0, 5}));
    CHECK(refined_support(Sample(h, {2, 4}), Preorder::pointwise(Sample(h, {2, 4}))) == SupportSet({0, 2, 3, 4, 5}));
}

TEST_CASE("config validation") {
    SupportGrid g(0, 1, 2);
    OracleConfig cfg;
    cfg.resolution = 0.0;
    CHECK_THROWS_AS(pointwise_bound_oracle(Sample(g, {1}), 0.1, cfg), std::invalid_argument);
    cfg.resolution = 1e-3;
    cfg.refine_passes = -1;
    CHECK_THROWS_AS(pointwise_bound_oracle(Sample(g, {1}), 0.1, cfg), std::invalid_argument);
    CHECK_THROWS_AS(pointwise_bound_oracle(Sample(g, {1}), 1.0), std::invalid_argument);
}

TEST_CASE("alpha = 0 gives s_min for every order") {
    SupportGrid g(-1, 2, 4);
    Sample x(g, {1, 3});
    for (const auto& order : {Preorder::lexi_low(), Preorder::lexi_high(), Preorder::quantile(2), Preorder::pointwise(x)}) {
        auto r = pessimal_bound_oracle(x, order, 0.0);
        CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-12));
        check_witness(r, 0.0);
    }
}

TEST_CASE("pointwise oracle at homogeneous samples") {
    SupportGrid g(0, 1, 2);
    OracleConfig cfg;
    auto r = pointwise_bound_oracle(Sample(g, {1, 1}), 0.25, cfg);
    CHECK(std::abs(r.value - 0.5) <= tol_for(g, cfg));
    check_witness(r, 0.25);
    SupportGrid h(-2, 3, 4);
    for (int i = 0; i < 4; ++i) {
        auto s = pointwise_bound_oracle(homogeneous_sample(h, i, 3), 0.3, cfg);
        CHECK(std::abs(s.value - optimal_pointwise_homogeneous(h, i, 3, 0.3)) <= tol_for(h, cfg));
        check_witness(s, 0.3);
    }
}

TEST_CASE("pointwise oracle on a mixed sample matches the one-dimensional solve") {
    SupportGrid g(0, 1, 2);
    OracleConfig cfg;
    auto r = pointwise_bound_oracle(Sample(g, {0, 1}), 0.25, cfg);
    const double p = 0.14644660940672623780;  // (1 - sqrt(0.5)) / 2
    CHECK(std::abs(r.value - p) <= tol_for(g, cfg));
    CHECK(r.value >= p - 1e-9);
    check_witness(r, 0.25);
}

TEST_CASE("lexi-low oracle at S_1") {
    SupportGrid g(0, 1, 3);
    OracleConfig cfg;
    auto r = pessimal_bound_oracle(Sample(g, {1, 1}), Preorder::lexi_low(), 0.04, cfg);
    CHECK(std::abs(r.value - 0.1) <= tol_for(g, cfg));
    check_witness(r, 0.04);
}

TEST_CASE("oracle values are consistent with the order") {
    SupportGrid g(0, 1, 3);
    const int n = 2;
    const double alpha = 0.25;
    OracleConfig cfg;
    const double tol = tol_for(g, cfg);
    auto omega = enumerate_omega(g, n);
    for (const auto& order : {Preorder::lexi_low(), Preorder::lexi_high(), Preorder::quantile(1), Preorder::quantile(2)}) {
        std::map<Sample, double> b;
        for (const auto& x : omega) {
            auto r = pessimal_bound_oracle(x, order, alpha, cfg, omega);
            check_witness(r, alpha);
            b.emplace(x, r.value);
        }
        for (const auto& x : omega)
            for (const auto& y : omega) {
                auto c = compare(order, x, y);
                if (c == Ordering::Less) CHECK(b[x] <= b[y] + tol);
                if (c == Ordering::Equivalent) CHECK(std::abs(b[x] - b[y]) <= tol);
            }
    }
}

TEST_CASE("larger upper sets never give larger values") {
    SupportGrid g(0, 1, 3);
    auto omega = enumerate_omega(g, 2);
    OracleConfig cfg;
    cfg.support_override = SupportSet::full(g);
    const double tol = tol_for(g, cfg);
    auto check_pair = [&](const UpperSet& small, const UpperSet& big) {
        REQUIRE(small.subset_of(big));
        auto a = minimize_mean(g, small.members, 0.3, SupportSet::full(g), cfg);
        auto b = minimize_mean(g, big.members, 0.3, SupportSet::full(g), cfg);
        CHECK(b.value <= a.value + tol);
    };
    for (const auto& x : omega) {
        check_pair(upper_set(x, Preorder::pointwise(x), omega), upper_set(x, Preorder::lexi_high(), omega));
        check_pair(upper_set(x, Preorder::pointwise(x), omega), upper_set(x, Preorder::quantile(2), omega));
    }
    for (int i = 0; i < g.size(); ++i) {
        auto s = homogeneous_sample(g, i, 2);
        check_pair(upper_set(s, Preorder::lexi_low(), omega), upper_set(s, Preorder::lexi_high(), omega));
    }
}

TEST_CASE("infeasible constraint is reported") {
    SupportGrid g(0, 1, 3);
    Sample x(g, {2, 2});
    OracleConfig cfg;
    cfg.support_override = SupportSet({0, 1});
    try {
        pointwise_bound_oracle(x, 0.5, cfg);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(e.best_prob() == doctest::Approx(0.0));
    }
}

TEST_CASE("oracle is deterministic") {
    SupportGrid g(0, 1, 4);
    Sample x(g, {1, 3});
    auto a = pessimal_bound_oracle(x, Preorder::lexi_high(), 0.2);
    auto b = pessimal_bound_oracle(x, Preorder::lexi_high(), 0.2);
    CHECK(a.value == b.value);
    CHECK(std::ranges::equal(a.witness.mass(), b.witness.mass()));
}
