// lcb: command-line front end for bounds, the oracle, coverage and verification campaigns.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "lcb/closedform.hpp"
#include "lcb/harness.hpp"
#include "lcb/io.hpp"
#include "lcb/oracle.hpp"
#include "lcb/quantile_approx.hpp"

using namespace lcb;
using nlohmann::json;

namespace {

struct Globals {
    double s_min = 0.0;
    double s_max = 1.0;
    int m = 2;
    std::optional<int> n;
    double alpha = 0.05;
    std::string sample;
    std::string order = "lexi-low";
    std::string format = "json";
    std::uint64_t seed = 0;
    double resolution = 1e-3;
    double epsilon = 1e-4;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

SupportGrid grid_of(const Globals& g) { return SupportGrid(g.s_min, g.s_max, g.m); }

Sample require_sample(const Globals& g) {
    if (g.sample.empty()) throw UsageError("--sample is required");
    Sample x = io::parse_sample(grid_of(g), g.sample);
    if (g.n && *g.n != x.n()) throw UsageError("--n disagrees with the size of --sample");
    return x;
}

int sample_size(const Globals& g) {
    if (!g.sample.empty()) return require_sample(g).n();
    if (!g.n) throw UsageError("--n is required");
    if (*g.n < 1) throw UsageError("--n must be >= 1");
    return *g.n;
}

OracleConfig oracle_cfg(const Globals& g) {
    OracleConfig cfg;
    cfg.resolution = g.resolution;
    return cfg;
}

void emit(const Globals& g, std::string_view kind, json payload) {
    if (g.format == "csv") {
        std::cout << io::to_csv(payload);
    } else {
        std::cout << io::envelope(kind, std::move(payload)).dump(2) << '\n';
    }
}

json report_list(const std::vector<VerifyReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(io::to_json(r));
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pessimal lower confidence bounds for the mean of a discrete distribution"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--s-min", g.s_min, "Smallest support point")->capture_default_str();
    app.add_option("--s-max", g.s_max, "Largest support point")->capture_default_str();
    app.add_option("--m", g.m, "Number of support points")->capture_default_str();
    app.add_option("--n", g.n, "Sample size (taken from --sample when omitted)");
    app.add_option("--alpha", g.alpha, "Likely-set threshold alpha in [0, 1)")->capture_default_str();
    app.add_option("--sample", g.sample, "Sample values as CSV or a JSON array");
    app.add_option("--order", g.order, "lexi-low, lexi-high, quantile:<i> or pointwise")->capture_default_str();
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--resolution", g.resolution, "Oracle simplex resolution")->capture_default_str();
    app.add_option("--epsilon", g.epsilon, "Quantile bisection accuracy")->capture_default_str();

    // bound
    auto* bound = app.add_subcommand("bound", "Closed-form or bisection bound");
    std::string method;
    int index = -1;
    bool paper_literal = false;
    std::string tail = "order-statistic";
    bound->add_option("--method", method, "pointwise, lexi-low, lexi-high-bracket or quantile")
        ->required()
        ->check(CLI::IsMember({"pointwise", "lexi-low", "lexi-high-bracket", "quantile"}));
    bound->add_option("--i", index, "Support index of the homogeneous sample, or the quantile index")->required();
    bound->add_flag("--paper-literal-tail", paper_literal, "Quantile: use 1 - Bin(n-i-1; n, p)");
    bound->add_option("--tail", tail, "Quantile tail event")
        ->check(CLI::IsMember({"order-statistic", "at-least-i", "paper-literal"}))
        ->capture_default_str();

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Brute-force pessimal bound of a sample");
    bool full_grid = false;
    oracle->add_flag("--full-grid", full_grid, "Search the whole grid instead of the refined support");

    // coverage
    auto* coverage = app.add_subcommand("coverage", "Coverage of a bound under a distribution");
    bool exact = false, mc = false;
    std::string dist_text;
    std::string bound_kind = "oracle";
    int quantile_i = 1;
    std::size_t trials = 10000;
    auto* exact_flag = coverage->add_flag("--exact", exact, "Enumerate every sample");
    auto* mc_flag = coverage->add_flag("--mc", mc, "Monte Carlo simulation");
    exact_flag->excludes(mc_flag);
    coverage->add_option("--dist", dist_text, "Masses on the grid as a JSON array or CSV (default uniform)");
    coverage->add_option("--bound", bound_kind, "oracle (uses --order), quantile-approx or constant")
        ->check(CLI::IsMember({"oracle", "quantile-approx", "constant"}))
        ->capture_default_str();
    coverage->add_option("--i", quantile_i, "Quantile index for --bound quantile-approx")->capture_default_str();
    coverage->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "Run a verification campaign");
    std::string campaign;
    int agree_trials = 200;
    verify->add_option("campaign", campaign, "sandwich, consistency, agreement or all")
        ->required()
        ->check(CLI::IsMember({"sandwich", "consistency", "agreement", "all"}));
    verify->add_option("--trials", agree_trials, "Agreement trials per sample")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*bound) {
            const auto grid = grid_of(g);
            if (method == "quantile") {
                TailConvention conv = TailConvention::OrderStatistic;
                if (tail == "at-least-i") conv = TailConvention::AtLeastI;
                if (tail == "paper-literal" || paper_literal) conv = TailConvention::PaperLiteral;
                const Sample x = require_sample(g);
                emit(g, "quantile_bound", io::to_json(quantile_bound(x, index, g.alpha, g.epsilon, conv)));
                return 0;
            }
            const int n = sample_size(g);
            json out{{"method", method}, {"i", index}, {"n", n}, {"alpha", g.alpha}};
            if (method == "lexi-high-bracket") {
                auto b = io::to_json(lexi_high_homogeneous_bracket(grid, index, n, g.alpha));
                out.update(b);
            } else {
                out["value"] = method == "pointwise" ? optimal_pointwise_homogeneous(grid, index, n, g.alpha)
                                                     : lexi_low_homogeneous(grid, index, n, g.alpha);
            }
            emit(g, "bound", std::move(out));
            return 0;
        }

        if (*oracle) {
            const Sample x = require_sample(g);
            OracleConfig cfg = oracle_cfg(g);
            if (full_grid) cfg.support_override = SupportSet::full(x.grid());
            const auto order = parse_order(g.order, x);
            auto r = io::to_json(pessimal_bound_oracle(x, order, g.alpha, cfg));
            r["order"] = order.name();
            r["sample"] = io::to_json(x);
            r["alpha"] = g.alpha;
            emit(g, "oracle", std::move(r));
            return 0;
        }

        if (*coverage) {
            if (!exact && !mc) throw UsageError("coverage needs --exact or --mc");
            const auto grid = grid_of(g);
            const int n = sample_size(g);
            const Distribution f = dist_text.empty() ? Distribution::uniform(grid) : io::parse_distribution(grid, dist_text);
            BoundFn b = bound_kind == "constant"          ? constant_bound(grid)
                        : bound_kind == "quantile-approx" ? quantile_approx_bound(quantile_i, g.alpha, g.epsilon)
                                                          : oracle_bound(grid, n, g.order, g.alpha, oracle_cfg(g));
            const auto rep = exact ? exact_coverage(f, b, n) : mc_coverage(f, b, n, trials, g.seed);
            emit(g, "coverage", io::to_json(rep));
            return 0;
        }

        if (*verify) {
            const auto grid = grid_of(g);
            const auto cfg = oracle_cfg(g);
            std::vector<VerifyReport> reports;
            auto consistency = [&](const std::string& sel, int n) {
                const auto omega = enumerate_omega(grid, n);
                std::map<Sample, double> values;
                for (const auto& x : omega)
                    values.emplace(x, pessimal_bound_oracle(x, parse_order(sel, x), g.alpha, cfg, omega).value);
                auto r = verify_consistency(parse_order(sel, omega.front()), values, omega,
                                            default_value_tolerance(grid, cfg));
                r.theorem += ":" + sel;
                return r;
            };
            auto agreement = [&](const Sample& x, const std::string& sel, std::uint64_t seed) {
                auto r = verify_agreement(x, parse_order(sel, x), agree_trials, seed);
                r.theorem += ":" + sel + ":" + x.to_string();
                return r;
            };

            if (campaign == "sandwich") {
                reports.push_back(verify_sandwich(grid, sample_size(g), g.alpha, cfg));
            } else if (campaign == "consistency") {
                reports.push_back(consistency(g.order, sample_size(g)));
            } else if (campaign == "agreement") {
                reports.push_back(agreement(require_sample(g), g.order, g.seed));
            } else {
                const int n = sample_size(g);
                std::vector<std::string> selectors{"lexi-low", "lexi-high"};
                for (int i = 1; i <= n; ++i) selectors.push_back("quantile:" + std::to_string(i));
                reports.push_back(verify_sandwich(grid, n, g.alpha, cfg));
                for (const auto& sel : selectors) reports.push_back(consistency(sel, n));
                std::uint64_t seed = g.seed;
                for (const auto& x : enumerate_omega(grid, n)) {
                    reports.push_back(agreement(x, "lexi-low", seed++));
                    for (int i = 1; i <= n; ++i) reports.push_back(agreement(x, "quantile:" + std::to_string(i), seed++));
                }
                reports.push_back(verify_refinement(grid, n, g.alpha, cfg));
                reports.push_back(verify_mean_lipschitz(grid, 1000, g.seed));
            }
            bool pass = true;
            for (const auto& r : reports) pass = pass && r.pass();
            if (reports.size() == 1)
                emit(g, "verify", io::to_json(reports.front()));
            else
                emit(g, "verify", report_list(reports));
            return pass ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
