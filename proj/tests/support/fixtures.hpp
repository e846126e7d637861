#pragma once

// Worked-example models and a random valid-tree generator shared by tests.

#include <random>
#include <vector>

#include "realopt/brcf.hpp"
#include "realopt/tree_model.hpp"

namespace realopt::testing {

inline TwoScenarioProject base_project() {
    TwoScenarioProject p;
    p.investment = 5000;
    p.rate = 0.2;
    p.scenarios[0] = {0.5, {2000, 2400, 2600, 3500}};
    p.scenarios[1] = {0.5, {1000, 1200, 1300, 2000}};
    return p;
}

/// Stage-2 pair where the first branch is certain and both share flows.
inline std::array<StageTwoBranch, 2> certain_stage2(double cf2, std::vector<CashFlowDist> tail, double delta = 0) {
    StageTwoBranch b;
    b.control = {1.0, delta};
    b.flow = cf2;
    b.outcomes = {TerminalBranch{1.0, tail}, TerminalBranch{0.0, tail}};
    StageTwoBranch never = b;
    never.control.p = 0.0;
    return {b, never};
}

inline OptionTree reduction_tree() {
    OptionTree t;
    t.initial_investment = 5000;
    t.rate = 0.2;
    t.horizon = 4;
    t.stage1[0] = {{0.5, 0.0}, 2000, certain_stage2(2400, {2600, 3500})};
    t.stage1[1] = {{0.5, -100.0}, 1000, certain_stage2(1440, {1560, 2400})};
    return t;
}

inline OptionTree switching_tree() {
    OptionTree t = reduction_tree();
    auto& pessimistic = t.stage1[1];
    pessimistic.outcomes[0].control = {0.5, -500.0};
    pessimistic.outcomes[0].flow = 1440;
    pessimistic.outcomes[0].outcomes = {TerminalBranch{1.0, {3200, 4200}}, TerminalBranch{0.0, {3200, 4200}}};
    pessimistic.outcomes[1].control = {0.5, -500.0};
    pessimistic.outcomes[1].flow = 1440;
    pessimistic.outcomes[1].outcomes = {TerminalBranch{1.0, {2200, 3500}}, TerminalBranch{0.0, {2200, 3500}}};
    return t;
}

/// Gaussian flows given by mean and coefficient of variation.
inline std::vector<CashFlowDist> gaussian_flows() {
    return {CashFlowDist::gaussian_cv(2000, 0.10), CashFlowDist::gaussian_cv(2100, 0.12),
            CashFlowDist::gaussian_cv(2200, 0.14), CashFlowDist::gaussian_cv(2300, 0.16)};
}

inline std::vector<CashFlowDist> uniform_flows() {
    return {CashFlowDist::uniform(1800, 2200), CashFlowDist::uniform(1848, 2352),
            CashFlowDist::uniform(1892, 2508), CashFlowDist::uniform(1932, 2668)};
}

inline BrcfOneStageModel base_model(std::vector<CashFlowDist> flows) {
    BrcfOneStageModel m;
    m.base_flows = std::move(flows);
    m.rate = 0.2;
    m.initial_investment = 5000;
    return m;
}

inline BrcfOneStageModel option_model(std::vector<CashFlowDist> flows) {
    BrcfOneStageModel m = base_model(std::move(flows));
    m.option_probability = 0.5;
    m.additional_investment = CashFlowDist::gaussian(500, 50);
    m.growth = 0.2;
    return m;
}

/// Random valid deterministic trees: probabilities uniform in [0, 1]
/// (sibling pairs p, 1 - p), flows and deltas uniform in [-5000, 5000],
/// r in [0.01, 0.5], n in [3, 10].
class RandomTrees {
public:
    explicit RandomTrees(std::uint64_t seed) : gen_(seed) {}

    OptionTree next() {
        std::uniform_real_distribution<double> prob(0.0, 1.0);
        std::uniform_real_distribution<double> money(-5000.0, 5000.0);
        std::uniform_real_distribution<double> rate(0.01, 0.5);
        std::uniform_int_distribution<int> horizon(3, 10);

        OptionTree t;
        t.initial_investment = std::abs(money(gen_));
        t.rate = rate(gen_);
        t.horizon = horizon(gen_);
        const double p1 = prob(gen_);
        for (int i = 0; i < 2; ++i) {
            auto& b1 = t.stage1[i];
            b1.control = {i == 0 ? p1 : 1.0 - p1, money(gen_)};
            b1.flow = money(gen_);
            const double p2 = prob(gen_);
            for (int j = 0; j < 2; ++j) {
                auto& b2 = b1.outcomes[j];
                b2.control = {j == 0 ? p2 : 1.0 - p2, money(gen_)};
                b2.flow = money(gen_);
                const double p3 = prob(gen_);
                for (int l = 0; l < 2; ++l) {
                    auto& b3 = b2.outcomes[l];
                    b3.p = l == 0 ? p3 : 1.0 - p3;
                    b3.flows.clear();
                    for (int k = 3; k <= t.horizon; ++k) b3.flows.push_back(money(gen_));
                }
            }
        }
        return t;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

/// |a - b| <= tol * max(|a|, |b|, 1)
inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace realopt::testing
