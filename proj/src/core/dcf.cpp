#include "realopt/dcf.hpp"

#include <cmath>
#include <string>

namespace realopt {

namespace {

void require_rate(double rate) {
    if (!(rate > -1.0)) throw_domain("discount rate must be > -1, got " + std::to_string(rate));
}

double scalar(const CashFlowDist& dist, Projection projection, const char* what) {
    if (projection == Projection::strict && !dist.degenerate())
        throw_usage(std::string("random ") + std::string(to_string(dist.kind())) + " distribution at " +
                    what + " needs an explicit mean projection");
    return dist.mean();
}

void check_tree(const OptionTree& tree) {
    require_rate(tree.rate);
    require_valid(validate_tree(tree));
}

}  // namespace

double present_value(std::span<const double> flows, double rate) {
    require_rate(rate);
    const double growth = 1.0 + rate;
    double discount = 1.0;
    double total = 0.0;
    for (double cf : flows) {
        discount *= growth;
        total += cf / discount;
    }
    return total;
}

TwoScenarioValue two_scenario_value(const TwoScenarioProject& project) {
    require_rate(project.rate);
    require_valid(validate_project(project));
    TwoScenarioValue out;
    for (int i = 0; i < 2; ++i) {
        const auto& s = project.scenarios[i];
        out.scenario_values[i] = present_value(s.flows, project.rate);
        out.v0 += s.p * out.scenario_values[i];
        out.time1_values[i] = out.scenario_values[i] * (1.0 + project.rate);
    }
    out.npv = out.v0 - project.investment;
    return out;
}

ValuationResult rollback(const OptionTree& tree, Projection projection) {
    check_tree(tree);
    const double growth = 1.0 + tree.rate;
    ValuationResult out;
    out.rate = tree.rate;

    double root = 0.0;
    for (int i = 0; i < 2; ++i) {
        const auto& b1 = tree.branch(i);
        double expected_v2 = 0.0;
        for (int j = 0; j < 2; ++j) {
            const auto& b2 = b1.outcomes[j];
            double expected_v3 = 0.0;
            for (int l = 0; l < 2; ++l) {
                const auto& b3 = b2.outcomes[l];
                // Horner from the last period back to period 3.
                double v3 = 0.0;
                for (auto it = b3.flows.rbegin(); it != b3.flows.rend(); ++it)
                    v3 = scalar(*it, projection, "stage3 flow") + v3 / growth;
                out.v3[i][j][l] = v3;
                expected_v3 += b3.p * v3;
            }
            out.v2[i][j] = scalar(b2.flow, projection, "stage2 flow") +
                           scalar(b2.control.delta, projection, "stage2 delta") + expected_v3 / growth;
            expected_v2 += b2.control.p * out.v2[i][j];
        }
        out.v1[i] = scalar(b1.flow, projection, "stage1 flow") +
                    scalar(b1.control.delta, projection, "stage1 delta") + expected_v2 / growth;
        root += b1.control.p * out.v1[i];
    }
    out.v0 = root / growth;
    out.npv = out.v0 - tree.initial_investment;
    return out;
}

double closed_form_value(const OptionTree& tree, Projection projection) {
    check_tree(tree);
    const double growth = 1.0 + tree.rate;
    double first = 0.0;
    double second = 0.0;
    double tail = 0.0;
    for (int i = 0; i < 2; ++i) {
        const auto& b1 = tree.branch(i);
        const double p1 = b1.control.p;
        first += p1 * (scalar(b1.flow, projection, "stage1 flow") +
                       scalar(b1.control.delta, projection, "stage1 delta"));
        for (int j = 0; j < 2; ++j) {
            const auto& b2 = b1.outcomes[j];
            const double p12 = p1 * b2.control.p;
            second += p12 * (scalar(b2.flow, projection, "stage2 flow") +
                             scalar(b2.control.delta, projection, "stage2 delta"));
            for (int l = 0; l < 2; ++l) {
                const auto& b3 = b2.outcomes[l];
                const double p123 = p12 * b3.p;
                for (std::size_t m = 0; m < b3.flows.size(); ++m) {
                    const int k = static_cast<int>(m) + 3;
                    tail += p123 * scalar(b3.flows[m], projection, "stage3 flow") / std::pow(growth, k);
                }
            }
        }
    }
    return first / growth + second / (growth * growth) + tail;
}

double option_value(double npv_with, double npv_without) { return npv_with - npv_without; }

}  // namespace realopt
