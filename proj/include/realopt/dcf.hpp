#pragma once

// Deterministic discounted-cash-flow valuation: plain present value, the
// two-scenario expectation, and the backward rollback over an option tree.

#include <array>
#include <span>

#include "realopt/tree_model.hpp"

namespace realopt {

/// How random distributions are turned into scalars for deterministic
/// valuation. `strict` accepts only zero-variance distributions.
enum class Projection { strict, means };

/// Sum of flows[k-1] / (1 + rate)^k for k = 1..n. An empty vector is worth 0.
/// Throws a domain Error when rate <= -1.
double present_value(std::span<const double> flows, double rate);

struct TwoScenarioValue {
    double v0 = 0.0;
    double npv = 0.0;
    std::array<double, 2> scenario_values{};  // PV of each scenario at t = 0
    std::array<double, 2> time1_values{};     // value at t = 1 including CF_1
};

TwoScenarioValue two_scenario_value(const TwoScenarioProject& project);

/// Node values of a rolled-back option tree. `v1`, `v2` carry their own
/// period's flow and delta; `v3` carries the undiscounted period-3 flow.
struct ValuationResult {
    double v0 = 0.0;
    double npv = 0.0;
    double rate = 0.0;
    std::array<double, 2> v1{};
    std::array<std::array<double, 2>, 2> v2{};
    std::array<std::array<std::array<double, 2>, 2>, 2> v3{};

    /// V3 expressed at t = 2, i.e. V3 / (1 + r).
    double continuation(int i, int j, int l) const { return v3[i][j][l] / (1.0 + rate); }
};

ValuationResult rollback(const OptionTree& tree, Projection projection = Projection::strict);

/// V0 from the expanded single-sum form; agrees with rollback().v0.
double closed_form_value(const OptionTree& tree, Projection projection = Projection::strict);

/// Value added by an option: NPV with the option minus NPV without it.
double option_value(double npv_with, double npv_without);

}  // namespace realopt
