#pragma once

// Binomial-random-cash-flow model with Gaussian flows: analytic moments of
// project value, the lower confidence bound PV_alpha and the PVaR, and the
// one-stage growth option.

#include <optional>
#include <span>
#include <vector>

#include "realopt/normal.hpp"
#include "realopt/tree_model.hpp"

namespace realopt {

/// Base project plus a single option decided at t = 1: with probability p,
/// invest I1 (a positive magnitude, paid as an outflow) and grow every flow
/// from period 2 on by g.
struct BrcfOneStageModel {
    std::vector<CashFlowDist> base_flows;  // k = 1..n
    double rate = 0.0;
    double option_probability = 0.0;
    CashFlowDist additional_investment;
    double growth = 0.0;
    double initial_investment = 0.0;  // I0, used for the feasibility verdict

    /// True for p = 0, g = 0 and I1 == 0: the option block is absent.
    bool null_option() const noexcept;

    bool operator==(const BrcfOneStageModel&) const = default;
};

ValidationReport validate_model(const BrcfOneStageModel& model);

struct PvMoments {
    double mean = 0.0;
    double sd = 0.0;
};

/// Mean and sd of sum CF_k / (1+r)^k for independent Gaussian (or fixed)
/// flows. Uniform flows are rejected with a usage Error.
PvMoments pv_moments(std::span<const CashFlowDist> flows, double rate);

/// Mean and sd of the option-weighted project value.
PvMoments option_moments(const BrcfOneStageModel& model);

struct RiskReport {
    double mean = 0.0;
    double sd = 0.0;
    double alpha = 0.05;
    QuantileMode mode = QuantileMode::exact;
    double z = 0.0;
    double pvar = 0.0;      // z * sd
    double pv_alpha = 0.0;  // mean - pvar
    std::optional<double> investment;
    std::optional<bool> feasible;
};

RiskReport pv_alpha(double mean, double sd, double alpha, QuantileMode mode = QuantileMode::exact);
inline RiskReport pv_alpha(PvMoments m, double alpha, QuantileMode mode = QuantileMode::exact) {
    return pv_alpha(m.mean, m.sd, alpha, mode);
}

/// Feasible iff pv_alpha >= investment; a tie counts as feasible.
bool feasibility(double pv_alpha, double investment);

/// Records the verdict against `investment` in the report.
RiskReport assess(RiskReport report, double investment);

/// Difference of the lower confidence bounds. Reports must share alpha and mode.
double brcf_option_value(const RiskReport& with_option, const RiskReport& without_option);

}  // namespace realopt
