#include "realopt/brcf.hpp"

#include <cmath>
#include <string>

namespace realopt {

namespace {

void require_gaussian(const CashFlowDist& dist, const char* what) {
    if (dist.kind() == DistKind::uniform)
        throw_usage(std::string("analytic moments need Gaussian inputs; ") + what +
                    " is uniform (use Monte Carlo simulation)");
}

}  // namespace

bool BrcfOneStageModel::null_option() const noexcept {
    return option_probability == 0.0 && growth == 0.0 &&
           additional_investment == CashFlowDist::deterministic(0.0);
}

ValidationReport validate_model(const BrcfOneStageModel& model) {
    ValidationReport report;
    if (!std::isfinite(model.rate) || model.rate <= -1.0) report.add("rate", "rate must be finite and > -1");
    if (!std::isfinite(model.initial_investment) || model.initial_investment < 0.0)
        report.add("investment", "initial investment must be finite and >= 0");
    if (model.base_flows.empty()) report.add("flows", "at least one flow required");
    for (std::size_t k = 0; k < model.base_flows.size(); ++k)
        validate_dist(model.base_flows[k], "flows[" + std::to_string(k + 1) + "]", report);
    const double p = model.option_probability;
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) report.add("option.p", "probability outside [0, 1]");
    if (!std::isfinite(model.growth) || model.growth <= -1.0)
        report.add("option.growth", "growth must be finite and > -1");
    validate_dist(model.additional_investment, "option.additional_investment", report);
    return report;
}

PvMoments pv_moments(std::span<const CashFlowDist> flows, double rate) {
    if (!(rate > -1.0)) throw_domain("discount rate must be > -1");
    const double growth = 1.0 + rate;
    double discount = 1.0;
    double mean = 0.0;
    double var = 0.0;
    for (const auto& cf : flows) {
        require_gaussian(cf, "a cash flow");
        discount *= growth;
        mean += cf.mean() / discount;
        var += cf.variance() / (discount * discount);
    }
    return {mean, std::sqrt(var)};
}

PvMoments option_moments(const BrcfOneStageModel& model) {
    require_valid(validate_model(model));
    require_gaussian(model.additional_investment, "the additional investment");
    for (const auto& cf : model.base_flows) require_gaussian(cf, "a cash flow");

    const double growth = 1.0 + model.rate;
    const double p = model.option_probability;
    const double uplift = 1.0 + p * model.growth;
    const auto& flows = model.base_flows;

    double mean = (p * -model.additional_investment.mean() + flows[0].mean()) / growth;
    double var = (p * p * model.additional_investment.variance() + flows[0].variance()) / (growth * growth);
    double discount = growth;
    for (std::size_t k = 1; k < flows.size(); ++k) {
        discount *= growth;
        mean += flows[k].mean() * uplift / discount;
        var += flows[k].variance() * uplift * uplift / (discount * discount);
    }
    return {mean, std::sqrt(var)};
}

RiskReport pv_alpha(double mean, double sd, double alpha, QuantileMode mode) {
    if (!(sd >= 0.0)) throw_usage("standard deviation must be >= 0");
    RiskReport r;
    r.mean = mean;
    r.sd = sd;
    r.alpha = alpha;
    r.mode = mode;
    r.z = upper_quantile(alpha, mode);
    r.pvar = r.z * sd;
    r.pv_alpha = mean - r.pvar;
    return r;
}

bool feasibility(double pv_alpha, double investment) { return pv_alpha >= investment; }

RiskReport assess(RiskReport report, double investment) {
    report.investment = investment;
    report.feasible = feasibility(report.pv_alpha, investment);
    return report;
}

double brcf_option_value(const RiskReport& with_option, const RiskReport& without_option) {
    if (with_option.alpha != without_option.alpha || with_option.mode != without_option.mode)
        throw_usage("risk reports must share alpha and quantile mode");
    return with_option.pv_alpha - without_option.pv_alpha;
}

}  // namespace realopt
