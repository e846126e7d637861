#include "realopt/tree_model.hpp"

#include <cmath>
#include <sstream>

namespace realopt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string idx(int i) { return "[" + std::to_string(i + 1) + "]"; }

void check_probability(double p, const std::string& path, ValidationReport& report) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        std::ostringstream msg;
        msg << "probability " << p << " outside [0, 1]";
        report.add(path, msg.str());
    }
}

void check_pair_sum(double a, double b, const std::string& path, ValidationReport& report) {
    const double sum = a + b;
    if (!(std::abs(sum - 1.0) <= kProbabilitySumTolerance)) {
        std::ostringstream msg;
        msg << "sibling probabilities sum to " << sum << ", expected 1";
        report.add(path, msg.str());
    }
}

void check_rate(double rate, const std::string& path, ValidationReport& report) {
    if (!std::isfinite(rate) || rate <= -1.0) {
        std::ostringstream msg;
        msg << "rate " << rate << " must be finite and > -1";
        report.add(path, msg.str());
    }
}

void check_investment(double amount, const std::string& path, ValidationReport& report) {
    if (!std::isfinite(amount) || amount < 0.0) {
        std::ostringstream msg;
        msg << "initial investment " << amount << " must be finite and >= 0";
        report.add(path, msg.str());
    }
}

}  // namespace

CashFlowDist CashFlowDist::gaussian_cv(double mean, double cv) {
    return Gaussian{mean, std::abs(mean) * cv};
}

double CashFlowDist::mean() const noexcept {
    return std::visit(overloaded{
                          [](const Deterministic& d) { return d.value; },
                          [](const Gaussian& g) { return g.mean; },
                          [](const Uniform& u) { return 0.5 * (u.lo + u.hi); },
                      },
                      params_);
}

double CashFlowDist::variance() const noexcept {
    return std::visit(overloaded{
                          [](const Deterministic&) { return 0.0; },
                          [](const Gaussian& g) { return g.sd * g.sd; },
                          [](const Uniform& u) {
                              const double w = u.hi - u.lo;
                              return w * w / 12.0;
                          },
                      },
                      params_);
}

double CashFlowDist::sd() const noexcept {
    return std::visit(overloaded{
                          [](const Deterministic&) { return 0.0; },
                          [](const Gaussian& g) { return g.sd; },
                          [](const Uniform& u) { return (u.hi - u.lo) / std::sqrt(12.0); },
                      },
                      params_);
}

std::string_view to_string(DistKind kind) noexcept {
    switch (kind) {
        case DistKind::deterministic: return "deterministic";
        case DistKind::gaussian: return "gaussian";
        case DistKind::uniform: return "uniform";
    }
    return "unknown";
}

std::string ValidationReport::to_string() const {
    std::string out;
    for (const auto& v : items_) {
        out += v.path;
        out += ": ";
        out += v.message;
        out += '\n';
    }
    return out;
}

InvalidModel::InvalidModel(ValidationReport report)
    : Error(ErrorKind::input, "invalid model:\n" + report.to_string()), report_(std::move(report)) {}

void require_valid(const ValidationReport& report) {
    if (!report.ok()) throw InvalidModel(report);
}

void validate_dist(const CashFlowDist& dist, const std::string& path, ValidationReport& report) {
    std::visit(overloaded{
                   [&](const Deterministic& d) {
                       if (!std::isfinite(d.value)) report.add(path, "value must be finite");
                   },
                   [&](const Gaussian& g) {
                       if (!std::isfinite(g.mean)) report.add(path + ".mean", "mean must be finite");
                       if (!std::isfinite(g.sd) || g.sd < 0.0)
                           report.add(path + ".sd", "standard deviation must be finite and >= 0");
                   },
                   [&](const Uniform& u) {
                       if (!std::isfinite(u.lo) || !std::isfinite(u.hi))
                           report.add(path, "uniform bounds must be finite");
                       else if (u.lo > u.hi)
                           report.add(path, "uniform bounds require lo <= hi");
                   },
               },
               dist.params());
}

ValidationReport validate_tree(const OptionTree& tree) {
    ValidationReport report;
    check_investment(tree.initial_investment, "investment", report);
    check_rate(tree.rate, "rate", report);
    const bool horizon_ok = tree.horizon >= 3;
    if (!horizon_ok) report.add("horizon", "horizon must be >= 3 periods");
    const auto terminal_len = horizon_ok ? static_cast<std::size_t>(tree.horizon - 2) : 0;

    check_pair_sum(tree.stage1[0].control.p, tree.stage1[1].control.p, "stage1.p", report);
    for (int i = 0; i < 2; ++i) {
        const auto& b1 = tree.stage1[i];
        const std::string p1 = "stage1" + idx(i);
        check_probability(b1.control.p, p1 + ".p", report);
        validate_dist(b1.control.delta, p1 + ".delta", report);
        validate_dist(b1.flow, p1 + ".flow", report);

        check_pair_sum(b1.outcomes[0].control.p, b1.outcomes[1].control.p, "stage2" + idx(i) + ".p", report);
        for (int j = 0; j < 2; ++j) {
            const auto& b2 = b1.outcomes[j];
            const std::string p2 = "stage2" + idx(i) + idx(j);
            check_probability(b2.control.p, p2 + ".p", report);
            validate_dist(b2.control.delta, p2 + ".delta", report);
            validate_dist(b2.flow, p2 + ".flow", report);

            check_pair_sum(b2.outcomes[0].p, b2.outcomes[1].p, "stage3" + idx(i) + idx(j) + ".p", report);
            for (int l = 0; l < 2; ++l) {
                const auto& b3 = b2.outcomes[l];
                const std::string p3 = "stage3" + idx(i) + idx(j) + idx(l);
                check_probability(b3.p, p3 + ".p", report);
                if (horizon_ok && b3.flows.size() != terminal_len) {
                    std::ostringstream msg;
                    msg << "expected " << terminal_len << " flows (periods 3.." << tree.horizon
                        << "), found " << b3.flows.size();
                    report.add(p3 + ".flows", msg.str());
                }
                for (std::size_t k = 0; k < b3.flows.size(); ++k)
                    validate_dist(b3.flows[k], p3 + ".flows[" + std::to_string(k + 1) + "]", report);
            }
        }
    }
    return report;
}

std::vector<PathProbability> path_probabilities(const OptionTree& tree) {
    require_valid(validate_tree(tree));
    std::vector<PathProbability> out;
    out.reserve(8);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l)
                out.push_back({i, j, l,
                               tree.branch(i).control.p * tree.branch(i, j).control.p *
                                   tree.branch(i, j, l).p});
    return out;
}

ValidationReport validate_project(const TwoScenarioProject& project) {
    ValidationReport report;
    check_investment(project.investment, "investment", report);
    check_rate(project.rate, "rate", report);
    check_pair_sum(project.scenarios[0].p, project.scenarios[1].p, "scenarios.p", report);
    for (int i = 0; i < 2; ++i) {
        const auto& s = project.scenarios[i];
        const std::string path = "scenarios" + idx(i);
        check_probability(s.p, path + ".p", report);
        if (s.flows.empty()) report.add(path + ".flows", "at least one flow required");
        for (std::size_t k = 0; k < s.flows.size(); ++k)
            if (!std::isfinite(s.flows[k]))
                report.add(path + ".flows[" + std::to_string(k + 1) + "]", "value must be finite");
    }
    if (project.scenarios[0].flows.size() != project.scenarios[1].flows.size())
        report.add("scenarios", "scenarios must share the same horizon");
    return report;
}

OptionTree as_option_tree(const TwoScenarioProject& project) {
    require_valid(validate_project(project));
    const auto n = project.scenarios[0].flows.size();
    if (n < 3) throw_usage("a two-scenario project needs at least 3 periods to form an option tree");

    OptionTree tree;
    tree.initial_investment = project.investment;
    tree.rate = project.rate;
    tree.horizon = static_cast<int>(n);
    for (int i = 0; i < 2; ++i) {
        const auto& flows = project.scenarios[i].flows;
        auto& b1 = tree.stage1[i];
        b1.control = {project.scenarios[i].p, 0.0};
        b1.flow = flows[0];
        std::vector<CashFlowDist> tail(flows.begin() + 2, flows.end());
        for (int j = 0; j < 2; ++j) {
            auto& b2 = b1.outcomes[j];
            b2.control = {j == 0 ? 1.0 : 0.0, 0.0};
            b2.flow = flows[1];
            b2.outcomes[0] = {1.0, tail};
            b2.outcomes[1] = {0.0, tail};
        }
    }
    return tree;
}

}  // namespace realopt
