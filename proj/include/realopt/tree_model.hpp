#pragma once

// Data model for two-active-stage binomial option trees and two-scenario
// DCF projects. Amounts are in abstract thousands of currency ($K); rates are
// per-period decimals.

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "realopt/error.hpp"

namespace realopt {

// ---------------------------------------------------------------------------
// Cash-flow distributions
// ---------------------------------------------------------------------------

struct Deterministic {
    double value = 0.0;
    bool operator==(const Deterministic&) const = default;
};

struct Gaussian {
    double mean = 0.0;
    double sd = 0.0;
    bool operator==(const Gaussian&) const = default;
};

struct Uniform {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const Uniform&) const = default;
};

enum class DistKind { deterministic, gaussian, uniform };

/// A per-period cash flow: a fixed amount, a Gaussian, or a uniform interval.
/// Parameters are not checked on construction; `validate` reports problems.
class CashFlowDist {
public:
    using Params = std::variant<Deterministic, Gaussian, Uniform>;

    CashFlowDist() = default;
    CashFlowDist(double value) : params_(Deterministic{value}) {}  // NOLINT: implicit by intent
    CashFlowDist(Deterministic d) : params_(d) {}
    CashFlowDist(Gaussian g) : params_(g) {}
    CashFlowDist(Uniform u) : params_(u) {}

    static CashFlowDist deterministic(double value) { return Deterministic{value}; }
    static CashFlowDist gaussian(double mean, double sd) { return Gaussian{mean, sd}; }
    /// sd = |mean| * cv
    static CashFlowDist gaussian_cv(double mean, double cv);
    static CashFlowDist uniform(double lo, double hi) { return Uniform{lo, hi}; }

    DistKind kind() const noexcept { return static_cast<DistKind>(params_.index()); }
    const Params& params() const noexcept { return params_; }

    double mean() const noexcept;
    double variance() const noexcept;
    double sd() const noexcept;

    /// True when the distribution has zero spread and can stand in for a scalar.
    bool degenerate() const noexcept { return variance() == 0.0; }

    bool operator==(const CashFlowDist&) const = default;

private:
    Params params_{Deterministic{}};
};

std::string_view to_string(DistKind kind) noexcept;

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct Violation {
    std::string path;
    std::string message;
    bool operator==(const Violation&) const = default;
};

class ValidationReport {
public:
    void add(std::string path, std::string message) {
        items_.push_back({std::move(path), std::move(message)});
    }
    bool ok() const noexcept { return items_.empty(); }
    const std::vector<Violation>& violations() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }

    /// One "path: message" line per violation.
    std::string to_string() const;

private:
    std::vector<Violation> items_;
};

/// Thrown when an operation receives a model that fails validation.
class InvalidModel : public Error {
public:
    explicit InvalidModel(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

void validate_dist(const CashFlowDist& dist, const std::string& path, ValidationReport& report);

// ---------------------------------------------------------------------------
// Option tree
// ---------------------------------------------------------------------------

/// Probability that a branch materializes and the extra cash it triggers
/// (negative = additional investment, positive = inflow).
struct BranchControl {
    double p = 0.0;
    CashFlowDist delta;
    bool operator==(const BranchControl&) const = default;
};

/// Stage-3 outcome: probability and flows for periods 3..n.
struct TerminalBranch {
    double p = 0.0;
    std::vector<CashFlowDist> flows;
    bool operator==(const TerminalBranch&) const = default;
};

struct StageTwoBranch {
    BranchControl control;
    CashFlowDist flow;  // CF_2
    std::array<TerminalBranch, 2> outcomes;
    bool operator==(const StageTwoBranch&) const = default;
};

struct StageOneBranch {
    BranchControl control;
    CashFlowDist flow;  // CF_1
    std::array<StageTwoBranch, 2> outcomes;
    bool operator==(const StageOneBranch&) const = default;
};

/// Binomial tree with decisions at t = 1 and t = 2 and a terminal scenario
/// split at t = 3. Branch indices are 0-based in code and 1-based in reports.
struct OptionTree {
    double initial_investment = 0.0;
    double rate = 0.0;
    int horizon = 3;
    std::array<StageOneBranch, 2> stage1;

    const StageOneBranch& branch(int i) const { return stage1.at(i); }
    const StageTwoBranch& branch(int i, int j) const { return stage1.at(i).outcomes.at(j); }
    const TerminalBranch& branch(int i, int j, int l) const {
        return stage1.at(i).outcomes.at(j).outcomes.at(l);
    }

    bool operator==(const OptionTree&) const = default;
};

/// Tolerance on sibling probabilities summing to one.
inline constexpr double kProbabilitySumTolerance = 1e-12;

ValidationReport validate_tree(const OptionTree& tree);

struct PathProbability {
    int i = 0;  // 0-based stage-1 index
    int j = 0;
    int l = 0;
    double probability = 0.0;
};

/// The eight root-to-leaf paths with their probabilities, ordered (i, j, l)
/// lexicographically. Throws InvalidModel for an invalid tree.
std::vector<PathProbability> path_probabilities(const OptionTree& tree);

// ---------------------------------------------------------------------------
// Two-scenario DCF project
// ---------------------------------------------------------------------------

struct Scenario {
    double p = 0.0;
    std::vector<double> flows;  // k = 1..n
    bool operator==(const Scenario&) const = default;
};

struct TwoScenarioProject {
    double investment = 0.0;
    double rate = 0.0;
    std::array<Scenario, 2> scenarios;
    bool operator==(const TwoScenarioProject&) const = default;
};

ValidationReport validate_project(const TwoScenarioProject& project);

/// Embeds a two-scenario project in an option tree: the scenario split happens
/// at t = 1, later stages are certain, all deltas are zero. Needs n >= 3.
OptionTree as_option_tree(const TwoScenarioProject& project);

/// Throws InvalidModel unless the report is empty.
void require_valid(const ValidationReport& report);

}  // namespace realopt
