#pragma once

// Seeded Monte Carlo estimation of project value. Each replication draws its
// inputs from its own substream, evaluates the value functional, and the
// sample is summarized by mean, unbiased sd, an empirical lower quantile, and
// a 50-bucket histogram.

#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

#include "realopt/brcf.hpp"
#include "realopt/philox.hpp"
#include "realopt/tree_model.hpp"

namespace realopt {

enum class SimulationMode {
    expectation_form,  // option probability enters the value functional as a weight
    branch_sampling,   // draw which branch materializes in each replication
};

std::string_view to_string(SimulationMode mode) noexcept;

using SimulationModel = std::variant<BrcfOneStageModel, OptionTree>;

inline constexpr std::uint64_t kDefaultSamples = 100'000;
inline constexpr std::size_t kHistogramBuckets = 50;

struct SimulationSpec {
    SimulationModel model;
    std::uint64_t samples = kDefaultSamples;
    std::uint64_t seed = 0;
    SimulationMode mode = SimulationMode::expectation_form;
    double alpha = 0.05;
    unsigned threads = 0;  // worker cap; 0 = hardware concurrency. Never affects results.
};

struct HistogramBucket {
    double lo = 0.0;
    double width = 0.0;
    std::uint64_t count = 0;
};

struct SimulationResult {
    double mean = 0.0;
    double sd = 0.0;        // divisor M - 1
    double pv_alpha = 0.0;  // empirical alpha-quantile
    double pvar = 0.0;      // mean - pv_alpha
    double alpha = 0.05;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    SimulationMode mode = SimulationMode::expectation_form;
    std::vector<HistogramBucket> histogram;
};

/// One draw from `dist`. Deterministic values consume no stream words;
/// Gaussian and uniform draws consume exactly one.
double draw(const CashFlowDist& dist, RandomStream& stream);

/// Value of a single replication; exposed for tests.
double replicate(const SimulationSpec& spec, std::uint64_t replication);

/// Evaluates every replication (possibly in parallel) and summarizes.
SimulationResult simulate(const SimulationSpec& spec);

/// Order-statistic quantile with linear interpolation at 1-based rank
/// alpha * (M - 1) + 1. `sorted` must be ascending and non-empty.
double empirical_quantile(const std::vector<double>& sorted, double alpha);

/// Summary of an already computed sample, in replication order.
SimulationResult summarize(std::vector<double> values, double alpha);

struct Comparison {
    SimulationResult option;
    SimulationResult baseline;
    double mean_diff = 0.0;
    double sd_diff = 0.0;
    double pvar_diff = 0.0;
    double option_value = 0.0;  // pv_alpha difference
};

/// Side-by-side statistics of two runs. Results must share alpha.
Comparison compare(const SimulationResult& option, const SimulationResult& baseline);

/// CSV with header `bucket_lo,bucket_width,count`, one row per bucket.
void write_histogram_csv(std::ostream& out, const SimulationResult& result);

}  // namespace realopt
