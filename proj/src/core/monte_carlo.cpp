#include "realopt/monte_carlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <thread>

#include "realopt/normal.hpp"

namespace realopt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// The one-stage option valued with p as a weight:
//   V = (CF1 - p*I1)/(1+r) + sum_{k>=2} CF_k (1 + p g) / (1+r)^k
double brcf_expectation(const BrcfOneStageModel& m, RandomStream& stream) {
    const double growth = 1.0 + m.rate;
    const double p = m.option_probability;
    const double uplift = 1.0 + p * m.growth;
    const double invest = draw(m.additional_investment, stream);

    double discount = growth;
    double value = (p * -invest + draw(m.base_flows[0], stream)) / growth;
    for (std::size_t k = 1; k < m.base_flows.size(); ++k) {
        discount *= growth;
        value += draw(m.base_flows[k], stream) * uplift / discount;
    }
    return value;
}

// Realized branch: with probability p the option path
//   V_O = -I1 + CF1 + sum_{k>=2} CF_k (1+g) / (1+r)^(k-1)
// otherwise the base path V_B = sum CF_k / (1+r)^(k-1); both discounted once more.
double brcf_branch(const BrcfOneStageModel& m, RandomStream& stream) {
    const double growth = 1.0 + m.rate;
    const bool exercised = stream.next_unit() < m.option_probability;
    const double invest = draw(m.additional_investment, stream);
    const double uplift = exercised ? 1.0 + m.growth : 1.0;

    double value = draw(m.base_flows[0], stream) - (exercised ? invest : 0.0);
    double discount = 1.0;
    for (std::size_t k = 1; k < m.base_flows.size(); ++k) {
        discount *= growth;
        value += draw(m.base_flows[k], stream) * uplift / discount;
    }
    return value / growth;
}

double tree_branch(const OptionTree& tree, RandomStream& stream) {
    const double u1 = stream.next_unit();
    const double u2 = stream.next_unit();
    const double u3 = stream.next_unit();
    const int i = u1 < tree.branch(0).control.p ? 0 : 1;
    const int j = u2 < tree.branch(i, 0).control.p ? 0 : 1;
    const int l = u3 < tree.branch(i, j, 0).p ? 0 : 1;

    const auto& b1 = tree.branch(i);
    const auto& b2 = tree.branch(i, j);
    const auto& b3 = tree.branch(i, j, l);
    const double growth = 1.0 + tree.rate;

    double discount = growth;
    double value = (draw(b1.flow, stream) + draw(b1.control.delta, stream)) / discount;
    discount *= growth;
    value += (draw(b2.flow, stream) + draw(b2.control.delta, stream)) / discount;
    for (const auto& cf : b3.flows) {
        discount *= growth;
        value += draw(cf, stream) / discount;
    }
    return value;
}

void check_spec(const SimulationSpec& spec) {
    if (spec.samples < 1) throw_usage("sample count must be >= 1");
    if (!(spec.alpha > 0.0 && spec.alpha <= 0.5))
        throw_usage("alpha must lie in (0, 0.5], got " + std::to_string(spec.alpha));
    std::visit(overloaded{
                   [&](const BrcfOneStageModel& m) { require_valid(validate_model(m)); },
                   [&](const OptionTree& t) {
                       require_valid(validate_tree(t));
                       if (spec.mode == SimulationMode::expectation_form)
                           throw_usage(
                               "expectation_form is defined only for the one-stage model; "
                               "simulate option trees with branch_sampling");
                   },
               },
               spec.model);
}

}  // namespace

double RandomStream::next_normal() noexcept { return inverse_normal_cdf(next_unit()); }

std::string_view to_string(SimulationMode mode) noexcept {
    return mode == SimulationMode::expectation_form ? "expectation_form" : "branch_sampling";
}

double draw(const CashFlowDist& dist, RandomStream& stream) {
    return std::visit(overloaded{
                          [](const Deterministic& d) { return d.value; },
                          [&](const Gaussian& g) { return g.mean + g.sd * stream.next_normal(); },
                          [&](const Uniform& u) { return u.lo + (u.hi - u.lo) * stream.next_unit(); },
                      },
                      dist.params());
}

double replicate(const SimulationSpec& spec, std::uint64_t replication) {
    RandomStream stream(spec.seed, replication);
    return std::visit(overloaded{
                          [&](const BrcfOneStageModel& m) {
                              return spec.mode == SimulationMode::expectation_form
                                         ? brcf_expectation(m, stream)
                                         : brcf_branch(m, stream);
                          },
                          [&](const OptionTree& t) { return tree_branch(t, stream); },
                      },
                      spec.model);
}

SimulationResult simulate(const SimulationSpec& spec) {
    check_spec(spec);
    const std::uint64_t total = spec.samples;
    std::vector<double> values(total);

    std::uint64_t workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::clamp<std::uint64_t>(workers, 1, total);
    const std::uint64_t chunk = (total + workers - 1) / workers;

    auto run = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t r = begin; r < end; ++r) values[r] = replicate(spec, r);
    };
    if (workers == 1) {
        run(0, total);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t begin = w * chunk;
            const std::uint64_t end = std::min(total, begin + chunk);
            if (begin < end) pool.emplace_back(run, begin, end);
        }
    }

    SimulationResult result = summarize(std::move(values), spec.alpha);
    result.seed = spec.seed;
    result.mode = spec.mode;
    return result;
}

double empirical_quantile(const std::vector<double>& sorted, double alpha) {
    const double pos = alpha * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

SimulationResult summarize(std::vector<double> values, double alpha) {
    if (values.empty()) throw_usage("cannot summarize an empty sample");
    SimulationResult r;
    r.alpha = alpha;
    r.samples = values.size();
    const double m = static_cast<double>(values.size());

    // Shift by the first value so identical samples give an exact mean and
    // a zero sd.
    const double shift = values.front();
    double sum = 0.0;
    for (double v : values) sum += v - shift;
    r.mean = shift + sum / m;

    double ss = 0.0;
    for (double v : values) ss += (v - r.mean) * (v - r.mean);
    r.sd = values.size() > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;

    std::sort(values.begin(), values.end());
    r.pv_alpha = empirical_quantile(values, alpha);
    r.pvar = r.mean - r.pv_alpha;

    const double lo = values.front();
    const double hi = values.back();
    if (hi == lo) {
        r.histogram.push_back({lo, 0.0, r.samples});
    } else {
        const double width = (hi - lo) / static_cast<double>(kHistogramBuckets);
        r.histogram.resize(kHistogramBuckets);
        for (std::size_t b = 0; b < kHistogramBuckets; ++b)
            r.histogram[b] = {lo + static_cast<double>(b) * width, width, 0};
        for (double v : values) {
            auto b = static_cast<std::size_t>((v - lo) / width);
            r.histogram[std::min(b, kHistogramBuckets - 1)].count++;
        }
    }
    return r;
}

Comparison compare(const SimulationResult& option, const SimulationResult& baseline) {
    if (option.alpha != baseline.alpha) throw_usage("results must share alpha to be compared");
    Comparison c;
    c.option = option;
    c.baseline = baseline;
    c.mean_diff = option.mean - baseline.mean;
    c.sd_diff = option.sd - baseline.sd;
    c.pvar_diff = option.pvar - baseline.pvar;
    c.option_value = option.pv_alpha - baseline.pv_alpha;
    return c;
}

void write_histogram_csv(std::ostream& out, const SimulationResult& result) {
    auto num = [](double x) {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
        return std::string(buf, end);
    };
    out << "bucket_lo,bucket_width,count\n";
    for (const auto& b : result.histogram) out << num(b.lo) << ',' << num(b.width) << ',' << b.count << '\n';
}

}  // namespace realopt
