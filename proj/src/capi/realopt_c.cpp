#include "realopt/realopt.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "realopt/dcf.hpp"
#include "realopt/monte_carlo.hpp"
#include "realopt/scenario_io.hpp"

struct realopt_scenario {
    realopt::ScenarioDocument doc;
    std::string option_class;
};

struct realopt_simulation {
    realopt::SimulationResult result;
};

namespace {

thread_local std::string g_last_error;

realopt_status fail(realopt_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
realopt_status guarded(F&& body) noexcept {
    try {
        body();
        g_last_error.clear();
        return REALOPT_OK;
    } catch (const realopt::Error& e) {
        return fail(static_cast<realopt_status>(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(REALOPT_ERROR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(REALOPT_ERROR_INTERNAL, e.what());
    } catch (...) {
        return fail(REALOPT_ERROR_INTERNAL, "unknown error");
    }
}

#define REALOPT_REQUIRE(ptr)                                                          \
    do {                                                                              \
        if ((ptr) == nullptr) return fail(REALOPT_ERROR_USAGE, #ptr " must not be null"); \
    } while (0)

realopt_scenario* wrap(realopt::ScenarioDocument doc) {
    auto* s = new realopt_scenario{std::move(doc), {}};
    s->option_class = s->doc.metadata.option_class.value_or("");
    return s;
}

realopt_sim_summary to_summary(const realopt::SimulationResult& r) {
    realopt_sim_summary s{};
    s.mean = r.mean;
    s.sd = r.sd;
    s.pv_alpha = r.pv_alpha;
    s.pvar = r.pvar;
    s.alpha = r.alpha;
    s.samples = r.samples;
    s.seed = r.seed;
    s.mode = r.mode == realopt::SimulationMode::expectation_form ? REALOPT_SIM_EXPECTATION_FORM
                                                                 : REALOPT_SIM_BRANCH_SAMPLING;
    return s;
}

double& rate_of(realopt::ScenarioBody& body) {
    return std::visit([](auto& m) -> double& { return m.rate; }, body);
}

}  // namespace

extern "C" {

const char* realopt_version(void) { return "1.0.0"; }

const char* realopt_last_error(void) { return g_last_error.c_str(); }

realopt_status realopt_scenario_load_file(const char* path, realopt_scenario** out) {
    REALOPT_REQUIRE(path);
    REALOPT_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = wrap(realopt::load_file(path)); });
}

realopt_status realopt_scenario_load_string(const char* text, size_t length, realopt_scenario** out) {
    REALOPT_REQUIRE(text);
    REALOPT_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = wrap(realopt::load_string(std::string_view(text, length))); });
}

void realopt_scenario_free(realopt_scenario* scenario) { delete scenario; }

realopt_status realopt_scenario_kind(const realopt_scenario* scenario, realopt_kind* out) {
    REALOPT_REQUIRE(scenario);
    REALOPT_REQUIRE(out);
    *out = static_cast<realopt_kind>(scenario->doc.kind());
    return REALOPT_OK;
}

const char* realopt_scenario_name(const realopt_scenario* scenario) {
    return scenario ? scenario->doc.metadata.name.c_str() : "";
}

const char* realopt_scenario_option_class(const realopt_scenario* scenario) {
    return scenario ? scenario->option_class.c_str() : "";
}

realopt_status realopt_scenario_rate(const realopt_scenario* scenario, double* out) {
    REALOPT_REQUIRE(scenario);
    REALOPT_REQUIRE(out);
    *out = std::visit([](const auto& m) { return m.rate; }, scenario->doc.body);
    return REALOPT_OK;
}

realopt_status realopt_scenario_investment(const realopt_scenario* scenario, double* out) {
    REALOPT_REQUIRE(scenario);
    REALOPT_REQUIRE(out);
    *out = std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, realopt::TwoScenarioProject>)
                return m.investment;
            else
                return m.initial_investment;
        },
        scenario->doc.body);
    return REALOPT_OK;
}

realopt_status realopt_scenario_set_rate(realopt_scenario* scenario, double rate) {
    REALOPT_REQUIRE(scenario);
    if (!(rate > -1.0)) return fail(REALOPT_ERROR_DOMAIN, "discount rate must be > -1, got " + std::to_string(rate));
    rate_of(scenario->doc.body) = rate;
    return REALOPT_OK;
}

realopt_status realopt_scenario_save(const realopt_scenario* scenario, char** out) {
    REALOPT_REQUIRE(scenario);
    REALOPT_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const std::string text = realopt::save(scenario->doc);
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out = buf;
    });
}

void realopt_string_free(char* text) { delete[] text; }

realopt_status realopt_value(const realopt_scenario* scenario, int use_means, realopt_valuation* out) {
    REALOPT_REQUIRE(scenario);
    REALOPT_REQUIRE(out);
    return guarded([&] {
        realopt_valuation v{};
        const auto projection = use_means ? realopt::Projection::means : realopt::Projection::strict;
        if (const auto* p = std::get_if<realopt::TwoScenarioProject>(&scenario->doc.body)) {
            const auto r = realopt::two_scenario_value(*p);
            v.v0 = r.v0;
            v.npv = r.npv;
            v.investment = p->investment;
            v.rate = p->rate;
            v.time1[0] = r.time1_values[0];
            v.time1[1] = r.time1_values[1];
        } else if (const auto* t = std::get_if<realopt::OptionTree>(&scenario->doc.body)) {
            const auto r = realopt::rollback(*t, projection);
            v.v0 = r.v0;
            v.npv = r.npv;
            v.investment = t->initial_investment;
            v.rate = t->rate;
            v.has_tree_nodes = 1;
            for (int i = 0; i < 2; ++i) {
                v.v1[i] = r.v1[i];
                v.time1[i] = r.v1[i];
                for (int j = 0; j < 2; ++j) {
                    v.v2[2 * i + j] = r.v2[i][j];
                    for (int l = 0; l < 2; ++l) {
                        v.v3[4 * i + 2 * j + l] = r.v3[i][j][l];
                        v.continuation[4 * i + 2 * j + l] = r.continuation(i, j, l);
                    }
                }
            }
        } else {
            realopt::throw_usage(
                "deterministic valuation applies to two_scenario and option_tree scenarios; "
                "use the risk or simulate commands for brcf_one_stage");
        }
        *out = v;
    });
}

double realopt_option_value(double npv_with, double npv_without) {
    return realopt::option_value(npv_with, npv_without);
}

realopt_status realopt_risk(const realopt_scenario* scenario, double alpha, realopt_quantile_mode mode,
                            double investment, realopt_risk_report* out) {
    REALOPT_REQUIRE(scenario);
    REALOPT_REQUIRE(out);
    return guarded([&] {
        const auto* m = std::get_if<realopt::BrcfOneStageModel>(&scenario->doc.body);
        if (!m)
            realopt::throw_usage("analytic risk reports need a Gaussian brcf_one_stage scenario; "
                                 "use the simulate command for other models");
        const auto qmode =
            mode == REALOPT_QUANTILE_PAPER_COMPAT ? realopt::QuantileMode::paper_compat : realopt::QuantileMode::exact;
        const auto report = realopt::assess(realopt::pv_alpha(realopt::option_moments(*m), alpha, qmode), investment);
        realopt_risk_report r{};
        r.mean = report.mean;
        r.sd = report.sd;
        r.alpha = report.alpha;
        r.z = report.z;
        r.pvar = report.pvar;
        r.pv_alpha = report.pv_alpha;
        r.investment = investment;
        r.feasible = report.feasible.value_or(false) ? 1 : 0;
        r.mode = mode;
        *out = r;
    });
}

realopt_status realopt_risk_option_value(const realopt_risk_report* with_option,
                                         const realopt_risk_report* without_option, double* out) {
    REALOPT_REQUIRE(with_option);
    REALOPT_REQUIRE(without_option);
    REALOPT_REQUIRE(out);
    return guarded([&] {
        auto convert = [](const realopt_risk_report& c) {
            realopt::RiskReport r;
            r.alpha = c.alpha;
            r.mode = c.mode == REALOPT_QUANTILE_PAPER_COMPAT ? realopt::QuantileMode::paper_compat
                                                             : realopt::QuantileMode::exact;
            r.pv_alpha = c.pv_alpha;
            return r;
        };
        *out = realopt::brcf_option_value(convert(*with_option), convert(*without_option));
    });
}

void realopt_sim_options_default(realopt_sim_options* options) {
    if (!options) return;
    options->samples = realopt::kDefaultSamples;
    options->seed = 0;
    options->mode = REALOPT_SIM_EXPECTATION_FORM;
    options->alpha = 0.05;
    options->threads = 0;
}

realopt_status realopt_simulate(const realopt_scenario* scenario, const realopt_sim_options* options,
                                realopt_simulation** out) {
    REALOPT_REQUIRE(scenario);
    REALOPT_REQUIRE(options);
    REALOPT_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        realopt::SimulationSpec spec;
        spec.samples = options->samples;
        spec.seed = options->seed;
        spec.mode = options->mode == REALOPT_SIM_BRANCH_SAMPLING ? realopt::SimulationMode::branch_sampling
                                                                 : realopt::SimulationMode::expectation_form;
        spec.alpha = options->alpha;
        spec.threads = options->threads;
        if (const auto* p = std::get_if<realopt::TwoScenarioProject>(&scenario->doc.body)) {
            if (spec.mode == realopt::SimulationMode::expectation_form)
                realopt::throw_usage("expectation_form is defined only for brcf_one_stage scenarios; "
                                     "use --mode branch_sampling");
            spec.model = realopt::as_option_tree(*p);
        } else if (const auto* t = std::get_if<realopt::OptionTree>(&scenario->doc.body)) {
            spec.model = *t;
        } else {
            spec.model = std::get<realopt::BrcfOneStageModel>(scenario->doc.body);
        }
        *out = new realopt_simulation{realopt::simulate(spec)};
    });
}

void realopt_simulation_free(realopt_simulation* simulation) { delete simulation; }

realopt_status realopt_simulation_summary(const realopt_simulation* simulation, realopt_sim_summary* out) {
    REALOPT_REQUIRE(simulation);
    REALOPT_REQUIRE(out);
    *out = to_summary(simulation->result);
    return REALOPT_OK;
}

size_t realopt_simulation_bucket_count(const realopt_simulation* simulation) {
    return simulation ? simulation->result.histogram.size() : 0;
}

realopt_status realopt_simulation_bucket(const realopt_simulation* simulation, size_t index, double* lo,
                                         double* width, uint64_t* count) {
    REALOPT_REQUIRE(simulation);
    const auto& h = simulation->result.histogram;
    if (index >= h.size()) return fail(REALOPT_ERROR_USAGE, "bucket index out of range");
    if (lo) *lo = h[index].lo;
    if (width) *width = h[index].width;
    if (count) *count = h[index].count;
    return REALOPT_OK;
}

realopt_status realopt_simulation_write_histogram(const realopt_simulation* simulation, const char* path) {
    REALOPT_REQUIRE(simulation);
    REALOPT_REQUIRE(path);
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) realopt::throw_input(std::string("cannot write histogram to '") + path + "'");
        realopt::write_histogram_csv(out, simulation->result);
        if (!out) realopt::throw_input(std::string("failed writing histogram to '") + path + "'");
    });
}

realopt_status realopt_simulation_compare(const realopt_simulation* option, const realopt_simulation* baseline,
                                          realopt_comparison* out) {
    REALOPT_REQUIRE(option);
    REALOPT_REQUIRE(baseline);
    REALOPT_REQUIRE(out);
    return guarded([&] {
        const auto c = realopt::compare(option->result, baseline->result);
        realopt_comparison r{};
        r.option = to_summary(c.option);
        r.baseline = to_summary(c.baseline);
        r.mean_diff = c.mean_diff;
        r.sd_diff = c.sd_diff;
        r.pvar_diff = c.pvar_diff;
        r.option_value = c.option_value;
        *out = r;
    });
}

}  // extern "C"
