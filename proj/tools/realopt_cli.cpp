// realopt command-line front end. Talks to the engine only through the C API.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "realopt/realopt.h"

namespace {

constexpr int kExitUsage = REALOPT_ERROR_USAGE;

struct ScenarioDeleter {
    void operator()(realopt_scenario* s) const { realopt_scenario_free(s); }
};
struct SimulationDeleter {
    void operator()(realopt_simulation* s) const { realopt_simulation_free(s); }
};
using ScenarioPtr = std::unique_ptr<realopt_scenario, ScenarioDeleter>;
using SimulationPtr = std::unique_ptr<realopt_simulation, SimulationDeleter>;

/// Carries a C API status out of a command so main can map it to an exit code.
struct Failure {
    int code;
    std::string message;
};

void check(realopt_status status, const std::string& context = {}) {
    if (status != REALOPT_OK)
        throw Failure{static_cast<int>(status), (context.empty() ? "" : context + ": ") + realopt_last_error()};
}

ScenarioPtr load(const std::string& path) {
    realopt_scenario* raw = nullptr;
    check(realopt_scenario_load_file(path.c_str(), &raw), path);
    return ScenarioPtr(raw);
}

std::string kind_name(const realopt_scenario* s) {
    realopt_kind kind{};
    check(realopt_scenario_kind(s, &kind));
    switch (kind) {
        case REALOPT_KIND_TWO_SCENARIO: return "two_scenario";
        case REALOPT_KIND_OPTION_TREE: return "option_tree";
        case REALOPT_KIND_BRCF_ONE_STAGE: return "brcf_one_stage";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

/// Shortest round-trip representation.
std::string full(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

/// Whole $K with thousands separators, e.g. 5,168 or -45.
std::string money(double x) {
    long long v = std::llround(x);
    const bool negative = v < 0;
    std::string digits = std::to_string(negative ? -v : v);
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
        out += digits[i];
    }
    return negative ? "-" + out : out;
}

std::string percent(double rate) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << rate * 100.0 << '%';
    return s.str();
}

enum class Format { table, csv };

/// Rows of label + one or more cells; rendered as an aligned table or CSV.
class Report {
public:
    Report(Format format, std::vector<std::string> header) : format_(format), header_(std::move(header)) {}

    void row(std::string key, std::string label, std::vector<std::string> table_cells,
             std::vector<std::string> csv_cells) {
        rows_.push_back({std::move(key), std::move(label), std::move(table_cells), std::move(csv_cells)});
    }
    void money_row(std::string key, std::string label, std::vector<double> values) {
        std::vector<std::string> t, c;
        for (double v : values) {
            t.push_back(money(v));
            c.push_back(full(v));
        }
        row(std::move(key), std::move(label), std::move(t), std::move(c));
    }
    void note(std::string line) { notes_.push_back(std::move(line)); }

    void print(std::ostream& out) const {
        if (format_ == Format::csv) {
            out << "metric";
            for (std::size_t i = 1; i < header_.size(); ++i) out << ',' << csv_header_[i - 1];
            out << '\n';
            for (const auto& r : rows_) {
                out << r.key;
                for (const auto& c : r.csv) out << ',' << c;
                out << '\n';
            }
            return;
        }
        std::size_t label_w = header_[0].size();
        for (const auto& r : rows_) label_w = std::max(label_w, r.label.size());
        std::vector<std::size_t> widths(header_.size() - 1, 0);
        for (std::size_t i = 1; i < header_.size(); ++i) widths[i - 1] = header_[i].size();
        for (const auto& r : rows_)
            for (std::size_t i = 0; i < r.table.size() && i < widths.size(); ++i)
                widths[i] = std::max(widths[i], r.table[i].size());

        auto pad_right = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
        auto pad_left = [](const std::string& s, std::size_t w) { return std::string(w - s.size(), ' ') + s; };
        out << pad_right(header_[0], label_w);
        for (std::size_t i = 1; i < header_.size(); ++i) out << "  " << pad_left(header_[i], widths[i - 1]);
        out << '\n';
        for (const auto& r : rows_) {
            out << pad_right(r.label, label_w);
            for (std::size_t i = 0; i < r.table.size(); ++i) out << "  " << pad_left(r.table[i], widths[i]);
            out << '\n';
        }
        for (const auto& n : notes_) out << n << '\n';
    }

    void set_csv_header(std::vector<std::string> h) { csv_header_ = std::move(h); }

private:
    struct Row {
        std::string key;
        std::string label;
        std::vector<std::string> table;
        std::vector<std::string> csv;
    };
    Format format_;
    std::vector<std::string> header_;
    std::vector<std::string> csv_header_;
    std::vector<Row> rows_;
    std::vector<std::string> notes_;
};

Format parse_format(const std::string& s) { return s == "csv" ? Format::csv : Format::table; }

std::string alpha_label(double alpha) { return "PV_" + full(alpha); }

// ---------------------------------------------------------------------------
// value
// ---------------------------------------------------------------------------

struct ValueArgs {
    std::string scenario;
    std::string baseline;
    std::optional<double> rate;
    std::string format = "table";
    bool means = false;
};

realopt_valuation valuate(const std::string& path, const ValueArgs& args, std::string& name, std::string& kind) {
    auto s = load(path);
    if (args.rate) check(realopt_scenario_set_rate(s.get(), *args.rate), "--rate-override");
    realopt_valuation v{};
    check(realopt_value(s.get(), args.means ? 1 : 0, &v), path);
    name = realopt_scenario_name(s.get());
    kind = kind_name(s.get());
    if (name.empty()) name = path;
    return v;
}

int cmd_value(const ValueArgs& args) {
    std::string name, kind, base_kind;
    const auto v = valuate(args.scenario, args, name, kind);
    std::optional<realopt_valuation> base;
    std::string base_name;
    if (!args.baseline.empty()) {
        base = valuate(args.baseline, args, base_name, base_kind);
        if (base->rate != v.rate || base->investment != v.investment)
            throw Failure{kExitUsage, "option value needs scenario and baseline at the same rate and investment"};
    }

    const Format format = parse_format(args.format);
    if (format == Format::table) std::cout << "Project value: " << name << " (" << kind << ")\n";
    Report report(format, {"Metric", "Value ($K)"});
    report.set_csv_header({"value"});
    report.row("rate", "Discount rate", {percent(v.rate)}, {full(v.rate)});
    report.money_row("investment", "Initial investment I0", {v.investment});
    report.money_row("v0", "Project value V0", {v.v0});
    report.money_row("npv", "NPV", {v.npv});
    for (int i = 0; i < 2; ++i)
        report.money_row("time1_" + std::to_string(i + 1),
                         "Value at t=1, scenario " + std::to_string(i + 1), {v.time1[i]});
    if (v.has_tree_nodes) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                report.money_row("v2_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                                 "V2(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                                 {v.v2[2 * i + j]});
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l) {
                    const std::string id =
                        std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(l + 1);
                    const std::string lbl =
                        std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(l + 1);
                    report.money_row("v3_" + id, "V3(" + lbl + ")", {v.v3[4 * i + 2 * j + l]});
                    report.money_row("continuation_" + id, "V3(" + lbl + ") at t=2",
                                     {v.continuation[4 * i + 2 * j + l]});
                }
    }
    if (base) {
        report.money_row("baseline_v0", "Baseline V0 (" + base_name + ")", {base->v0});
        report.money_row("baseline_npv", "Baseline NPV", {base->npv});
        report.money_row("option_value", "Option value (NPV difference)",
                         {realopt_option_value(v.npv, base->npv)});
    }
    report.print(std::cout);
    return 0;
}

// ---------------------------------------------------------------------------
// risk
// ---------------------------------------------------------------------------

struct RiskArgs {
    std::string scenario;
    std::string baseline;
    double alpha = 0.05;
    std::string quantile = "exact";
    std::optional<double> investment;
    std::string format = "table";
};

realopt_risk_report risk_of(const std::string& path, const RiskArgs& args, std::string& name) {
    auto s = load(path);
    double investment = 0.0;
    check(realopt_scenario_investment(s.get(), &investment));
    if (args.investment) investment = *args.investment;
    const auto mode = args.quantile == "paper" ? REALOPT_QUANTILE_PAPER_COMPAT : REALOPT_QUANTILE_EXACT;
    realopt_risk_report r{};
    check(realopt_risk(s.get(), args.alpha, mode, investment, &r), path);
    name = realopt_scenario_name(s.get());
    return r;
}

int cmd_risk(const RiskArgs& args) {
    std::string name;
    const auto r = risk_of(args.scenario, args, name);
    std::optional<realopt_risk_report> base;
    if (!args.baseline.empty()) {
        std::string base_name;
        base = risk_of(args.baseline, args, base_name);
    }

    const Format format = parse_format(args.format);
    if (format == Format::table)
        std::cout << "Analytic Gaussian risk: alpha " << full(args.alpha) << ", quantile " << args.quantile
                  << ", z = " << full(r.z) << '\n';

    std::vector<std::string> header{"Metrics/Alternative", base ? "Real Option Project" : name};
    if (base) header.push_back("Basic Project's Version");
    Report report(format, header);
    report.set_csv_header(base ? std::vector<std::string>{"option", "baseline"} : std::vector<std::string>{"value"});

    auto vals = [&](double a, double b) { return base ? std::vector<double>{a, b} : std::vector<double>{a}; };
    report.money_row("mean", "PV Mean Value", vals(r.mean, base ? base->mean : 0));
    report.money_row("sd", "PV Standard Deviation", vals(r.sd, base ? base->sd : 0));
    report.money_row("pvar", "PVaR", vals(r.pvar, base ? base->pvar : 0));
    report.money_row("pv_alpha", alpha_label(args.alpha), vals(r.pv_alpha, base ? base->pv_alpha : 0));
    {
        std::vector<std::string> t{r.feasible ? "yes" : "no"}, c{r.feasible ? "1" : "0"};
        if (base) {
            t.push_back(base->feasible ? "yes" : "no");
            c.push_back(base->feasible ? "1" : "0");
        }
        report.row("feasible", "Feasible vs I0 = " + money(r.investment), t, c);
    }
    {
        std::vector<std::string> t{full(r.z)}, c{full(r.z)};
        if (base) {
            t.push_back(full(base->z));
            c.push_back(full(base->z));
        }
        report.row("z", "z", t, c);
    }
    if (base) {
        double ov = 0.0;
        check(realopt_risk_option_value(&r, &*base, &ov));
        report.row("option_value", "Real option value (" + alpha_label(args.alpha) + " difference)", {money(ov), ""},
                   {full(ov), ""});
    }
    report.print(std::cout);
    return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string scenario;
    std::string baseline;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    std::string mode = "expectation_form";
    double alpha = 0.05;
    std::string hist;
    std::optional<double> investment;
    std::string format = "table";
};

unsigned threads_from_env() {
    const char* env = std::getenv("REALOPT_THREADS");
    if (!env || !*env) return 0;
    unsigned n = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, n);
    if (ec != std::errc{} || ptr != end) throw Failure{kExitUsage, "REALOPT_THREADS must be a non-negative integer"};
    return n;
}

struct SimRun {
    SimulationPtr sim;
    realopt_sim_summary summary{};
    double investment = 0.0;
    std::string name;
};

SimRun run_simulation(const std::string& path, const SimulateArgs& args, unsigned threads) {
    auto s = load(path);
    SimRun run;
    check(realopt_scenario_investment(s.get(), &run.investment));
    if (args.investment) run.investment = *args.investment;
    run.name = realopt_scenario_name(s.get());

    realopt_sim_options opts;
    realopt_sim_options_default(&opts);
    opts.samples = args.samples;
    opts.seed = args.seed;
    opts.mode = args.mode == "branch_sampling" ? REALOPT_SIM_BRANCH_SAMPLING : REALOPT_SIM_EXPECTATION_FORM;
    opts.alpha = args.alpha;
    opts.threads = threads;
    realopt_simulation* raw = nullptr;
    check(realopt_simulate(s.get(), &opts, &raw), path);
    run.sim.reset(raw);
    check(realopt_simulation_summary(run.sim.get(), &run.summary));
    return run;
}

int cmd_simulate(const SimulateArgs& args) {
    const unsigned threads = threads_from_env();
    const auto run = run_simulation(args.scenario, args, threads);
    std::optional<SimRun> base;
    std::optional<realopt_comparison> cmp;
    if (!args.baseline.empty()) {
        base = run_simulation(args.baseline, args, threads);
        realopt_comparison c{};
        check(realopt_simulation_compare(run.sim.get(), base->sim.get(), &c));
        cmp = c;
    }
    if (!args.hist.empty()) check(realopt_simulation_write_histogram(run.sim.get(), args.hist.c_str()), "--hist");

    const Format format = parse_format(args.format);
    if (format == Format::table)
        std::cout << "Monte Carlo: M = " << money(static_cast<double>(args.samples)) << ", seed " << args.seed
                  << ", mode " << args.mode << ", alpha " << full(args.alpha) << '\n';

    std::vector<std::string> header{"Statistic/Alternative", base ? "Real Option Project" : run.name};
    if (base) header.push_back("Basic Project's Version");
    Report report(format, header);
    report.set_csv_header(base ? std::vector<std::string>{"option", "baseline"} : std::vector<std::string>{"value"});
    auto vals = [&](double a, double b) { return base ? std::vector<double>{a, b} : std::vector<double>{a}; };
    const auto& a = run.summary;
    report.money_row("mean", "PV Mean Value", vals(a.mean, base ? base->summary.mean : 0));
    report.money_row("sd", "PV Standard Deviation", vals(a.sd, base ? base->summary.sd : 0));
    report.money_row("pvar", "PVaR", vals(a.pvar, base ? base->summary.pvar : 0));
    report.money_row("pv_alpha", alpha_label(args.alpha), vals(a.pv_alpha, base ? base->summary.pv_alpha : 0));
    {
        const bool fa = a.pv_alpha >= run.investment;
        std::vector<std::string> t{fa ? "yes" : "no"}, c{fa ? "1" : "0"};
        if (base) {
            const bool fb = base->summary.pv_alpha >= base->investment;
            t.push_back(fb ? "yes" : "no");
            c.push_back(fb ? "1" : "0");
        }
        report.row("feasible", "Feasible vs I0 = " + money(run.investment), t, c);
    }
    if (cmp) {
        report.row("option_value", "Real option value (" + alpha_label(args.alpha) + " difference)",
                   {money(cmp->option_value), ""}, {full(cmp->option_value), ""});
        report.note(cmp->option_value > 0 ? "Verdict: the option project is preferred (larger lower bound)"
                                          : "Verdict: the option adds no margin over the basic version");
    }
    report.print(std::cout);
    return 0;
}

// ---------------------------------------------------------------------------
// canon
// ---------------------------------------------------------------------------

int cmd_canon(const std::string& path) {
    auto s = load(path);
    char* text = nullptr;
    check(realopt_scenario_save(s.get(), &text), path);
    std::cout << text;
    realopt_string_free(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"realopt: real-options project valuation, analytic PVaR and Monte Carlo"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"table", "csv"};

    ValueArgs value;
    auto* value_cmd = app.add_subcommand("value", "Deterministic valuation (DCF / option tree rollback)");
    value_cmd->add_option("scenario", value.scenario, "Scenario file")->required();
    value_cmd->add_option("--baseline", value.baseline, "Scenario without the option; reports the option value");
    value_cmd->add_option("--rate-override", value.rate, "Replace the discount rate of every scenario");
    value_cmd->add_option("--format", value.format, "Output format")->check(CLI::IsMember(formats));
    value_cmd->add_flag("--means", value.means, "Value random distributions at their means");

    RiskArgs risk;
    auto* risk_cmd = app.add_subcommand("risk", "Analytic Gaussian PV moments, PVaR and feasibility");
    risk_cmd->add_option("scenario", risk.scenario, "Scenario file")->required();
    risk_cmd->add_option("--baseline", risk.baseline, "Basic version for a side-by-side comparison");
    risk_cmd->add_option("--alpha", risk.alpha, "Lower-tail probability in (0, 0.5]");
    risk_cmd->add_option("--quantile", risk.quantile, "exact or paper (z rounded to two decimals)")
        ->check(CLI::IsMember({"exact", "paper"}));
    risk_cmd->add_option("--investment", risk.investment, "Initial investment I0 (default: from the file)");
    risk_cmd->add_option("--format", risk.format, "Output format")->check(CLI::IsMember(formats));

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Seeded Monte Carlo simulation");
    sim_cmd->add_option("scenario", sim.scenario, "Scenario file")->required();
    sim_cmd->add_option("--baseline", sim.baseline, "Basic version for a side-by-side comparison");
    sim_cmd->add_option("--samples", sim.samples, "Number of replications M");
    sim_cmd->add_option("--seed", sim.seed, "64-bit seed");
    sim_cmd->add_option("--mode", sim.mode, "expectation_form or branch_sampling")
        ->check(CLI::IsMember({"expectation_form", "branch_sampling"}));
    sim_cmd->add_option("--alpha", sim.alpha, "Lower-tail probability in (0, 0.5]");
    sim_cmd->add_option("--hist", sim.hist, "Write the histogram of the first scenario as CSV");
    sim_cmd->add_option("--investment", sim.investment, "Initial investment I0 (default: from the file)");
    sim_cmd->add_option("--format", sim.format, "Output format")->check(CLI::IsMember(formats));

    std::string canon_path;
    auto* canon_cmd = app.add_subcommand("canon", "Print the canonical form of a scenario file");
    canon_cmd->add_option("scenario", canon_path, "Scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*value_cmd) return cmd_value(value);
        if (*risk_cmd) return cmd_risk(risk);
        if (*sim_cmd) return cmd_simulate(sim);
        if (*canon_cmd) return cmd_canon(canon_path);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.code;
    }
    return kExitUsage;
}
