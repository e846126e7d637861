#include "realopt/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace realopt {

using json = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw_input(path + ": " + what);
}

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i + 1) + "]"; }

void expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) schema_error(path.empty() ? "document" : path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) schema_error(join(path, key), "unknown field");
    }
}

const json& required(const json& obj, std::string_view key, const std::string& path) {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) schema_error(join(path, key), "missing required field");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) schema_error(path, "expected a number");
    return j.get<double>();
}

double number_field(const json& obj, std::string_view key, const std::string& path) {
    return number(required(obj, key, path), join(path, key));
}

std::string string_field(const json& obj, std::string_view key, const std::string& path, bool optional) {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) {
        if (optional) return {};
        schema_error(join(path, key), "missing required field");
    }
    if (!it->is_string()) schema_error(join(path, key), "expected a string");
    return it->get<std::string>();
}

const json& array_field(const json& obj, std::string_view key, const std::string& path,
                        std::optional<std::size_t> size = std::nullopt) {
    const json& a = required(obj, key, path);
    const std::string p = join(path, key);
    if (!a.is_array()) schema_error(p, "expected an array");
    if (size && a.size() != *size)
        schema_error(p, "expected exactly " + std::to_string(*size) + " entries, found " + std::to_string(a.size()));
    return a;
}

CashFlowDist read_dist(const json& j, const std::string& path) {
    if (j.is_number()) return CashFlowDist::deterministic(j.get<double>());
    if (!j.is_object()) schema_error(path, "expected a number or a distribution object");
    const std::string kind = string_field(j, "dist", path, false);
    if (kind == "gaussian") {
        expect_object(j, path, {"dist", "mean", "sd", "cv"});
        const double mean = number_field(j, "mean", path);
        const bool has_sd = j.contains("sd");
        const bool has_cv = j.contains("cv");
        if (has_sd == has_cv) schema_error(path, "gaussian needs exactly one of 'sd' or 'cv'");
        if (has_cv) {
            const double cv = number_field(j, "cv", path);
            if (cv < 0.0) schema_error(join(path, "cv"), "coefficient of variation must be >= 0");
            return CashFlowDist::gaussian_cv(mean, cv);
        }
        return CashFlowDist::gaussian(mean, number_field(j, "sd", path));
    }
    if (kind == "uniform") {
        expect_object(j, path, {"dist", "lo", "hi"});
        return CashFlowDist::uniform(number_field(j, "lo", path), number_field(j, "hi", path));
    }
    if (kind == "deterministic") {
        expect_object(j, path, {"dist", "value"});
        return CashFlowDist::deterministic(number_field(j, "value", path));
    }
    schema_error(join(path, "dist"), "unknown distribution '" + kind + "' (expected gaussian, uniform, deterministic)");
}

std::vector<CashFlowDist> read_dists(const json& a, const std::string& path) {
    std::vector<CashFlowDist> out;
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(read_dist(a[k], at(path, k)));
    return out;
}

TwoScenarioProject read_two_scenario(const json& j, const std::string& path) {
    expect_object(j, path, {"investment", "rate", "scenarios"});
    TwoScenarioProject p;
    p.investment = number_field(j, "investment", path);
    p.rate = number_field(j, "rate", path);
    const json& scenarios = array_field(j, "scenarios", path, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string sp = at(join(path, "scenarios"), i);
        expect_object(scenarios[i], sp, {"p", "flows"});
        p.scenarios[i].p = number_field(scenarios[i], "p", sp);
        const json& flows = array_field(scenarios[i], "flows", sp);
        for (std::size_t k = 0; k < flows.size(); ++k)
            p.scenarios[i].flows.push_back(number(flows[k], at(join(sp, "flows"), k)));
    }
    return p;
}

OptionTree read_option_tree(const json& j, const std::string& path) {
    expect_object(j, path, {"investment", "rate", "horizon", "stage1"});
    OptionTree t;
    t.initial_investment = number_field(j, "investment", path);
    t.rate = number_field(j, "rate", path);
    const json& horizon = required(j, "horizon", path);
    if (!horizon.is_number_integer()) schema_error(join(path, "horizon"), "expected an integer");
    t.horizon = horizon.get<int>();

    const json& s1 = array_field(j, "stage1", path, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string p1 = at(join(path, "stage1"), i);
        expect_object(s1[i], p1, {"p", "delta", "flow", "stage2"});
        auto& b1 = t.stage1[i];
        b1.control.p = number_field(s1[i], "p", p1);
        b1.control.delta = read_dist(required(s1[i], "delta", p1), join(p1, "delta"));
        b1.flow = read_dist(required(s1[i], "flow", p1), join(p1, "flow"));

        const json& s2 = array_field(s1[i], "stage2", p1, 2);
        for (std::size_t jj = 0; jj < 2; ++jj) {
            const std::string p2 = at(join(p1, "stage2"), jj);
            expect_object(s2[jj], p2, {"p", "delta", "flow", "stage3"});
            auto& b2 = b1.outcomes[jj];
            b2.control.p = number_field(s2[jj], "p", p2);
            b2.control.delta = read_dist(required(s2[jj], "delta", p2), join(p2, "delta"));
            b2.flow = read_dist(required(s2[jj], "flow", p2), join(p2, "flow"));

            const json& s3 = array_field(s2[jj], "stage3", p2, 2);
            for (std::size_t l = 0; l < 2; ++l) {
                const std::string p3 = at(join(p2, "stage3"), l);
                expect_object(s3[l], p3, {"p", "flows"});
                b2.outcomes[l].p = number_field(s3[l], "p", p3);
                b2.outcomes[l].flows = read_dists(array_field(s3[l], "flows", p3), join(p3, "flows"));
            }
        }
    }
    return t;
}

BrcfOneStageModel read_brcf(const json& j, const std::string& path) {
    expect_object(j, path, {"investment", "rate", "flows", "option"});
    BrcfOneStageModel m;
    m.initial_investment = number_field(j, "investment", path);
    m.rate = number_field(j, "rate", path);
    m.base_flows = read_dists(array_field(j, "flows", path), join(path, "flows"));
    if (auto it = j.find("option"); it != j.end()) {
        const std::string op = join(path, "option");
        expect_object(*it, op, {"p", "additional_investment", "growth"});
        m.option_probability = number_field(*it, "p", op);
        m.additional_investment =
            read_dist(required(*it, "additional_investment", op), join(op, "additional_investment"));
        m.growth = number_field(*it, "growth", op);
    }
    return m;
}

ScenarioDocument parse_document(const json& root) {
    expect_object(root, "", {"schema_version", "kind", "metadata", "body"});
    ScenarioDocument doc;
    doc.schema_version = string_field(root, "schema_version", "", false);
    if (doc.schema_version != kSchemaVersion)
        throw_input("unsupported schema_version '" + doc.schema_version + "' (this build reads version " +
                    std::string(kSchemaVersion) + ")");

    if (auto it = root.find("metadata"); it != root.end()) {
        expect_object(*it, "metadata", {"name", "description", "option_class"});
        doc.metadata.name = string_field(*it, "name", "metadata", true);
        doc.metadata.description = string_field(*it, "description", "metadata", true);
        if (it->contains("option_class"))
            doc.metadata.option_class = string_field(*it, "option_class", "metadata", false);
    }

    const std::string kind = string_field(root, "kind", "", false);
    const json& body = required(root, "body", "");
    if (kind == "two_scenario")
        doc.body = read_two_scenario(body, "body");
    else if (kind == "option_tree")
        doc.body = read_option_tree(body, "body");
    else if (kind == "brcf_one_stage")
        doc.body = read_brcf(body, "body");
    else
        schema_error("kind", "unknown kind '" + kind + "' (expected two_scenario, option_tree, brcf_one_stage)");
    return doc;
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

json num(double x) {
    constexpr double kExactIntLimit = 9007199254740992.0;  // 2^53
    if (std::trunc(x) == x && std::abs(x) < kExactIntLimit) return json(static_cast<std::int64_t>(x));
    return json(x);
}

json write_dist(const CashFlowDist& dist) {
    return std::visit(overloaded{
                          [](const Deterministic& d) { return num(d.value); },
                          [](const Gaussian& g) {
                              json o = json::object();
                              o["dist"] = "gaussian";
                              o["mean"] = num(g.mean);
                              o["sd"] = num(g.sd);
                              return o;
                          },
                          [](const Uniform& u) {
                              json o = json::object();
                              o["dist"] = "uniform";
                              o["lo"] = num(u.lo);
                              o["hi"] = num(u.hi);
                              return o;
                          },
                      },
                      dist.params());
}

json write_dists(const std::vector<CashFlowDist>& flows) {
    json a = json::array();
    for (const auto& cf : flows) a.push_back(write_dist(cf));
    return a;
}

json write_body(const TwoScenarioProject& p) {
    json o = json::object();
    o["investment"] = num(p.investment);
    o["rate"] = num(p.rate);
    json scenarios = json::array();
    for (const auto& s : p.scenarios) {
        json so = json::object();
        so["p"] = num(s.p);
        json flows = json::array();
        for (double f : s.flows) flows.push_back(num(f));
        so["flows"] = std::move(flows);
        scenarios.push_back(std::move(so));
    }
    o["scenarios"] = std::move(scenarios);
    return o;
}

json write_body(const OptionTree& t) {
    json o = json::object();
    o["investment"] = num(t.initial_investment);
    o["rate"] = num(t.rate);
    o["horizon"] = t.horizon;
    json s1 = json::array();
    for (const auto& b1 : t.stage1) {
        json o1 = json::object();
        o1["p"] = num(b1.control.p);
        o1["delta"] = write_dist(b1.control.delta);
        o1["flow"] = write_dist(b1.flow);
        json s2 = json::array();
        for (const auto& b2 : b1.outcomes) {
            json o2 = json::object();
            o2["p"] = num(b2.control.p);
            o2["delta"] = write_dist(b2.control.delta);
            o2["flow"] = write_dist(b2.flow);
            json s3 = json::array();
            for (const auto& b3 : b2.outcomes) {
                json o3 = json::object();
                o3["p"] = num(b3.p);
                o3["flows"] = write_dists(b3.flows);
                s3.push_back(std::move(o3));
            }
            o2["stage3"] = std::move(s3);
            s2.push_back(std::move(o2));
        }
        o1["stage2"] = std::move(s2);
        s1.push_back(std::move(o1));
    }
    o["stage1"] = std::move(s1);
    return o;
}

json write_body(const BrcfOneStageModel& m) {
    json o = json::object();
    o["investment"] = num(m.initial_investment);
    o["rate"] = num(m.rate);
    o["flows"] = write_dists(m.base_flows);
    if (!m.null_option()) {
        json op = json::object();
        op["p"] = num(m.option_probability);
        op["additional_investment"] = write_dist(m.additional_investment);
        op["growth"] = num(m.growth);
        o["option"] = std::move(op);
    }
    return o;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) noexcept {
    switch (kind) {
        case ScenarioKind::two_scenario: return "two_scenario";
        case ScenarioKind::option_tree: return "option_tree";
        case ScenarioKind::brcf_one_stage: return "brcf_one_stage";
    }
    return "unknown";
}

ValidationReport validate_document(const ScenarioDocument& doc) {
    ValidationReport report;
    if (doc.schema_version != kSchemaVersion)
        report.add("schema_version", "unsupported schema version '" + doc.schema_version + "'");
    const ValidationReport body = std::visit(overloaded{
                                                 [](const TwoScenarioProject& p) { return validate_project(p); },
                                                 [](const OptionTree& t) { return validate_tree(t); },
                                                 [](const BrcfOneStageModel& m) { return validate_model(m); },
                                             },
                                             doc.body);
    for (const auto& v : body.violations()) report.add(v.path, v.message);
    return report;
}

ScenarioDocument load_string(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw_input(std::string("malformed scenario: ") + e.what());
    }
    ScenarioDocument doc = parse_document(root);
    require_valid(validate_document(doc));
    return doc;
}

ScenarioDocument load(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_string(buf.str());
}

ScenarioDocument load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_input("cannot open scenario file '" + path.string() + "'");
    return load(in);
}

std::string save(const ScenarioDocument& doc) {
    require_valid(validate_document(doc));
    json root = json::object();
    root["schema_version"] = doc.schema_version;
    root["kind"] = std::string(to_string(doc.kind()));
    json meta = json::object();
    meta["name"] = doc.metadata.name;
    meta["description"] = doc.metadata.description;
    if (doc.metadata.option_class) meta["option_class"] = *doc.metadata.option_class;
    root["metadata"] = std::move(meta);
    root["body"] = std::visit([](const auto& body) { return write_body(body); }, doc.body);
    return root.dump(2) + "\n";
}

}  // namespace realopt
