#pragma once

// Scenario documents: a versioned JSON wrapper around one of the three model
// types. The schema and canonical form are described in docs/scenario_format.md.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "realopt/brcf.hpp"
#include "realopt/tree_model.hpp"

namespace realopt {

inline constexpr std::string_view kSchemaVersion = "1";

enum class ScenarioKind { two_scenario, option_tree, brcf_one_stage };

std::string_view to_string(ScenarioKind kind) noexcept;

struct ScenarioMetadata {
    std::string name;
    std::string description;
    std::optional<std::string> option_class;  // descriptive tag, e.g. "contraction"
    bool operator==(const ScenarioMetadata&) const = default;
};

using ScenarioBody = std::variant<TwoScenarioProject, OptionTree, BrcfOneStageModel>;

struct ScenarioDocument {
    std::string schema_version{kSchemaVersion};
    ScenarioMetadata metadata;
    ScenarioBody body;

    ScenarioKind kind() const noexcept { return static_cast<ScenarioKind>(body.index()); }
    bool operator==(const ScenarioDocument&) const = default;
};

/// Schema version check plus the body's own validation rules.
ValidationReport validate_document(const ScenarioDocument& doc);

/// Parses and validates a document. Malformed JSON and schema mismatches
/// throw an input Error naming the position or field; model invariant
/// breaches throw InvalidModel. Coefficients of variation are converted to
/// standard deviations.
ScenarioDocument load_string(std::string_view text);
ScenarioDocument load(std::istream& in);
ScenarioDocument load_file(const std::filesystem::path& path);

/// Canonical serialization: fixed key order, two-space indent, integral
/// values written as integers, other numbers shortest round-trip, trailing
/// newline. Throws InvalidModel for an invalid document.
std::string save(const ScenarioDocument& doc);

}  // namespace realopt
