#pragma once

#include "stratify/assembly.hpp"
#include "stratify/invariants.hpp"
#include "stratify/orbits.hpp"

#include <filesystem>
#include <variant>

namespace stratify {

struct NormalRepValue {
    TangentNormal tangent_normal;
    std::vector<RationalVector> cocharacters;
    int coords = 0;
};

struct StrataValue {
    std::vector<BetaStratum> strata;
    int coords = 0;
};

using ScenarioValue = std::variant<TruncatedSeries, BettiTable, NormalRepValue, StrataValue,
                                   std::vector<StratumContribution>, long>;

struct Fact {
    std::string id;
    std::string statement;
    std::string citation;
};

struct StepResult {
    std::string id;
    std::string op;
    ScenarioValue value{0L};
    std::string summary;
    std::string fact;  // id of the declared fact the step relies on, if any
    std::string note;
    bool has_expectation = false;
};

struct OutputRow {
    std::string label;
    std::string latex_label;  // label used in LaTeX output; defaults to label
    BettiTable table;
    std::optional<std::vector<long>> expected_even;
    DualityReport duality;
    bool matches = true;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ScenarioReport {
    std::string name;
    std::string title;
    int order = 0;
    std::vector<Fact> facts;
    std::vector<StepResult> steps;  // file order
    std::vector<OutputRow> outputs;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;
    bool ok() const;
    const StepResult& step(const std::string& id) const;
    const OutputRow& output(const std::string& label) const;
};

struct ScenarioOptions {
    GroupCache cache;
};

// Parses and executes a scenario document (JSON text). Steps run in dependency
// order; the report lists them in file order. Expectation mismatches become
// failed checks carrying expected and actual values; schema problems raise
// parse_error and a fact without a citation raises check_failure.
ScenarioReport run_scenario_text(const std::string& text, const ScenarioOptions& opts = {});
ScenarioReport run_scenario_file(const std::filesystem::path& file, const ScenarioOptions& opts = {});

// Built-in scenarios shipped under data/scenarios.
std::vector<std::string> builtin_scenarios();
std::filesystem::path builtin_scenario_path(const std::string& name);
// A built-in name or a path to a file.
std::filesystem::path resolve_scenario(const std::string& name_or_path);

}  // namespace stratify
