#pragma once

#include "stratify/scenario.hpp"

namespace stratify {

enum class OutputFormat { text, json, csv, latex };

OutputFormat parse_output_format(const std::string& name);

// Deterministic rendering: identical reports give byte-identical output.
// truncate limits the degrees shown for series-valued steps.
std::string render_report(const ScenarioReport& report, OutputFormat format, std::optional<int> truncate = {});

// LaTeX array in the layout of a Betti table (even degrees as columns when odd
// cohomology vanishes).
std::string latex_table(const std::vector<OutputRow>& rows);

}  // namespace stratify
