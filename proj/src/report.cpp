#include "stratify/report.hpp"

#include <json.hpp>

#include <sstream>

namespace stratify {

using ojson = nlohmann::ordered_json;

OutputFormat parse_output_format(const std::string& name) {
    if (name == "text") return OutputFormat::text;
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    if (name == "latex") return OutputFormat::latex;
    fail(ErrorKind::invalid_argument, "unknown format '" + name + "' (text, json, csv, latex)");
}

namespace {

ojson rational_json(const Rational& q) {
    if (is_integer(q) && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

ojson series_json(const TruncatedSeries& s, std::optional<int> truncate) {
    const int order = truncate ? std::min(*truncate, s.order()) : s.order();
    ojson c = ojson::array();
    for (int k = 0; k <= order; ++k) c.push_back(rational_json(s[k]));
    return ojson{{"order", order}, {"coeffs", c}};
}

bool odd_vanishes(const BettiTable& t) {
    for (long b : t.odd())
        if (b != 0) return false;
    return true;
}

std::string join(const std::vector<long>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

std::string step_display(const StepResult& s, std::optional<int> truncate) {
    if (const auto* series = std::get_if<TruncatedSeries>(&s.value))
        if (truncate && *truncate < series->order()) return series->truncate(*truncate).str();
    return s.summary;
}

std::string render_json(const ScenarioReport& r, std::optional<int> truncate) {
    ojson j;
    j["scenario"] = r.name;
    j["title"] = r.title;
    j["order"] = r.order;
    j["ok"] = r.ok();
    ojson outs = ojson::array();
    for (const auto& o : r.outputs) {
        ojson row{{"label", o.label}, {"complex_dim", o.table.complex_dim}, {"betti", o.table.betti},
                  {"even", o.table.even()}, {"odd_vanishes", odd_vanishes(o.table)}};
        if (o.expected_even) row["expected_even"] = *o.expected_even;
        row["matches"] = o.matches;
        row["duality"] = {{"pass", o.duality.pass}, {"message", o.duality.message}};
        outs.push_back(row);
    }
    j["outputs"] = outs;
    ojson steps = ojson::array();
    for (const auto& s : r.steps) {
        ojson row{{"id", s.id}, {"op", s.op}, {"summary", step_display(s, truncate)}};
        if (const auto* series = std::get_if<TruncatedSeries>(&s.value)) row["series"] = series_json(*series, truncate);
        if (const auto* t = std::get_if<BettiTable>(&s.value))
            row["table"] = {{"complex_dim", t->complex_dim}, {"betti", t->betti}};
        if (!s.fact.empty()) row["fact"] = s.fact;
        if (!s.note.empty()) row["note"] = s.note;
        steps.push_back(row);
    }
    j["steps"] = steps;
    ojson checks = ojson::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    ojson facts = ojson::array();
    for (const auto& f : r.facts) facts.push_back({{"id", f.id}, {"statement", f.statement}, {"citation", f.citation}});
    j["facts"] = facts;
    j["notes"] = r.notes;
    return j.dump(2) + "\n";
}

std::string render_text(const ScenarioReport& r, std::optional<int> truncate) {
    std::ostringstream out;
    out << r.title << " [" << r.name << "], series mod t^" << (r.order + 1) << "\n\n";
    out << "Betti tables (even degrees 0, 2, 4, ...):\n";
    size_t width = 0;
    for (const auto& o : r.outputs) width = std::max(width, o.label.size());
    for (const auto& o : r.outputs) {
        out << "  " << o.label << std::string(width - o.label.size(), ' ') << "  ";
        out << (odd_vanishes(o.table) ? join(o.table.even(), " ") : "betti " + join(o.table.betti, " "));
        if (!o.matches) out << "  MISMATCH, expected " << join(*o.expected_even, " ");
        if (!o.duality.pass) out << "  DUALITY FAILS: " << o.duality.message;
        out << "\n";
    }
    out << "\nSteps:\n";
    for (const auto& s : r.steps) {
        out << "  " << s.id << " (" << s.op << "): " << step_display(s, truncate);
        if (!s.note.empty()) out << "  [" << s.note << "]";
        out << "\n";
    }
    out << "\nChecks:\n";
    for (const auto& c : r.checks) out << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
    if (!r.facts.empty()) {
        out << "\nDeclared facts:\n";
        for (const auto& f : r.facts) out << "  " << f.id << ": " << f.statement << " (" << f.citation << ")\n";
    }
    if (!r.notes.empty()) {
        out << "\nNotes:\n";
        for (const auto& n : r.notes) out << "  - " << n << "\n";
    }
    out << "\n" << (r.ok() ? "all checks pass" : "CHECKS FAILED") << "\n";
    return out.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string render_csv(const ScenarioReport& r) {
    std::ostringstream out;
    out << "label,degree,dimension\n";
    for (const auto& o : r.outputs)
        for (size_t j = 0; j < o.table.betti.size(); ++j)
            out << csv_field(o.label) << "," << j << "," << o.table.betti[j] << "\n";
    return out.str();
}

}  // namespace

std::string latex_table(const std::vector<OutputRow>& rows) {
    int max_deg = 0;
    bool even_only = true;
    for (const auto& o : rows) {
        max_deg = std::max(max_deg, 2 * o.table.complex_dim);
        even_only = even_only && odd_vanishes(o.table);
    }
    const int step = even_only ? 2 : 1;
    std::ostringstream out;
    out << "\\begin{array}{r|" << std::string(max_deg / step + 1, 'c') << "}\n";
    out << "j";
    for (int j = 0; j <= max_deg; j += step) out << "&" << j;
    out << "\\\\\\hline\n";
    for (const auto& o : rows) {
        out << "\\dim H^j(" << (o.latex_label.empty() ? o.label : o.latex_label) << ")";
        for (int j = 0; j <= max_deg; j += step)
            out << "&" << (j < static_cast<int>(o.table.betti.size()) ? std::to_string(o.table.betti[j]) : "");
        out << "\\\\\n";
    }
    out << "\\end{array}\n";
    return out.str();
}

std::string render_report(const ScenarioReport& report, OutputFormat format, std::optional<int> truncate) {
    switch (format) {
        case OutputFormat::json: return render_json(report, truncate);
        case OutputFormat::csv: return render_csv(report);
        case OutputFormat::latex: return latex_table(report.outputs);
        case OutputFormat::text: break;
    }
    return render_text(report, truncate);
}

}  // namespace stratify
