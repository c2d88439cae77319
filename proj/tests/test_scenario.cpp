#include "stratify/report.hpp"
#include "stratify/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace stratify;

namespace {

const ScenarioReport& builtin(const std::string& name) {
    static std::map<std::string, ScenarioReport> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, run_scenario_file(builtin_scenario_path(name))).first;
    return it->second;
}

ErrorKind error_kind(const std::string& text) {
    try {
        run_scenario_text(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("scenario ran without error");
    return ErrorKind::invalid_argument;
}

const char* small_scenario = R"({
  "name": "small", "order": 4,
  "facts": [{"id": "f", "statement": "declared table", "citation": "test"}],
  "steps": [
    {"id": "p2", "op": "projective_space", "args": {"dim": 2}},
    {"id": "t", "op": "table", "fact": "f", "args": {"dim": 2, "even": [1, 1, 1]}},
    {"id": "sum", "op": "lincomb", "args": {"terms": [{"of": "$p2"}, {"coef": -1, "of": "$t"}]}}
  ],
  "outputs": [{"label": "P2", "of": "$p2", "dim": 2, "expect_even": [1, 1, 1]}],
  "checks": [{"name": "zero", "kind": "zero", "of": "$sum"}]
})";

}  // namespace

TEST_CASE("built-in scenarios are listed") {
    const auto names = builtin_scenarios();
    for (const std::string n : {"binary12", "cubic3fold", "cubiccurve", "cubicsurf"})
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
}

TEST_CASE("cubic threefold table") {
    const auto& r = builtin("cubic3fold");
    CHECK(r.ok());
    const std::map<std::string, std::vector<long>> rows = {
        {"M^K", {1, 4, 6, 10, 13, 15, 13, 10, 6, 4, 1}},
        {"M^GIT", {1, 1, 2, 3, 4, 5, 4, 3, 2, 1, 1}},
        {"M-hat", {1, 2, 3, 5, 6, 8, 6, 5, 3, 2, 1}},
        {"(B/Gamma)^*", {1, 2, 3, 5, 6, 7, 6, 5, 3, 2, 1}},
        {"toroidal", {1, 4, 6, 10, 13, 15, 13, 10, 6, 4, 1}},
    };
    REQUIRE(r.outputs.size() == rows.size());
    for (const auto& [label, even] : rows) {
        CAPTURE(label);
        const auto& o = r.output(label);
        CHECK(o.table.even() == even);
        for (long b : o.table.odd()) CHECK(b == 0);
    }
    // intermediate steps
    const auto semistable = std::get<TruncatedSeries>(r.step("semistable").value);
    CHECK(semistable == TruncatedSeries::from_ints({1, 0, 1, 0, 2, 0, 3, 0, 5, 0, 6}, 10));
    const auto b2a5 = std::get<TruncatedSeries>(r.step("B_2a5").value);
    CHECK(b2a5 == TruncatedSeries::from_ints({0, 0, 1, 0, 2, 0, 3, 0, 4, 0, 4}, 10));
}

TEST_CASE("other built-in scenarios") {
    const auto& surf = builtin("cubicsurf");
    CHECK(surf.ok());
    CHECK(surf.output("M^GIT").table.even() == std::vector<long>{1, 1, 1, 1, 1});
    CHECK(surf.output("M^K").table.even() == std::vector<long>{1, 2, 2, 2, 1});

    const auto& curve = builtin("cubiccurve");
    CHECK(curve.ok());
    for (const auto& o : curve.outputs) CHECK(o.table.even() == std::vector<long>{1, 1});

    const auto& bin = builtin("binary12");
    CHECK(bin.ok());
    REQUIRE(bin.outputs.size() == 1);
    CHECK(bin.outputs[0].table.even() == std::vector<long>{1, 1, 2, 2, 3, 3, 2, 2, 1, 1});
}

TEST_CASE("every built-in output satisfies duality and every check passes") {
    for (const auto& name : builtin_scenarios()) {
        CAPTURE(name);
        const auto& r = builtin(name);
        for (const auto& o : r.outputs) {
            CAPTURE(o.label);
            CHECK(o.duality.pass);
            CHECK_FALSE(o.duality.negative_degree);
            CHECK(o.matches);
            for (long b : o.table.betti) CHECK(b >= 0);
        }
        for (const auto& c : r.checks) {
            CAPTURE(c.name);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("A_R - B_R is nonpositive in every scenario") {
    for (const auto& name : builtin_scenarios()) {
        const auto& r = builtin(name);
        for (const auto& s : r.steps) {
            if (s.id.rfind("A_minus_B", 0) != 0) continue;
            CAPTURE(name);
            CAPTURE(s.id);
            const auto& v = std::get<TruncatedSeries>(s.value);
            for (int k = 0; k <= v.order(); ++k) CHECK(v[k] <= 0);
        }
    }
}

TEST_CASE("rendering is deterministic") {
    for (auto f : {OutputFormat::text, OutputFormat::json, OutputFormat::csv, OutputFormat::latex}) {
        const auto a = render_report(run_scenario_file(builtin_scenario_path("cubicsurf")), f);
        const auto b = render_report(run_scenario_file(builtin_scenario_path("cubicsurf")), f);
        CHECK(a == b);
        CHECK(!a.empty());
    }
    const auto latex = latex_table(builtin("cubic3fold").outputs);
    CHECK(latex.find("\\widehat{\\mathcal{M}}") != std::string::npos);
    CHECK_THROWS_AS(parse_output_format("yaml"), Error);
}

TEST_CASE("a small scenario runs and reports its check") {
    const auto r = run_scenario_text(small_scenario);
    CHECK(r.ok());
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].pass);
    CHECK(r.step("t").fact == "f");
}

TEST_CASE("schema problems are parse errors") {
    CHECK(error_kind("{not json") == ErrorKind::parse_error);
    CHECK(error_kind(R"({"name": "x", "order": 2, "steps": [{"id": "a", "op": "lincomb",
        "args": {"terms": [{"of": "$b"}]}}, {"id": "b", "op": "lincomb", "args": {"terms": [{"of": "$a"}]}}]})") ==
          ErrorKind::parse_error);
    CHECK(error_kind(R"({"name": "x", "order": 2, "steps": [{"id": "a", "op": "lincomb",
        "args": {"terms": [{"of": "$missing"}]}}]})") == ErrorKind::parse_error);
    CHECK(error_kind(R"({"name": "x", "order": 2, "steps": [{"id": "a", "op": "projective_space", "args": {"dim": 1}},
        {"id": "a", "op": "projective_space", "args": {"dim": 1}}]})") == ErrorKind::parse_error);
    CHECK(error_kind(R"({"order": 2, "steps": []})") == ErrorKind::parse_error);
}

TEST_CASE("declared input needs a cited fact") {
    CHECK(error_kind(R"({"name": "x", "order": 2,
        "facts": [{"id": "f", "statement": "s", "citation": ""}], "steps": []})") == ErrorKind::check_failure);
    CHECK(error_kind(R"({"name": "x", "order": 2,
        "steps": [{"id": "t", "op": "table", "args": {"dim": 1, "even": [1, 1]}}]})") == ErrorKind::check_failure);
}

TEST_CASE("expectation mismatches fail the report with both values") {
    const auto r = run_scenario_text(R"({"name": "x", "order": 4, "steps": [
        {"id": "p", "op": "projective_space", "args": {"dim": 2}, "expect": {"even": [1, 2, 1]}}]})");
    CHECK_FALSE(r.ok());
    REQUIRE(r.checks.size() == 1);
    CHECK_FALSE(r.checks[0].pass);
    CHECK(r.checks[0].detail.find("expected") != std::string::npos);
    CHECK(r.checks[0].detail.find("got") != std::string::npos);

    const auto wrong_row = run_scenario_text(R"({"name": "x", "order": 4, "steps": [
        {"id": "p", "op": "projective_space", "args": {"dim": 2}}],
        "outputs": [{"label": "P2", "of": "$p", "dim": 2, "expect_even": [1, 2, 1]}]})");
    CHECK_FALSE(wrong_row.ok());
    CHECK_FALSE(wrong_row.outputs[0].matches);
}
