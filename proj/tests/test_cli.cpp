#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    const auto dir = fs::temp_directory_path() / "stratify_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Result run(const std::string& args) {
    const auto err_file = scratch() / "stderr.txt";
    const std::string cmd = std::string("'") + STRATIFY_CLI_PATH + "' " + args + " 2>'" + err_file.string() + "'";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_file);
    return r;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const auto p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("lattice subcommand") {
    const auto r = run("lattice weyl-order E3");
    CHECK(r.code == 0);
    CHECK(r.out == "648\n");
    const auto j = nlohmann::json::parse(run("--format json lattice discriminant 'E6(-1)'").out);
    CHECK(j.at("order") == 3);
    CHECK(j.at("q_values").at(0) == "2/3");
}

TEST_CASE("strata subcommand") {
    const auto r = run("strata --n 4 --d 3 --format json");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("size") == 72);
    CHECK(j.at("min_nonzero_codim") == 5);
}

TEST_CASE("global flags may follow the subcommand") {
    const auto before = run("--format json strata --n 2 --d 3");
    const auto after = run("strata --n 2 --d 3 --format json");
    CHECK(before.code == 0);
    CHECK(before.out == after.out);
    const auto latex = run("scenario run cubiccurve --format latex");
    CHECK(latex.code == 0);
    CHECK(latex.out.find("\\begin{array}") != std::string::npos);
}

TEST_CASE("scenario output is byte-identical across runs") {
    const auto a = run("--format json scenario run cubicsurf");
    const auto b = run("--format json scenario run cubicsurf");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.contains("outputs"));
}

TEST_CASE("truncate limits series output") {
    const auto r = run("--format json --truncate 0 scenario run cubic3fold");
    REQUIRE(r.code == 0);
    for (const auto& s : nlohmann::json::parse(r.out).at("steps"))
        if (s.contains("series")) CHECK(s.at("series").at("order") == 0);

    // truncation never changes the coefficients it keeps
    const auto full = nlohmann::json::parse(run("--format json scenario run cubic3fold").out).at("steps");
    const auto cut = nlohmann::json::parse(run("--format json --truncate 4 scenario run cubic3fold").out).at("steps");
    REQUIRE(full.size() == cut.size());
    for (size_t i = 0; i < full.size(); ++i) {
        if (!full[i].contains("series")) continue;
        const auto& a = full[i].at("series").at("coeffs");
        const auto& b = cut[i].at("series").at("coeffs");
        REQUIRE(b.size() <= a.size());
        for (size_t k = 0; k < b.size(); ++k) CHECK(a[k] == b[k]);
    }
}

TEST_CASE("scenario list") {
    const auto r = run("scenario list");
    CHECK(r.code == 0);
    CHECK(r.out.find("cubic3fold") != std::string::npos);
}

TEST_CASE("exit codes and error JSON") {
    const auto bad_args = run("bogus");
    CHECK(bad_args.code == 3);
    CHECK(nlohmann::json::parse(bad_args.err).at("error").at("kind") == "parse_error");

    const auto missing = run("scenario run /nonexistent/file.json");
    CHECK(missing.code == 3);
    CHECK(nlohmann::json::parse(missing.err).at("error").contains("message"));

    const auto failing = write_file("failing.json", R"({"name": "failing", "order": 2, "steps": [
        {"id": "p", "op": "projective_space", "args": {"dim": 1}}],
        "outputs": [{"label": "P1", "of": "$p", "dim": 1, "expect_even": [1, 2]}]})");
    const auto f = run("scenario run '" + failing.string() + "'");
    CHECK(f.code == 2);
    CHECK(nlohmann::json::parse(f.err).at("error").at("kind") == "check_failure");

    const auto uncited = write_file("uncited.json", R"({"name": "u", "order": 2,
        "facts": [{"id": "f", "statement": "s", "citation": ""}], "steps": []})");
    CHECK(run("scenario run '" + uncited.string() + "'").code == 2);

    const auto passing = write_file("passing.json", R"({"name": "ok", "order": 2, "steps": [
        {"id": "p", "op": "projective_space", "args": {"dim": 1}}],
        "outputs": [{"label": "P1", "of": "$p", "dim": 1, "expect_even": [1, 1]}]})");
    CHECK(run("scenario run '" + passing.string() + "'").code == 0);
}

TEST_CASE("blowup subcommand") {
    const auto r = run("blowup --exceptional 1,0,1,0,1,0,1 --dim 4");
    CHECK(r.code == 0);
    CHECK(r.out == "t^2+t^4+t^6 mod t^9\n");
    CHECK(run("blowup --exceptional 1,1 --dim 4").code == 3);
}
