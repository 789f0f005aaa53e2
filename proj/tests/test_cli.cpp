#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_test_stdout.tmp";
    const std::string cmd =
        std::string(QUADROOTS_CLI) + " " + args + " > " + out_path + " 2> cli_test_stderr.tmp";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    int code = -1;
#ifdef WEXITSTATUS
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
#else
    code = status;
#endif
    return {code, buffer.str()};
}

} // namespace

TEST_CASE("solve from inline coefficients emits the JSON schema") {
    auto r = run_cli("solve --coeffs \"1,0,-1\"");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["degree"] == 2);
    CHECK(j["shift_A"] == doctest::Approx(3.0));
    REQUIRE(j["roots"].is_array());
    CHECK(j["roots"].size() == 2);
    for (const auto& root : j["roots"]) {
        CHECK(root.contains("re"));
        CHECK(root.contains("im"));
        CHECK(root.contains("multiplicity"));
        CHECK(root.contains("residual"));
        CHECK(root.contains("branch"));
        CHECK(root.contains("raw_re"));
        CHECK(root.contains("raw_im"));
    }
    CHECK(j["diagnostics"].contains("Z"));
    CHECK(j["diagnostics"].contains("escalations"));
}

TEST_CASE("deflated monomial factor is reported with its multiplicity") {
    auto r = run_cli("solve --coeffs \"1,2,0,0\"");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["roots"].size() == 2);
    CHECK(j["roots"][0]["re"] == doctest::Approx(0.0));
    CHECK(j["roots"][0]["multiplicity"] == 2);
    CHECK(j["roots"][0]["branch"] == -1);
    CHECK(j["roots"][1]["re"] == doctest::Approx(-2.0).epsilon(1e-8));
    CHECK(j["roots"][1]["residual"].get<double>() <= 1e-9);
    CHECK(j["diagnostics"]["total_multiplicity"] == 3);
}

TEST_CASE("complex coefficients parse in text form") {
    auto r = run_cli("solve --coeffs \"1, 0, -2+3i\"");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["degree"] == 2);
}

TEST_CASE("JSON input file round trip") {
    {
        std::ofstream f("cli_test_input.json");
        f << R"({"coefficients": [[1,0],[2,0]]})";
    }
    auto r = run_cli("solve --input cli_test_input.json --with-oracle");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["degree"] == 1);
    CHECK(j["roots"][0]["re"] == doctest::Approx(-2.0).epsilon(1e-9));
    REQUIRE(j.contains("oracle_max_distance"));
    CHECK(j["oracle_max_distance"].get<double>() <= 1e-8);
    std::remove("cli_test_input.json");
}

TEST_CASE("runs are deterministic") {
    auto a = run_cli("solve --coeffs \"1,0.5,-0.25\"");
    auto b = run_cli("solve --coeffs \"1,0.5,-0.25\"");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("csv output is one root per line") {
    auto r = run_cli("solve --coeffs \"1,2\" --format csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        ++count;
        int commas = 0;
        for (char c : line)
            if (c == ',') ++commas;
        CHECK(commas == 3);
    }
    CHECK(count == 1);
}

TEST_CASE("certificate attaches under its own key") {
    auto r = run_cli("solve --coeffs \"1,2\" --certificate");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.contains("certificate"));
    CHECK(j["certificate"].contains("alpha"));
    CHECK(j["certificate"].contains("pass"));
    CHECK(j["certificate"]["pass"] == true);
}

TEST_CASE("raw flag suppresses polishing") {
    auto r = run_cli("solve --coeffs \"1,2\" --raw");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["diagnostics"]["polished"] == false);
}

TEST_CASE("shift override appears in the output") {
    auto r = run_cli("solve --coeffs \"1,0,-1\" --shift 6");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["shift_A"] == doctest::Approx(6.0));
}

TEST_CASE("input errors exit with code 1") {
    CHECK(run_cli("solve --coeffs \"abc\"").exit_code == 1);
    CHECK(run_cli("solve --coeffs \"5\"").exit_code == 1);      // degree 0
    CHECK(run_cli("solve --coeffs \"\"").exit_code == 1);
    CHECK(run_cli("solve --input does_not_exist.json").exit_code == 1);
    CHECK(run_cli("solve").exit_code == 1);
}

TEST_CASE("output lands in the requested file") {
    auto r = run_cli("solve --coeffs \"1,2\" --output cli_test_out.json");
    REQUIRE(r.exit_code == 0);
    std::ifstream f("cli_test_out.json");
    REQUIRE(f.good());
    const json j = json::parse(f);
    CHECK(j["degree"] == 1);
    std::remove("cli_test_out.json");
}
