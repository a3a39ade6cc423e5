#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "offswitch/cli.hpp"
#include "offswitch/json_io.hpp"

using namespace offswitch;
using namespace offswitch::testing;

namespace {

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "offswitch_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    auto path = temp_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path.string();
}

std::string scenario_file() {
    return write_file("fig1.json", to_json(basic_scenario()).dump(2) + "\n");
}

std::string prefs_file(CanonicalKind kind, const std::string& name) {
    PreferenceStructure s = figure1_canonical(basic_scenario(), kind);
    return write_file(name, to_json(s).dump(2) + "\n");
}

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult invoke(RunConfig config) {
    std::ostringstream out, err;
    int code = run(config, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("verify t1 on the averse fixture exits 0 and reports Averse") {
    RunConfig config;
    config.command = "verify";
    config.verify_target = "t1";
    config.scenario_path = scenario_file();
    config.prefs_path = prefs_file(CanonicalKind::UOverP, "averse.json");
    RunResult result = invoke(config);
    CHECK(result.exit_code == 0);
    json report = json::parse(result.out);
    CHECK(report.at("facts").at("disposition") == "Averse");
    CHECK(report.at("conclusion_checked").get<bool>());
}

TEST_CASE("simulate renders dispositions verbatim in table mode") {
    RunConfig config;
    config.command = "simulate";
    config.scenario_path = scenario_file();
    config.prefs_path = prefs_file(CanonicalKind::POverU, "seeking.json");
    config.format = "table";
    RunResult result = invoke(config);
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("disposition: Seeking") != std::string::npos);
    CHECK(result.out.find("survivors: Cause") != std::string::npos);
}

TEST_CASE("count-pairs renders the worked bound") {
    RunConfig config;
    config.command = "count-pairs";
    config.short_chain = 6;
    config.long_chain = 6;
    config.format = "table";
    RunResult result = invoke(config);
    CHECK(result.exit_code == 0);
    CHECK(result.out == "max_indifferent=6 min_strict=30\n");

    config.format = "json";
    RunResult as_json = invoke(config);
    json report = json::parse(as_json.out);
    CHECK(report.at("max_indifferent").get<long long>() == 6);
    CHECK(report.at("min_strict").get<long long>() == 30);
}

TEST_CASE("malformed input exits 2 with a parse diagnostic naming file, line, and field") {
    std::string path = write_file("malformed.json", "{\n  \"universe\": [\n");
    RunConfig config;
    config.command = "verify";
    config.verify_target = "t1";
    config.scenario_path = scenario_file();
    config.prefs_path = path;
    RunResult result = invoke(config);
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("malformed.json") != std::string::npos);
    CHECK(result.err.find(":3") != std::string::npos);  // the error is on line 3

    std::string missing_field = write_file("missing.json", "{\n  \"base\": []\n}\n");
    config.prefs_path = missing_field;
    RunResult missing = invoke(config);
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("universe") != std::string::npos);
}

TEST_CASE("violations exit 1 and the report carries a witness") {
    // A gap structure fails completeness under check-axioms.
    RunConfig config;
    config.command = "check-axioms";
    config.prefs_path = prefs_file(CanonicalKind::UPGap, "gap.json");
    RunResult result = invoke(config);
    CHECK(result.exit_code == 1);
    json report = json::parse(result.out);
    bool found_witness = false;
    for (const json& entry : report.at("axioms")) {
        if (!entry.at("holds").get<bool>() && !entry.at("witness").is_null()) {
            found_witness = true;
        }
    }
    CHECK(found_witness);
}

TEST_CASE("check-axioms passes on the canonical averse fixture") {
    RunConfig config;
    config.command = "check-axioms";
    config.prefs_path = prefs_file(CanonicalKind::UOverP, "averse2.json");
    RunResult result = invoke(config);
    CHECK(result.exit_code == 0);
}

TEST_CASE("verify t2 covers all no-preference pairs by default") {
    PreferenceStructure s;
    s.register_lottery(atom_lottery("a"), "A");
    s.register_lottery(atom_lottery("b"), "B");
    s.register_lottery(atom_lottery("c"), "C");
    s.add_weak(atom_lottery("a"), atom_lottery("b"));
    s.add_weak(atom_lottery("b"), atom_lottery("a"));
    s.add_weak(atom_lottery("a"), atom_lottery("c"));
    s.add_weak(atom_lottery("b"), atom_lottery("c"));
    std::string path = write_file("t2.json", to_json(s).dump(2) + "\n");

    RunConfig config;
    config.command = "verify";
    config.verify_target = "t2";
    config.prefs_path = path;
    RunResult result = invoke(config);
    CHECK(result.exit_code == 0);
    json report = json::parse(result.out);
    CHECK(report.at("pairs").get<int>() == 1);

    config.x_id = "A";
    config.y_id = "B";
    RunResult focused = invoke(config);
    CHECK(focused.exit_code == 0);
}

TEST_CASE("verify t3 accepts a witness file") {
    json doc{{"delta", "3/5"},
             {"witness",
              json{{"a", json::array()},
                   {"b", json::array()},
                   {"c", json{{"utilities", json::array()}, {"shutdown", true}}},
                   {"i", "50"},
                   {"j", "0"},
                   {"e", "50"},
                   {"k", "101/50"},
                   {"l", "2"}}}};
    std::string path = write_file("t3.json", doc.dump(2) + "\n");
    RunConfig config;
    config.command = "verify";
    config.verify_target = "t3";
    config.prefs_path = path;
    RunResult result = invoke(config);
    CHECK(result.exit_code == 0);
    json report = json::parse(result.out);
    CHECK(report.at("facts").at("disjunct1") == "true");
}

TEST_CASE("mine writes findings and replay verifies them byte for byte") {
    json bounds{{"max_trajectories", 6},
                {"probability_grid", json::array({"0", "1/2", "1"})},
                {"relation_space", "all"},
                {"target", "t1"}};
    std::string bounds_path = write_file("bounds.json", bounds.dump(2) + "\n");
    auto findings_path = (temp_dir() / "findings.jsonl").string();

    RunConfig config;
    config.command = "mine";
    config.bounds_path = bounds_path;
    config.out_path = findings_path;
    RunResult mined = invoke(config);
    CHECK(mined.exit_code == 1);  // counterexamples were found and reported

    std::ifstream in(findings_path);
    std::string first_line;
    REQUIRE(std::getline(in, first_line));
    CHECK(json::parse(first_line).at("kind") == "Confirmation");

    RunConfig replay_config;
    replay_config.command = "replay";
    replay_config.findings_path = findings_path;
    RunResult replayed = invoke(replay_config);
    CHECK(replayed.exit_code == 0);
    json report = json::parse(replayed.out);
    CHECK(report.at("mismatches").get<long long>() == 0);

    // Identical inputs, byte-identical findings.
    auto second_path = (temp_dir() / "findings2.jsonl").string();
    config.out_path = second_path;
    invoke(config);
    std::ifstream a(findings_path), b(second_path);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

#ifdef OFFSWITCH_CLI_PATH
TEST_CASE("the installed binary wires the exit codes through") {
    std::string scenario = scenario_file();
    std::string prefs = prefs_file(CanonicalKind::UOverP, "averse3.json");
    std::string quiet = " > /dev/null 2>&1";
    std::string base = std::string(OFFSWITCH_CLI_PATH);
    int ok = std::system(
        (base + " verify t1 --scenario " + scenario + " --prefs " + prefs + quiet).c_str());
    CHECK(WEXITSTATUS(ok) == 0);
    int usage = std::system((base + " verify" + quiet).c_str());
    CHECK(WEXITSTATUS(usage) == 2);
    int missing = std::system(
        (base + " verify t1 --scenario " + scenario + " --prefs /nonexistent.json" + quiet)
            .c_str());
    CHECK(WEXITSTATUS(missing) == 2);
}
#endif
