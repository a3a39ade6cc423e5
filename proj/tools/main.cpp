#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "offswitch/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"decision-theoretic shutdown toolkit"};
    app.require_subcommand(1);

    offswitch::RunConfig config;
    std::string tie_break = "lex";
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", config.format, "json or table")
            ->check(CLI::IsMember({"json", "table"}));
        cmd->add_option("--out", config.out_path, "write the report to this file");
    };

    CLI::App* check = app.add_subcommand("check-axioms", "check every axiom a file supports");
    check->add_option("--prefs", config.prefs_path, "preference structure JSON")->required();
    add_common(check);

    CLI::App* simulate = app.add_subcommand("simulate", "classify the shutdown disposition");
    simulate->add_option("--scenario", config.scenario_path, "scenario JSON")->required();
    simulate->add_option("--prefs", config.prefs_path, "preference structure JSON")->required();
    simulate->add_option("--tie-break", tie_break, "error, lex, or all")
        ->check(CLI::IsMember({"error", "lex", "all"}));
    add_common(simulate);

    CLI::App* verify = app.add_subcommand("verify", "verify a theorem or its supporting lemmas");
    verify->add_option("target", config.verify_target, "t1, t2, t3, or lemmas")
        ->required()
        ->check(CLI::IsMember({"t1", "t2", "t3", "lemmas"}));
    verify->add_option("--scenario", config.scenario_path, "scenario JSON (t1, lemmas)");
    verify->add_option("--prefs", config.prefs_path, "preferences / t3 input JSON")->required();
    std::string x_id, y_id;
    verify->add_option("--x", x_id, "focus lottery id (t2)");
    verify->add_option("--y", y_id, "focus lottery id (t2)");
    add_common(verify);

    CLI::App* count = app.add_subcommand("count-pairs", "no-preference bound for two chains");
    count->add_option("--short", config.short_chain, "short chain length")->required();
    count->add_option("--long", config.long_chain, "long chain length")->required();
    add_common(count);

    CLI::App* mine_cmd = app.add_subcommand("mine", "enumerate structures and mine findings");
    mine_cmd->add_option("--bounds", config.bounds_path, "enumeration bounds JSON")->required();
    mine_cmd->add_option("--workers", config.workers, "worker threads");
    mine_cmd->add_option("--seed", seed, "enable sampling past the cap")
        ->each([&](const std::string&) { seed_set = true; });
    add_common(mine_cmd);

    CLI::App* replay_cmd = app.add_subcommand("replay", "re-verify a findings file");
    replay_cmd->add_option("--findings", config.findings_path, "findings JSONL")->required();
    add_common(replay_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (check->parsed()) config.command = "check-axioms";
    if (simulate->parsed()) config.command = "simulate";
    if (verify->parsed()) config.command = "verify";
    if (count->parsed()) config.command = "count-pairs";
    if (mine_cmd->parsed()) config.command = "mine";
    if (replay_cmd->parsed()) config.command = "replay";

    if (tie_break == "error") config.tie_break = offswitch::TieBreak::Error;
    if (tie_break == "lex") config.tie_break = offswitch::TieBreak::Lexicographic;
    if (tie_break == "all") config.tie_break = offswitch::TieBreak::ReportAll;
    if (seed_set) config.seed = seed;
    if (!x_id.empty()) config.x_id = x_id;
    if (!y_id.empty()) config.y_id = y_id;

    return offswitch::run(config, std::cout, std::cerr);
}
