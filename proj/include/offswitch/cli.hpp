#ifndef OFFSWITCH_CLI_HPP
#define OFFSWITCH_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "offswitch/agent.hpp"

namespace offswitch {

/// One resolved invocation. Exit codes: 0 = all checks passed, 1 = a violation
/// or counterexample was found (and reported), 2 = input/config error.
struct RunConfig {
    std::string command;        // check-axioms | simulate | verify | count-pairs | mine | replay
    std::string verify_target;  // t1 | t2 | t3 | lemmas
    std::string scenario_path;
    std::string prefs_path;
    std::string bounds_path;
    std::string findings_path;
    std::string out_path;       // empty = stdout
    std::string format = "json";  // json | table
    TieBreak tie_break = TieBreak::Lexicographic;
    int short_chain = 6;
    int long_chain = 6;
    int workers = 1;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> x_id;  // focus pair for verify t2
    std::optional<std::string> y_id;
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace offswitch

#endif
