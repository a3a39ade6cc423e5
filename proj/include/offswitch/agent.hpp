#ifndef OFFSWITCH_AGENT_HPP
#define OFFSWITCH_AGENT_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "offswitch/axioms.hpp"
#include "offswitch/environment.hpp"
#include "offswitch/lottery.hpp"
#include "offswitch/preference.hpp"

namespace offswitch {

enum class TieBreak {
    Error,          // more than one survivor is an error
    Lexicographic,  // lowest action id wins
    ReportAll,      // lexicographic selection, survivors reported, no error
};

std::string to_string(TieBreak t);

struct InductionOptions {
    TieBreak tie_break = TieBreak::Lexicographic;
    /// Lotteries composed during induction are registered into a working copy
    /// of the structure; unranked composites then compare as gaps rather than
    /// erroring out. When off, a missing composite throws UnregisteredLottery.
    bool auto_register = true;
    /// When set, the working copy is saturated with these rules before
    /// survivors are computed at each choice node.
    std::optional<std::set<AxiomId>> closure_rules;
};

/// Per-node outcome of the bottom-up pass.
struct NodeOutcome {
    Lottery lottery;
    // Choice nodes only:
    std::vector<std::string> survivors;       // actions not strictly dispreferred to any other
    std::optional<std::string> selected;      // tie-broken pick among survivors
    bool ambiguous = false;                   // more than one survivor
};

struct InductionResult {
    std::map<DecisionTree::NodeId, NodeOutcome> per_node;
    DecisionTree::NodeId root = -1;
    /// The structure the induction actually consulted (input plus any
    /// auto-registered composites and closure-derived pairs).
    PreferenceStructure structure;

    const NodeOutcome& root_outcome() const { return per_node.at(root); }
};

/// Terminal nodes get their degenerate lottery, chance nodes the exact
/// probability-weighted mix of their children, choice nodes the lottery of the
/// selected child. An action is eliminated iff its lottery is strictly
/// dispreferred to that of some available alternative; indifference and gaps
/// never eliminate.
InductionResult backward_induct(const DecisionTree& tree, const PreferenceStructure& structure,
                                const InductionOptions& options = {});

enum class Disposition { Averse, Seeking, Neutral };

std::string to_string(Disposition d);

struct ShutdownDisposition {
    Disposition kind = Disposition::Neutral;
    std::vector<std::string> survivors;
    std::string reason;
};

struct ClassificationReport {
    ShutdownDisposition disposition;
    std::map<std::string, Lottery> root_lotteries;
    InductionResult induction;
};

/// Averse iff Prevent is the unique surviving root action, Seeking iff Cause
/// is; everything else is Neutral with the survivor set as the reason.
ShutdownDisposition classify(const ShutdownScenario& scenario,
                             const PreferenceStructure& structure,
                             const InductionOptions& options = {});

ClassificationReport classify_report(const ShutdownScenario& scenario,
                                     const PreferenceStructure& structure,
                                     const InductionOptions& options = {});

}  // namespace offswitch

#endif
