#include "offswitch/agent.hpp"

#include <algorithm>

#include "offswitch/errors.hpp"
#include "offswitch/lottery_algebra.hpp"

namespace offswitch {

std::string to_string(TieBreak t) {
    switch (t) {
        case TieBreak::Error: return "error";
        case TieBreak::Lexicographic: return "lex";
        case TieBreak::ReportAll: return "all";
    }
    return "?";
}

std::string to_string(Disposition d) {
    switch (d) {
        case Disposition::Averse: return "Averse";
        case Disposition::Seeking: return "Seeking";
        case Disposition::Neutral: return "Neutral";
    }
    return "?";
}

namespace {

class Induction {
public:
    Induction(const DecisionTree& tree, PreferenceStructure structure,
              const InductionOptions& options)
        : tree_(tree), options_(options) {
        result_.structure = std::move(structure);
        result_.root = tree.root();
    }

    InductionResult run() {
        visit(tree_.root());
        return std::move(result_);
    }

private:
    const DecisionTree& tree_;
    const InductionOptions& options_;
    InductionResult result_;

    void ensure_registered(const Lottery& l) {
        if (result_.structure.id_of(l)) return;
        if (!options_.auto_register) {
            throw UnregisteredLottery("lottery composed during induction is not registered: " +
                                      l.str());
        }
        result_.structure.register_lottery(l);
    }

    const Lottery& visit(DecisionTree::NodeId id) {
        auto found = result_.per_node.find(id);
        if (found != result_.per_node.end()) return found->second.lottery;

        const DecisionTree::Node& node = tree_.node(id);
        NodeOutcome outcome = [&] {
            switch (node.kind) {
                case DecisionTree::Kind::Terminal: {
                    return NodeOutcome{Lottery::degenerate(*node.trajectory), {}, {}, false};
                }
                case DecisionTree::Kind::Chance: {
                    std::vector<std::pair<Rational, Lottery>> parts;
                    parts.reserve(node.branches.size());
                    for (const auto& [p, child] : node.branches) {
                        parts.emplace_back(p, visit(child));
                    }
                    return NodeOutcome{mix_many(parts), {}, {}, false};
                }
                case DecisionTree::Kind::Choice: {
                    return choose(node);
                }
            }
            throw std::logic_error("unreachable");
        }();
        ensure_registered(outcome.lottery);
        auto [it, inserted] = result_.per_node.emplace(id, std::move(outcome));
        return it->second.lottery;
    }

    NodeOutcome choose(const DecisionTree::Node& node) {
        std::vector<std::pair<std::string, Lottery>> options;
        options.reserve(node.actions.size());
        for (const auto& [action, child] : node.actions) {
            options.emplace_back(action, visit(child));
        }
        for (const auto& [action, lottery] : options) ensure_registered(lottery);
        if (options_.closure_rules) {
            ClosureOutcome closed = close_structure(result_.structure, *options_.closure_rules);
            if (!closed.consistent()) {
                throw InconsistentStructure("closure during induction derived both " +
                                            closed.inconsistency->a.str() + " > " +
                                            closed.inconsistency->b.str() + " and its reverse");
            }
            result_.structure = std::move(closed.structure);
        }

        std::vector<std::string> survivors;
        for (const auto& [action, lottery] : options) {
            bool dominated = false;
            for (const auto& [other_action, other_lottery] : options) {
                if (&other_lottery == &lottery) continue;
                if (result_.structure.relation(other_lottery, lottery) ==
                    RelationVerdict::StrictlyPrefers) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) survivors.push_back(action);
        }
        // Every choice has at least one survivor: strict preference is acyclic
        // only on consistent structures, which the caller checked.
        if (survivors.empty()) {
            throw InconsistentStructure("all actions strictly dominated at a choice node");
        }

        bool ambiguous = survivors.size() > 1;
        if (ambiguous && options_.tie_break == TieBreak::Error) {
            std::string list;
            for (const std::string& a : survivors) {
                if (!list.empty()) list += ", ";
                list += a;
            }
            throw UnrankedChoice("choice between unranked survivors: " + list);
        }
        std::string selected = *std::min_element(survivors.begin(), survivors.end());
        Lottery chosen = [&] {
            for (const auto& [action, lottery] : options) {
                if (action == selected) return lottery;
            }
            throw std::logic_error("selected action vanished");
        }();
        return NodeOutcome{std::move(chosen), std::move(survivors), selected, ambiguous};
    }
};

}  // namespace

InductionResult backward_induct(const DecisionTree& tree, const PreferenceStructure& structure,
                                const InductionOptions& options) {
    ConsistencyResult consistency = structure.transitive_consistency();
    if (!consistency.consistent) {
        throw InconsistentStructure("structure claims " + consistency.witness->at(0).str() +
                                    " > " + consistency.witness->at(1).str() +
                                    " but a weak chain leads back through " +
                                    consistency.witness->at(2).str());
    }
    return Induction(tree, structure, options).run();
}

ShutdownDisposition classify(const ShutdownScenario& scenario,
                             const PreferenceStructure& structure,
                             const InductionOptions& options) {
    return classify_report(scenario, structure, options).disposition;
}

ClassificationReport classify_report(const ShutdownScenario& scenario,
                                     const PreferenceStructure& structure,
                                     const InductionOptions& options) {
    DecisionTree tree = build_figure1_tree(scenario);
    InductionResult induction = backward_induct(tree, structure, options);
    const NodeOutcome& root = induction.root_outcome();

    ShutdownDisposition disposition;
    disposition.survivors = root.survivors;
    if (root.survivors == std::vector<std::string>{kActionPrevent}) {
        disposition.kind = Disposition::Averse;
        disposition.reason = "Prevent is the unique undominated action";
    } else if (root.survivors == std::vector<std::string>{kActionCause}) {
        disposition.kind = Disposition::Seeking;
        disposition.reason = "Cause is the unique undominated action";
    } else {
        disposition.kind = Disposition::Neutral;
        std::string list;
        for (const std::string& a : root.survivors) {
            if (!list.empty()) list += ", ";
            list += a;
        }
        disposition.reason = "undominated actions: {" + list + "}";
    }

    ClassificationReport report{std::move(disposition), {}, {}};
    const DecisionTree::Node& root_node = tree.node(tree.root());
    for (const auto& [action, child] : root_node.actions) {
        report.root_lotteries.emplace(action, induction.per_node.at(child).lottery);
    }
    report.induction = std::move(induction);
    return report;
}

}  // namespace offswitch
