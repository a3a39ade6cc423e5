#include "offswitch/environment.hpp"

#include <set>

#include "offswitch/errors.hpp"

namespace offswitch {

Trajectory stamp_action(const TrajectorySuffix& suffix, const std::string& action,
                        const std::string& initial_state) {
    std::vector<Step> steps;
    steps.reserve(suffix.steps.size() + 1);
    steps.push_back(Step{initial_state, action});
    steps.insert(steps.end(), suffix.steps.begin(), suffix.steps.end());
    return Trajectory(std::move(steps), suffix.shutdown_at);
}

const std::vector<std::string>& ShutdownScenario::actions() {
    static const std::vector<std::string> order{kActionPrevent, kActionLeave, kActionCause};
    return order;
}

ShutdownScenario ShutdownScenario::make(Rational f, Rational g, Rational h,
                                        std::vector<TrajectorySuffix> continuations) {
    if (!(Rational(0) <= f && f < g && g < h && h <= Rational(1))) {
        throw InvalidScenario("need 0 <= f < g < h <= 1, got f=" + f.str() + " g=" + g.str() +
                              " h=" + h.str());
    }
    if (continuations.empty()) {
        throw InvalidScenario("scenario needs at least one continuation suffix");
    }
    std::set<std::string> first_actions;
    for (const TrajectorySuffix& suffix : continuations) {
        if (suffix.steps.empty()) {
            throw InvalidScenario("continuation suffix must start with a step at the unpressed "
                                  "state");
        }
        if (!first_actions.insert(suffix.steps.front().action).second) {
            throw InvalidScenario("continuation suffixes must differ in their timestep-2 action");
        }
        // Must stamp into a valid trajectory for every action.
        stamp_action(suffix, kActionLeave);
    }
    ShutdownScenario s;
    s.f_ = std::move(f);
    s.g_ = std::move(g);
    s.h_ = std::move(h);
    s.continuations_ = std::move(continuations);
    return s;
}

const Rational& ShutdownScenario::chance_of(const std::string& action) const {
    if (action == kActionPrevent) return f_;
    if (action == kActionLeave) return g_;
    if (action == kActionCause) return h_;
    throw InvalidScenario("unknown action " + action);
}

Trajectory ShutdownScenario::pressed_outcome(const std::string& action) const {
    return stamp_action(TrajectorySuffix{{}, 2}, action);
}

std::map<std::string, Trajectory> ShutdownScenario::pressed_outcomes() const {
    std::map<std::string, Trajectory> out;
    for (const std::string& a : actions()) out.emplace(a, pressed_outcome(a));
    return out;
}

std::vector<Trajectory> ShutdownScenario::unpressed_outcomes(const std::string& action) const {
    std::vector<Trajectory> out;
    out.reserve(continuations_.size());
    for (const TrajectorySuffix& suffix : continuations_) {
        out.push_back(stamp_action(suffix, action));
    }
    return out;
}

std::vector<std::vector<Trajectory>> twin_families(const ShutdownScenario& scenario) {
    std::vector<std::vector<Trajectory>> families;
    for (const TrajectorySuffix& suffix : scenario.continuations()) {
        std::vector<Trajectory> family;
        for (const std::string& a : ShutdownScenario::actions()) {
            family.push_back(stamp_action(suffix, a));
        }
        families.push_back(std::move(family));
    }
    std::vector<Trajectory> pressed;
    for (const std::string& a : ShutdownScenario::actions()) {
        pressed.push_back(scenario.pressed_outcome(a));
    }
    families.push_back(std::move(pressed));
    return families;
}

DecisionTree::NodeId DecisionTree::check(NodeId id) const {
    if (id < 0 || id >= node_count()) {
        throw std::out_of_range("decision tree child id " + std::to_string(id));
    }
    return id;
}

DecisionTree::NodeId DecisionTree::terminal(Trajectory t) {
    nodes_.push_back(Node{Kind::Terminal, std::move(t), {}, {}});
    return static_cast<NodeId>(nodes_.size()) - 1;
}

DecisionTree::NodeId DecisionTree::choice(std::vector<std::pair<std::string, NodeId>> actions) {
    if (actions.empty()) throw std::invalid_argument("choice node with no actions");
    for (const auto& [a, child] : actions) check(child);
    nodes_.push_back(Node{Kind::Choice, std::nullopt, std::move(actions), {}});
    return static_cast<NodeId>(nodes_.size()) - 1;
}

DecisionTree::NodeId DecisionTree::chance(std::vector<std::pair<Rational, NodeId>> branches) {
    if (branches.empty()) throw std::invalid_argument("chance node with no branches");
    Rational total(0);
    for (const auto& [p, child] : branches) {
        check(child);
        if (p <= Rational(0)) {
            throw InvalidProbability("chance branch probability " + p.str() + " must be > 0");
        }
        total += p;
    }
    if (total != Rational(1)) {
        throw InvalidProbability("chance branch probabilities sum to " + total.str());
    }
    nodes_.push_back(Node{Kind::Chance, std::nullopt, {}, std::move(branches)});
    return static_cast<NodeId>(nodes_.size()) - 1;
}

int DecisionTree::terminal_count() const {
    int count = 0;
    for (const Node& n : nodes_) {
        if (n.kind == Kind::Terminal) ++count;
    }
    return count;
}

DecisionTree build_figure1_tree(const ShutdownScenario& scenario) {
    DecisionTree tree;
    std::vector<std::pair<std::string, DecisionTree::NodeId>> root_actions;
    for (const std::string& action : ShutdownScenario::actions()) {
        const Rational& pressed_chance = scenario.chance_of(action);

        std::vector<std::pair<Rational, DecisionTree::NodeId>> branches;
        if (!pressed_chance.is_zero()) {
            branches.emplace_back(pressed_chance, tree.terminal(scenario.pressed_outcome(action)));
        }
        if (pressed_chance != Rational(1)) {
            std::vector<std::pair<std::string, DecisionTree::NodeId>> options;
            for (const Trajectory& t : scenario.unpressed_outcomes(action)) {
                // The edge is the timestep-2 action of this continuation.
                options.emplace_back(t.steps()[1].action, tree.terminal(t));
            }
            branches.emplace_back(Rational(1) - pressed_chance, tree.choice(std::move(options)));
        }
        root_actions.emplace_back(action, tree.chance(std::move(branches)));
    }
    tree.set_root(tree.choice(std::move(root_actions)));
    return tree;
}

}  // namespace offswitch
