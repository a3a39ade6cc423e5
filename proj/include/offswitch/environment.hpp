#ifndef OFFSWITCH_ENVIRONMENT_HPP
#define OFFSWITCH_ENVIRONMENT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "offswitch/lottery.hpp"
#include "offswitch/rational.hpp"
#include "offswitch/trajectory.hpp"

namespace offswitch {

inline const std::string kActionPrevent = "Prevent";
inline const std::string kActionLeave = "Leave";
inline const std::string kActionCause = "Cause";
inline const std::string kInitialState = "s_I";
inline const std::string kUnpressedState = "s_U";

/// What happens from timestep 2 onward: steps (the first one at timestep 2) and
/// an optional later press of the button. The timestep-1 action is stamped in
/// later, which is what makes twin trajectories twins.
struct TrajectorySuffix {
    std::vector<Step> steps;
    std::optional<int> shutdown_at;

    bool operator==(const TrajectorySuffix&) const = default;
    auto operator<=>(const TrajectorySuffix&) const = default;
};

/// Full trajectory whose timestep-1 action is `action` and whose remaining
/// steps equal the suffix.
Trajectory stamp_action(const TrajectorySuffix& suffix, const std::string& action,
                        const std::string& initial_state = kInitialState);

/// A shutdown-influencing state: the three actions change only the chance of
/// the button being pressed (f for Prevent, g for Leave, h for Cause, with
/// 0 <= f < g < h <= 1). Pressed means immediate shutdown at timestep 2. The
/// continuation suffixes shared across actions are the options at the
/// unpressed state.
class ShutdownScenario {
public:
    /// Placeholder state; assign from make() before use.
    ShutdownScenario() : f_(0), g_(Rational(1, 2)), h_(1) {}

    static ShutdownScenario make(Rational f, Rational g, Rational h,
                                 std::vector<TrajectorySuffix> continuations);

    const Rational& f() const { return f_; }
    const Rational& g() const { return g_; }
    const Rational& h() const { return h_; }
    const std::vector<TrajectorySuffix>& continuations() const { return continuations_; }

    /// Prevent, Leave, Cause — the stable order used everywhere.
    static const std::vector<std::string>& actions();

    const Rational& chance_of(const std::string& action) const;

    /// The trajectory realized when the button is pressed after `action`:
    /// one step at s_I, then shutdown at timestep 2.
    Trajectory pressed_outcome(const std::string& action) const;
    std::map<std::string, Trajectory> pressed_outcomes() const;

    /// The continuation suffixes stamped with `action`.
    std::vector<Trajectory> unpressed_outcomes(const std::string& action) const;

private:
    Rational f_, g_, h_;
    std::vector<TrajectorySuffix> continuations_;
};

/// Families of trajectories identical except for the timestep-1 action: one
/// family per continuation suffix, then the pressed family.
std::vector<std::vector<Trajectory>> twin_families(const ShutdownScenario& scenario);

/// Finite decision tree over an arena of nodes. Children are built before their
/// parents, so trees are acyclic by construction.
class DecisionTree {
public:
    using NodeId = int;
    enum class Kind { Choice, Chance, Terminal };

    struct Node {
        Kind kind;
        std::optional<Trajectory> trajectory;                    // Terminal
        std::vector<std::pair<std::string, NodeId>> actions;     // Choice
        std::vector<std::pair<Rational, NodeId>> branches;       // Chance
    };

    NodeId terminal(Trajectory t);
    NodeId choice(std::vector<std::pair<std::string, NodeId>> actions);
    /// Probabilities must be positive and sum to 1.
    NodeId chance(std::vector<std::pair<Rational, NodeId>> branches);

    void set_root(NodeId id) { root_ = id; }
    NodeId root() const { return root_; }
    const Node& node(NodeId id) const { return nodes_[id]; }
    int node_count() const { return static_cast<int>(nodes_.size()); }

    int terminal_count() const;

private:
    std::vector<Node> nodes_;
    NodeId root_ = -1;

    NodeId check(NodeId id) const;
};

/// Root choice over Prevent/Leave/Cause; each action leads to a chance node
/// with pressed probability f/g/h, whose unpressed branch is a choice over the
/// stamped continuations. Zero-probability branches are omitted (chance nodes
/// carry positive masses only), which leaves induced lotteries unchanged.
DecisionTree build_figure1_tree(const ShutdownScenario& scenario);

}  // namespace offswitch

#endif
