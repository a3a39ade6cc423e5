#ifndef OFFSWITCH_TRAJECTORY_HPP
#define OFFSWITCH_TRAJECTORY_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace offswitch {

/// One timestep of a trajectory: the environment state and the action taken there.
struct Step {
    std::string state;
    std::string action;

    bool operator==(const Step&) const = default;
    auto operator<=>(const Step&) const = default;
};

/// A finite sequence of (state, action) steps, optionally ended by the shutdown
/// button being pressed. Timesteps are 1-based: steps[k] happens at timestep k+1.
/// shutdown_at = n means the button is pressed at timestep n and nothing happens
/// from then on, so no step may exist at timestep >= n. The one trajectory with
/// no steps at all is "pressed immediately": shutdown_at = 1.
///
/// Identity is structural. Trajectories are totally ordered (steps first, then
/// the shutdown marker) so they can key deterministic containers.
class Trajectory {
public:
    Trajectory(std::vector<Step> steps, std::optional<int> shutdown_at = std::nullopt);

    const std::vector<Step>& steps() const { return steps_; }
    const std::optional<int>& shutdown_at() const { return shutdown_at_; }

    /// Number of timesteps at which a step exists.
    int length() const { return static_cast<int>(steps_.size()); }

    bool operator==(const Trajectory&) const = default;
    auto operator<=>(const Trajectory&) const = default;

    /// Compact display form, e.g. "(s_I,Leave)(s_U,a2)" or "(s_I,Cause)|shutdown@2".
    std::string str() const;

private:
    std::vector<Step> steps_;
    std::optional<int> shutdown_at_;
};

}  // namespace offswitch

#endif
