#include "offswitch/trajectory.hpp"

#include "offswitch/errors.hpp"

namespace offswitch {

Trajectory::Trajectory(std::vector<Step> steps, std::optional<int> shutdown_at)
    : steps_(std::move(steps)), shutdown_at_(shutdown_at) {
    if (steps_.empty() && shutdown_at_ != 1) {
        throw InvalidTrajectory("a trajectory with no steps must have shutdown_at = 1");
    }
    if (shutdown_at_) {
        if (*shutdown_at_ < 1) {
            throw InvalidTrajectory("shutdown_at must be a 1-based timestep");
        }
        // Steps occupy timesteps 1..length(); none may sit at or past the press.
        if (length() >= *shutdown_at_) {
            throw InvalidTrajectory("trajectory has a step at or after its shutdown timestep");
        }
    }
}

std::string Trajectory::str() const {
    std::string out;
    for (const Step& s : steps_) {
        out += "(" + s.state + "," + s.action + ")";
    }
    if (shutdown_at_) {
        out += "|shutdown@" + std::to_string(*shutdown_at_);
    }
    return out;
}

}  // namespace offswitch
