#ifndef OFFSWITCH_LOTTERY_HPP
#define OFFSWITCH_LOTTERY_HPP

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "offswitch/rational.hpp"
#include "offswitch/trajectory.hpp"

namespace offswitch {

/// A finite probability distribution over trajectories with exact rational
/// masses. Entries are kept sorted by trajectory, every mass is > 0, and the
/// masses sum to exactly 1, so structural equality coincides with equality of
/// distributions. Zero-mass entries are dropped on construction.
class Lottery {
public:
    using Entry = std::pair<Trajectory, Rational>;

    /// Entries may arrive unsorted and may repeat trajectories (masses add up).
    explicit Lottery(std::vector<Entry> entries);

    /// The lottery that assigns probability 1 to a single trajectory. Trajectories
    /// are identified with their degenerate lotteries throughout.
    static Lottery degenerate(Trajectory t);

    const std::vector<Entry>& support() const { return entries_; }
    std::size_t support_size() const { return entries_.size(); }

    bool is_degenerate() const { return entries_.size() == 1; }

    /// Mass assigned to t; zero when t is outside the support.
    Rational mass_of(const Trajectory& t) const;

    bool operator==(const Lottery&) const = default;
    auto operator<=>(const Lottery&) const = default;

    /// Display form: "t" for degenerate lotteries, "{t:1/2, u:1/2}" otherwise.
    std::string str() const;

private:
    std::vector<Entry> entries_;
};

}  // namespace offswitch

#endif
