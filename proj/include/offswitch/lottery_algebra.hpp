#ifndef OFFSWITCH_LOTTERY_ALGEBRA_HPP
#define OFFSWITCH_LOTTERY_ALGEBRA_HPP

#include <span>
#include <utility>
#include <vector>

#include "offswitch/lottery.hpp"
#include "offswitch/preference.hpp"

namespace offswitch {

/// p*a + (1-p)*b as an exact distribution; zero-mass entries are dropped.
Lottery mix(const Rational& p, const Lottery& a, const Lottery& b);

/// Weighted combination of several lotteries. Weights must be non-negative and
/// sum to 1.
Lottery mix_many(std::span<const std::pair<Rational, Lottery>> parts);

/// Restriction of l to a subset of its support, masses rescaled to sum to 1.
Lottery sublottery(const Lottery& l, const std::vector<Trajectory>& subset);

/// One probability-mass shift between a pair of sublotteries.
struct ShiftRecord {
    Lottery from;
    Lottery to;
    Rational mass;
};

/// Partition of the given trajectories into indifference classes, computed from
/// the structure's verdicts over their degenerate lotteries. Every trajectory
/// must be registered as a degenerate lottery. Returns a class index per input
/// trajectory.
std::vector<int> trajectory_classes(const PreferenceStructure& structure,
                                    const std::vector<Trajectory>& trajectories);

/// Class-mass mode: a and b are equivalent iff they assign equal total mass to
/// every trajectory-indifference class.
bool indifference_shift_equivalent(const PreferenceStructure& structure, const Lottery& a,
                                   const Lottery& b);

/// Witness mode: the shifts, applied together, must transform a into b (else
/// MalformedWitness), and each shifted sublottery pair must be Indifferent under
/// the structure for the result to be true.
bool indifference_shift_equivalent(const PreferenceStructure& structure, const Lottery& a,
                                   const Lottery& b, std::span<const ShiftRecord> witness);

}  // namespace offswitch

#endif
