#ifndef OFFSWITCH_UTILITY_VECTOR_HPP
#define OFFSWITCH_UTILITY_VECTOR_HPP

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "offswitch/lottery.hpp"
#include "offswitch/preference.hpp"
#include "offswitch/rational.hpp"
#include "offswitch/trajectory.hpp"

namespace offswitch {

/// A trajectory represented as per-timestep utilities, optionally ended by the
/// shutdown button. <6,2,shutdown> means utility 6 at timestep 1, utility 2 at
/// timestep 2, button pressed at timestep 3. How two vectors compare is not
/// intrinsic; it is always mediated by a preference structure or an order
/// functor over them.
struct UtilityVector {
    std::vector<Rational> utilities;
    bool shutdown = false;

    bool operator==(const UtilityVector&) const = default;
    auto operator<=>(const UtilityVector&) const = default;

    /// Timestep at which the button is pressed, when it is.
    std::optional<int> press_timestep() const {
        if (!shutdown) return std::nullopt;
        return static_cast<int>(utilities.size()) + 1;
    }

    std::string str() const;
};

/// Canonical trajectory encoding of a vector; injective, so distinct vectors
/// yield distinct trajectories. A vector with no utilities and no shutdown
/// marker has no trajectory form and is rejected.
Trajectory encode_vector(const UtilityVector& v);

using UtilityOrder = std::function<RelationVerdict(const UtilityVector&, const UtilityVector&)>;

/// Orders vectors by the discounted sum of utilities with discount in (0,1].
/// Appending utility 0 or a shutdown marker never changes the sum, so this
/// family is indifferent between <a,0,shutdown> and <a,shutdown>.
class DiscountedSumOrder {
public:
    explicit DiscountedSumOrder(Rational delta);

    const Rational& delta() const { return delta_; }
    Rational value(const UtilityVector& v) const;
    RelationVerdict compare(const UtilityVector& a, const UtilityVector& b) const;

    UtilityOrder as_order() const;

private:
    Rational delta_;
};

/// First differing timestep decides; shorter vectors are padded with zeros.
/// The limit of ever-steeper discounting: later utilities never outweigh an
/// earlier deficit.
RelationVerdict myopic_compare(const UtilityVector& a, const UtilityVector& b);

/// Keeps the vector <-> lottery correspondence for building preference
/// structures over utility vectors and the Pareto-check context.
class VectorUniverse {
public:
    /// Registers a vector (idempotent) and returns its degenerate lottery.
    const Lottery& add(const UtilityVector& v);

    const std::vector<UtilityVector>& vectors() const { return vectors_; }
    const Lottery& lottery_of(const UtilityVector& v) const;
    const std::map<Trajectory, UtilityVector>& utilities() const { return utilities_; }

    /// Complete structure over all registered vectors with weak pairs derived
    /// from the order's verdicts.
    PreferenceStructure structure_from_order(const UtilityOrder& order) const;

private:
    std::vector<UtilityVector> vectors_;
    std::map<UtilityVector, Lottery> lotteries_;
    std::map<Trajectory, UtilityVector> utilities_;
};

}  // namespace offswitch

#endif
