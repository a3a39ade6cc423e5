#ifndef OFFSWITCH_PREFERENCE_HPP
#define OFFSWITCH_PREFERENCE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "offswitch/lottery.hpp"

namespace offswitch {

/// The four relations derivable from primitive weak preference. Exactly one
/// verdict holds for any ordered pair of registered lotteries.
enum class RelationVerdict {
    StrictlyPrefers,
    StrictlyDisprefers,
    Indifferent,
    PreferentialGap,
};

std::string to_string(RelationVerdict v);

using LotteryId = int;

struct ConsistencyResult {
    bool consistent = true;
    // A strict base claim a > b together with the first hop of a chain leading
    // back from b to a. Empty when consistent.
    std::optional<std::array<Lottery, 3>> witness;
};

/// A weak-preference relation over a registered finite universe of lotteries,
/// optionally overridden per option set. Weak preference is kept reflexive on
/// the universe: identical lotteries are interchangeable, so every lottery
/// weakly prefers itself.
///
/// The structure is built once (registration + pair insertion) and read-only
/// afterwards; reads are safe to share across threads.
class PreferenceStructure {
public:
    using OptionSet = std::vector<LotteryId>;  // sorted, unique

    PreferenceStructure() = default;

    /// Registers a lottery (structural dedup) and returns its id. The optional
    /// name is kept for reports; the first registration wins.
    LotteryId register_lottery(const Lottery& lottery, const std::string& name = "");

    std::optional<LotteryId> id_of(const Lottery& lottery) const;
    LotteryId require_id(const Lottery& lottery) const;

    const Lottery& lottery(LotteryId id) const { return universe_[id]; }
    const std::string& name(LotteryId id) const { return names_[id]; }
    int size() const { return static_cast<int>(universe_.size()); }
    const std::vector<Lottery>& universe() const { return universe_; }

    /// Adds "a weakly preferred to b" to the base relation.
    void add_weak(const Lottery& a, const Lottery& b);
    void add_weak_by_id(LotteryId a, LotteryId b);

    /// Declares an option-set override: within exactly this option set the weak
    /// relation is `pairs` (plus reflexivity), regardless of the base relation.
    void add_override(const std::vector<Lottery>& option_set,
                      const std::vector<std::pair<Lottery, Lottery>>& pairs);

    bool has_overrides() const { return !overrides_.empty(); }
    const std::map<OptionSet, std::set<std::pair<LotteryId, LotteryId>>>& overrides() const {
        return overrides_;
    }

    /// Membership of (a, b) in the context's relation when an override for that
    /// exact option set exists, else in the base relation.
    bool weak_prefers(const Lottery& a, const Lottery& b,
                      const std::optional<std::vector<Lottery>>& context = std::nullopt) const;
    bool weak_by_id(LotteryId a, LotteryId b) const;

    RelationVerdict relation(const Lottery& a, const Lottery& b) const;
    RelationVerdict relation_by_id(LotteryId a, LotteryId b) const;

    bool strictly_prefers(const Lottery& a, const Lottery& b) const {
        return relation(a, b) == RelationVerdict::StrictlyPrefers;
    }
    bool indifferent(const Lottery& a, const Lottery& b) const {
        return relation(a, b) == RelationVerdict::Indifferent;
    }

    /// Checks that no strict base preference a > b is contradicted by a chain of
    /// weak base preferences leading from b back to a. Such a chain would make
    /// the transitive closure rank b weakly over a, destroying the claimed
    /// strictness in both directions.
    ConsistencyResult transitive_consistency() const;

private:
    std::vector<Lottery> universe_;
    std::vector<std::string> names_;
    std::map<Lottery, LotteryId> index_;
    std::vector<std::vector<std::uint64_t>> weak_;  // bit rows, weak_[a] bit b
    std::map<OptionSet, std::set<std::pair<LotteryId, LotteryId>>> overrides_;

    void check_id(LotteryId id) const;
    LotteryId require_registered(const Lottery& l) const;
};

}  // namespace offswitch

#endif
