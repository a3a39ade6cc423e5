#include "offswitch/utility_vector.hpp"

#include "offswitch/errors.hpp"

namespace offswitch {

std::string UtilityVector::str() const {
    std::string out = "<";
    bool first = true;
    for (const Rational& u : utilities) {
        if (!first) out += ",";
        first = false;
        out += u.str();
    }
    if (shutdown) {
        if (!first) out += ",";
        out += "shutdown";
    }
    return out + ">";
}

Trajectory encode_vector(const UtilityVector& v) {
    if (v.utilities.empty() && !v.shutdown) {
        throw InvalidTrajectory("a utility vector with no entries and no shutdown marker "
                                "has no trajectory form");
    }
    std::vector<Step> steps;
    steps.reserve(v.utilities.size());
    for (std::size_t i = 0; i < v.utilities.size(); ++i) {
        steps.push_back(Step{"t" + std::to_string(i + 1), "u=" + v.utilities[i].str()});
    }
    return Trajectory(std::move(steps), v.press_timestep());
}

DiscountedSumOrder::DiscountedSumOrder(Rational delta) : delta_(std::move(delta)) {
    if (delta_ <= Rational(0) || delta_ > Rational(1)) {
        throw InvalidDiscount("discount " + delta_.str() + " outside (0,1]");
    }
}

Rational DiscountedSumOrder::value(const UtilityVector& v) const {
    Rational sum(0);
    Rational weight(1);
    for (const Rational& u : v.utilities) {
        sum += weight * u;
        weight *= delta_;
    }
    return sum;
}

RelationVerdict DiscountedSumOrder::compare(const UtilityVector& a, const UtilityVector& b) const {
    Rational va = value(a);
    Rational vb = value(b);
    if (va > vb) return RelationVerdict::StrictlyPrefers;
    if (va < vb) return RelationVerdict::StrictlyDisprefers;
    return RelationVerdict::Indifferent;
}

UtilityOrder DiscountedSumOrder::as_order() const {
    DiscountedSumOrder copy = *this;
    return [copy](const UtilityVector& a, const UtilityVector& b) { return copy.compare(a, b); };
}

RelationVerdict myopic_compare(const UtilityVector& a, const UtilityVector& b) {
    std::size_t n = std::max(a.utilities.size(), b.utilities.size());
    for (std::size_t i = 0; i < n; ++i) {
        Rational ua = i < a.utilities.size() ? a.utilities[i] : Rational(0);
        Rational ub = i < b.utilities.size() ? b.utilities[i] : Rational(0);
        if (ua > ub) return RelationVerdict::StrictlyPrefers;
        if (ua < ub) return RelationVerdict::StrictlyDisprefers;
    }
    return RelationVerdict::Indifferent;
}

const Lottery& VectorUniverse::add(const UtilityVector& v) {
    auto it = lotteries_.find(v);
    if (it != lotteries_.end()) return it->second;
    Trajectory t = encode_vector(v);
    auto [pos, inserted] = lotteries_.emplace(v, Lottery::degenerate(t));
    vectors_.push_back(v);
    utilities_.emplace(std::move(t), v);
    return pos->second;
}

const Lottery& VectorUniverse::lottery_of(const UtilityVector& v) const {
    auto it = lotteries_.find(v);
    if (it == lotteries_.end()) {
        throw UnregisteredLottery("utility vector not in this universe: " + v.str());
    }
    return it->second;
}

PreferenceStructure VectorUniverse::structure_from_order(const UtilityOrder& order) const {
    PreferenceStructure s;
    std::vector<LotteryId> ids;
    ids.reserve(vectors_.size());
    for (const UtilityVector& v : vectors_) {
        ids.push_back(s.register_lottery(lotteries_.at(v), v.str()));
    }
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        for (std::size_t j = i + 1; j < vectors_.size(); ++j) {
            switch (order(vectors_[i], vectors_[j])) {
                case RelationVerdict::StrictlyPrefers:
                    s.add_weak_by_id(ids[i], ids[j]);
                    break;
                case RelationVerdict::StrictlyDisprefers:
                    s.add_weak_by_id(ids[j], ids[i]);
                    break;
                case RelationVerdict::Indifferent:
                    s.add_weak_by_id(ids[i], ids[j]);
                    s.add_weak_by_id(ids[j], ids[i]);
                    break;
                case RelationVerdict::PreferentialGap:
                    break;
            }
        }
    }
    return s;
}

}  // namespace offswitch
