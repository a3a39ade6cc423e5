#include "offswitch/lottery.hpp"

#include <algorithm>
#include <map>

#include "offswitch/errors.hpp"

namespace offswitch {

Lottery::Lottery(std::vector<Entry> entries) {
    std::map<Trajectory, Rational> acc;
    for (auto& [t, p] : entries) {
        if (p < Rational(0)) {
            throw InvalidLottery("negative probability for trajectory " + t.str());
        }
        if (p.is_zero()) continue;
        acc[t] += p;
    }
    if (acc.empty()) {
        throw InvalidLottery("lottery has empty support");
    }
    Rational total(0);
    entries_.reserve(acc.size());
    for (auto& [t, p] : acc) {
        total += p;
        entries_.emplace_back(t, p);
    }
    if (total != Rational(1)) {
        throw InvalidLottery("lottery masses sum to " + total.str() + ", expected 1");
    }
}

Lottery Lottery::degenerate(Trajectory t) {
    return Lottery({{std::move(t), Rational(1)}});
}

Rational Lottery::mass_of(const Trajectory& t) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                               [](const Entry& e, const Trajectory& key) { return e.first < key; });
    if (it != entries_.end() && it->first == t) return it->second;
    return Rational(0);
}

std::string Lottery::str() const {
    if (is_degenerate()) return entries_.front().first.str();
    std::string out = "{";
    bool first = true;
    for (const auto& [t, p] : entries_) {
        if (!first) out += ", ";
        first = false;
        out += t.str() + ":" + p.str();
    }
    return out + "}";
}

}  // namespace offswitch
