#include "offswitch/lottery_algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "offswitch/errors.hpp"

namespace offswitch {

Lottery mix(const Rational& p, const Lottery& a, const Lottery& b) {
    if (p < Rational(0) || p > Rational(1)) {
        throw InvalidProbability("mix weight " + p.str() + " outside [0,1]");
    }
    std::vector<std::pair<Rational, Lottery>> parts{{p, a}, {Rational(1) - p, b}};
    return mix_many(parts);
}

Lottery mix_many(std::span<const std::pair<Rational, Lottery>> parts) {
    Rational total(0);
    std::vector<Lottery::Entry> entries;
    for (const auto& [w, l] : parts) {
        if (w < Rational(0)) throw InvalidProbability("negative mix weight " + w.str());
        total += w;
        if (w.is_zero()) continue;
        for (const auto& [t, mass] : l.support()) entries.emplace_back(t, w * mass);
    }
    if (total != Rational(1)) {
        throw InvalidProbability("mix weights sum to " + total.str() + ", expected 1");
    }
    return Lottery(std::move(entries));
}

Lottery sublottery(const Lottery& l, const std::vector<Trajectory>& subset) {
    if (subset.empty()) throw EmptySubset("sublottery of an empty trajectory subset");
    std::map<Trajectory, Rational> picked;
    Rational total(0);
    for (const Trajectory& t : subset) {
        if (picked.count(t)) continue;
        Rational mass = l.mass_of(t);
        if (mass.is_zero()) {
            throw NotInSupport("trajectory " + t.str() + " not in the lottery's support");
        }
        picked.emplace(t, mass);
        total += mass;
    }
    std::vector<Lottery::Entry> entries;
    entries.reserve(picked.size());
    for (auto& [t, mass] : picked) entries.emplace_back(t, mass / total);
    return Lottery(std::move(entries));
}

std::vector<int> trajectory_classes(const PreferenceStructure& structure,
                                    const std::vector<Trajectory>& trajectories) {
    int n = static_cast<int>(trajectories.size());
    std::vector<LotteryId> ids;
    ids.reserve(n);
    for (const Trajectory& t : trajectories) {
        auto id = structure.id_of(Lottery::degenerate(t));
        if (!id) {
            throw UnregisteredLottery("trajectory not registered as a degenerate lottery: " +
                                      t.str());
        }
        ids.push_back(*id);
    }
    // Union-find over Indifferent pairs.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (structure.relation_by_id(ids[i], ids[j]) == RelationVerdict::Indifferent) {
                parent[find(i)] = find(j);
            }
        }
    }
    std::vector<int> cls(n);
    for (int i = 0; i < n; ++i) cls[i] = find(i);
    return cls;
}

namespace {

std::vector<Trajectory> combined_support(const Lottery& a, const Lottery& b) {
    std::vector<Trajectory> ts;
    for (const auto& [t, p] : a.support()) ts.push_back(t);
    for (const auto& [t, p] : b.support()) ts.push_back(t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

}  // namespace

bool indifference_shift_equivalent(const PreferenceStructure& structure, const Lottery& a,
                                   const Lottery& b) {
    std::vector<Trajectory> ts = combined_support(a, b);
    std::vector<int> cls = trajectory_classes(structure, ts);
    std::map<int, Rational> mass_a, mass_b;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        mass_a[cls[i]] += a.mass_of(ts[i]);
        mass_b[cls[i]] += b.mass_of(ts[i]);
    }
    return mass_a == mass_b;
}

bool indifference_shift_equivalent(const PreferenceStructure& structure, const Lottery& a,
                                   const Lottery& b, std::span<const ShiftRecord> witness) {
    // The shifts are applied simultaneously: b must equal a plus the net signed
    // mass movement. Chains through lotteries outside the universe are fine as
    // long as each shifted pair itself is registered.
    std::map<Trajectory, Rational> delta;
    for (const auto& [t, p] : b.support()) delta[t] += p;
    for (const auto& [t, p] : a.support()) delta[t] -= p;

    for (const ShiftRecord& shift : witness) {
        if (shift.mass < Rational(0)) {
            throw MalformedWitness("shift with negative mass " + shift.mass.str());
        }
        if (shift.mass.is_zero()) continue;
        for (const auto& [t, p] : shift.from.support()) delta[t] += shift.mass * p;
        for (const auto& [t, p] : shift.to.support()) delta[t] -= shift.mass * p;
    }
    for (const auto& [t, d] : delta) {
        if (!d.is_zero()) {
            throw MalformedWitness("shifts do not reconstruct the target lottery (offset " +
                                   d.str() + " at " + t.str() + ")");
        }
    }
    for (const ShiftRecord& shift : witness) {
        if (shift.mass.is_zero()) continue;
        if (structure.relation(shift.from, shift.to) != RelationVerdict::Indifferent) {
            return false;
        }
    }
    return true;
}

}  // namespace offswitch
