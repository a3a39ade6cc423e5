#include "offswitch/preference.hpp"

#include <algorithm>
#include <deque>

#include "offswitch/errors.hpp"

namespace offswitch {

std::string to_string(RelationVerdict v) {
    switch (v) {
        case RelationVerdict::StrictlyPrefers: return "StrictlyPrefers";
        case RelationVerdict::StrictlyDisprefers: return "StrictlyDisprefers";
        case RelationVerdict::Indifferent: return "Indifferent";
        case RelationVerdict::PreferentialGap: return "PreferentialGap";
    }
    return "?";
}

LotteryId PreferenceStructure::register_lottery(const Lottery& lottery, const std::string& name) {
    auto it = index_.find(lottery);
    if (it != index_.end()) {
        if (!name.empty() && names_[it->second].empty()) names_[it->second] = name;
        return it->second;
    }
    LotteryId id = static_cast<LotteryId>(universe_.size());
    universe_.push_back(lottery);
    names_.push_back(name.empty() ? "L" + std::to_string(id) : name);
    index_.emplace(lottery, id);
    std::size_t words = (universe_.size() + 63) / 64;
    for (auto& row : weak_) row.resize(words, 0);
    weak_.emplace_back(words, 0);
    add_weak_by_id(id, id);  // reflexive by decision
    return id;
}

std::optional<LotteryId> PreferenceStructure::id_of(const Lottery& lottery) const {
    auto it = index_.find(lottery);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

LotteryId PreferenceStructure::require_id(const Lottery& lottery) const {
    return require_registered(lottery);
}

LotteryId PreferenceStructure::require_registered(const Lottery& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) {
        throw UnregisteredLottery("lottery not registered: " + l.str());
    }
    return it->second;
}

void PreferenceStructure::check_id(LotteryId id) const {
    if (id < 0 || id >= size()) {
        throw UnregisteredLottery("lottery id out of range: " + std::to_string(id));
    }
}

void PreferenceStructure::add_weak(const Lottery& a, const Lottery& b) {
    add_weak_by_id(require_registered(a), require_registered(b));
}

void PreferenceStructure::add_weak_by_id(LotteryId a, LotteryId b) {
    check_id(a);
    check_id(b);
    weak_[a][b / 64] |= std::uint64_t{1} << (b % 64);
}

void PreferenceStructure::add_override(const std::vector<Lottery>& option_set,
                                       const std::vector<std::pair<Lottery, Lottery>>& pairs) {
    OptionSet ids;
    ids.reserve(option_set.size());
    for (const Lottery& l : option_set) ids.push_back(require_registered(l));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::set<std::pair<LotteryId, LotteryId>> rel;
    for (const auto& [a, b] : pairs) {
        LotteryId ia = require_registered(a);
        LotteryId ib = require_registered(b);
        if (!std::binary_search(ids.begin(), ids.end(), ia) ||
            !std::binary_search(ids.begin(), ids.end(), ib)) {
            throw ContextViolation("override pair references a lottery outside its option set");
        }
        rel.emplace(ia, ib);
    }
    for (LotteryId id : ids) rel.emplace(id, id);  // overrides stay reflexive too
    overrides_[ids] = std::move(rel);
}

bool PreferenceStructure::weak_by_id(LotteryId a, LotteryId b) const {
    check_id(a);
    check_id(b);
    return (weak_[a][b / 64] >> (b % 64)) & 1u;
}

bool PreferenceStructure::weak_prefers(const Lottery& a, const Lottery& b,
                                       const std::optional<std::vector<Lottery>>& context) const {
    LotteryId ia = require_registered(a);
    LotteryId ib = require_registered(b);
    if (!context) return weak_by_id(ia, ib);

    OptionSet ids;
    ids.reserve(context->size());
    for (const Lottery& l : *context) ids.push_back(require_registered(l));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (!std::binary_search(ids.begin(), ids.end(), ia) ||
        !std::binary_search(ids.begin(), ids.end(), ib)) {
        throw ContextViolation("query pair lies outside the supplied option set");
    }
    auto it = overrides_.find(ids);
    if (it == overrides_.end()) return weak_by_id(ia, ib);
    return it->second.count({ia, ib}) > 0;
}

RelationVerdict PreferenceStructure::relation(const Lottery& a, const Lottery& b) const {
    return relation_by_id(require_registered(a), require_registered(b));
}

RelationVerdict PreferenceStructure::relation_by_id(LotteryId a, LotteryId b) const {
    bool ab = weak_by_id(a, b);
    bool ba = weak_by_id(b, a);
    if (ab && ba) return RelationVerdict::Indifferent;
    if (ab) return RelationVerdict::StrictlyPrefers;
    if (ba) return RelationVerdict::StrictlyDisprefers;
    return RelationVerdict::PreferentialGap;
}

ConsistencyResult PreferenceStructure::transitive_consistency() const {
    int n = size();
    // Reachability over base weak edges.
    std::vector<std::vector<std::uint64_t>> reach = weak_;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            if ((reach[i][k / 64] >> (k % 64)) & 1u) {
                for (std::size_t w = 0; w < reach[i].size(); ++w) reach[i][w] |= reach[k][w];
            }
        }
    }
    auto reachable = [&](int a, int b) { return ((reach[a][b / 64] >> (b % 64)) & 1u) != 0; };

    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            bool strict_base = weak_by_id(a, b) && !weak_by_id(b, a);
            if (!strict_base || !reachable(b, a)) continue;
            // BFS from b back to a over base edges to name the first hop.
            std::vector<int> parent(n, -1);
            std::deque<int> queue{b};
            parent[b] = b;
            while (!queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                if (u == a) break;
                for (int v = 0; v < n; ++v) {
                    if (parent[v] == -1 && weak_by_id(u, v)) {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            int hop = a;
            while (parent[hop] != b) hop = parent[hop];
            return ConsistencyResult{false,
                                     std::array<Lottery, 3>{universe_[a], universe_[b], universe_[hop]}};
        }
    }
    return ConsistencyResult{};
}

}  // namespace offswitch
