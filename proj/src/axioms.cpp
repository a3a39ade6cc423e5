#include "offswitch/axioms.hpp"

#include <algorithm>
#include <numeric>

#include "offswitch/errors.hpp"
#include "offswitch/lottery_algebra.hpp"

namespace offswitch {

std::string to_string(AxiomId a) {
    switch (a) {
        case AxiomId::OptionSetIndependence: return "OptionSetIndependence";
        case AxiomId::Transitivity: return "Transitivity";
        case AxiomId::Completeness: return "Completeness";
        case AxiomId::BetterChances: return "BetterChances";
        case AxiomId::IndiffShifted: return "IndiffShifted";
        case AxiomId::IndiffAttemptedManipulation: return "IndiffAttemptedManipulation";
        case AxiomId::ParetoIndifference: return "ParetoIndifference";
    }
    return "?";
}

std::optional<AxiomId> axiom_from_string(const std::string& name) {
    for (AxiomId a : {AxiomId::OptionSetIndependence, AxiomId::Transitivity, AxiomId::Completeness,
                      AxiomId::BetterChances, AxiomId::IndiffShifted,
                      AxiomId::IndiffAttemptedManipulation, AxiomId::ParetoIndifference}) {
        if (to_string(a) == name) return a;
    }
    return std::nullopt;
}

namespace {

Verdict check_option_set_independence(const PreferenceStructure& s) {
    for (const auto& [set_ids, rel] : s.overrides()) {
        for (LotteryId a : set_ids) {
            for (LotteryId b : set_ids) {
                bool in_override = rel.count({a, b}) > 0;
                bool in_base = s.weak_by_id(a, b);
                if (in_override != in_base) {
                    std::string members;
                    for (LotteryId id : set_ids) {
                        if (!members.empty()) members += ", ";
                        members += s.name(id);
                    }
                    return Verdict::fail(AxiomWitness{
                        "weak(" + s.name(a) + ", " + s.name(b) + ") is " +
                            (in_base ? "true" : "false") + " in the base relation but " +
                            (in_override ? "true" : "false") + " conditional on option set {" +
                            members + "}",
                        {s.lottery(a), s.lottery(b)},
                        {},
                        {}});
                }
            }
        }
    }
    return Verdict::pass();
}

Verdict check_transitivity(const PreferenceStructure& s) {
    int n = s.size();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (!s.weak_by_id(a, b)) continue;
            for (int c = 0; c < n; ++c) {
                if (s.weak_by_id(b, c) && !s.weak_by_id(a, c)) {
                    return Verdict::fail(AxiomWitness{
                        "weak(" + s.name(a) + ", " + s.name(b) + ") and weak(" + s.name(b) +
                            ", " + s.name(c) + ") hold but weak(" + s.name(a) + ", " +
                            s.name(c) + ") does not",
                        {s.lottery(a), s.lottery(b), s.lottery(c)},
                        {},
                        {}});
                }
            }
        }
    }
    return Verdict::pass();
}

Verdict check_completeness(const PreferenceStructure& s) {
    int n = s.size();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (!s.weak_by_id(a, b) && !s.weak_by_id(b, a)) {
                return Verdict::fail(AxiomWitness{
                    "preferential gap between " + s.name(a) + " and " + s.name(b),
                    {s.lottery(a), s.lottery(b)},
                    {},
                    {}});
            }
        }
    }
    return Verdict::pass();
}

Verdict check_better_chances(const PreferenceStructure& s, const CheckContext& ctx) {
    if (ctx.mixtures.empty()) {
        throw MissingContext("Better Chances needs registered mixture quadruples");
    }
    for (const MixtureQuad& quad : ctx.mixtures) {
        if (!(quad.p > quad.q)) continue;  // the condition only bites on p > q
        Lottery mp = mix(quad.p, quad.x, quad.y);
        Lottery mq = mix(quad.q, quad.x, quad.y);
        bool base_strict = s.relation(quad.x, quad.y) == RelationVerdict::StrictlyPrefers;
        bool mix_strict = s.relation(mp, mq) == RelationVerdict::StrictlyPrefers;
        if (base_strict != mix_strict) {
            return Verdict::fail(AxiomWitness{
                "strict(" + s.name(s.require_id(quad.x)) + ", " + s.name(s.require_id(quad.y)) +
                    ") is " + (base_strict ? "true" : "false") + " but strict over the p=" +
                    quad.p.str() + " vs q=" + quad.q.str() + " mixtures is " +
                    (mix_strict ? "true" : "false"),
                {quad.x, quad.y, mp, mq},
                {},
                {quad.p, quad.q}});
        }
    }
    return Verdict::pass();
}

Verdict check_indiff_shifted(const PreferenceStructure& s) {
    // One shared class partition over every support trajectory in the universe.
    std::vector<Trajectory> all;
    for (const Lottery& l : s.universe()) {
        for (const auto& [t, p] : l.support()) all.push_back(t);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<int> cls = trajectory_classes(s, all);
    auto class_of = [&](const Trajectory& t) {
        auto it = std::lower_bound(all.begin(), all.end(), t);
        return cls[static_cast<std::size_t>(it - all.begin())];
    };

    int n = s.size();
    std::vector<std::map<int, Rational>> profile(n);
    for (int i = 0; i < n; ++i) {
        for (const auto& [t, p] : s.lottery(i).support()) profile[i][class_of(t)] += p;
    }
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (profile[a] != profile[b]) continue;
            if (s.relation_by_id(a, b) != RelationVerdict::Indifferent) {
                return Verdict::fail(AxiomWitness{
                    s.name(a) + " and " + s.name(b) +
                        " differ only by mass shifted between indifferent trajectories but are "
                        "not Indifferent (" +
                        to_string(s.relation_by_id(a, b)) + ")",
                    {s.lottery(a), s.lottery(b)},
                    {},
                    {}});
            }
        }
    }
    return Verdict::pass();
}

Verdict check_indiff_manipulation(const PreferenceStructure& s, const CheckContext& ctx) {
    if (ctx.twins.empty()) {
        throw MissingContext("Indifference to Attempted Button Manipulation needs a twin map");
    }
    for (const auto& family : ctx.twins) {
        for (std::size_t i = 0; i < family.size(); ++i) {
            for (std::size_t j = i + 1; j < family.size(); ++j) {
                Lottery a = Lottery::degenerate(family[i]);
                Lottery b = Lottery::degenerate(family[j]);
                if (s.relation(a, b) != RelationVerdict::Indifferent) {
                    return Verdict::fail(AxiomWitness{
                        "twin trajectories are not Indifferent (" +
                            to_string(s.relation(a, b)) + ")",
                        {a, b},
                        {family[i], family[j]},
                        {}});
                }
            }
        }
    }
    return Verdict::pass();
}

Verdict check_pareto_indifference(const PreferenceStructure& s, const CheckContext& ctx) {
    if (ctx.utilities.empty()) {
        throw MissingContext("Pareto Indifference needs a trajectory -> utility-vector map");
    }
    std::map<UtilityVector, std::vector<Trajectory>> groups;
    for (const auto& [t, v] : ctx.utilities) groups[v].push_back(t);
    for (const auto& [vec, ts] : groups) {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            for (std::size_t j = i + 1; j < ts.size(); ++j) {
                Lottery a = Lottery::degenerate(ts[i]);
                Lottery b = Lottery::degenerate(ts[j]);
                if (s.relation(a, b) != RelationVerdict::Indifferent) {
                    return Verdict::fail(AxiomWitness{
                        "trajectories share utility vector " + vec.str() +
                            " but are not Indifferent",
                        {a, b},
                        {ts[i], ts[j]},
                        {}});
                }
            }
        }
    }
    return Verdict::pass();
}

}  // namespace

Verdict check_axiom(const PreferenceStructure& structure, AxiomId axiom,
                    const CheckContext& context) {
    switch (axiom) {
        case AxiomId::OptionSetIndependence: return check_option_set_independence(structure);
        case AxiomId::Transitivity: return check_transitivity(structure);
        case AxiomId::Completeness: return check_completeness(structure);
        case AxiomId::BetterChances: return check_better_chances(structure, context);
        case AxiomId::IndiffShifted: return check_indiff_shifted(structure);
        case AxiomId::IndiffAttemptedManipulation:
            return check_indiff_manipulation(structure, context);
        case AxiomId::ParetoIndifference: return check_pareto_indifference(structure, context);
    }
    throw std::invalid_argument("unknown axiom");
}

Verdict check_derived_transitivity_lemmas(const PreferenceStructure& structure) {
    if (!check_axiom(structure, AxiomId::Transitivity).holds) {
        throw PreconditionFailed("derived transitivity lemmas assume Transitivity holds");
    }
    int n = structure.size();
    auto strict = [&](int a, int b) {
        return structure.relation_by_id(a, b) == RelationVerdict::StrictlyPrefers;
    };
    auto indiff = [&](int a, int b) {
        return structure.relation_by_id(a, b) == RelationVerdict::Indifferent;
    };
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                const char* broken = nullptr;
                if (strict(a, b) && strict(b, c) && !strict(a, c)) broken = "PP";
                else if (indiff(a, b) && indiff(b, c) && !indiff(a, c)) broken = "II";
                else if (strict(a, b) && indiff(b, c) && !strict(a, c)) broken = "PI";
                else if (indiff(a, b) && strict(b, c) && !strict(a, c)) broken = "IP";
                if (broken) {
                    return Verdict::fail(AxiomWitness{
                        std::string(broken) + "-transitivity fails on (" + structure.name(a) +
                            ", " + structure.name(b) + ", " + structure.name(c) + ")",
                        {structure.lottery(a), structure.lottery(b), structure.lottery(c)},
                        {},
                        {}});
                }
            }
        }
    }
    return Verdict::pass();
}

namespace {

/// A recovered "M = p*X + (1-p)*Y" fact about registered lotteries.
struct MixtureFamilyMember {
    LotteryId m;
    Rational p;
};

/// For each ordered pair (x, y) of distinct lotteries, the registered lotteries
/// expressible as a mixture of them, with their recovered weights.
std::map<std::pair<LotteryId, LotteryId>, std::vector<MixtureFamilyMember>> discover_families(
    const PreferenceStructure& s) {
    std::map<std::pair<LotteryId, LotteryId>, std::vector<MixtureFamilyMember>> families;
    int n = s.size();
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            const Lottery& lx = s.lottery(x);
            const Lottery& ly = s.lottery(y);
            // A trajectory on which x and y put different mass pins p uniquely.
            const Trajectory* probe = nullptr;
            for (const auto& [t, p] : lx.support()) {
                if (ly.mass_of(t) != p) {
                    probe = &t;
                    break;
                }
            }
            if (!probe) continue;  // identical lotteries are deduped anyway
            std::vector<MixtureFamilyMember> members;
            for (int m = 0; m < n; ++m) {
                Rational denom = lx.mass_of(*probe) - ly.mass_of(*probe);
                Rational p = (s.lottery(m).mass_of(*probe) - ly.mass_of(*probe)) / denom;
                if (p < Rational(0) || p > Rational(1)) continue;
                if (mix(p, lx, ly) == s.lottery(m)) members.push_back({m, p});
            }
            if (members.size() >= 2) families[{x, y}] = std::move(members);
        }
    }
    return families;
}

}  // namespace

ClosureOutcome close_structure(const PreferenceStructure& structure,
                               const std::set<AxiomId>& rules) {
    for (AxiomId r : rules) {
        if (r != AxiomId::Transitivity && r != AxiomId::IndiffShifted &&
            r != AxiomId::BetterChances) {
            throw std::invalid_argument(to_string(r) + " is not a closure rule");
        }
    }

    ClosureOutcome out{structure, {}, std::nullopt};
    PreferenceStructure& s = out.structure;
    int n = s.size();

    // Strict claims: pairs that must stay strict in the final relation. Keyed
    // by (a, b), value is the derivation line.
    std::map<std::pair<LotteryId, LotteryId>, std::string> claims;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a != b && s.weak_by_id(a, b) && !s.weak_by_id(b, a)) {
                claims[{a, b}] = "claim " + s.name(a) + " > " + s.name(b) + ": base relation";
            }
        }
    }

    std::map<std::pair<LotteryId, LotteryId>, std::string> weak_reason;
    auto add_weak = [&](int a, int b, const std::string& reason) {
        if (s.weak_by_id(a, b)) return false;
        s.add_weak_by_id(a, b);
        std::string line = "weak(" + s.name(a) + ", " + s.name(b) + "): " + reason;
        weak_reason[{a, b}] = line;
        out.trace.push_back(line);
        return true;
    };
    auto add_claim = [&](int a, int b, const std::string& reason) {
        bool changed = add_weak(a, b, reason);
        if (!claims.count({a, b})) {
            std::string line = "claim " + s.name(a) + " > " + s.name(b) + ": " + reason;
            claims[{a, b}] = line;
            out.trace.push_back(line);
            changed = true;
        }
        return changed;
    };

    const bool use_trans = rules.count(AxiomId::Transitivity) > 0;
    const bool use_shift = rules.count(AxiomId::IndiffShifted) > 0;
    const bool use_chances = rules.count(AxiomId::BetterChances) > 0;

    auto families = use_chances ? discover_families(s)
                                : std::map<std::pair<LotteryId, LotteryId>,
                                           std::vector<MixtureFamilyMember>>{};

    // Degenerate-lottery ids per trajectory, for the class computation. Support
    // trajectories that are not registered as degenerate lotteries form
    // singleton classes: nothing is assumed about them.
    std::map<Trajectory, LotteryId> degenerate_of;
    for (int i = 0; i < n; ++i) {
        if (s.lottery(i).is_degenerate()) {
            degenerate_of[s.lottery(i).support().front().first] = i;
        }
    }

    bool changed = true;
    while (changed) {
        changed = false;

        if (use_trans) {
            bool local = true;
            while (local) {
                local = false;
                for (int a = 0; a < n; ++a) {
                    for (int b = 0; b < n; ++b) {
                        if (a == b || !s.weak_by_id(a, b)) continue;
                        for (int c = 0; c < n; ++c) {
                            if (s.weak_by_id(b, c) && !s.weak_by_id(a, c)) {
                                add_weak(a, c,
                                         "Transitivity from weak(" + s.name(a) + ", " +
                                             s.name(b) + "), weak(" + s.name(b) + ", " +
                                             s.name(c) + ")");
                                local = changed = true;
                            }
                        }
                    }
                }
            }
        }

        if (use_shift) {
            // Classes under the current relation; they only coarsen over rounds.
            std::map<Trajectory, int> cls;
            {
                std::vector<Trajectory> ts;
                std::vector<int> ids;
                for (const auto& [t, id] : degenerate_of) {
                    ts.push_back(t);
                    ids.push_back(id);
                }
                int m = static_cast<int>(ts.size());
                std::vector<int> parent(m);
                std::iota(parent.begin(), parent.end(), 0);
                auto find = [&](int v) {
                    while (parent[v] != v) v = parent[v] = parent[parent[v]];
                    return v;
                };
                for (int i = 0; i < m; ++i) {
                    for (int j = i + 1; j < m; ++j) {
                        if (s.relation_by_id(ids[i], ids[j]) == RelationVerdict::Indifferent) {
                            parent[find(i)] = find(j);
                        }
                    }
                }
                int next = m;
                for (int i = 0; i < m; ++i) cls[ts[i]] = find(i);
                // Unregistered trajectories become fresh singleton classes.
                for (int i = 0; i < n; ++i) {
                    for (const auto& [t, p] : s.lottery(i).support()) {
                        if (!cls.count(t)) cls[t] = next++;
                    }
                }
            }
            std::vector<std::map<int, Rational>> profile(n);
            for (int i = 0; i < n; ++i) {
                for (const auto& [t, p] : s.lottery(i).support()) profile[i][cls[t]] += p;
            }
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    if (profile[a] != profile[b]) continue;
                    if (!s.weak_by_id(a, b) || !s.weak_by_id(b, a)) {
                        std::string why = "IndiffShifted (equal mass per indifference class)";
                        changed |= add_weak(a, b, why);
                        changed |= add_weak(b, a, why);
                    }
                }
            }
        }

        if (use_chances) {
            for (const auto& [xy, members] : families) {
                for (const MixtureFamilyMember& hi : members) {
                    for (const MixtureFamilyMember& lo : members) {
                        if (!(hi.p > lo.p)) continue;
                        std::string via = "BetterChances (p=" + hi.p.str() + " > q=" +
                                          lo.p.str() + " over " + s.name(xy.first) + ", " +
                                          s.name(xy.second) + ")";
                        if (claims.count(xy)) {
                            changed |= add_claim(hi.m, lo.m, via + " from claim " +
                                                                s.name(xy.first) + " > " +
                                                                s.name(xy.second));
                        }
                        if (claims.count({hi.m, lo.m})) {
                            changed |= add_claim(xy.first, xy.second,
                                                 via + " from claim " + s.name(hi.m) + " > " +
                                                     s.name(lo.m));
                        }
                    }
                }
            }
        }
    }

    // A claim a > b is contradicted by a reverse claim or by any derivation of
    // weak(b, a).
    for (const auto& [pair, line] : claims) {
        auto [a, b] = pair;
        auto rev = claims.find({b, a});
        if (rev != claims.end()) {
            out.inconsistency = InconsistencyReport{
                s.lottery(a), s.lottery(b), {line, rev->second}};
            return out;
        }
        if (s.weak_by_id(b, a)) {
            auto why = weak_reason.find({b, a});
            std::string reverse_line = why != weak_reason.end()
                                           ? why->second
                                           : "weak(" + s.name(b) + ", " + s.name(a) +
                                                 "): base relation";
            out.inconsistency =
                InconsistencyReport{s.lottery(a), s.lottery(b), {line, reverse_line}};
            return out;
        }
    }
    return out;
}

}  // namespace offswitch
