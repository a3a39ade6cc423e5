#include "offswitch/miner.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <thread>

#include "offswitch/agent.hpp"
#include "offswitch/errors.hpp"
#include "offswitch/json_io.hpp"
#include "offswitch/lottery_algebra.hpp"

namespace offswitch {

std::string to_string(RelationSpace s) {
    return s == RelationSpace::All ? "all" : "transitive_only";
}

std::string to_string(TheoremTarget t) {
    switch (t) {
        case TheoremTarget::T1: return "t1";
        case TheoremTarget::T2: return "t2";
        case TheoremTarget::T3: return "t3";
    }
    return "?";
}

std::optional<TheoremTarget> target_from_string(const std::string& name) {
    if (name == "t1") return TheoremTarget::T1;
    if (name == "t2") return TheoremTarget::T2;
    if (name == "t3") return TheoremTarget::T3;
    return std::nullopt;
}

std::string to_string(Finding::Kind k) {
    switch (k) {
        case Finding::Kind::Confirmation: return "Confirmation";
        case Finding::Kind::NecessityCounterexample: return "NecessityCounterexample";
        case Finding::Kind::NeutralExample: return "NeutralExample";
    }
    return "?";
}

json to_json(const Finding& f) {
    json out;
    out["kind"] = to_string(f.kind);
    out["target"] = to_string(f.target);
    if (f.axiom) out["axiom"] = to_string(*f.axiom);
    out["fixture"] = f.fixture;
    out["evidence"] = f.evidence;
    out["count"] = f.count;
    return out;
}

json to_json(const EnumerationBounds& b) {
    json grid = json::array();
    for (const Rational& p : b.probability_grid) grid.push_back(p.str());
    json require = json::array(), violate = json::array();
    for (AxiomId a : b.require) require.push_back(to_string(a));
    for (AxiomId a : b.violate) violate.push_back(to_string(a));
    json out{{"max_trajectories", b.max_trajectories},
             {"probability_grid", std::move(grid)},
             {"relation_space", to_string(b.relation_space)},
             {"require", std::move(require)},
             {"violate", std::move(violate)},
             {"cap", b.cap},
             {"sample_size", b.sample_size}};
    if (b.seed) out["seed"] = *b.seed;
    return out;
}

EnumerationBounds bounds_from_json(const json& j, const std::string& where) {
    EnumerationBounds b;
    if (j.contains("max_trajectories")) b.max_trajectories = j["max_trajectories"].get<int>();
    if (j.contains("probability_grid")) {
        for (const json& v : j["probability_grid"]) {
            b.probability_grid.push_back(rational_from_json(v, where, "probability_grid"));
        }
    }
    if (j.contains("relation_space")) {
        std::string space = j["relation_space"].get<std::string>();
        if (space == "all") b.relation_space = RelationSpace::All;
        else if (space == "transitive_only") b.relation_space = RelationSpace::TransitiveOnly;
        else throw ParseError(where, 0, "relation_space", "expected all|transitive_only");
    }
    auto parse_axioms = [&](const char* key, std::set<AxiomId>& out) {
        if (!j.contains(key)) return;
        for (const json& v : j[key]) {
            auto a = axiom_from_string(v.get<std::string>());
            if (!a) throw ParseError(where, 0, key, "unknown axiom " + v.get<std::string>());
            out.insert(*a);
        }
    };
    parse_axioms("require", b.require);
    parse_axioms("violate", b.violate);
    if (j.contains("cap")) b.cap = j["cap"].get<long long>();
    if (j.contains("seed")) b.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("sample_size")) b.sample_size = j["sample_size"].get<long long>();
    if (j.contains("workers")) b.workers = j["workers"].get<int>();
    return b;
}

namespace {

// ---------------------------------------------------------------------------
// Scenario generation from the probability grid.
// ---------------------------------------------------------------------------

std::vector<TrajectorySuffix> default_suffixes(int count) {
    std::vector<TrajectorySuffix> suffixes;
    for (int s = 0; s < count; ++s) {
        suffixes.push_back(
            TrajectorySuffix{{Step{kUnpressedState, "a" + std::to_string(s + 1)}}, std::nullopt});
    }
    return suffixes;
}

std::vector<ShutdownScenario> scenarios_from(const EnumerationBounds& bounds) {
    if (bounds.probability_grid.empty()) {
        throw InvalidBounds("empty probability grid: no scenario can be generated");
    }
    std::vector<Rational> grid = bounds.probability_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (const Rational& p : grid) {
        if (p < Rational(0) || p > Rational(1)) {
            throw InvalidBounds("probability grid value " + p.str() + " outside [0,1]");
        }
    }
    std::vector<int> suffix_counts;
    for (int s = 1; 3 * (1 + s) <= bounds.max_trajectories; ++s) suffix_counts.push_back(s);
    if (suffix_counts.empty()) {
        throw InvalidBounds("max_trajectories admits no scenario (need at least 6)");
    }
    std::vector<ShutdownScenario> scenarios;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            for (std::size_t k = j + 1; k < grid.size(); ++k) {
                for (int s : suffix_counts) {
                    scenarios.push_back(
                        ShutdownScenario::make(grid[i], grid[j], grid[k], default_suffixes(s)));
                }
            }
        }
    }
    return scenarios;
}

// ---------------------------------------------------------------------------
// The one-suffix quotient space: relations over the forced-indifference groups
// {unpressed atoms, pressed atoms, mixtures per pressed-chance}. Twin families
// and same-chance mixtures collapse because the shift and manipulation
// conditions make their members indifferent in any structure that satisfies
// them; a boundary chance (f=0, h=1) collapses its mixture group into the
// corresponding atom group structurally.
// ---------------------------------------------------------------------------

struct Quotient1 {
    ShutdownScenario scenario;
    int K = 0;
    int gU = 0;
    int gP = 1;
    std::vector<std::pair<Rational, int>> grid_groups;  // sorted pressed-chance -> group
    int g_prevent = 0, g_leave = 0, g_cause = 0;
    int bit_index[5][5] = {};

    std::uint32_t candidate_count_log2() const {
        return static_cast<std::uint32_t>(K * (K - 1));
    }
    bool rel(std::uint32_t mask, int i, int j) const {
        return i == j || ((mask >> bit_index[i][j]) & 1u) != 0;
    }
    bool strictq(std::uint32_t mask, int i, int j) const {
        return rel(mask, i, j) && !rel(mask, j, i);
    }
};

Quotient1 make_quotient1(const ShutdownScenario& scenario) {
    Quotient1 q;
    q.scenario = scenario;
    int next = 2;
    auto group_of = [&](const Rational& pi) {
        if (pi == Rational(0)) return q.gU;
        if (pi == Rational(1)) return q.gP;
        return next++;
    };
    q.g_prevent = group_of(scenario.f());
    q.g_leave = group_of(scenario.g());
    q.g_cause = group_of(scenario.h());
    q.K = next;
    std::map<Rational, int> grid{{Rational(0), q.gU},
                                 {scenario.f(), q.g_prevent},
                                 {scenario.g(), q.g_leave},
                                 {scenario.h(), q.g_cause},
                                 {Rational(1), q.gP}};
    q.grid_groups.assign(grid.begin(), grid.end());
    int bit = 0;
    for (int i = 0; i < q.K; ++i) {
        for (int j = 0; j < q.K; ++j) {
            if (i != j) q.bit_index[i][j] = bit++;
        }
    }
    return q;
}

struct AxiomFlags {
    bool osi = true;
    bool manip = true;
    bool trans = true;
    bool shift = true;
    bool chances = true;
    bool complete = true;

    bool holds(AxiomId a) const {
        switch (a) {
            case AxiomId::OptionSetIndependence: return osi;
            case AxiomId::IndiffAttemptedManipulation: return manip;
            case AxiomId::Transitivity: return trans;
            case AxiomId::IndiffShifted: return shift;
            case AxiomId::BetterChances: return chances;
            case AxiomId::Completeness: return complete;
            case AxiomId::ParetoIndifference: return true;
        }
        return true;
    }
    bool antecedents_hold() const { return trans && shift && chances; }
};

AxiomFlags eval_quotient1(const Quotient1& q, std::uint32_t mask) {
    AxiomFlags flags;
    for (int a = 0; a < q.K && flags.trans; ++a) {
        for (int b = 0; b < q.K && flags.trans; ++b) {
            if (a == b || !q.rel(mask, a, b)) continue;
            for (int c = 0; c < q.K; ++c) {
                if (q.rel(mask, b, c) && !q.rel(mask, a, c)) {
                    flags.trans = false;
                    break;
                }
            }
        }
    }
    // With U ~ P every lottery puts all mass in one trajectory class, so every
    // pair must be indifferent; otherwise only the collapsed groups are
    // class-mass-equal and those are indifferent by construction.
    if (q.rel(mask, q.gU, q.gP) && q.rel(mask, q.gP, q.gU)) {
        for (int a = 0; a < q.K && flags.shift; ++a) {
            for (int b = 0; b < q.K; ++b) {
                if (!q.rel(mask, a, b)) {
                    flags.shift = false;
                    break;
                }
            }
        }
    }
    bool u_over_p = q.strictq(mask, q.gU, q.gP);
    bool p_over_u = q.strictq(mask, q.gP, q.gU);
    for (std::size_t i = 0; i < q.grid_groups.size() && flags.chances; ++i) {
        for (std::size_t j = i + 1; j < q.grid_groups.size(); ++j) {
            int low = q.grid_groups[i].second;   // smaller pressed chance: more U mass
            int high = q.grid_groups[j].second;
            if (q.strictq(mask, low, high) != u_over_p ||
                q.strictq(mask, high, low) != p_over_u) {
                flags.chances = false;
                break;
            }
        }
    }
    for (int a = 0; a < q.K && flags.complete; ++a) {
        for (int b = a + 1; b < q.K; ++b) {
            if (!q.rel(mask, a, b) && !q.rel(mask, b, a)) {
                flags.complete = false;
                break;
            }
        }
    }
    return flags;
}

RelationVerdict verdict_quotient1(const Quotient1& q, std::uint32_t mask) {
    bool up = q.rel(mask, q.gU, q.gP);
    bool pu = q.rel(mask, q.gP, q.gU);
    if (up && pu) return RelationVerdict::Indifferent;
    if (up) return RelationVerdict::StrictlyPrefers;
    if (pu) return RelationVerdict::StrictlyDisprefers;
    return RelationVerdict::PreferentialGap;
}

Disposition classify_quotient1(const Quotient1& q, std::uint32_t mask) {
    const int groups[3] = {q.g_prevent, q.g_leave, q.g_cause};
    bool survives[3];
    for (int a = 0; a < 3; ++a) {
        survives[a] = true;
        for (int b = 0; b < 3 && survives[a]; ++b) {
            if (b != a && q.strictq(mask, groups[b], groups[a])) survives[a] = false;
        }
    }
    int count = survives[0] + survives[1] + survives[2];
    if (count == 1 && survives[0]) return Disposition::Averse;
    if (count == 1 && survives[2]) return Disposition::Seeking;
    return Disposition::Neutral;
}

PreferenceStructure realize_quotient1(const Quotient1& q, std::uint32_t mask) {
    PreferenceStructure s;
    register_figure1_lotteries(q.scenario, s);
    std::vector<int> group(s.size(), -1);
    auto set_group = [&](const Lottery& l, int g) { group.at(*s.id_of(l)) = g; };
    for (const std::string& action : ShutdownScenario::actions()) {
        Lottery pressed = Lottery::degenerate(q.scenario.pressed_outcome(action));
        set_group(pressed, q.gP);
        for (const Trajectory& t : q.scenario.unpressed_outcomes(action)) {
            set_group(Lottery::degenerate(t), q.gU);
        }
    }
    const std::pair<Rational, int> chances[3] = {{q.scenario.f(), q.g_prevent},
                                                 {q.scenario.g(), q.g_leave},
                                                 {q.scenario.h(), q.g_cause}};
    for (const std::string& action : ShutdownScenario::actions()) {
        Lottery pressed = Lottery::degenerate(q.scenario.pressed_outcome(action));
        for (const Trajectory& t : q.scenario.unpressed_outcomes(action)) {
            Lottery unpressed = Lottery::degenerate(t);
            for (const auto& [pi, g] : chances) set_group(mix(pi, pressed, unpressed), g);
        }
    }
    for (int a = 0; a < s.size(); ++a) {
        for (int b = 0; b < s.size(); ++b) {
            if (a != b && q.rel(mask, group[a], group[b])) s.add_weak_by_id(a, b);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// The multi-suffix path: relations over the trajectory classes {P, U1, U2,
// ...}, canonically completed by the closure engine (the mixture layer of such
// structures is fully derived, so only transitive class relations realize).
// ---------------------------------------------------------------------------

bool transitive3(std::uint32_t mask, int k) {
    auto rel = [&](int i, int j) {
        if (i == j) return true;
        int bit = 0;
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) {
                if (a == b) continue;
                if (a == i && b == j) return ((mask >> bit) & 1u) != 0;
                ++bit;
            }
        }
        return false;
    };
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            for (int c = 0; c < k; ++c) {
                if (rel(a, b) && rel(b, c) && !rel(a, c)) return false;
            }
        }
    }
    return true;
}

std::optional<PreferenceStructure> realize_multi_suffix(const ShutdownScenario& scenario,
                                                        std::uint32_t mask) {
    int classes = 1 + static_cast<int>(scenario.continuations().size());
    PreferenceStructure s;
    register_figure1_lotteries(scenario, s);
    auto rel = [&](int i, int j) {
        if (i == j) return true;
        int bit = 0;
        for (int a = 0; a < classes; ++a) {
            for (int b = 0; b < classes; ++b) {
                if (a == b) continue;
                if (a == i && b == j) return ((mask >> bit) & 1u) != 0;
                ++bit;
            }
        }
        return false;
    };
    // Class 0 = pressed, class 1+s = suffix s.
    std::vector<std::pair<Lottery, int>> atoms;
    for (const std::string& action : ShutdownScenario::actions()) {
        atoms.emplace_back(Lottery::degenerate(scenario.pressed_outcome(action)), 0);
        const auto& suffixes = scenario.continuations();
        for (std::size_t k = 0; k < suffixes.size(); ++k) {
            atoms.emplace_back(Lottery::degenerate(stamp_action(suffixes[k], action)),
                               1 + static_cast<int>(k));
        }
    }
    for (const auto& [la, ca] : atoms) {
        for (const auto& [lb, cb] : atoms) {
            if (!(la == lb) && rel(ca, cb)) s.add_weak(la, lb);
        }
    }
    ClosureOutcome closed = close_structure(
        s, {AxiomId::Transitivity, AxiomId::IndiffShifted, AxiomId::BetterChances});
    if (!closed.consistent()) return std::nullopt;
    return std::move(closed.structure);
}

AxiomFlags eval_realized(const ShutdownScenario& scenario, const PreferenceStructure& s) {
    Figure1Universe uni = Figure1Universe::build(scenario, s);
    AxiomFlags flags;
    flags.osi = check_axiom(s, AxiomId::OptionSetIndependence).holds;
    flags.manip = check_axiom(s, AxiomId::IndiffAttemptedManipulation, uni.context).holds;
    flags.trans = check_axiom(s, AxiomId::Transitivity).holds;
    flags.shift = check_axiom(s, AxiomId::IndiffShifted).holds;
    flags.chances = check_axiom(s, AxiomId::BetterChances, uni.context).holds;
    flags.complete = check_axiom(s, AxiomId::Completeness).holds;
    return flags;
}

bool passes_filter(const AxiomFlags& flags, const EnumerationBounds& bounds) {
    for (AxiomId a : bounds.require) {
        if (!flags.holds(a)) return false;
    }
    for (AxiomId a : bounds.violate) {
        if (flags.holds(a)) return false;
    }
    return true;
}

// U-vs-P verdicts on a realized structure, via the predicted unpressed picks.
struct RealizedOutcome {
    bool some_unpressed_preferred = false;
    bool some_pressed_preferred = false;
    bool gap = false;
    Disposition disposition = Disposition::Neutral;
    bool conclusion_ok = true;
};

RealizedOutcome outcome_realized(const ShutdownScenario& scenario,
                                 const PreferenceStructure& s) {
    Figure1Universe uni = Figure1Universe::build(scenario, s);
    RealizedOutcome out;
    bool all_gap = true;
    for (const std::string& action : ShutdownScenario::actions()) {
        RelationVerdict v =
            s.relation(uni.predicted_unpressed.at(action), uni.pressed.at(action));
        if (v == RelationVerdict::StrictlyPrefers) out.some_unpressed_preferred = true;
        if (v == RelationVerdict::StrictlyDisprefers) out.some_pressed_preferred = true;
        if (v != RelationVerdict::PreferentialGap) all_gap = false;
    }
    out.gap = all_gap;
    out.disposition = classify(scenario, s).kind;
    if (out.some_unpressed_preferred) {
        out.conclusion_ok &= out.disposition == Disposition::Averse;
    }
    if (out.some_pressed_preferred) {
        out.conclusion_ok &= out.disposition == Disposition::Seeking;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Candidate iteration shared by the sweep, the enumerator and the miner.
// Visits candidates in (scenario, mask) order. The visitor gets quotient-level
// flags plus lazily-realizable handles.
// ---------------------------------------------------------------------------

struct Candidate {
    std::size_t scenario_index;
    std::uint32_t mask;
    const ShutdownScenario* scenario;
    const Quotient1* quotient;  // null for multi-suffix candidates
    AxiomFlags flags;
    RelationVerdict verdict;          // quotient-level U vs P (1-suffix only)
    Disposition disposition;          // quotient-level (1-suffix only)
    const PreferenceStructure* realized;  // non-null for multi-suffix candidates
};

struct ScanTotals {
    long long candidates = 0;
    bool exhaustive = true;
};

ScanTotals scan_candidates(const EnumerationBounds& bounds,
                           const std::function<void(const Candidate&)>& visit) {
    std::vector<ShutdownScenario> scenarios = scenarios_from(bounds);
    std::vector<Quotient1> quotients(scenarios.size());
    std::vector<long long> block_size(scenarios.size());
    long long total = 0;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        if (scenarios[i].continuations().size() == 1) {
            quotients[i] = make_quotient1(scenarios[i]);
            block_size[i] = 1LL << quotients[i].candidate_count_log2();
        } else {
            int classes = 1 + static_cast<int>(scenarios[i].continuations().size());
            block_size[i] = 1LL << (classes * (classes - 1));
        }
        total += block_size[i];
    }

    std::optional<std::vector<std::vector<std::uint32_t>>> sampled;
    if (total > bounds.cap) {
        if (!bounds.seed) {
            throw CapExceeded("candidate space of " + std::to_string(total) +
                              " relations exceeds the cap of " + std::to_string(bounds.cap) +
                              "; pass a seed to sample instead");
        }
        // Non-exhaustive: sample_size draws across the whole space, deduped and
        // visited in canonical order.
        std::mt19937_64 rng(*bounds.seed);
        std::uniform_int_distribution<long long> dist(0, total - 1);
        std::vector<long long> draws;
        for (long long i = 0; i < bounds.sample_size; ++i) draws.push_back(dist(rng));
        std::sort(draws.begin(), draws.end());
        draws.erase(std::unique(draws.begin(), draws.end()), draws.end());
        sampled.emplace(scenarios.size());
        std::size_t idx = 0;
        long long base = 0;
        for (std::size_t i = 0; i < scenarios.size(); ++i) {
            while (idx < draws.size() && draws[idx] < base + block_size[i]) {
                (*sampled)[i].push_back(static_cast<std::uint32_t>(draws[idx] - base));
                ++idx;
            }
            base += block_size[i];
        }
    }

    ScanTotals totals;
    totals.exhaustive = !sampled.has_value();
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const ShutdownScenario& scenario = scenarios[i];
        bool single = scenario.continuations().size() == 1;
        auto visit_mask = [&](std::uint32_t mask) {
            ++totals.candidates;
            Candidate c{i, mask, &scenario, nullptr, {}, RelationVerdict::PreferentialGap,
                        Disposition::Neutral, nullptr};
            if (single) {
                const Quotient1& q = quotients[i];
                c.quotient = &q;
                c.flags = eval_quotient1(q, mask);
                if (bounds.relation_space == RelationSpace::TransitiveOnly && !c.flags.trans) {
                    return;
                }
                c.verdict = verdict_quotient1(q, mask);
                c.disposition = classify_quotient1(q, mask);
                visit(c);
            } else {
                int classes = 1 + static_cast<int>(scenario.continuations().size());
                // Non-transitive class relations have no canonical completion:
                // the closure would erase the violation, so they are skipped.
                if (!transitive3(mask, classes)) return;
                std::optional<PreferenceStructure> realized =
                    realize_multi_suffix(scenario, mask);
                if (!realized) return;
                c.flags = eval_realized(scenario, *realized);
                c.realized = &*realized;
                visit(c);
            }
        };
        if (sampled) {
            for (std::uint32_t mask : (*sampled)[i]) visit_mask(mask);
        } else {
            for (long long mask = 0; mask < block_size[i]; ++mask) {
                visit_mask(static_cast<std::uint32_t>(mask));
            }
        }
    }
    return totals;
}

json stats_to_json(const Theorem1SweepStats& s, long long lemma_failures) {
    return json{{"scenarios", s.scenarios},
                {"candidates", s.candidates},
                {"antecedents_hold", s.antecedents_hold},
                {"strict_cases", s.strict_cases},
                {"conclusion_failures", s.conclusion_failures},
                {"averse", s.averse},
                {"seeking", s.seeking},
                {"neutral_gaps", s.neutral_gaps},
                {"lemma_failures", lemma_failures},
                {"exhaustive", s.exhaustive}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Theorem 1 sweep.
// ---------------------------------------------------------------------------

namespace {

struct T1Buckets {
    std::optional<std::pair<std::size_t, std::uint32_t>> first_neutral;
    std::map<AxiomId, std::pair<std::size_t, std::uint32_t>> first_necessity;
};

void consider_t1_buckets(const Candidate& c, T1Buckets& buckets) {
    bool strict_verdict;
    Disposition disposition;
    bool gap;
    if (c.quotient) {
        strict_verdict = c.verdict == RelationVerdict::StrictlyPrefers ||
                         c.verdict == RelationVerdict::StrictlyDisprefers;
        disposition = c.disposition;
        gap = c.verdict == RelationVerdict::PreferentialGap;
    } else {
        RealizedOutcome out = outcome_realized(*c.scenario, *c.realized);
        strict_verdict = out.some_unpressed_preferred || out.some_pressed_preferred;
        disposition = out.disposition;
        gap = out.gap;
    }

    if (c.flags.antecedents_hold() && gap && disposition == Disposition::Neutral &&
        !buckets.first_neutral) {
        buckets.first_neutral = {c.scenario_index, c.mask};
    }

    if (!strict_verdict) return;
    bool conclusion_fails;
    if (c.quotient) {
        conclusion_fails = (c.verdict == RelationVerdict::StrictlyPrefers &&
                            disposition != Disposition::Averse) ||
                           (c.verdict == RelationVerdict::StrictlyDisprefers &&
                            disposition != Disposition::Seeking);
    } else {
        conclusion_fails = !outcome_realized(*c.scenario, *c.realized).conclusion_ok;
    }
    if (!conclusion_fails) return;

    // Exactly one violated antecedent among the checkable three (option-set
    // independence and manipulation indifference hold by construction here).
    std::vector<AxiomId> violated;
    for (AxiomId a : {AxiomId::Transitivity, AxiomId::IndiffShifted, AxiomId::BetterChances}) {
        if (!c.flags.holds(a)) violated.push_back(a);
    }
    if (violated.size() == 1 && !buckets.first_necessity.count(violated[0])) {
        buckets.first_necessity.emplace(violated[0],
                                        std::make_pair(c.scenario_index, c.mask));
    }
}

}  // namespace

Theorem1SweepResult sweep_theorem1(const EnumerationBounds& bounds) {
    Theorem1SweepResult result;
    Theorem1SweepStats& stats = result.stats;
    std::vector<ShutdownScenario> scenarios = scenarios_from(bounds);
    stats.scenarios = static_cast<long long>(scenarios.size());

    ScanTotals totals = scan_candidates(bounds, [&](const Candidate& c) {
        if (!c.flags.antecedents_hold()) return;
        ++stats.antecedents_hold;

        // Realize and run the full verifier plus the supporting lemmas; quotient
        // shortcuts never stand in for the checked claim itself.
        PreferenceStructure structure =
            c.quotient ? realize_quotient1(*c.quotient, c.mask) : *c.realized;
        TheoremReport report = verify_theorem1(*c.scenario, structure);
        if (!report.all_antecedents_hold()) {
            ++stats.conclusion_failures;  // quotient/realized disagreement is a failure
            return;
        }
        bool strict = report.facts.at("relation.Prevent") == "StrictlyPrefers" ||
                      report.facts.at("relation.Prevent") == "StrictlyDisprefers";
        if (strict) {
            ++stats.strict_cases;
            if (!report.conclusion_checked) ++stats.conclusion_failures;
            if (report.facts.at("disposition") == "Averse") ++stats.averse;
            if (report.facts.at("disposition") == "Seeking") ++stats.seeking;
        } else if (report.facts.at("relation.Prevent") == "PreferentialGap") {
            if (report.facts.at("disposition") == "Neutral") ++stats.neutral_gaps;
        }
        TheoremReport lemmas = verify_lemmas(*c.scenario, structure);
        if (!lemmas.conclusion_checked) ++result.lemma_failures;
    });
    stats.candidates = totals.candidates;
    stats.exhaustive = totals.exhaustive;
    return result;
}

// ---------------------------------------------------------------------------
// Enumeration stream.
// ---------------------------------------------------------------------------

long long enumerate_structures(
    const EnumerationBounds& bounds,
    const std::function<void(const ShutdownScenario&, const PreferenceStructure&,
                             const CheckContext&)>& fn) {
    long long emitted = 0;
    scan_candidates(bounds, [&](const Candidate& c) {
        if (!passes_filter(c.flags, bounds)) return;
        PreferenceStructure structure =
            c.quotient ? realize_quotient1(*c.quotient, c.mask) : *c.realized;
        CheckContext context = Figure1Universe::build(*c.scenario, structure).context;
        ++emitted;
        fn(*c.scenario, structure, context);
    });
    return emitted;
}

// ---------------------------------------------------------------------------
// Theorem 2 sweep: weak orders over abstract lotteries.
// ---------------------------------------------------------------------------

namespace {

PreferenceStructure abstract_structure(int n) {
    PreferenceStructure s;
    for (int i = 0; i < n; ++i) {
        Trajectory t({Step{"x", "o" + std::to_string(i + 1)}});
        s.register_lottery(Lottery::degenerate(t), "L" + std::to_string(i + 1));
    }
    return s;
}

/// Calls fn with every weak order over n elements, encoded as levels[i] = rank
/// of element i (0 = most preferred, ties allowed, ranks contiguous from 0).
void for_each_weak_order(int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> levels(n, 0);
    auto emit = [&] {
        int max_level = *std::max_element(levels.begin(), levels.end());
        std::vector<bool> used(max_level + 1, false);
        for (int l : levels) used[l] = true;
        if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) fn(levels);
    };
    while (true) {
        emit();
        int pos = n - 1;
        while (pos >= 0 && levels[pos] == n - 1) {
            levels[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++levels[pos];
    }
}

PreferenceStructure structure_from_levels(const std::vector<int>& levels) {
    int n = static_cast<int>(levels.size());
    PreferenceStructure s = abstract_structure(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && levels[i] <= levels[j]) s.add_weak_by_id(i, j);
        }
    }
    return s;
}

}  // namespace

Theorem2SweepStats sweep_theorem2(int lotteries) {
    if (lotteries < 1) throw InvalidBounds("need at least one lottery");
    Theorem2SweepStats stats;
    for (int n = 1; n <= lotteries; ++n) {
        for_each_weak_order(n, [&](const std::vector<int>& levels) {
            ++stats.structures;
            PreferenceStructure s = structure_from_levels(levels);
            bool any_indifferent = false;
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    if (s.relation_by_id(a, b) != RelationVerdict::Indifferent) continue;
                    any_indifferent = true;
                    ++stats.pairs_checked;
                    TheoremReport clauses = theorem2_clauses(s, s.lottery(a), s.lottery(b));
                    if (!clauses.conclusion_checked) ++stats.clause_failures;
                }
            }
            if (any_indifferent) ++stats.with_indifferent_pair;
        });
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Theorem 3 sweep.
// ---------------------------------------------------------------------------

Theorem3SweepStats sweep_theorem3(const std::vector<Rational>& delta_grid, int max_len,
                                  const std::vector<Rational>& utility_values,
                                  const std::vector<Rational>& e_grid,
                                  const std::vector<Rational>& k_grid,
                                  const std::vector<Rational>& l_grid) {
    Theorem3SweepStats stats;
    VectorUniverse universe;
    std::vector<std::vector<std::vector<Rational>>> tuples_by_len(max_len + 1);
    tuples_by_len[0].push_back({});
    for (int len = 1; len <= max_len; ++len) {
        for (const auto& shorter : tuples_by_len[len - 1]) {
            for (const Rational& v : utility_values) {
                auto longer = shorter;
                longer.push_back(v);
                tuples_by_len[len].push_back(std::move(longer));
            }
        }
    }
    for (int len = 0; len <= max_len; ++len) {
        for (const auto& utilities : tuples_by_len[len]) {
            if (len > 0) universe.add(UtilityVector{utilities, false});
            universe.add(UtilityVector{utilities, true});
        }
    }

    for (const Rational& delta : delta_grid) {
        if (delta <= Rational(0) || delta > Rational(1)) continue;
        DiscountedSumOrder order(delta);
        // The order over the whole bounded universe satisfies the four
        // preconditions; witnesses are then checked against their own derived
        // vectors (whose pivot entries may leave the value grid: they are
        // arithmetic consequences of the box, not draws from it).
        PreferenceStructure structure = universe.structure_from_order(order.as_order());
        CheckContext ctx;
        ctx.utilities = universe.utilities();
        for (AxiomId axiom : {AxiomId::OptionSetIndependence, AxiomId::ParetoIndifference,
                              AxiomId::Completeness, AxiomId::Transitivity}) {
            if (!check_axiom(structure, axiom, ctx).holds) {
                throw std::logic_error("discounted-sum order violates " + to_string(axiom));
            }
        }
        ++stats.orders;

        auto consider = [&](const PatienceWitness& w) {
            if (order.compare(w.continue_improved(), w.baseline()) !=
                RelationVerdict::StrictlyPrefers) {
                return;
            }
            if (order.compare(w.baseline(), w.continue_worsened()) !=
                RelationVerdict::StrictlyPrefers) {
                return;
            }
            ++stats.witnesses;
            VectorUniverse local;
            local.add(w.continue_improved());
            local.add(w.baseline());
            local.add(w.continue_worsened());
            local.add(w.shutdown_cut());
            PreferenceStructure local_structure = local.structure_from_order(order.as_order());
            TheoremReport report =
                verify_theorem3(local, local_structure, w, Theorem3Options{false});
            if (!report.conclusion_checked) ++stats.disjunction_failures;
        };

        for (int la = 0; la + 2 <= max_len; ++la) {
            for (int lb = 0; la + lb + 2 <= max_len; ++lb) {
                for (int lc = 0; la + lb + lc + 2 <= max_len; ++lc) {
                    for (const auto& a : tuples_by_len[la]) {
                        for (const auto& b : tuples_by_len[lb]) {
                            for (const auto& c : tuples_by_len[lc]) {
                                for (bool shut : {false, true}) {
                                    for (const Rational& i : utility_values) {
                                        for (const Rational& j : utility_values) {
                                            for (const Rational& e : e_grid) {
                                                for (const Rational& k : k_grid) {
                                                    for (const Rational& l : l_grid) {
                                                        consider(PatienceWitness{
                                                            a, b, UtilityVector{c, shut},
                                                            i, j, e, k, l});
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Mining.
// ---------------------------------------------------------------------------

namespace {

json t1_fixture(const ShutdownScenario& scenario, const PreferenceStructure& structure) {
    return json{{"scenario", to_json(scenario)}, {"structure", to_json(structure)}};
}

json t1_evidence(const ShutdownScenario& scenario, const PreferenceStructure& structure) {
    return json{{"report", to_json(verify_theorem1(scenario, structure))}};
}

json t2_necessity_evidence(const PreferenceStructure& s, const Lottery& x, const Lottery& y) {
    json axioms;
    for (AxiomId a : {AxiomId::OptionSetIndependence, AxiomId::Transitivity,
                      AxiomId::Completeness}) {
        axioms[to_string(a)] = check_axiom(s, a).holds;
    }
    return json{{"axioms", std::move(axioms)},
                {"report", to_json(theorem2_clauses(s, x, y))}};
}

json t2_gap_demo_evidence(const PreferenceStructure& s, const Lottery& x, const Lottery& y,
                          const Lottery& sweetened) {
    return json{{"gap_pair", to_string(s.relation(x, y))},
                {"sweetening", to_string(s.relation(sweetened, x))},
                {"sweetened_vs_other", to_string(s.relation(sweetened, y))}};
}

struct T3Probe {
    VectorUniverse universe;
    PreferenceStructure structure;
    PatienceWitness witness;
};

/// Complete within each shutdown-flag class by discounted sum, no relation
/// across the flag boundary: only Completeness fails, and the disjunction has
/// no derivation because the baseline and the cut trajectory sit in a gap.
T3Probe build_t3_completeness_probe() {
    T3Probe probe;
    DiscountedSumOrder order{Rational(3, 5)};
    probe.witness = PatienceWitness{{}, {}, UtilityVector{{}, false},
                                    Rational(1), Rational(1), Rational(1),
                                    Rational(2), Rational(2)};
    for (const UtilityVector& v :
         {probe.witness.continue_improved(), probe.witness.baseline(),
          probe.witness.continue_worsened(), probe.witness.shutdown_cut()}) {
        probe.universe.add(v);
    }
    probe.structure = probe.universe.structure_from_order(
        [&order](const UtilityVector& a, const UtilityVector& b) {
            if (a.shutdown != b.shutdown) return RelationVerdict::PreferentialGap;
            return order.compare(a, b);
        });
    return probe;
}

json t3_probe_fixture(const T3Probe& probe) {
    json vectors = json::array();
    for (const UtilityVector& v : probe.universe.vectors()) vectors.push_back(to_json(v));
    return json{{"vectors", std::move(vectors)},
                {"witness", to_json(probe.witness)},
                {"order", "discounted 3/5 within each shutdown class, gap across"}};
}

json t3_probe_evidence(const T3Probe& probe) {
    CheckContext ctx;
    ctx.utilities = probe.universe.utilities();
    json axioms;
    for (AxiomId a : {AxiomId::OptionSetIndependence, AxiomId::ParetoIndifference,
                      AxiomId::Completeness, AxiomId::Transitivity}) {
        axioms[to_string(a)] = check_axiom(probe.structure, a, ctx).holds;
    }
    TheoremReport report =
        verify_theorem3(probe.universe, probe.structure, probe.witness, Theorem3Options{false});
    return json{{"axioms", std::move(axioms)}, {"report", to_json(report)}};
}

/// The shift-only violation is invisible at mixture-class granularity (same
/// chance means same class there), so it is built directly: atoms ranked
/// unpressed over pressed, each action's own mixture chain ordered by chance,
/// and a gap between mixtures of different actions. Only the shift condition
/// fails, and the root composites end up pairwise unranked.
PreferenceStructure build_t1_shift_probe(const ShutdownScenario& scenario) {
    PreferenceStructure s;
    register_figure1_lotteries(scenario, s);
    auto rank_and_family = [&](LotteryId id) -> std::pair<int, int> {
        const Lottery& l = s.lottery(id);
        const std::string& name = s.name(id);
        int family = 0;
        const auto& actions = ShutdownScenario::actions();
        for (std::size_t a = 0; a < actions.size(); ++a) {
            if (name.find(actions[a]) != std::string::npos) family = static_cast<int>(a);
        }
        if (l.is_degenerate()) {
            bool pressed = l.support().front().first.shutdown_at().has_value();
            return {pressed ? 4 : 0, family};
        }
        Rational pressed_mass(0);
        for (const auto& [t, p] : l.support()) {
            if (t.shutdown_at()) pressed_mass = p;
        }
        if (pressed_mass == scenario.f()) return {1, family};
        if (pressed_mass == scenario.g()) return {2, family};
        return {3, family};
    };
    int n = s.size();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            auto [rank_a, fam_a] = rank_and_family(a);
            auto [rank_b, fam_b] = rank_and_family(b);
            bool atom_a = rank_a == 0 || rank_a == 4;
            bool atom_b = rank_b == 0 || rank_b == 4;
            bool comparable = atom_a || atom_b || fam_a == fam_b;
            if (comparable && rank_a <= rank_b) s.add_weak_by_id(a, b);
        }
    }
    return s;
}

}  // namespace

std::vector<Finding> mine(const EnumerationBounds& bounds, TheoremTarget target) {
    std::vector<Finding> findings;

    if (target == TheoremTarget::T1) {
        // Buckets are keyed by (scenario, mask); the scan handles partitioning.
        T1Buckets buckets;
        Theorem1SweepStats stats;
        long long lemma_failures = 0;
        std::vector<ShutdownScenario> scenarios = scenarios_from(bounds);

        if (bounds.workers <= 1) {
            Theorem1SweepResult swept = sweep_theorem1(bounds);
            stats = swept.stats;
            lemma_failures = swept.lemma_failures;
            scan_candidates(bounds,
                            [&](const Candidate& c) { consider_t1_buckets(c, buckets); });
        } else {
            // Workers split the candidate stream by a deterministic stripe of
            // the scan index; every worker rebuilds its own scan and merges in
            // canonical order afterwards.
            int workers = bounds.workers;
            std::vector<T1Buckets> worker_buckets(workers);
            std::vector<Theorem1SweepStats> worker_stats(workers);
            std::vector<long long> worker_lemmas(workers, 0);
            std::vector<std::thread> threads;
            for (int w = 0; w < workers; ++w) {
                threads.emplace_back([&, w] {
                    long long index = 0;
                    scan_candidates(bounds, [&](const Candidate& c) {
                        if (index++ % workers != w) return;
                        if (c.flags.antecedents_hold()) {
                            ++worker_stats[w].antecedents_hold;
                            PreferenceStructure structure = c.quotient
                                                                ? realize_quotient1(*c.quotient,
                                                                                    c.mask)
                                                                : *c.realized;
                            TheoremReport report = verify_theorem1(*c.scenario, structure);
                            bool strict =
                                report.facts.at("relation.Prevent") == "StrictlyPrefers" ||
                                report.facts.at("relation.Prevent") == "StrictlyDisprefers";
                            if (!report.all_antecedents_hold()) {
                                ++worker_stats[w].conclusion_failures;
                            } else if (strict) {
                                ++worker_stats[w].strict_cases;
                                if (!report.conclusion_checked) {
                                    ++worker_stats[w].conclusion_failures;
                                }
                                if (report.facts.at("disposition") == "Averse") {
                                    ++worker_stats[w].averse;
                                }
                                if (report.facts.at("disposition") == "Seeking") {
                                    ++worker_stats[w].seeking;
                                }
                            } else if (report.facts.at("relation.Prevent") ==
                                           "PreferentialGap" &&
                                       report.facts.at("disposition") == "Neutral") {
                                ++worker_stats[w].neutral_gaps;
                            }
                            if (!verify_lemmas(*c.scenario, structure).conclusion_checked) {
                                ++worker_lemmas[w];
                            }
                        }
                        consider_t1_buckets(c, worker_buckets[w]);
                    });
                });
            }
            for (std::thread& t : threads) t.join();
            stats.scenarios = static_cast<long long>(scenarios.size());
            for (int w = 0; w < workers; ++w) {
                stats.antecedents_hold += worker_stats[w].antecedents_hold;
                stats.strict_cases += worker_stats[w].strict_cases;
                stats.conclusion_failures += worker_stats[w].conclusion_failures;
                stats.averse += worker_stats[w].averse;
                stats.seeking += worker_stats[w].seeking;
                stats.neutral_gaps += worker_stats[w].neutral_gaps;
                lemma_failures += worker_lemmas[w];
                auto merge_first = [](auto& into, const auto& from) {
                    if (from && (!into || *from < *into)) into = from;
                };
                merge_first(buckets.first_neutral, worker_buckets[w].first_neutral);
                for (const auto& [axiom, key] : worker_buckets[w].first_necessity) {
                    auto it = buckets.first_necessity.find(axiom);
                    if (it == buckets.first_necessity.end() || key < it->second) {
                        buckets.first_necessity[axiom] = key;
                    }
                }
            }
            // Candidate totals do not depend on the partition.
            ScanTotals totals = scan_candidates(bounds, [](const Candidate&) {});
            stats.candidates = totals.candidates;
            stats.exhaustive = totals.exhaustive;
        }

        Finding confirmation;
        confirmation.kind = Finding::Kind::Confirmation;
        confirmation.target = TheoremTarget::T1;
        confirmation.fixture = json{{"bounds", to_json(bounds)}};
        confirmation.evidence = stats_to_json(stats, lemma_failures);
        confirmation.count = stats.antecedents_hold;
        findings.push_back(std::move(confirmation));

        auto realize_key = [&](const std::pair<std::size_t, std::uint32_t>& key) {
            const ShutdownScenario& scenario = scenarios[key.first];
            if (scenario.continuations().size() == 1) {
                Quotient1 q = make_quotient1(scenario);
                return std::make_pair(scenario, realize_quotient1(q, key.second));
            }
            return std::make_pair(scenario, *realize_multi_suffix(scenario, key.second));
        };

        for (AxiomId axiom :
             {AxiomId::Transitivity, AxiomId::BetterChances, AxiomId::IndiffShifted}) {
            if (axiom == AxiomId::IndiffShifted && !buckets.first_necessity.count(axiom)) {
                // Constructed probe; see build_t1_shift_probe. It needs an
                // interior pressed chance for Prevent: at f = 0 that composite
                // is the unpressed atom itself and stays comparable to every
                // mixture, so the conclusion cannot fail by a shift violation.
                const ShutdownScenario* scenario = nullptr;
                for (const ShutdownScenario& candidate : scenarios) {
                    if (candidate.continuations().size() == 1 &&
                        candidate.f() > Rational(0)) {
                        scenario = &candidate;
                        break;
                    }
                }
                if (!scenario) continue;
                PreferenceStructure probe = build_t1_shift_probe(*scenario);
                Finding f;
                f.kind = Finding::Kind::NecessityCounterexample;
                f.axiom = axiom;
                f.target = TheoremTarget::T1;
                f.fixture = t1_fixture(*scenario, probe);
                f.evidence = t1_evidence(*scenario, probe);
                findings.push_back(std::move(f));
                continue;
            }
            auto it = buckets.first_necessity.find(axiom);
            if (it == buckets.first_necessity.end()) continue;
            auto [scenario, structure] = realize_key(it->second);
            Finding f;
            f.kind = Finding::Kind::NecessityCounterexample;
            f.axiom = axiom;
            f.target = TheoremTarget::T1;
            f.fixture = t1_fixture(scenario, structure);
            f.evidence = t1_evidence(scenario, structure);
            findings.push_back(std::move(f));
        }

        if (buckets.first_neutral) {
            auto [scenario, structure] = realize_key(*buckets.first_neutral);
            Finding f;
            f.kind = Finding::Kind::NeutralExample;
            f.target = TheoremTarget::T1;
            f.fixture = t1_fixture(scenario, structure);
            f.evidence = t1_evidence(scenario, structure);
            f.count = stats.neutral_gaps;
            findings.push_back(std::move(f));
        }
        return findings;
    }

    if (target == TheoremTarget::T2) {
        int n = std::min(bounds.max_trajectories, 6);
        Theorem2SweepStats stats = sweep_theorem2(n);
        Finding confirmation;
        confirmation.kind = Finding::Kind::Confirmation;
        confirmation.target = TheoremTarget::T2;
        confirmation.fixture = json{{"lotteries", n}};
        confirmation.evidence = json{{"structures", stats.structures},
                                     {"with_indifferent_pair", stats.with_indifferent_pair},
                                     {"pairs_checked", stats.pairs_checked},
                                     {"clause_failures", stats.clause_failures}};
        confirmation.count = stats.structures;
        findings.push_back(std::move(confirmation));

        // Transitivity necessity: first complete, intransitive relation over
        // three lotteries with an indifferent pair and a failing clause.
        bool found = false;
        for (std::uint32_t mask = 0; mask < 64 && !found; ++mask) {
            PreferenceStructure s = abstract_structure(3);
            int bit = 0;
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    if (a == b) continue;
                    if ((mask >> bit) & 1u) s.add_weak_by_id(a, b);
                    ++bit;
                }
            }
            if (check_axiom(s, AxiomId::Transitivity).holds) continue;
            if (!check_axiom(s, AxiomId::Completeness).holds) continue;
            for (int a = 0; a < 3 && !found; ++a) {
                for (int b = 0; b < 3 && !found; ++b) {
                    if (a == b || s.relation_by_id(a, b) != RelationVerdict::Indifferent) {
                        continue;
                    }
                    TheoremReport clauses = theorem2_clauses(s, s.lottery(a), s.lottery(b));
                    if (clauses.conclusion_checked) continue;
                    Finding f;
                    f.kind = Finding::Kind::NecessityCounterexample;
                    f.axiom = AxiomId::Transitivity;
                    f.target = TheoremTarget::T2;
                    f.fixture = json{{"structure", to_json(s)},
                                     {"x", s.name(a)},
                                     {"y", s.name(b)}};
                    f.evidence = t2_necessity_evidence(s, s.lottery(a), s.lottery(b));
                    findings.push_back(std::move(f));
                    found = true;
                }
            }
        }

        // Gaps are insensitive to sweetening: improving X yields no preference
        // over Y when X and Y sit in a gap.
        {
            PreferenceStructure s = abstract_structure(3);
            s.add_weak_by_id(2, 0);  // L3 (the sweetened X) > L1 (X); L2 (Y) unrelated
            Finding f;
            f.kind = Finding::Kind::NeutralExample;
            f.target = TheoremTarget::T2;
            f.fixture = json{{"structure", to_json(s)},
                             {"x", s.name(0)},
                             {"y", s.name(1)},
                             {"sweetened", s.name(2)}};
            f.evidence = t2_gap_demo_evidence(s, s.lottery(0), s.lottery(1), s.lottery(2));
            findings.push_back(std::move(f));
        }
        return findings;
    }

    // Theorem 3.
    std::vector<Rational> deltas;
    for (const Rational& p : bounds.probability_grid) {
        if (p > Rational(0) && p <= Rational(1)) deltas.push_back(p);
    }
    std::sort(deltas.begin(), deltas.end());
    deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
    if (deltas.empty()) throw InvalidBounds("no usable discount values in the probability grid");
    int max_len = std::min(bounds.max_trajectories, 4);
    std::vector<Rational> values{Rational(0), Rational(1), Rational(2), Rational(3)};
    std::vector<Rational> factors{Rational(1), Rational(2), Rational(3)};
    Theorem3SweepStats stats = sweep_theorem3(deltas, max_len, values, factors, factors, factors);

    Finding confirmation;
    confirmation.kind = Finding::Kind::Confirmation;
    confirmation.target = TheoremTarget::T3;
    json delta_json = json::array();
    for (const Rational& d : deltas) delta_json.push_back(d.str());
    confirmation.fixture = json{{"delta_grid", std::move(delta_json)},
                                {"max_len", max_len},
                                {"utility_values", json::array({"0", "1", "2", "3"})},
                                {"e_grid", json::array({"1", "2", "3"})},
                                {"k_grid", json::array({"1", "2", "3"})},
                                {"l_grid", json::array({"1", "2", "3"})}};
    confirmation.evidence = json{{"orders", stats.orders},
                                 {"witnesses", stats.witnesses},
                                 {"disjunction_failures", stats.disjunction_failures}};
    confirmation.count = stats.witnesses;
    findings.push_back(std::move(confirmation));

    T3Probe probe = build_t3_completeness_probe();
    Finding f;
    f.kind = Finding::Kind::NecessityCounterexample;
    f.axiom = AxiomId::Completeness;
    f.target = TheoremTarget::T3;
    f.fixture = t3_probe_fixture(probe);
    f.evidence = t3_probe_evidence(probe);
    findings.push_back(std::move(f));
    return findings;
}

// ---------------------------------------------------------------------------
// Replay.
// ---------------------------------------------------------------------------

ReplayResult replay(const std::vector<json>& findings) {
    ReplayResult result;
    for (const json& f : findings) {
        ++result.findings;
        std::string kind = f.value("kind", "");
        std::string target = f.value("target", "");
        json fresh;
        try {
            if (kind == "Confirmation" && target == "t1") {
                EnumerationBounds bounds =
                    bounds_from_json(f.at("fixture").at("bounds"), "<replay>");
                Theorem1SweepResult swept = sweep_theorem1(bounds);
                fresh = stats_to_json(swept.stats, swept.lemma_failures);
            } else if (kind == "Confirmation" && target == "t2") {
                Theorem2SweepStats stats = sweep_theorem2(f.at("fixture").at("lotteries").get<int>());
                fresh = json{{"structures", stats.structures},
                             {"with_indifferent_pair", stats.with_indifferent_pair},
                             {"pairs_checked", stats.pairs_checked},
                             {"clause_failures", stats.clause_failures}};
            } else if (kind == "Confirmation" && target == "t3") {
                const json& fx = f.at("fixture");
                auto grid = [&](const char* key) {
                    std::vector<Rational> out;
                    for (const json& v : fx.at(key)) {
                        out.push_back(Rational::parse(v.get<std::string>()));
                    }
                    return out;
                };
                Theorem3SweepStats stats = sweep_theorem3(
                    grid("delta_grid"), fx.at("max_len").get<int>(), grid("utility_values"),
                    grid("e_grid"), grid("k_grid"), grid("l_grid"));
                fresh = json{{"orders", stats.orders},
                             {"witnesses", stats.witnesses},
                             {"disjunction_failures", stats.disjunction_failures}};
            } else if (target == "t1") {
                ShutdownScenario scenario =
                    scenario_from_json(f.at("fixture").at("scenario"), "<replay>");
                PreferenceStructure structure =
                    structure_from_json(f.at("fixture").at("structure"), "<replay>");
                fresh = t1_evidence(scenario, structure);
            } else if (target == "t2") {
                PreferenceStructure s =
                    structure_from_json(f.at("fixture").at("structure"), "<replay>");
                const Lottery& x =
                    lottery_by_name(s, f.at("fixture").at("x").get<std::string>(), "<replay>");
                const Lottery& y =
                    lottery_by_name(s, f.at("fixture").at("y").get<std::string>(), "<replay>");
                if (kind == "NeutralExample") {
                    const Lottery& sweetened = lottery_by_name(
                        s, f.at("fixture").at("sweetened").get<std::string>(), "<replay>");
                    fresh = t2_gap_demo_evidence(s, x, y, sweetened);
                } else {
                    fresh = t2_necessity_evidence(s, x, y);
                }
            } else if (target == "t3") {
                T3Probe probe;
                for (const json& v : f.at("fixture").at("vectors")) {
                    probe.universe.add(utility_vector_from_json(v, "<replay>", "vectors"));
                }
                probe.witness =
                    patience_witness_from_json(f.at("fixture").at("witness"), "<replay>",
                                               "witness");
                DiscountedSumOrder order{Rational(3, 5)};
                probe.structure = probe.universe.structure_from_order(
                    [&order](const UtilityVector& a, const UtilityVector& b) {
                        if (a.shutdown != b.shutdown) return RelationVerdict::PreferentialGap;
                        return order.compare(a, b);
                    });
                fresh = t3_probe_evidence(probe);
            } else {
                ++result.mismatches;
                result.notes.push_back("unknown finding kind/target: " + kind + "/" + target);
                continue;
            }
        } catch (const std::exception& e) {
            ++result.mismatches;
            result.notes.push_back("replay error: " + std::string(e.what()));
            continue;
        }
        if (fresh != f.at("evidence")) {
            ++result.mismatches;
            result.notes.push_back("evidence mismatch for finding " +
                                   std::to_string(result.findings));
        }
    }
    return result;
}

}  // namespace offswitch
