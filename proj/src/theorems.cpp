#include "offswitch/theorems.hpp"

#include <algorithm>
#include <set>

#include "offswitch/errors.hpp"
#include "offswitch/lottery_algebra.hpp"

namespace offswitch {

bool TheoremReport::all_antecedents_hold() const {
    return std::all_of(antecedents.begin(), antecedents.end(),
                       [](const auto& entry) { return entry.second.holds; });
}

namespace {

std::vector<Rational> chance_grid(const ShutdownScenario& scenario) {
    std::set<Rational> grid{Rational(0), scenario.f(), scenario.g(), scenario.h(), Rational(1)};
    return {grid.begin(), grid.end()};
}

std::string option_edge(const TrajectorySuffix& suffix) { return suffix.steps.front().action; }

}  // namespace

void register_figure1_lotteries(const ShutdownScenario& scenario,
                                PreferenceStructure& structure) {
    bool multi = scenario.continuations().size() > 1;
    for (const std::string& action : ShutdownScenario::actions()) {
        structure.register_lottery(Lottery::degenerate(scenario.pressed_outcome(action)),
                                   "P_" + action);
    }
    for (const std::string& action : ShutdownScenario::actions()) {
        const auto& suffixes = scenario.continuations();
        for (std::size_t s = 0; s < suffixes.size(); ++s) {
            std::string name = "U_" + action + (multi ? "." + std::to_string(s + 1) : "");
            structure.register_lottery(
                Lottery::degenerate(stamp_action(suffixes[s], action)), name);
        }
    }
    for (const std::string& action : ShutdownScenario::actions()) {
        Lottery pressed = Lottery::degenerate(scenario.pressed_outcome(action));
        const auto& suffixes = scenario.continuations();
        for (std::size_t s = 0; s < suffixes.size(); ++s) {
            Lottery unpressed = Lottery::degenerate(stamp_action(suffixes[s], action));
            for (const Rational& pi : {scenario.f(), scenario.g(), scenario.h()}) {
                std::string name = "mix[" + pi.str() + ";" + action +
                                   (multi ? "." + std::to_string(s + 1) : "") + "]";
                structure.register_lottery(mix(pi, pressed, unpressed), name);
            }
        }
    }
}

Figure1Universe Figure1Universe::build(const ShutdownScenario& scenario,
                                       const PreferenceStructure& structure) {
    Figure1Universe uni;
    uni.scenario = scenario;
    uni.twins = twin_families(scenario);

    auto require = [&](const Lottery& l, const std::string& what) {
        if (!structure.id_of(l)) {
            throw AntecedentUnverifiable(what + " is not registered: " + l.str());
        }
        return l;
    };

    for (const auto& family : uni.twins) {
        for (const Trajectory& t : family) {
            require(Lottery::degenerate(t), "twin trajectory lottery");
        }
    }

    for (const std::string& action : ShutdownScenario::actions()) {
        uni.pressed.emplace(action, require(Lottery::degenerate(scenario.pressed_outcome(action)),
                                            "pressed lottery for " + action));
        std::vector<Lottery> options;
        for (const Trajectory& t : scenario.unpressed_outcomes(action)) {
            options.push_back(require(Lottery::degenerate(t), "unpressed option for " + action));
        }
        uni.unpressed_options.emplace(action, options);

        // The structure's pick at the unpressed state: eliminate options that
        // are strictly dispreferred to an alternative, break ties by lowest
        // timestep-2 action, exactly as backward induction does.
        const auto& suffixes = scenario.continuations();
        std::optional<std::size_t> best;
        for (std::size_t s = 0; s < options.size(); ++s) {
            bool dominated = false;
            for (std::size_t o = 0; o < options.size(); ++o) {
                if (o != s && structure.relation(options[o], options[s]) ==
                                  RelationVerdict::StrictlyPrefers) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) continue;
            if (!best || option_edge(suffixes[s]) < option_edge(suffixes[*best])) best = s;
        }
        if (!best) {
            throw InconsistentStructure("every unpressed option for " + action +
                                        " is strictly dominated");
        }
        uni.predicted_unpressed.emplace(action, options.at(*best));
    }

    for (const std::string& action : ShutdownScenario::actions()) {
        const Lottery& pressed = uni.pressed.at(action);
        const Lottery& unpressed = uni.predicted_unpressed.at(action);
        uni.composite.emplace(
            action, require(mix(scenario.chance_of(action), pressed, unpressed),
                            "composite lottery for " + action));

        std::vector<Rational> grid = chance_grid(scenario);
        for (std::size_t lo = 0; lo < grid.size(); ++lo) {
            for (std::size_t hi = lo + 1; hi < grid.size(); ++hi) {
                const Rational& pi_low = grid[lo];
                const Rational& pi_high = grid[hi];
                require(mix(pi_low, pressed, unpressed),
                        "chance-grid mixture for " + action);
                require(mix(pi_high, pressed, unpressed),
                        "chance-grid mixture for " + action);
                // Both readings of the same family: more unpressed mass, and
                // more pressed mass.
                uni.context.mixtures.push_back(MixtureQuad{
                    unpressed, pressed, Rational(1) - pi_low, Rational(1) - pi_high});
                uni.context.mixtures.push_back(MixtureQuad{pressed, unpressed, pi_high, pi_low});
            }
        }
    }
    uni.context.twins = uni.twins;
    return uni;
}

namespace {

void add_antecedent(TheoremReport& report, const std::string& name, Verdict verdict) {
    report.antecedents.emplace_back(name, std::move(verdict));
}

void check_standard_antecedents(TheoremReport& report, const PreferenceStructure& structure,
                                const Figure1Universe& uni, bool include_better_chances) {
    add_antecedent(report, "OptionSetIndependence",
                   check_axiom(structure, AxiomId::OptionSetIndependence));
    Verdict induction = Verdict::pass();
    report.details.push_back("BackwardInduction: enforced by the induction agent itself");
    add_antecedent(report, "BackwardInduction", induction);
    add_antecedent(report, "IndiffAttemptedManipulation",
                   check_axiom(structure, AxiomId::IndiffAttemptedManipulation, uni.context));
    add_antecedent(report, "IndiffShifted", check_axiom(structure, AxiomId::IndiffShifted));
    add_antecedent(report, "Transitivity", check_axiom(structure, AxiomId::Transitivity));
    if (include_better_chances) {
        add_antecedent(report, "BetterChances",
                       check_axiom(structure, AxiomId::BetterChances, uni.context));
    }
}

std::string verdict_name(RelationVerdict v) { return to_string(v); }

}  // namespace

TheoremReport verify_theorem1(const ShutdownScenario& scenario,
                              const PreferenceStructure& structure) {
    TheoremReport report;
    report.theorem = "t1";
    Figure1Universe uni = Figure1Universe::build(scenario, structure);
    check_standard_antecedents(report, structure, uni, /*include_better_chances=*/true);

    bool some_unpressed_preferred = false;
    bool some_pressed_preferred = false;
    std::optional<RelationVerdict> first;
    bool uniform = true;
    for (const std::string& action : ShutdownScenario::actions()) {
        RelationVerdict v =
            structure.relation(uni.predicted_unpressed.at(action), uni.pressed.at(action));
        report.facts["relation." + action] = verdict_name(v);
        if (v == RelationVerdict::StrictlyPrefers) some_unpressed_preferred = true;
        if (v == RelationVerdict::StrictlyDisprefers) some_pressed_preferred = true;
        if (!first) first = v;
        if (*first != v) uniform = false;
    }
    report.facts["uniform_verdict"] = uniform ? "true" : "false";

    ShutdownDisposition disposition = classify(scenario, structure);
    report.facts["disposition"] = to_string(disposition.kind);

    bool conclusion = true;
    if (some_unpressed_preferred) {
        conclusion &= disposition.kind == Disposition::Averse;
        report.details.push_back("expect Averse: some predicted unpressed lottery is strictly "
                                 "preferred to its pressed twin");
    }
    if (some_pressed_preferred) {
        conclusion &= disposition.kind == Disposition::Seeking;
        report.details.push_back("expect Seeking: some predicted pressed lottery is strictly "
                                 "preferred to its unpressed twin");
    }
    if (!some_unpressed_preferred && !some_pressed_preferred) {
        report.details.push_back("no strict U-vs-P preference: the theorem makes no claim");
    }
    report.conclusion_checked = conclusion;

    // The proof chain for the strict cases, each line re-verified against
    // the structure.
    if (report.all_antecedents_hold() && (some_unpressed_preferred || some_pressed_preferred)) {
        bool averse = some_unpressed_preferred;
        const std::string& winner = averse ? kActionPrevent : kActionCause;
        const Rational& winner_chance = scenario.chance_of(winner);
        int step = 1;
        for (const std::string& other : ShutdownScenario::actions()) {
            if (other == winner) continue;
            const Lottery& pressed = uni.pressed.at(other);
            const Lottery& unpressed = uni.predicted_unpressed.at(other);
            Lottery bridge = mix(winner_chance, pressed, unpressed);
            const Lottery& composite_other = uni.composite.at(other);
            const Lottery& composite_winner = uni.composite.at(winner);

            bool chances_ok =
                structure.relation(bridge, composite_other) == RelationVerdict::StrictlyPrefers;
            bool shift_ok =
                structure.relation(composite_winner, bridge) == RelationVerdict::Indifferent;
            bool chain_ok = structure.relation(composite_winner, composite_other) ==
                            RelationVerdict::StrictlyPrefers;
            report.details.push_back(
                std::to_string(step++) + ": " + bridge.str() + " > composite(" + other +
                "); Better Chances over the " + other + " twins; " +
                (chances_ok ? "holds" : "FAILS"));
            report.details.push_back(std::to_string(step++) + ": composite(" + winner + ") ~ " +
                                     bridge.str() + "; Indifference-Shifted; " +
                                     (shift_ok ? "holds" : "FAILS"));
            report.details.push_back(std::to_string(step++) + ": composite(" + winner +
                                     ") > composite(" + other + "); IP-Transitivity; " +
                                     (chain_ok ? "holds" : "FAILS"));
            report.conclusion_checked =
                report.conclusion_checked && chances_ok && shift_ok && chain_ok;
        }
    }
    return report;
}

TheoremReport verify_lemmas(const ShutdownScenario& scenario,
                            const PreferenceStructure& structure) {
    TheoremReport report;
    report.theorem = "lemmas";
    Figure1Universe uni = Figure1Universe::build(scenario, structure);
    check_standard_antecedents(report, structure, uni, /*include_better_chances=*/false);

    bool ok = true;
    auto note_pair = [&](const std::string& label, const Lottery& a, const Lottery& b,
                         RelationVerdict expected) {
        RelationVerdict got = structure.relation(a, b);
        bool pass = got == expected;
        ok &= pass;
        report.details.push_back(label + ": " + verdict_name(got) +
                                 (pass ? "" : " (expected " + verdict_name(expected) + ")"));
        return pass;
    };

    const auto& actions = ShutdownScenario::actions();
    for (std::size_t i = 0; i < actions.size(); ++i) {
        for (std::size_t j = i + 1; j < actions.size(); ++j) {
            note_pair("lemma1: P_" + actions[i] + " vs P_" + actions[j],
                      uni.pressed.at(actions[i]), uni.pressed.at(actions[j]),
                      RelationVerdict::Indifferent);
            note_pair("lemma1: U_" + actions[i] + " vs U_" + actions[j],
                      uni.predicted_unpressed.at(actions[i]),
                      uni.predicted_unpressed.at(actions[j]), RelationVerdict::Indifferent);
        }
    }
    // The stored fact from the end of the first lemma's proof.
    Lottery left = mix(scenario.f(), uni.pressed.at(kActionLeave),
                       uni.predicted_unpressed.at(kActionLeave));
    Lottery right = mix(scenario.f(), uni.pressed.at(kActionPrevent),
                        uni.predicted_unpressed.at(kActionPrevent));
    note_pair("lemma1: f-mixture of Leave twins vs f-mixture of Prevent twins", left, right,
              RelationVerdict::Indifferent);

    std::optional<RelationVerdict> first;
    bool uniform = true;
    for (const std::string& action : actions) {
        RelationVerdict v =
            structure.relation(uni.predicted_unpressed.at(action), uni.pressed.at(action));
        report.facts["relation." + action] = verdict_name(v);
        if (!first) first = v;
        if (*first != v) uniform = false;
    }
    report.facts["uniform_verdict"] = uniform ? "true" : "false";
    report.details.push_back(std::string("lemma2: U-vs-P verdict uniform across twin pairs: ") +
                             (uniform ? "yes" : "NO"));
    ok &= uniform;

    report.conclusion_checked = ok;
    return report;
}

TheoremReport theorem2_clauses(const PreferenceStructure& structure, const Lottery& x,
                               const Lottery& y) {
    TheoremReport report;
    report.theorem = "t2";
    LotteryId ix = structure.require_id(x);
    LotteryId iy = structure.require_id(y);
    report.facts["pair"] = structure.name(ix) + ", " + structure.name(iy);
    report.facts["pair_relation"] = to_string(structure.relation_by_id(ix, iy));

    long long checked = 0;
    bool ok = true;
    for (int z = 0; z < structure.size(); ++z) {
        if (z == ix || z == iy) continue;
        RelationVerdict zx = structure.relation_by_id(z, ix);
        RelationVerdict zy = structure.relation_by_id(z, iy);
        auto expect = [&](int clause, bool premise, bool consequence) {
            if (!premise) return;
            ++checked;
            if (!consequence) {
                ok = false;
                report.details.push_back("clause " + std::to_string(clause) + " fails at " +
                                         structure.name(z) + " (relations: vs x " +
                                         to_string(zx) + ", vs y " + to_string(zy) + ")");
                if (!report.facts.count("first_failure")) {
                    report.facts["first_failure"] =
                        "clause " + std::to_string(clause) + " at " + structure.name(z);
                }
            }
        };
        expect(1, zx == RelationVerdict::StrictlyPrefers, zy == RelationVerdict::StrictlyPrefers);
        expect(2, zx == RelationVerdict::StrictlyDisprefers,
               zy == RelationVerdict::StrictlyDisprefers);
        expect(3, zy == RelationVerdict::StrictlyPrefers, zx == RelationVerdict::StrictlyPrefers);
        expect(4, zy == RelationVerdict::StrictlyDisprefers,
               zx == RelationVerdict::StrictlyDisprefers);
    }
    report.facts["instances_checked"] = std::to_string(checked);
    report.conclusion_checked = ok;
    if (ok) {
        report.details.push_back("all four clauses hold over " + std::to_string(checked) +
                                 " premise instances");
    }
    return report;
}

TheoremReport verify_theorem2(const PreferenceStructure& structure, const Lottery& x,
                              const Lottery& y) {
    TheoremReport precheck;
    for (AxiomId axiom :
         {AxiomId::OptionSetIndependence, AxiomId::Transitivity, AxiomId::Completeness}) {
        Verdict v = check_axiom(structure, axiom);
        if (!v.holds) {
            throw PreconditionFailed("second theorem precondition fails: " + to_string(axiom) +
                                     (v.witness ? " (" + v.witness->description + ")" : ""));
        }
        add_antecedent(precheck, to_string(axiom), v);
    }
    RelationVerdict pair = structure.relation(x, y);
    if (pair == RelationVerdict::StrictlyPrefers || pair == RelationVerdict::StrictlyDisprefers) {
        throw PreconditionFailed("second theorem needs a pair lacking strict preference, got " +
                                 to_string(pair));
    }
    TheoremReport report = theorem2_clauses(structure, x, y);
    report.antecedents = std::move(precheck.antecedents);
    return report;
}

PairCount count_no_preference_pairs(int short_chain_length, int long_chain_length) {
    if (short_chain_length < 1 || long_chain_length < 1) {
        throw std::invalid_argument("chain lengths must be >= 1");
    }
    int m = short_chain_length;
    int n = long_chain_length;
    // Merge states: (i, j) = elements consumed from each chain. A merge step
    // appends the next element of one chain or ties the next elements of both,
    // which is the only way a cross-chain pair can be indifferent.
    std::vector<std::vector<long long>> ways(m + 1, std::vector<long long>(n + 1, 0));
    std::vector<std::vector<long long>> best(m + 1, std::vector<long long>(n + 1, -1));
    ways[0][0] = 1;
    best[0][0] = 0;
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (i == 0 && j == 0) continue;
            long long w = 0;
            long long b = -1;
            if (i > 0) {
                w += ways[i - 1][j];
                b = std::max(b, best[i - 1][j]);
            }
            if (j > 0) {
                w += ways[i][j - 1];
                b = std::max(b, best[i][j - 1]);
            }
            if (i > 0 && j > 0) {
                w += ways[i - 1][j - 1];
                b = std::max(b, best[i - 1][j - 1] + 1);
            }
            ways[i][j] = w;
            best[i][j] = b;
        }
    }
    PairCount out;
    out.max_gapfree_indifferent_pairs = best[m][n];
    out.min_strict_pairs = static_cast<long long>(m) * n - best[m][n];
    out.merge_count = ways[m][n];
    return out;
}

UtilityVector PatienceWitness::continue_improved() const {
    UtilityVector v;
    v.utilities = a;
    v.utilities.push_back(i - e);
    v.utilities.insert(v.utilities.end(), b.begin(), b.end());
    v.utilities.push_back(j + k * e);
    v.utilities.insert(v.utilities.end(), c.utilities.begin(), c.utilities.end());
    v.shutdown = c.shutdown;
    return v;
}

UtilityVector PatienceWitness::baseline() const {
    UtilityVector v;
    v.utilities = a;
    v.utilities.push_back(i);
    v.utilities.insert(v.utilities.end(), b.begin(), b.end());
    v.utilities.push_back(j);
    v.utilities.insert(v.utilities.end(), c.utilities.begin(), c.utilities.end());
    v.shutdown = c.shutdown;
    return v;
}

UtilityVector PatienceWitness::continue_worsened() const {
    UtilityVector v;
    v.utilities = a;
    v.utilities.push_back(i + e);
    v.utilities.insert(v.utilities.end(), b.begin(), b.end());
    v.utilities.push_back(j - l * e);
    v.utilities.insert(v.utilities.end(), c.utilities.begin(), c.utilities.end());
    v.shutdown = c.shutdown;
    return v;
}

UtilityVector PatienceWitness::shutdown_cut() const {
    UtilityVector v;
    v.utilities = a;
    v.utilities.push_back(i);
    v.utilities.insert(v.utilities.end(), b.begin(), b.end());
    v.shutdown = true;
    return v;
}

TheoremReport verify_theorem3(const VectorUniverse& universe,
                              const PreferenceStructure& structure,
                              const PatienceWitness& witness, const Theorem3Options& options) {
    if (witness.e <= Rational(0)) {
        throw PreconditionFailed("Patience requires a deficit e > 0, got " + witness.e.str());
    }
    TheoremReport report;
    report.theorem = "t3";

    UtilityVector improved = witness.continue_improved();
    UtilityVector base = witness.baseline();
    UtilityVector worsened = witness.continue_worsened();
    UtilityVector cut = witness.shutdown_cut();

    const Lottery& l_improved = universe.lottery_of(improved);
    const Lottery& l_base = universe.lottery_of(base);
    const Lottery& l_worsened = universe.lottery_of(worsened);
    const Lottery& l_cut = universe.lottery_of(cut);

    if (options.check_axioms) {
        CheckContext ctx;
        ctx.utilities = universe.utilities();
        for (AxiomId axiom : {AxiomId::OptionSetIndependence, AxiomId::ParetoIndifference,
                              AxiomId::Completeness, AxiomId::Transitivity}) {
            Verdict v = check_axiom(structure, axiom, ctx);
            if (!v.holds) {
                throw PreconditionFailed("third theorem precondition fails: " + to_string(axiom));
            }
            add_antecedent(report, to_string(axiom), v);
        }
    }

    if (structure.relation(l_improved, l_base) != RelationVerdict::StrictlyPrefers) {
        throw PreconditionFailed("Patience clause 1 fails: " + improved.str() + " not > " +
                                 base.str());
    }
    if (structure.relation(l_base, l_worsened) != RelationVerdict::StrictlyPrefers) {
        throw PreconditionFailed("Patience clause 2 fails: " + base.str() + " not > " +
                                 worsened.str());
    }
    add_antecedent(report, "Patience", Verdict::pass());

    RelationVerdict stance = structure.relation(l_base, l_cut);
    report.facts["case"] = to_string(stance);

    bool disjunct1 =
        structure.relation(l_improved, l_cut) == RelationVerdict::StrictlyPrefers;
    bool disjunct2 =
        structure.relation(l_cut, l_worsened) == RelationVerdict::StrictlyPrefers;
    report.facts["disjunct1"] = disjunct1 ? "true" : "false";
    report.facts["disjunct2"] = disjunct2 ? "true" : "false";

    switch (stance) {
        case RelationVerdict::StrictlyPrefers:
            report.details.push_back("1: " + improved.str() + " > " + base.str() +
                                     "; Patience clause 1; holds");
            report.details.push_back("2: " + base.str() + " > " + cut.str() +
                                     "; case continue-preferred; holds");
            report.details.push_back("3: " + improved.str() + " > " + cut.str() +
                                     "; PP-Transitivity from 1, 2; " +
                                     (disjunct1 ? "holds" : "FAILS"));
            break;
        case RelationVerdict::StrictlyDisprefers:
            report.details.push_back("1: " + cut.str() + " > " + base.str() +
                                     "; case shutdown-preferred; holds");
            report.details.push_back("2: " + base.str() + " > " + worsened.str() +
                                     "; Patience clause 2; holds");
            report.details.push_back("3: " + cut.str() + " > " + worsened.str() +
                                     "; PP-Transitivity from 1, 2; " +
                                     (disjunct2 ? "holds" : "FAILS"));
            break;
        case RelationVerdict::Indifferent:
            report.details.push_back("1: " + improved.str() + " > " + base.str() +
                                     "; Patience clause 1; holds");
            report.details.push_back("2: " + base.str() + " ~ " + cut.str() +
                                     "; case indifferent; holds");
            report.details.push_back("3: " + improved.str() + " > " + cut.str() +
                                     "; PI-Transitivity from 1, 2; " +
                                     (disjunct1 ? "holds" : "FAILS"));
            report.details.push_back("4: " + base.str() + " > " + worsened.str() +
                                     "; Patience clause 2; holds");
            report.details.push_back("5: " + cut.str() + " > " + worsened.str() +
                                     "; IP-Transitivity from 2, 4; " +
                                     (disjunct2 ? "holds" : "FAILS"));
            break;
        case RelationVerdict::PreferentialGap:
            report.details.push_back("no relation between " + base.str() + " and " + cut.str() +
                                     ": no derivation applies");
            break;
    }

    report.conclusion_checked = disjunct1 || disjunct2;
    if (stance == RelationVerdict::Indifferent) {
        report.conclusion_checked = disjunct1 && disjunct2;  // the proof yields both
    }
    return report;
}

Rational max_sacrifice(const Rational& delta, const Rational& gain, const Rational& grid_step) {
    DiscountedSumOrder order(delta);
    if (grid_step <= Rational(0)) throw std::invalid_argument("grid step must be > 0");
    Rational supremum = delta * gain;

    auto prefers_continue = [&](const Rational& e) {
        UtilityVector go{{gain - e, gain}, true};
        UtilityVector stop{{gain}, true};
        return order.compare(go, stop) == RelationVerdict::StrictlyPrefers;
    };
    if (!prefers_continue(supremum - grid_step) || prefers_continue(supremum + grid_step)) {
        throw std::logic_error("closed form and grid probe disagree at e* = " + supremum.str());
    }
    return supremum;
}

namespace {

/// Odometer over `positions` slots each ranging over `grid`; calls fn for every
/// combination in grid order (first slot most significant).
template <typename Fn>
bool scan_tuples(const std::vector<Rational>& grid, int positions, std::vector<Rational>& out,
                 const Fn& fn) {
    if (positions == 0) return fn();
    for (const Rational& v : grid) {
        out.push_back(v);
        if (scan_tuples(grid, positions - 1, out, fn)) return true;
        out.pop_back();
    }
    return false;
}

}  // namespace

std::optional<PatienceWitness> find_minimal_patience_witness(const UtilityOrder& order,
                                                             const PatienceSearchBounds& bounds) {
    if (bounds.utility_grid.empty() || bounds.e_grid.empty() || bounds.k_grid.empty() ||
        bounds.l_grid.empty()) {
        throw std::invalid_argument("patience search needs non-empty grids");
    }
    std::optional<PatienceWitness> found;

    auto try_witness = [&](const PatienceWitness& w) {
        if (order(w.continue_improved(), w.baseline()) != RelationVerdict::StrictlyPrefers) {
            return false;
        }
        if (order(w.baseline(), w.continue_worsened()) != RelationVerdict::StrictlyPrefers) {
            return false;
        }
        found = w;
        return true;
    };

    for (int la = 0; la <= bounds.max_affix_len; ++la) {
        for (int lb = 0; lb <= bounds.max_affix_len; ++lb) {
            for (int lc = 0; lc <= bounds.max_affix_len; ++lc) {
                std::vector<Rational> a, b, c;
                bool done = scan_tuples(bounds.utility_grid, la, a, [&] {
                    return scan_tuples(bounds.utility_grid, lb, b, [&] {
                        return scan_tuples(bounds.utility_grid, lc, c, [&] {
                            for (bool shut : bounds.scan_shutdown_suffix
                                                 ? std::vector<bool>{false, true}
                                                 : std::vector<bool>{false}) {
                                for (const Rational& i : bounds.utility_grid) {
                                    for (const Rational& j : bounds.utility_grid) {
                                        for (const Rational& e : bounds.e_grid) {
                                            if (e <= Rational(0)) continue;
                                            for (const Rational& k : bounds.k_grid) {
                                                for (const Rational& l : bounds.l_grid) {
                                                    PatienceWitness w{
                                                        a, b, UtilityVector{c, shut},
                                                        i, j, e, k, l};
                                                    if (try_witness(w)) return true;
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                            return false;
                        });
                    });
                });
                if (done) return found;
            }
        }
    }
    return std::nullopt;
}

}  // namespace offswitch
