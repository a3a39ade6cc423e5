#ifndef OFFSWITCH_THEOREMS_HPP
#define OFFSWITCH_THEOREMS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "offswitch/agent.hpp"
#include "offswitch/axioms.hpp"
#include "offswitch/environment.hpp"
#include "offswitch/preference.hpp"
#include "offswitch/utility_vector.hpp"

namespace offswitch {

struct TheoremReport {
    std::string theorem;
    std::vector<std::pair<std::string, Verdict>> antecedents;
    bool conclusion_checked = false;
    std::vector<std::string> details;              // "step: premise, rule, conclusion" lines
    std::map<std::string, std::string> facts;      // structured extras for reports/tests

    bool all_antecedents_hold() const;
    bool passed() const { return all_antecedents_hold() && conclusion_checked; }
};

/// Everything the first theorem's statement touches, derived from a scenario
/// and looked up in a structure: twin families, pressed lotteries P, predicted
/// unpressed lotteries U (the structure's undominated pick among the stamped
/// continuations, lowest timestep-2 action on ties, mirroring the agent), the
/// per-action composites, and the mixtures of each U/P pair over the chance
/// grid {0, f, g, h, 1}. Construction throws AntecedentUnverifiable if any of
/// these lotteries is missing from the structure.
struct Figure1Universe {
    ShutdownScenario scenario;
    std::vector<std::vector<Trajectory>> twins;
    std::map<std::string, Lottery> pressed;
    std::map<std::string, std::vector<Lottery>> unpressed_options;
    std::map<std::string, Lottery> predicted_unpressed;
    std::map<std::string, Lottery> composite;
    CheckContext context;

    static Figure1Universe build(const ShutdownScenario& scenario,
                                 const PreferenceStructure& structure);
};

/// Registers the atoms, composites and chance-grid mixtures of a scenario into
/// the structure (names included) without ranking anything. Fixture builders
/// call this before adding preference pairs.
void register_figure1_lotteries(const ShutdownScenario& scenario,
                                PreferenceStructure& structure);

/// Checks the six antecedent conditions, determines the uniform U-vs-P verdict,
/// and asserts the classification the theorem demands: Averse when U > P,
/// Seeking when P > U. With a failed antecedent the report still records what
/// the classification did, which is how counterexamples are evidenced.
TheoremReport verify_theorem1(const ShutdownScenario& scenario,
                              const PreferenceStructure& structure);

/// Lemma 1: all pressed lotteries indifferent, all predicted unpressed
/// lotteries indifferent, plus the stored mixture indifference
/// f*P_Leave + (1-f)*U_Leave ~ f*P_Prevent + (1-f)*U_Prevent.
/// Lemma 2: the U-vs-P verdict is identical across the three twin pairs.
TheoremReport verify_lemmas(const ShutdownScenario& scenario,
                            const PreferenceStructure& structure);

/// The four clauses of the second theorem for a specific no-preference pair,
/// without precondition checks (used directly by the miner on violating
/// structures).
TheoremReport theorem2_clauses(const PreferenceStructure& structure, const Lottery& x,
                               const Lottery& y);

/// Precondition-checked form: Option Set Independence, Transitivity and
/// Completeness must hold and (x, y) must lack a strict preference, else
/// PreconditionFailed names the failing condition.
TheoremReport verify_theorem2(const PreferenceStructure& structure, const Lottery& x,
                              const Lottery& y);

struct PairCount {
    long long max_gapfree_indifferent_pairs = 0;
    long long min_strict_pairs = 0;
    long long merge_count = 0;  // number of weak-order merges of the two chains
};

/// Exact enumeration (dynamic program) over all weak-order merges of two strict
/// chains: the maximum number of cross-chain indifferent pairs any complete
/// transitive extension allows, and the corresponding minimum number of strict
/// cross-chain pairs.
PairCount count_no_preference_pairs(int short_chain_length, int long_chain_length);

/// The patience schema instance: sequences a, b, a suffix c (which may end with
/// the shutdown marker), pivots i and j, deficit e > 0 and surplus factors k, l.
struct PatienceWitness {
    std::vector<Rational> a;
    std::vector<Rational> b;
    UtilityVector c;
    Rational i;
    Rational j;
    Rational e;
    Rational k;
    Rational l;

    UtilityVector continue_improved() const;   // <a, i-e, b, j+ke, c>
    UtilityVector baseline() const;            // <a, i,   b, j,    c>
    UtilityVector continue_worsened() const;   // <a, i+e, b, j-le, c>
    UtilityVector shutdown_cut() const;        // <a, i,   b, shutdown>
};

struct Theorem3Options {
    /// Sweeps check the axioms once per universe and then skip them per call.
    bool check_axioms = true;
};

/// Asserts the disjunction: <a,i-e,b,j+ke,c> > <a,i,b,shutdown> or
/// <a,i,b,shutdown> > <a,i+e,b,j-le,c>, tracing the three-case derivation
/// (continue-preferred, shutdown-preferred, indifferent; the indifferent case
/// yields both disjuncts). Preconditions: Option Set Independence, Pareto
/// Indifference, Completeness, Transitivity, and both Patience clauses.
TheoremReport verify_theorem3(const VectorUniverse& universe,
                              const PreferenceStructure& structure,
                              const PatienceWitness& witness, const Theorem3Options& options = {});

/// Supremum deficit e* such that the discounted-sum agent prefers taking the
/// deficit now and the gain next step over shutting down now: e* = delta*gain
/// exactly, cross-checked by probing preferences at e* +/- grid_step.
Rational max_sacrifice(const Rational& delta, const Rational& gain, const Rational& grid_step);

struct PatienceSearchBounds {
    int max_affix_len = 1;                   // max length of each of a, b, c
    std::vector<Rational> utility_grid;      // values for affix entries and i, j
    std::vector<Rational> e_grid;
    std::vector<Rational> k_grid;
    std::vector<Rational> l_grid;
    bool scan_shutdown_suffix = false;       // also try c ending in the shutdown marker
};

/// First witness (in deterministic scan order: affix lengths, then grid order)
/// satisfying both Minimal Patience clauses under the order, or nothing if the
/// agent is not even minimally patient within the bounds.
std::optional<PatienceWitness> find_minimal_patience_witness(const UtilityOrder& order,
                                                             const PatienceSearchBounds& bounds);

}  // namespace offswitch

#endif
