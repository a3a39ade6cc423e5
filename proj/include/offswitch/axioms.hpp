#ifndef OFFSWITCH_AXIOMS_HPP
#define OFFSWITCH_AXIOMS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "offswitch/lottery.hpp"
#include "offswitch/preference.hpp"
#include "offswitch/utility_vector.hpp"

namespace offswitch {

/// The named conditions checkable against a bare preference structure. The
/// backward-induction condition constrains agent behaviour and the patience
/// conditions constrain utility-vector orders, so they live with the agent and
/// theorem machinery instead.
enum class AxiomId {
    OptionSetIndependence,
    Transitivity,
    Completeness,
    BetterChances,
    IndiffShifted,
    IndiffAttemptedManipulation,
    ParetoIndifference,
};

std::string to_string(AxiomId a);
std::optional<AxiomId> axiom_from_string(const std::string& name);

/// One p/q mixture comparison for the Better Chances check: the lotteries
/// p*x + (1-p)*y and q*x + (1-q)*y must both be registered.
struct MixtureQuad {
    Lottery x;
    Lottery y;
    Rational p;
    Rational q;
};

/// Per-axiom inputs that a bare relation cannot supply on its own.
struct CheckContext {
    /// Registered mixture quadruples (Better Chances quantifies over these).
    std::vector<MixtureQuad> mixtures;
    /// Families of trajectories identical except for the action taken at
    /// shutdown-influencing timesteps.
    std::vector<std::vector<Trajectory>> twins;
    /// Utility-vector reading of trajectories (Pareto Indifference quantifies
    /// over these).
    std::map<Trajectory, UtilityVector> utilities;
};

/// Counterexample payload: enough to re-run the failed predicate on just the
/// witness. Which fields are filled depends on the axiom.
struct AxiomWitness {
    std::string description;
    std::vector<Lottery> lotteries;
    std::vector<Trajectory> trajectories;
    std::vector<Rational> numbers;
};

struct Verdict {
    bool holds = true;
    std::optional<AxiomWitness> witness;

    static Verdict pass() { return Verdict{}; }
    static Verdict fail(AxiomWitness w) { return Verdict{false, std::move(w)}; }
};

/// Finite-model check of one axiom over the registered universe. Quantifiers
/// range over registered lotteries (and the context's mixtures/twins/utilities)
/// only. Throws MissingContext when the axiom needs context that is absent.
Verdict check_axiom(const PreferenceStructure& structure, AxiomId axiom,
                    const CheckContext& context = {});

/// PP-, II-, PI-, IP-transitivity over all registered triples. These four are
/// entailed by Transitivity, so the precondition is that Transitivity holds; a
/// failure here means the implementation is broken, not the structure.
Verdict check_derived_transitivity_lemmas(const PreferenceStructure& structure);

struct InconsistencyReport {
    Lottery a;
    Lottery b;
    std::vector<std::string> derivation;
};

struct ClosureOutcome {
    PreferenceStructure structure;
    std::vector<std::string> trace;
    std::optional<InconsistencyReport> inconsistency;

    bool consistent() const { return !inconsistency.has_value(); }
};

/// Least fixpoint of the base relation under the selected inference rules,
/// restricted to the registered universe. Rules may be Transitivity,
/// IndiffShifted, and BetterChances. Strict preferences stated by the base
/// relation (and those forced by Better Chances) are tracked as claims; if
/// saturation derives both A > B and B > A the result carries an inconsistency
/// report with the derivation trace instead of silently collapsing them.
///
/// Better Chances is applied over mixture families discovered structurally:
/// for registered M, X, Y with M = p*X + (1-p)*Y the weight p is unique and
/// recoverable, so families need no side channel.
ClosureOutcome close_structure(const PreferenceStructure& structure,
                               const std::set<AxiomId>& rules);

}  // namespace offswitch

#endif
