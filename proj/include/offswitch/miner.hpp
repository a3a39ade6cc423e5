#ifndef OFFSWITCH_MINER_HPP
#define OFFSWITCH_MINER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "offswitch/axioms.hpp"
#include "offswitch/environment.hpp"
#include "offswitch/preference.hpp"
#include "offswitch/theorems.hpp"

namespace offswitch {

enum class RelationSpace { All, TransitiveOnly };
enum class TheoremTarget { T1, T2, T3 };

std::string to_string(RelationSpace s);
std::string to_string(TheoremTarget t);
std::optional<TheoremTarget> target_from_string(const std::string& name);

/// The enumeration box. Structures are enumerated at the granularity the
/// antecedents force anyway: trajectories within a twin family and mixtures
/// with the same pressed chance must be indifferent in any structure satisfying
/// the shift/manipulation conditions, so relations range over those forced
/// classes. Scenarios come from the probability grid (all f < g < h triples);
/// the number of continuation suffixes s is admitted while 3*(1+s) stays within
/// max_trajectories. Two-suffix scenarios are enumerated at trajectory-class
/// level and completed by the closure engine (their mixture layer is fully
/// derived); one-suffix scenarios enumerate the mixture classes too, which is
/// where Better Chances violations live.
struct EnumerationBounds {
    int max_trajectories = 6;
    std::vector<Rational> probability_grid;
    RelationSpace relation_space = RelationSpace::TransitiveOnly;
    std::set<AxiomId> require;   // every listed axiom must hold
    std::set<AxiomId> violate;   // every listed axiom must fail
    long long cap = 10'000'000;  // fail loudly past this many relation candidates
    int workers = 1;
    std::optional<std::uint64_t> seed;  // enables non-exhaustive sampling past the cap
    long long sample_size = 100'000;
};

struct Finding {
    enum class Kind { Confirmation, NecessityCounterexample, NeutralExample };
    Kind kind = Kind::Confirmation;
    std::optional<AxiomId> axiom;  // the violated axiom for necessity findings
    TheoremTarget target = TheoremTarget::T1;
    nlohmann::json fixture;
    nlohmann::json evidence;
    long long count = 1;
};

std::string to_string(Finding::Kind k);

nlohmann::json to_json(const Finding& f);
nlohmann::json to_json(const EnumerationBounds& b);
EnumerationBounds bounds_from_json(const nlohmann::json& j, const std::string& where);

/// Deterministic, duplicate-free stream of fixtures over the bounds: calls fn
/// with each realized (scenario, structure, context) triple, in scenario-major
/// then relation-index order. Returns the number of fixtures emitted. Throws
/// CapExceeded when the candidate space is larger than the cap (unless a seed
/// enables sampling) and InvalidBounds on an empty probability grid.
long long enumerate_structures(
    const EnumerationBounds& bounds,
    const std::function<void(const ShutdownScenario&, const PreferenceStructure&,
                             const CheckContext&)>& fn);

struct Theorem1SweepStats {
    long long scenarios = 0;
    long long candidates = 0;
    long long antecedents_hold = 0;
    long long strict_cases = 0;
    long long conclusion_failures = 0;
    long long averse = 0;
    long long seeking = 0;
    long long neutral_gaps = 0;
    bool exhaustive = true;

    bool operator==(const Theorem1SweepStats&) const = default;
};

/// Exhaustive scan of the theorem-1 space; also verifies the two supporting
/// lemmas on every structure satisfying the antecedents (lemma_failures counts
/// misses, expected 0).
struct Theorem1SweepResult {
    Theorem1SweepStats stats;
    long long lemma_failures = 0;
};

Theorem1SweepResult sweep_theorem1(const EnumerationBounds& bounds);

struct Theorem2SweepStats {
    long long structures = 0;          // complete transitive structures scanned
    long long with_indifferent_pair = 0;
    long long pairs_checked = 0;
    long long clause_failures = 0;     // expected 0
};

/// All weak orders over `lotteries` abstract lotteries (complete + transitive
/// by construction), every indifferent pair run through the four clauses.
Theorem2SweepStats sweep_theorem2(int lotteries);

struct Theorem3SweepStats {
    long long orders = 0;             // delta grid points
    long long witnesses = 0;          // Patience witnesses inside the box
    long long disjunction_failures = 0;  // expected 0
};

/// For each discount in the grid: the complete order over every utility vector
/// of length <= max_len with entries from utility_values (shutdown-terminated
/// variants included), then every Patience witness whose four vectors stay in
/// that universe is checked for the theorem's disjunction.
Theorem3SweepStats sweep_theorem3(const std::vector<Rational>& delta_grid, int max_len,
                                  const std::vector<Rational>& utility_values,
                                  const std::vector<Rational>& e_grid,
                                  const std::vector<Rational>& k_grid,
                                  const std::vector<Rational>& l_grid);

/// Runs the target's verifier over the bounded space: an aggregated
/// Confirmation finding, one NecessityCounterexample per antecedent for which a
/// single-violation conclusion failure exists within bounds, and NeutralExample
/// findings for gap-driven Neutral dispositions. Deterministic for any worker
/// count.
std::vector<Finding> mine(const EnumerationBounds& bounds, TheoremTarget target);

struct ReplayResult {
    long long findings = 0;
    long long mismatches = 0;
    std::vector<std::string> notes;
};

/// Re-verifies findings (one JSON object per line) and reports mismatches.
ReplayResult replay(const std::vector<nlohmann::json>& findings);

}  // namespace offswitch

#endif
