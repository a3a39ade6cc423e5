#include <doctest.h>

#include "fixtures.hpp"
#include "offswitch/errors.hpp"
#include "offswitch/json_io.hpp"
#include "offswitch/miner.hpp"

using namespace offswitch;
using namespace offswitch::testing;

namespace {

EnumerationBounds small_bounds() {
    EnumerationBounds bounds;
    bounds.max_trajectories = 6;
    bounds.probability_grid = {Rational(0), Rational(1, 2), Rational(1)};
    bounds.relation_space = RelationSpace::All;
    return bounds;
}

}  // namespace

TEST_CASE("enumeration is deterministic, duplicate-free, and capped") {
    EnumerationBounds bounds = small_bounds();
    bounds.relation_space = RelationSpace::TransitiveOnly;

    std::vector<std::string> first_run;
    enumerate_structures(bounds, [&](const ShutdownScenario&, const PreferenceStructure& s,
                                     const CheckContext&) {
        first_run.push_back(to_json(s).dump());
    });
    std::vector<std::string> second_run;
    enumerate_structures(bounds, [&](const ShutdownScenario&, const PreferenceStructure& s,
                                     const CheckContext&) {
        second_run.push_back(to_json(s).dump());
    });
    CHECK(first_run == second_run);
    CHECK(std::set<std::string>(first_run.begin(), first_run.end()).size() == first_run.size());
    CHECK_FALSE(first_run.empty());

    EnumerationBounds tiny_cap = bounds;
    tiny_cap.cap = 3;
    CHECK_THROWS_AS(enumerate_structures(tiny_cap, [](const ShutdownScenario&,
                                                      const PreferenceStructure&,
                                                      const CheckContext&) {}),
                    CapExceeded);

    EnumerationBounds empty_grid = bounds;
    empty_grid.probability_grid.clear();
    CHECK_THROWS_AS(enumerate_structures(empty_grid, [](const ShutdownScenario&,
                                                        const PreferenceStructure&,
                                                        const CheckContext&) {}),
                    InvalidBounds);
}

TEST_CASE("axiom filters shape the stream") {
    EnumerationBounds bounds = small_bounds();
    bounds.violate = {AxiomId::Completeness};
    long long emitted = enumerate_structures(
        bounds, [&](const ShutdownScenario&, const PreferenceStructure& s, const CheckContext&) {
            CHECK_FALSE(check_axiom(s, AxiomId::Completeness).holds);
        });
    CHECK(emitted > 0);
}

TEST_CASE("theorem 1 sweep confirms the theorem with zero failures") {
    EnumerationBounds bounds = small_bounds();
    Theorem1SweepResult result = sweep_theorem1(bounds);
    CHECK(result.stats.scenarios == 1);
    CHECK(result.stats.antecedents_hold > 0);
    CHECK(result.stats.strict_cases > 0);
    CHECK(result.stats.conclusion_failures == 0);
    CHECK(result.stats.averse > 0);
    CHECK(result.stats.seeking > 0);
    CHECK(result.lemma_failures == 0);
    CHECK(result.stats.exhaustive);
}

TEST_CASE("sweep confirmation count matches a standalone re-verification") {
    // Cross-check: run the verifier on every enumerated all-antecedents fixture
    // and compare counts with the sweep.
    EnumerationBounds bounds = small_bounds();
    bounds.require = {AxiomId::Transitivity, AxiomId::IndiffShifted, AxiomId::BetterChances};
    long long holding = 0;
    long long failures = 0;
    enumerate_structures(bounds, [&](const ShutdownScenario& scenario,
                                     const PreferenceStructure& s, const CheckContext&) {
        ++holding;
        TheoremReport report = verify_theorem1(scenario, s);
        if (!report.all_antecedents_hold() || !report.conclusion_checked) ++failures;
    });
    Theorem1SweepResult swept = sweep_theorem1(bounds);
    CHECK(holding == swept.stats.antecedents_hold);
    CHECK(failures == 0);
}

TEST_CASE("mining theorem 1 yields confirmations, necessity probes, and neutral examples") {
    // The shift probe needs a scenario with an interior Prevent chance, so this
    // grid includes one.
    EnumerationBounds bounds = small_bounds();
    bounds.probability_grid = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)};
    std::vector<Finding> findings = mine(bounds, TheoremTarget::T1);
    REQUIRE_FALSE(findings.empty());
    CHECK(findings.front().kind == Finding::Kind::Confirmation);
    CHECK(findings.front().evidence.at("conclusion_failures").get<long long>() == 0);

    bool chances = false, shifted = false, neutral = false;
    for (const Finding& f : findings) {
        if (f.kind == Finding::Kind::NecessityCounterexample) {
            if (f.axiom == AxiomId::BetterChances) {
                chances = true;
                const json& report = f.evidence.at("report");
                CHECK_FALSE(report.at("conclusion_checked").get<bool>());
            }
            if (f.axiom == AxiomId::IndiffShifted) {
                shifted = true;
                // Exactly the named axiom fails among the antecedents.
                for (const json& antecedent : f.evidence.at("report").at("antecedents")) {
                    bool holds = antecedent.at("holds").get<bool>();
                    std::string name = antecedent.at("condition").get<std::string>();
                    CHECK(holds == (name != "IndiffShifted"));
                }
                CHECK_FALSE(f.evidence.at("report").at("conclusion_checked").get<bool>());
            }
        }
        if (f.kind == Finding::Kind::NeutralExample) {
            neutral = true;
            CHECK(f.evidence.at("report").at("facts").at("disposition") == "Neutral");
        }
    }
    CHECK(chances);
    CHECK(shifted);
    CHECK(neutral);
}

TEST_CASE("mining is deterministic across worker counts") {
    EnumerationBounds bounds = small_bounds();
    bounds.workers = 1;
    std::vector<Finding> one = mine(bounds, TheoremTarget::T1);
    bounds.workers = 4;
    std::vector<Finding> four = mine(bounds, TheoremTarget::T1);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(to_json(one[i]).dump() == to_json(four[i]).dump());
    }
}

TEST_CASE("mining theorem 2 finds the transitivity counterexample") {
    EnumerationBounds bounds;
    bounds.max_trajectories = 4;
    bounds.probability_grid = {Rational(0), Rational(1, 2), Rational(1)};
    std::vector<Finding> findings = mine(bounds, TheoremTarget::T2);
    REQUIRE_FALSE(findings.empty());
    CHECK(findings.front().kind == Finding::Kind::Confirmation);
    CHECK(findings.front().evidence.at("clause_failures").get<long long>() == 0);

    bool transitivity = false, gap_demo = false;
    for (const Finding& f : findings) {
        if (f.kind == Finding::Kind::NecessityCounterexample &&
            f.axiom == AxiomId::Transitivity) {
            transitivity = true;
            CHECK(f.evidence.at("axioms").at("Completeness").get<bool>());
            CHECK_FALSE(f.evidence.at("axioms").at("Transitivity").get<bool>());
            CHECK_FALSE(f.evidence.at("report").at("conclusion_checked").get<bool>());
        }
        if (f.kind == Finding::Kind::NeutralExample) {
            gap_demo = true;
            CHECK(f.evidence.at("gap_pair") == "PreferentialGap");
            CHECK(f.evidence.at("sweetening") == "StrictlyPrefers");
            CHECK(f.evidence.at("sweetened_vs_other") == "PreferentialGap");
        }
    }
    CHECK(transitivity);
    CHECK(gap_demo);
}

TEST_CASE("mining theorem 3 confirms the sweep and the completeness probe") {
    EnumerationBounds bounds;
    bounds.max_trajectories = 3;  // vectors up to length 3 keep this test quick
    bounds.probability_grid = {Rational(2, 5), Rational(4, 5)};
    std::vector<Finding> findings = mine(bounds, TheoremTarget::T3);
    REQUIRE(findings.size() >= 2);
    CHECK(findings.front().kind == Finding::Kind::Confirmation);
    CHECK(findings.front().evidence.at("disjunction_failures").get<long long>() == 0);
    CHECK(findings.front().evidence.at("witnesses").get<long long>() > 0);

    const Finding& probe = findings.back();
    CHECK(probe.kind == Finding::Kind::NecessityCounterexample);
    CHECK(probe.axiom == AxiomId::Completeness);
    CHECK_FALSE(probe.evidence.at("axioms").at("Completeness").get<bool>());
    CHECK(probe.evidence.at("axioms").at("Transitivity").get<bool>());
    CHECK_FALSE(probe.evidence.at("report").at("conclusion_checked").get<bool>());
}

TEST_CASE("findings replay to identical verdicts") {
    EnumerationBounds bounds = small_bounds();
    for (TheoremTarget target : {TheoremTarget::T1, TheoremTarget::T2, TheoremTarget::T3}) {
        EnumerationBounds b = bounds;
        if (target == TheoremTarget::T3) {
            b.max_trajectories = 3;
            b.probability_grid = {Rational(2, 5)};
        }
        std::vector<json> lines;
        for (const Finding& f : mine(b, target)) lines.push_back(to_json(f));
        ReplayResult result = replay(lines);
        CHECK(result.findings == static_cast<long long>(lines.size()));
        CHECK(result.mismatches == 0);

        // Tampered evidence must be caught.
        if (!lines.empty()) {
            lines.front()["evidence"]["forged"] = true;
            ReplayResult tampered = replay(lines);
            CHECK(tampered.mismatches == 1);
        }
    }
}

TEST_CASE("sampling mode requires a seed and reports itself as non-exhaustive") {
    EnumerationBounds bounds;
    bounds.probability_grid = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4),
                               Rational(1)};
    bounds.cap = 1000;  // far below the full space
    CHECK_THROWS_AS(sweep_theorem1(bounds), CapExceeded);
    bounds.seed = 7;
    bounds.sample_size = 2000;
    Theorem1SweepResult sampled = sweep_theorem1(bounds);
    CHECK_FALSE(sampled.stats.exhaustive);
    CHECK(sampled.stats.conclusion_failures == 0);
    Theorem1SweepResult again = sweep_theorem1(bounds);
    CHECK(sampled.stats == again.stats);
}
