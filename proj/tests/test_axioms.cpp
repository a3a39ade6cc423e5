#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "offswitch/axioms.hpp"
#include "offswitch/errors.hpp"
#include "offswitch/lottery_algebra.hpp"

using namespace offswitch;
using namespace offswitch::testing;

namespace {

PreferenceStructure chain_xyz() {
    PreferenceStructure s;
    s.register_lottery(atom_lottery("x"), "X");
    s.register_lottery(atom_lottery("y"), "Y");
    s.register_lottery(atom_lottery("z"), "Z");
    s.add_weak(atom_lottery("x"), atom_lottery("y"));
    s.add_weak(atom_lottery("y"), atom_lottery("z"));
    s.add_weak(atom_lottery("x"), atom_lottery("z"));
    return s;
}

}  // namespace

TEST_CASE("canonical chain passes transitivity, completeness, option-set independence") {
    PreferenceStructure s = chain_xyz();
    CHECK(check_axiom(s, AxiomId::Transitivity).holds);
    CHECK(check_axiom(s, AxiomId::Completeness).holds);
    CHECK(check_axiom(s, AxiomId::OptionSetIndependence).holds);
}

TEST_CASE("transitivity failure carries a re-checkable witness") {
    PreferenceStructure s;
    s.register_lottery(atom_lottery("x"), "X");
    s.register_lottery(atom_lottery("y"), "Y");
    s.register_lottery(atom_lottery("z"), "Z");
    s.add_weak(atom_lottery("x"), atom_lottery("y"));
    s.add_weak(atom_lottery("y"), atom_lottery("z"));
    Verdict v = check_axiom(s, AxiomId::Transitivity);
    REQUIRE_FALSE(v.holds);
    REQUIRE(v.witness.has_value());
    REQUIRE(v.witness->lotteries.size() == 3);
    // Re-run the predicate on just the witness triple.
    const auto& w = v.witness->lotteries;
    CHECK(s.weak_prefers(w[0], w[1]));
    CHECK(s.weak_prefers(w[1], w[2]));
    CHECK_FALSE(s.weak_prefers(w[0], w[2]));
}

TEST_CASE("indifference-shifted check follows the worked mixtures") {
    PreferenceStructure s;
    s.register_lottery(atom_lottery("x"), "X");
    s.register_lottery(atom_lottery("y"), "Y");
    s.register_lottery(atom_lottery("z"), "Z");
    s.add_weak(atom_lottery("x"), atom_lottery("y"));
    s.add_weak(atom_lottery("y"), atom_lottery("x"));

    Lottery a({{atom("x"), Rational(1, 10)}, {atom("y"), Rational(4, 10)},
               {atom("z"), Rational(5, 10)}});
    Lottery b({{atom("x"), Rational(3, 10)}, {atom("y"), Rational(2, 10)},
               {atom("z"), Rational(5, 10)}});
    s.register_lottery(a, "A");
    s.register_lottery(b, "B");

    // The two mixtures are shift-equivalent but not yet marked indifferent.
    Verdict before = check_axiom(s, AxiomId::IndiffShifted);
    REQUIRE_FALSE(before.holds);
    REQUIRE(before.witness.has_value());
    CHECK(before.witness->lotteries.size() == 2);

    s.add_weak(a, b);
    s.add_weak(b, a);
    CHECK(check_axiom(s, AxiomId::IndiffShifted).holds);
}

TEST_CASE("better chances over registered quadruples, with a brute-force oracle") {
    PreferenceStructure s;
    Lottery x = atom_lottery("x"), y = atom_lottery("y");
    s.register_lottery(x, "X");
    s.register_lottery(y, "Y");
    s.add_weak(x, y);

    std::vector<Rational> grid{Rational(0), Rational(1, 8), Rational(1, 4), Rational(1, 2),
                               Rational(1)};
    CheckContext ctx;
    for (const Rational& p : grid) s.register_lottery(mix(p, x, y));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (grid[i] > grid[j]) ctx.mixtures.push_back(MixtureQuad{x, y, grid[i], grid[j]});
        }
    }

    // Rank mixtures by their x-mass: the biconditional holds everywhere.
    for (const Rational& p : grid) {
        for (const Rational& q : grid) {
            if (p > q) s.add_weak(mix(p, x, y), mix(q, x, y));
        }
    }
    CHECK(check_axiom(s, AxiomId::BetterChances, ctx).holds);

    // Oracle: flip one mixture pair and scan all quadruples by brute force;
    // the checker must fail exactly when the scan finds a mismatch.
    PreferenceStructure broken = s;
    broken.add_weak(mix(Rational(1, 8), x, y), mix(Rational(1, 4), x, y));  // now indifferent
    bool oracle_ok = true;
    for (const MixtureQuad& quad : ctx.mixtures) {
        bool base = broken.relation(quad.x, quad.y) == RelationVerdict::StrictlyPrefers;
        bool mixed = broken.relation(mix(quad.p, quad.x, quad.y), mix(quad.q, quad.x, quad.y)) ==
                     RelationVerdict::StrictlyPrefers;
        if (base != mixed) oracle_ok = false;
    }
    Verdict verdict = check_axiom(broken, AxiomId::BetterChances, ctx);
    CHECK_FALSE(oracle_ok);
    CHECK(verdict.holds == oracle_ok);
    REQUIRE(verdict.witness.has_value());
    CHECK(verdict.witness->numbers.size() == 2);

    CHECK_THROWS_AS(check_axiom(s, AxiomId::BetterChances), MissingContext);
}

TEST_CASE("manipulation indifference and pareto indifference need context") {
    PreferenceStructure s;
    Trajectory t1({Step{"s_I", "Prevent"}, Step{"s_U", "a"}});
    Trajectory t2({Step{"s_I", "Leave"}, Step{"s_U", "a"}});
    s.register_lottery(Lottery::degenerate(t1), "T1");
    s.register_lottery(Lottery::degenerate(t2), "T2");

    CheckContext ctx;
    ctx.twins = {{t1, t2}};
    CHECK_FALSE(check_axiom(s, AxiomId::IndiffAttemptedManipulation, ctx).holds);
    s.add_weak(Lottery::degenerate(t1), Lottery::degenerate(t2));
    s.add_weak(Lottery::degenerate(t2), Lottery::degenerate(t1));
    CHECK(check_axiom(s, AxiomId::IndiffAttemptedManipulation, ctx).holds);
    CHECK_THROWS_AS(check_axiom(s, AxiomId::IndiffAttemptedManipulation), MissingContext);

    CheckContext pareto;
    pareto.utilities.emplace(t1, UtilityVector{{Rational(1), Rational(2)}, false});
    pareto.utilities.emplace(t2, UtilityVector{{Rational(1), Rational(2)}, false});
    CHECK(check_axiom(s, AxiomId::ParetoIndifference, pareto).holds);
    pareto.utilities[t2].utilities[1] = Rational(3);
    CHECK(check_axiom(s, AxiomId::ParetoIndifference, pareto).holds);  // vectors now differ
    CHECK_THROWS_AS(check_axiom(s, AxiomId::ParetoIndifference), MissingContext);

    PreferenceStructure gap;
    gap.register_lottery(Lottery::degenerate(t1), "T1");
    gap.register_lottery(Lottery::degenerate(t2), "T2");
    CheckContext same;
    same.utilities.emplace(t1, UtilityVector{{Rational(1)}, true});
    same.utilities.emplace(t2, UtilityVector{{Rational(1)}, true});
    CHECK_FALSE(check_axiom(gap, AxiomId::ParetoIndifference, same).holds);
}

TEST_CASE("derived transitivity lemmas, exhaustively cross-checked") {
    std::mt19937 rng(123);
    int checked = 0;
    for (int round = 0; round < 400 && checked < 200; ++round) {
        PreferenceStructure s = random_transitive_structure(5, rng, 0.35);
        if (!check_axiom(s, AxiomId::Transitivity).holds) continue;
        ++checked;
        Verdict lemmas = check_derived_transitivity_lemmas(s);
        // Oracle: direct triple scan of all four analogues.
        bool oracle = true;
        int n = s.size();
        auto strict = [&](int a, int b) {
            return s.relation_by_id(a, b) == RelationVerdict::StrictlyPrefers;
        };
        auto indiff = [&](int a, int b) {
            return s.relation_by_id(a, b) == RelationVerdict::Indifferent;
        };
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                for (int c = 0; c < n; ++c) {
                    if (strict(a, b) && strict(b, c) && !strict(a, c)) oracle = false;
                    if (indiff(a, b) && indiff(b, c) && !indiff(a, c)) oracle = false;
                    if (strict(a, b) && indiff(b, c) && !strict(a, c)) oracle = false;
                    if (indiff(a, b) && strict(b, c) && !strict(a, c)) oracle = false;
                }
            }
        }
        CHECK(oracle);
        CHECK(lemmas.holds == oracle);
    }
    CHECK(checked == 200);

    PreferenceStructure intransitive;
    intransitive.register_lottery(atom_lottery("x"), "X");
    intransitive.register_lottery(atom_lottery("y"), "Y");
    intransitive.register_lottery(atom_lottery("z"), "Z");
    intransitive.add_weak(atom_lottery("x"), atom_lottery("y"));
    intransitive.add_weak(atom_lottery("y"), atom_lottery("z"));
    CHECK_THROWS_AS(check_derived_transitivity_lemmas(intransitive), PreconditionFailed);
}

TEST_CASE("PI and IP chains are forced") {
    PreferenceStructure s = chain_xyz();
    // X > Y ~ Z: PI forces X > Z.
    PreferenceStructure pi;
    pi.register_lottery(atom_lottery("x"), "X");
    pi.register_lottery(atom_lottery("y"), "Y");
    pi.register_lottery(atom_lottery("z"), "Z");
    pi.add_weak(atom_lottery("x"), atom_lottery("y"));
    pi.add_weak(atom_lottery("y"), atom_lottery("z"));
    pi.add_weak(atom_lottery("z"), atom_lottery("y"));
    pi.add_weak(atom_lottery("x"), atom_lottery("z"));
    REQUIRE(check_axiom(pi, AxiomId::Transitivity).holds);
    CHECK(pi.relation(atom_lottery("x"), atom_lottery("z")) == RelationVerdict::StrictlyPrefers);

    // X ~ Y > Z: IP forces X > Z.
    PreferenceStructure ip;
    ip.register_lottery(atom_lottery("x"), "X");
    ip.register_lottery(atom_lottery("y"), "Y");
    ip.register_lottery(atom_lottery("z"), "Z");
    ip.add_weak(atom_lottery("x"), atom_lottery("y"));
    ip.add_weak(atom_lottery("y"), atom_lottery("x"));
    ip.add_weak(atom_lottery("y"), atom_lottery("z"));
    ip.add_weak(atom_lottery("x"), atom_lottery("z"));
    REQUIRE(check_axiom(ip, AxiomId::Transitivity).holds);
    CHECK(ip.relation(atom_lottery("x"), atom_lottery("z")) == RelationVerdict::StrictlyPrefers);
}

TEST_CASE("closure: transitivity adds the missing pair") {
    PreferenceStructure s;
    s.register_lottery(atom_lottery("x"), "X");
    s.register_lottery(atom_lottery("y"), "Y");
    s.register_lottery(atom_lottery("z"), "Z");
    s.add_weak(atom_lottery("x"), atom_lottery("y"));
    s.add_weak(atom_lottery("y"), atom_lottery("z"));
    ClosureOutcome out = close_structure(s, {AxiomId::Transitivity});
    REQUIRE(out.consistent());
    CHECK(out.structure.weak_prefers(atom_lottery("x"), atom_lottery("z")));
    CHECK(out.trace.size() == 1);
}

TEST_CASE("closure: indifference shifts derive the worked example") {
    PreferenceStructure s;
    s.register_lottery(atom_lottery("x"), "X");
    s.register_lottery(atom_lottery("y"), "Y");
    s.register_lottery(atom_lottery("z"), "Z");
    s.add_weak(atom_lottery("x"), atom_lottery("y"));
    s.add_weak(atom_lottery("y"), atom_lottery("x"));
    Lottery a({{atom("x"), Rational(1, 10)}, {atom("y"), Rational(4, 10)},
               {atom("z"), Rational(5, 10)}});
    Lottery b({{atom("x"), Rational(3, 10)}, {atom("y"), Rational(2, 10)},
               {atom("z"), Rational(5, 10)}});
    s.register_lottery(a, "A");
    s.register_lottery(b, "B");
    ClosureOutcome out = close_structure(s, {AxiomId::IndiffShifted});
    REQUIRE(out.consistent());
    CHECK(out.structure.relation(a, b) == RelationVerdict::Indifferent);
    CHECK(check_axiom(out.structure, AxiomId::IndiffShifted).holds);
}

TEST_CASE("closure: better chances orders mixtures and reports contradictions") {
    auto build = [](bool contradict) {
        PreferenceStructure s;
        Lottery x = atom_lottery("x"), y = atom_lottery("y");
        s.register_lottery(x, "X");
        s.register_lottery(y, "Y");
        s.add_weak(x, y);  // X > Y
        Lottery hi = mix(Rational(1, 4), x, y);
        Lottery lo = mix(Rational(1, 8), x, y);
        s.register_lottery(hi, "HI");
        s.register_lottery(lo, "LO");
        if (contradict) s.add_weak(lo, hi);  // reverse strict claim
        return s;
    };

    ClosureOutcome ordered = close_structure(build(false), {AxiomId::BetterChances});
    REQUIRE(ordered.consistent());
    Lottery x = atom_lottery("x"), y = atom_lottery("y");
    CHECK(ordered.structure.relation(mix(Rational(1, 4), x, y), mix(Rational(1, 8), x, y)) ==
          RelationVerdict::StrictlyPrefers);

    ClosureOutcome clash = close_structure(build(true), {AxiomId::BetterChances});
    REQUIRE_FALSE(clash.consistent());
    CHECK(clash.inconsistency->derivation.size() == 2);
}

TEST_CASE("closure is monotone and idempotent") {
    std::mt19937 rng(555);
    std::set<AxiomId> rules{AxiomId::Transitivity, AxiomId::IndiffShifted};
    for (int round = 0; round < 20; ++round) {
        PreferenceStructure s = random_transitive_structure(4, rng, 0.3);
        ClosureOutcome once = close_structure(s, rules);
        REQUIRE(once.consistent());
        // Idempotent: closing again adds nothing.
        ClosureOutcome twice = close_structure(once.structure, rules);
        REQUIRE(twice.consistent());
        CHECK(twice.trace.empty());
        // Monotone: every original pair survives, and adding a base pair never
        // removes a derived one.
        for (int a = 0; a < s.size(); ++a) {
            for (int b = 0; b < s.size(); ++b) {
                if (s.weak_by_id(a, b)) CHECK(once.structure.weak_by_id(a, b));
            }
        }
        PreferenceStructure grown = s;
        bool added = false;
        for (int a = 0; a < grown.size() && !added; ++a) {
            for (int b = 0; b < grown.size() && !added; ++b) {
                if (a != b && !grown.weak_by_id(a, b)) {
                    grown.add_weak_by_id(a, b);
                    added = true;
                }
            }
        }
        if (!added) continue;
        ClosureOutcome bigger = close_structure(grown, rules);
        if (!bigger.consistent()) continue;
        for (int a = 0; a < s.size(); ++a) {
            for (int b = 0; b < s.size(); ++b) {
                if (once.structure.weak_by_id(a, b)) CHECK(bigger.structure.weak_by_id(a, b));
            }
        }
    }
}

TEST_CASE("closure rejects non-rule axioms") {
    PreferenceStructure s;
    s.register_lottery(atom_lottery("x"), "X");
    CHECK_THROWS_AS(close_structure(s, {AxiomId::Completeness}), std::invalid_argument);
}
