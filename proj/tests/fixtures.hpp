#ifndef OFFSWITCH_TESTS_FIXTURES_HPP
#define OFFSWITCH_TESTS_FIXTURES_HPP

#include <random>
#include <string>
#include <vector>

#include "offswitch/environment.hpp"
#include "offswitch/preference.hpp"
#include "offswitch/theorems.hpp"

namespace offswitch::testing {

inline Trajectory atom(const std::string& tag) {
    return Trajectory({Step{"s", tag}});
}

inline Lottery atom_lottery(const std::string& tag) {
    return Lottery::degenerate(atom(tag));
}

inline ShutdownScenario basic_scenario(int suffixes = 1) {
    std::vector<TrajectorySuffix> continuations;
    for (int s = 0; s < suffixes; ++s) {
        continuations.push_back(
            TrajectorySuffix{{Step{kUnpressedState, "a" + std::to_string(s + 1)}}, std::nullopt});
    }
    return ShutdownScenario::make(Rational(1, 4), Rational(1, 2), Rational(3, 4),
                                  std::move(continuations));
}

enum class CanonicalKind { UOverP, POverU, AllIndifferent, UPGap };

/// Total mass a lottery puts on button-pressed trajectories; atoms score 0 or
/// 1, the chance-grid mixtures score their pressed chance.
inline Rational pressed_mass(const Lottery& l) {
    Rational mass(0);
    for (const auto& [t, p] : l.support()) {
        if (t.shutdown_at()) mass += p;
    }
    return mass;
}

/// The canonical structures of the first theorem's antecedent space: lotteries
/// ordered by pressed mass (unpressed-preferred), the reverse, everything
/// indifferent, or per-chance indifference classes with gaps across.
inline PreferenceStructure figure1_canonical(const ShutdownScenario& scenario,
                                             CanonicalKind kind) {
    PreferenceStructure s;
    register_figure1_lotteries(scenario, s);
    for (int a = 0; a < s.size(); ++a) {
        for (int b = 0; b < s.size(); ++b) {
            if (a == b) continue;
            Rational ma = pressed_mass(s.lottery(a));
            Rational mb = pressed_mass(s.lottery(b));
            bool relate = false;
            switch (kind) {
                case CanonicalKind::UOverP: relate = ma <= mb; break;
                case CanonicalKind::POverU: relate = ma >= mb; break;
                case CanonicalKind::AllIndifferent: relate = true; break;
                case CanonicalKind::UPGap: relate = ma == mb; break;
            }
            if (relate) s.add_weak_by_id(a, b);
        }
    }
    return s;
}

/// Deterministic transitive reflexive relation over n fresh atoms: the closure
/// of a random edge set.
inline PreferenceStructure random_transitive_structure(int n, std::mt19937& rng,
                                                       double edge_chance = 0.4) {
    PreferenceStructure s;
    for (int i = 0; i < n; ++i) {
        s.register_lottery(atom_lottery("t" + std::to_string(i + 1)),
                           "L" + std::to_string(i + 1));
    }
    std::bernoulli_distribution flip(edge_chance);
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        edge[i][i] = true;
        for (int j = 0; j < n; ++j) {
            if (i != j && flip(rng)) edge[i][j] = true;
        }
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (edge[i][k] && edge[k][j]) edge[i][j] = true;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && edge[i][j]) s.add_weak_by_id(i, j);
        }
    }
    return s;
}

}  // namespace offswitch::testing

#endif
