#include "offswitch/cli.hpp"

#include <fstream>
#include <sstream>

#include "offswitch/errors.hpp"
#include "offswitch/json_io.hpp"
#include "offswitch/lottery_algebra.hpp"
#include "offswitch/miner.hpp"
#include "offswitch/theorems.hpp"

namespace offswitch {

namespace {

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
    if (config.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) throw ParseError(config.out_path, 0, "-", "cannot open output file");
    file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string render_verdict_line(const std::string& condition, const Verdict& v) {
    std::string line = condition + ": " + (v.holds ? "holds" : "FAILS");
    if (v.witness) line += "  [" + v.witness->description + "]";
    return line + "\n";
}

std::string render_report_table(const TheoremReport& r) {
    std::ostringstream out;
    out << "theorem " << r.theorem << "\n";
    for (const auto& [condition, verdict] : r.antecedents) {
        out << "  " << render_verdict_line(condition, verdict);
    }
    for (const auto& [key, value] : r.facts) out << "  " << key << " = " << value << "\n";
    for (const std::string& line : r.details) out << "  " << line << "\n";
    out << "  conclusion: " << (r.conclusion_checked ? "verified" : "NOT VERIFIED") << "\n";
    return out.str();
}

std::string render_classification_table(const ClassificationReport& r) {
    std::ostringstream out;
    out << "disposition: " << to_string(r.disposition.kind) << "\n";
    out << "survivors:";
    for (const std::string& a : r.disposition.survivors) out << " " << a;
    out << "\n";
    out << "reason: " << r.disposition.reason << "\n";
    for (const auto& [action, lottery] : r.root_lotteries) {
        out << "lottery(" << action << ") = " << lottery.str() << "\n";
    }
    return out.str();
}

struct LoadedPrefs {
    PreferenceStructure structure;
    CheckContext context;
};

LoadedPrefs load_prefs(const std::string& path) {
    json doc = load_json_file(path);
    LoadedPrefs loaded;
    loaded.structure = structure_from_json(doc, path);
    if (doc.contains("context")) {
        loaded.context = context_from_json(doc["context"], loaded.structure, path);
    }
    return loaded;
}

int run_check_axioms(const RunConfig& config, std::ostream& out) {
    LoadedPrefs prefs = load_prefs(config.prefs_path);
    json axioms = json::array();
    bool any_failed = false;
    auto record = [&](AxiomId axiom, const Verdict& v, const std::string& note = "") {
        json entry = to_json(v);
        entry["condition"] = to_string(axiom);
        if (!note.empty()) entry["note"] = note;
        axioms.push_back(std::move(entry));
        if (!v.holds) any_failed = true;
    };
    for (AxiomId axiom : {AxiomId::OptionSetIndependence, AxiomId::Transitivity,
                          AxiomId::Completeness}) {
        record(axiom, check_axiom(prefs.structure, axiom));
    }
    bool degenerates_complete = true;
    for (const Lottery& l : prefs.structure.universe()) {
        for (const auto& [t, p] : l.support()) {
            if (!prefs.structure.id_of(Lottery::degenerate(t))) degenerates_complete = false;
        }
    }
    if (degenerates_complete) {
        record(AxiomId::IndiffShifted, check_axiom(prefs.structure, AxiomId::IndiffShifted));
    }
    if (!prefs.context.mixtures.empty()) {
        record(AxiomId::BetterChances,
               check_axiom(prefs.structure, AxiomId::BetterChances, prefs.context));
    }
    if (!prefs.context.twins.empty()) {
        record(AxiomId::IndiffAttemptedManipulation,
               check_axiom(prefs.structure, AxiomId::IndiffAttemptedManipulation, prefs.context));
    }
    if (!prefs.context.utilities.empty()) {
        record(AxiomId::ParetoIndifference,
               check_axiom(prefs.structure, AxiomId::ParetoIndifference, prefs.context));
    }
    json report{{"axioms", axioms}};
    if (config.format == "table") {
        std::ostringstream table;
        for (const json& entry : axioms) {
            table << entry["condition"].get<std::string>() << ": "
                  << (entry["holds"].get<bool>() ? "holds" : "FAILS") << "\n";
        }
        emit(config, table.str(), out);
    } else {
        emit(config, dump(report), out);
    }
    return any_failed ? 1 : 0;
}

int run_simulate(const RunConfig& config, std::ostream& out) {
    ShutdownScenario scenario =
        scenario_from_json(load_json_file(config.scenario_path), config.scenario_path);
    LoadedPrefs prefs = load_prefs(config.prefs_path);
    InductionOptions options;
    options.tie_break = config.tie_break;
    ClassificationReport report = classify_report(scenario, prefs.structure, options);
    emit(config,
         config.format == "table" ? render_classification_table(report) : dump(to_json(report)),
         out);
    return 0;
}

int run_verify(const RunConfig& config, std::ostream& out) {
    if (config.verify_target == "t1" || config.verify_target == "lemmas") {
        if (config.scenario_path.empty()) {
            throw ParseError("<args>", 0, "--scenario",
                             "required for verify " + config.verify_target);
        }
        ShutdownScenario scenario =
            scenario_from_json(load_json_file(config.scenario_path), config.scenario_path);
        LoadedPrefs prefs = load_prefs(config.prefs_path);
        TheoremReport report = config.verify_target == "t1"
                                   ? verify_theorem1(scenario, prefs.structure)
                                   : verify_lemmas(scenario, prefs.structure);
        emit(config,
             config.format == "table" ? render_report_table(report) : dump(to_json(report)), out);
        return report.passed() ? 0 : 1;
    }
    if (config.verify_target == "t2") {
        LoadedPrefs prefs = load_prefs(config.prefs_path);
        std::vector<std::pair<Lottery, Lottery>> pairs;
        if (config.x_id && config.y_id) {
            pairs.emplace_back(lottery_by_name(prefs.structure, *config.x_id, config.prefs_path),
                               lottery_by_name(prefs.structure, *config.y_id, config.prefs_path));
        } else {
            // Every pair lacking a strict preference.
            for (int a = 0; a < prefs.structure.size(); ++a) {
                for (int b = a + 1; b < prefs.structure.size(); ++b) {
                    RelationVerdict v = prefs.structure.relation_by_id(a, b);
                    if (v == RelationVerdict::Indifferent ||
                        v == RelationVerdict::PreferentialGap) {
                        pairs.emplace_back(prefs.structure.lottery(a),
                                           prefs.structure.lottery(b));
                    }
                }
            }
        }
        json reports = json::array();
        bool all_ok = true;
        std::ostringstream table;
        for (const auto& [x, y] : pairs) {
            TheoremReport report = verify_theorem2(prefs.structure, x, y);
            all_ok &= report.passed();
            reports.push_back(to_json(report));
            table << render_report_table(report);
        }
        json summary{{"pairs", reports.size()}, {"reports", reports}};
        emit(config, config.format == "table" ? table.str() : dump(summary), out);
        return all_ok ? 0 : 1;
    }
    if (config.verify_target == "t3") {
        json doc = load_json_file(config.prefs_path);
        Rational delta =
            rational_from_json(doc.contains("delta") ? doc["delta"] : json(), config.prefs_path,
                               "delta");
        PatienceWitness witness = patience_witness_from_json(
            doc.contains("witness") ? doc["witness"] : json(), config.prefs_path, "witness");
        VectorUniverse universe;
        universe.add(witness.continue_improved());
        universe.add(witness.baseline());
        universe.add(witness.continue_worsened());
        universe.add(witness.shutdown_cut());
        if (doc.contains("vectors")) {
            for (const json& v : doc["vectors"]) {
                universe.add(utility_vector_from_json(v, config.prefs_path, "vectors"));
            }
        }
        DiscountedSumOrder order(delta);
        PreferenceStructure structure = universe.structure_from_order(order.as_order());
        TheoremReport report = verify_theorem3(universe, structure, witness);
        emit(config,
             config.format == "table" ? render_report_table(report) : dump(to_json(report)), out);
        return report.passed() ? 0 : 1;
    }
    throw ParseError("<args>", 0, "verify", "unknown verify target " + config.verify_target);
}

int run_count_pairs(const RunConfig& config, std::ostream& out) {
    PairCount counts = count_no_preference_pairs(config.short_chain, config.long_chain);
    if (config.format == "table") {
        std::ostringstream table;
        table << "max_indifferent=" << counts.max_gapfree_indifferent_pairs
              << " min_strict=" << counts.min_strict_pairs << "\n";
        emit(config, table.str(), out);
    } else {
        emit(config,
             dump(json{{"max_indifferent", counts.max_gapfree_indifferent_pairs},
                       {"min_strict", counts.min_strict_pairs},
                       {"merge_count", counts.merge_count}}),
             out);
    }
    return 0;
}

int run_mine(const RunConfig& config, std::ostream& out) {
    json doc = load_json_file(config.bounds_path);
    EnumerationBounds bounds = bounds_from_json(doc, config.bounds_path);
    bounds.workers = config.workers;
    if (config.seed) bounds.seed = config.seed;
    TheoremTarget target = TheoremTarget::T1;
    if (doc.contains("target")) {
        auto parsed = target_from_string(doc["target"].get<std::string>());
        if (!parsed) throw ParseError(config.bounds_path, 0, "target", "expected t1|t2|t3");
        target = *parsed;
    }
    std::vector<Finding> findings = mine(bounds, target);
    std::ostringstream lines;
    bool any_counterexample = false;
    for (const Finding& f : findings) {
        lines << to_json(f).dump() << "\n";
        if (f.kind != Finding::Kind::Confirmation) any_counterexample = true;
    }
    emit(config, lines.str(), out);
    return any_counterexample ? 1 : 0;
}

int run_replay(const RunConfig& config, std::ostream& out) {
    std::ifstream in(config.findings_path);
    if (!in) throw ParseError(config.findings_path, 0, "-", "cannot open findings file");
    std::vector<json> findings;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            findings.push_back(json::parse(line));
        } catch (const json::parse_error& e) {
            throw ParseError(config.findings_path, line_no, "-", e.what());
        }
    }
    ReplayResult result = replay(findings);
    json report{{"findings", result.findings},
                {"mismatches", result.mismatches},
                {"notes", result.notes}};
    if (config.format == "table") {
        std::ostringstream table;
        table << "findings=" << result.findings << " mismatches=" << result.mismatches << "\n";
        for (const std::string& note : result.notes) table << note << "\n";
        emit(config, table.str(), out);
    } else {
        emit(config, dump(report), out);
    }
    return result.mismatches == 0 ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == "check-axioms") return run_check_axioms(config, out);
        if (config.command == "simulate") return run_simulate(config, out);
        if (config.command == "verify") return run_verify(config, out);
        if (config.command == "count-pairs") return run_count_pairs(config, out);
        if (config.command == "mine") return run_mine(config, out);
        if (config.command == "replay") return run_replay(config, out);
        err << "unknown command: " << config.command << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const InvalidBounds& e) {
        err << "invalid bounds: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace offswitch
