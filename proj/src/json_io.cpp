#include "offswitch/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "offswitch/errors.hpp"

namespace offswitch {

namespace {

// Source texts of loaded files, so schema diagnostics can point at a line.
std::mutex g_sources_mutex;
std::map<std::string, std::string>& sources() {
    static std::map<std::string, std::string> s;
    return s;
}

std::string last_key(const std::string& field) {
    std::size_t dot = field.find_last_of('.');
    std::string key = dot == std::string::npos ? field : field.substr(dot + 1);
    std::size_t bracket = key.find('[');
    if (bracket != std::string::npos) key = key.substr(0, bracket);
    return key;
}

int diag_line(const std::string& where, const std::string& field) {
    std::lock_guard<std::mutex> lock(g_sources_mutex);
    auto it = sources().find(where);
    if (it == sources().end()) return 0;
    std::string needle = "\"" + last_key(field) + "\"";
    std::size_t pos = it->second.find(needle);
    if (pos == std::string::npos) return 0;
    return 1 + static_cast<int>(std::count(it->second.begin(), it->second.begin() + pos, '\n'));
}

[[noreturn]] void bad_field(const std::string& where, const std::string& field,
                            const std::string& message) {
    throw ParseError(where, diag_line(where, field), field, message);
}

const json& need(const json& j, const std::string& where, const std::string& parent,
                 const std::string& key) {
    if (!j.is_object()) bad_field(where, parent, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) {
        bad_field(where, parent.empty() ? key : parent + "." + key, "missing field");
    }
    return *it;
}

std::string need_string(const json& j, const std::string& where, const std::string& field) {
    if (!j.is_string()) bad_field(where, field, "expected a string");
    return j.get<std::string>();
}

}  // namespace

std::string ParseError::format(const std::string& file, int line, const std::string& field,
                               const std::string& message) {
    std::ostringstream out;
    out << file << ":" << (line > 0 ? std::to_string(line) : "?") << ": field '" << field
        << "': " << message;
    return out.str();
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const Trajectory& t) {
    json steps = json::array();
    for (const Step& s : t.steps()) steps.push_back(json::array({s.state, s.action}));
    json out;
    out["steps"] = std::move(steps);
    if (t.shutdown_at()) out["shutdown_at"] = *t.shutdown_at();
    return out;
}

json to_json(const Lottery& l, const std::string& id) {
    json out;
    if (!id.empty()) out["id"] = id;
    json support = json::array();
    for (const auto& [t, p] : l.support()) {
        support.push_back(json{{"trajectory", to_json(t)}, {"p", to_json(p)}});
    }
    out["support"] = std::move(support);
    return out;
}

json to_json(const PreferenceStructure& s) {
    json universe = json::array();
    for (int i = 0; i < s.size(); ++i) universe.push_back(to_json(s.lottery(i), s.name(i)));
    json base = json::array();
    for (int a = 0; a < s.size(); ++a) {
        for (int b = 0; b < s.size(); ++b) {
            if (a != b && s.weak_by_id(a, b)) {
                base.push_back(json::array({s.name(a), s.name(b)}));
            }
        }
    }
    json out;
    out["universe"] = std::move(universe);
    out["base"] = std::move(base);
    if (s.has_overrides()) {
        json overrides = json::array();
        for (const auto& [set_ids, rel] : s.overrides()) {
            json names = json::array();
            for (LotteryId id : set_ids) names.push_back(s.name(id));
            json pairs = json::array();
            for (const auto& [a, b] : rel) {
                if (a != b) pairs.push_back(json::array({s.name(a), s.name(b)}));
            }
            overrides.push_back(json{{"set", std::move(names)}, {"pairs", std::move(pairs)}});
        }
        out["overrides"] = std::move(overrides);
    }
    return out;
}

json to_json(const ShutdownScenario& s) {
    json continuations = json::array();
    for (const TrajectorySuffix& suffix : s.continuations()) {
        json steps = json::array();
        for (const Step& step : suffix.steps) {
            steps.push_back(json::array({step.state, step.action}));
        }
        json entry;
        entry["steps"] = std::move(steps);
        if (suffix.shutdown_at) entry["shutdown_at"] = *suffix.shutdown_at;
        continuations.push_back(std::move(entry));
    }
    json pressed;
    for (const auto& [action, trajectory] : s.pressed_outcomes()) {
        pressed[action] = to_json(trajectory);
    }
    return json{{"f", to_json(s.f())},
                {"g", to_json(s.g())},
                {"h", to_json(s.h())},
                {"continuations", std::move(continuations)},
                {"pressed", std::move(pressed)}};
}

json to_json(const UtilityVector& v) {
    json utilities = json::array();
    for (const Rational& u : v.utilities) utilities.push_back(to_json(u));
    return json{{"utilities", std::move(utilities)}, {"shutdown", v.shutdown}};
}

json to_json(const AxiomWitness& w) {
    json out;
    out["description"] = w.description;
    if (!w.lotteries.empty()) {
        json ls = json::array();
        for (const Lottery& l : w.lotteries) ls.push_back(l.str());
        out["lotteries"] = std::move(ls);
    }
    if (!w.trajectories.empty()) {
        json ts = json::array();
        for (const Trajectory& t : w.trajectories) ts.push_back(t.str());
        out["trajectories"] = std::move(ts);
    }
    if (!w.numbers.empty()) {
        json ns = json::array();
        for (const Rational& r : w.numbers) ns.push_back(to_json(r));
        out["numbers"] = std::move(ns);
    }
    return out;
}

json to_json(const Verdict& v) {
    json out;
    out["holds"] = v.holds;
    out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
    return out;
}

json to_json(const TheoremReport& r) {
    json antecedents = json::array();
    for (const auto& [name, verdict] : r.antecedents) {
        json entry = to_json(verdict);
        entry["condition"] = name;
        antecedents.push_back(std::move(entry));
    }
    return json{{"theorem", r.theorem},
                {"antecedents", std::move(antecedents)},
                {"conclusion_checked", r.conclusion_checked},
                {"details", r.details},
                {"facts", r.facts}};
}

json to_json(const ClassificationReport& r) {
    json lotteries;
    for (const auto& [action, lottery] : r.root_lotteries) {
        lotteries[action] = to_json(lottery, "");
    }
    return json{{"disposition", to_string(r.disposition.kind)},
                {"survivors", r.disposition.survivors},
                {"reason", r.disposition.reason},
                {"root_lotteries", std::move(lotteries)}};
}

json to_json(const PatienceWitness& w) {
    json a = json::array(), b = json::array();
    for (const Rational& u : w.a) a.push_back(to_json(u));
    for (const Rational& u : w.b) b.push_back(to_json(u));
    return json{{"a", std::move(a)}, {"b", std::move(b)}, {"c", to_json(w.c)},
                {"i", to_json(w.i)}, {"j", to_json(w.j)}, {"e", to_json(w.e)},
                {"k", to_json(w.k)}, {"l", to_json(w.l)}};
}

Rational rational_from_json(const json& j, const std::string& where, const std::string& field) {
    try {
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
        if (j.is_string()) return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        bad_field(where, field, e.what());
    }
    bad_field(where, field, "expected a rational as \"n/d\" string or integer");
}

Trajectory trajectory_from_json(const json& j, const std::string& where,
                                const std::string& field) {
    const json& steps = need(j, where, field, "steps");
    if (!steps.is_array()) bad_field(where, field + ".steps", "expected an array");
    std::vector<Step> parsed;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const json& s = steps[i];
        std::string at = field + ".steps[" + std::to_string(i) + "]";
        if (!s.is_array() || s.size() != 2) bad_field(where, at, "expected [state, action]");
        parsed.push_back(Step{need_string(s[0], where, at), need_string(s[1], where, at)});
    }
    std::optional<int> shutdown_at;
    if (j.contains("shutdown_at")) {
        if (!j["shutdown_at"].is_number_integer()) {
            bad_field(where, field + ".shutdown_at", "expected an integer timestep");
        }
        shutdown_at = j["shutdown_at"].get<int>();
    }
    try {
        return Trajectory(std::move(parsed), shutdown_at);
    } catch (const InvalidTrajectory& e) {
        bad_field(where, field, e.what());
    }
}

PreferenceStructure structure_from_json(const json& j, const std::string& where) {
    PreferenceStructure s;
    const json& universe = need(j, where, "", "universe");
    if (!universe.is_array()) bad_field(where, "universe", "expected an array");
    std::map<std::string, Lottery> by_id;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        const json& record = universe[i];
        std::string at = "universe[" + std::to_string(i) + "]";
        std::string id = need_string(need(record, where, at, "id"), where, at + ".id");
        if (by_id.count(id)) bad_field(where, at + ".id", "duplicate lottery id " + id);
        try {
            if (record.contains("trajectory")) {
                Lottery l = Lottery::degenerate(
                    trajectory_from_json(record["trajectory"], where, at + ".trajectory"));
                by_id.emplace(id, l);
                s.register_lottery(l, id);
            } else {
                const json& support = need(record, where, at, "support");
                if (!support.is_array() || support.empty()) {
                    bad_field(where, at + ".support", "expected a non-empty array");
                }
                std::vector<Lottery::Entry> entries;
                for (std::size_t e = 0; e < support.size(); ++e) {
                    const json& entry = support[e];
                    std::string eat = at + ".support[" + std::to_string(e) + "]";
                    entries.emplace_back(
                        trajectory_from_json(need(entry, where, eat, "trajectory"), where,
                                             eat + ".trajectory"),
                        rational_from_json(need(entry, where, eat, "p"), where, eat + ".p"));
                }
                Lottery l(std::move(entries));
                by_id.emplace(id, l);
                s.register_lottery(l, id);
            }
        } catch (const InvalidLottery& e) {
            bad_field(where, at, e.what());
        }
    }
    auto lookup = [&](const json& v, const std::string& at) -> const Lottery& {
        std::string id = need_string(v, where, at);
        auto it = by_id.find(id);
        if (it == by_id.end()) bad_field(where, at, "unknown lottery id " + id);
        return it->second;
    };
    if (j.contains("base")) {
        const json& base = j["base"];
        if (!base.is_array()) bad_field(where, "base", "expected an array of [idA, idB] pairs");
        for (std::size_t i = 0; i < base.size(); ++i) {
            const json& pair = base[i];
            std::string at = "base[" + std::to_string(i) + "]";
            if (!pair.is_array() || pair.size() != 2) bad_field(where, at, "expected [idA, idB]");
            s.add_weak(lookup(pair[0], at + "[0]"), lookup(pair[1], at + "[1]"));
        }
    }
    if (j.contains("overrides")) {
        const json& overrides = j["overrides"];
        if (!overrides.is_array()) bad_field(where, "overrides", "expected an array");
        for (std::size_t i = 0; i < overrides.size(); ++i) {
            const json& entry = overrides[i];
            std::string at = "overrides[" + std::to_string(i) + "]";
            std::vector<Lottery> option_set;
            for (const json& v : need(entry, where, at, "set")) {
                option_set.push_back(lookup(v, at + ".set"));
            }
            std::vector<std::pair<Lottery, Lottery>> pairs;
            for (const json& pair : need(entry, where, at, "pairs")) {
                pairs.emplace_back(lookup(pair[0], at + ".pairs"), lookup(pair[1], at + ".pairs"));
            }
            try {
                s.add_override(option_set, pairs);
            } catch (const ContextViolation& e) {
                bad_field(where, at, e.what());
            }
        }
    }
    return s;
}

ShutdownScenario scenario_from_json(const json& j, const std::string& where) {
    Rational f = rational_from_json(need(j, where, "", "f"), where, "f");
    Rational g = rational_from_json(need(j, where, "", "g"), where, "g");
    Rational h = rational_from_json(need(j, where, "", "h"), where, "h");
    const json& continuations = need(j, where, "", "continuations");
    if (!continuations.is_array() || continuations.empty()) {
        bad_field(where, "continuations", "expected a non-empty array");
    }
    std::vector<TrajectorySuffix> suffixes;
    for (std::size_t i = 0; i < continuations.size(); ++i) {
        const json& entry = continuations[i];
        std::string at = "continuations[" + std::to_string(i) + "]";
        TrajectorySuffix suffix;
        const json& steps = need(entry, where, at, "steps");
        for (std::size_t k = 0; k < steps.size(); ++k) {
            const json& s = steps[k];
            std::string sat = at + ".steps[" + std::to_string(k) + "]";
            if (!s.is_array() || s.size() != 2) bad_field(where, sat, "expected [state, action]");
            suffix.steps.push_back(Step{need_string(s[0], where, sat),
                                        need_string(s[1], where, sat)});
        }
        if (entry.contains("shutdown_at")) suffix.shutdown_at = entry["shutdown_at"].get<int>();
        suffixes.push_back(std::move(suffix));
    }
    try {
        return ShutdownScenario::make(f, g, h, std::move(suffixes));
    } catch (const InvalidScenario& e) {
        bad_field(where, "f", e.what());
    }
}

UtilityVector utility_vector_from_json(const json& j, const std::string& where,
                                       const std::string& field) {
    UtilityVector v;
    const json& utilities = need(j, where, field, "utilities");
    if (!utilities.is_array()) bad_field(where, field + ".utilities", "expected an array");
    for (std::size_t i = 0; i < utilities.size(); ++i) {
        v.utilities.push_back(rational_from_json(utilities[i], where,
                                                 field + ".utilities[" + std::to_string(i) + "]"));
    }
    if (j.contains("shutdown")) {
        if (!j["shutdown"].is_boolean()) bad_field(where, field + ".shutdown", "expected a bool");
        v.shutdown = j["shutdown"].get<bool>();
    }
    return v;
}

PatienceWitness patience_witness_from_json(const json& j, const std::string& where,
                                           const std::string& field) {
    PatienceWitness w;
    for (const json& u : need(j, where, field, "a")) {
        w.a.push_back(rational_from_json(u, where, field + ".a"));
    }
    for (const json& u : need(j, where, field, "b")) {
        w.b.push_back(rational_from_json(u, where, field + ".b"));
    }
    w.c = utility_vector_from_json(need(j, where, field, "c"), where, field + ".c");
    w.i = rational_from_json(need(j, where, field, "i"), where, field + ".i");
    w.j = rational_from_json(need(j, where, field, "j"), where, field + ".j");
    w.e = rational_from_json(need(j, where, field, "e"), where, field + ".e");
    w.k = rational_from_json(need(j, where, field, "k"), where, field + ".k");
    w.l = rational_from_json(need(j, where, field, "l"), where, field + ".l");
    return w;
}

CheckContext context_from_json(const json& j, const PreferenceStructure& s,
                               const std::string& where) {
    CheckContext ctx;
    if (j.contains("mixtures")) {
        const json& mixtures = j["mixtures"];
        for (std::size_t i = 0; i < mixtures.size(); ++i) {
            const json& m = mixtures[i];
            std::string at = "mixtures[" + std::to_string(i) + "]";
            ctx.mixtures.push_back(MixtureQuad{
                lottery_by_name(s, need_string(need(m, where, at, "x"), where, at + ".x"), where),
                lottery_by_name(s, need_string(need(m, where, at, "y"), where, at + ".y"), where),
                rational_from_json(need(m, where, at, "p"), where, at + ".p"),
                rational_from_json(need(m, where, at, "q"), where, at + ".q")});
        }
    }
    if (j.contains("twins")) {
        for (const json& family : j["twins"]) {
            std::vector<Trajectory> ts;
            for (const json& id : family) {
                const Lottery& l = lottery_by_name(s, need_string(id, where, "twins"), where);
                if (!l.is_degenerate()) bad_field(where, "twins", "twin ids must be degenerate");
                ts.push_back(l.support().front().first);
            }
            ctx.twins.push_back(std::move(ts));
        }
    }
    if (j.contains("utilities")) {
        for (const auto& [id, vec] : j["utilities"].items()) {
            const Lottery& l = lottery_by_name(s, id, where);
            if (!l.is_degenerate()) bad_field(where, "utilities", "utility ids must be degenerate");
            ctx.utilities.emplace(l.support().front().first,
                                  utility_vector_from_json(vec, where, "utilities." + id));
        }
    }
    return ctx;
}

const Lottery& lottery_by_name(const PreferenceStructure& s, const std::string& id,
                               const std::string& where) {
    for (int i = 0; i < s.size(); ++i) {
        if (s.name(i) == id) return s.lottery(i);
    }
    throw ParseError(where, 0, id, "unknown lottery id");
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "-", "cannot open file");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    {
        std::lock_guard<std::mutex> lock(g_sources_mutex);
        sources()[path] = text;
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 1;
        std::size_t stop = std::min(text.size(), static_cast<std::size_t>(e.byte));
        line += static_cast<int>(std::count(text.begin(), text.begin() + stop, '\n'));
        throw ParseError(path, line, "-", e.what());
    }
}

}  // namespace offswitch
