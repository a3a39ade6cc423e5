#ifndef OFFSWITCH_JSON_IO_HPP
#define OFFSWITCH_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "offswitch/agent.hpp"
#include "offswitch/axioms.hpp"
#include "offswitch/environment.hpp"
#include "offswitch/preference.hpp"
#include "offswitch/theorems.hpp"
#include "offswitch/utility_vector.hpp"

namespace offswitch {

using nlohmann::json;

// Emission. Rationals serialize as "n/d" strings ("n" when integral); object
// keys come out sorted, so dumps are byte-stable.
json to_json(const Rational& r);
json to_json(const Trajectory& t);
json to_json(const Lottery& l, const std::string& id);
json to_json(const PreferenceStructure& s);
json to_json(const ShutdownScenario& s);
json to_json(const UtilityVector& v);
json to_json(const AxiomWitness& w);
json to_json(const Verdict& v);
json to_json(const TheoremReport& r);
json to_json(const ClassificationReport& r);
json to_json(const PatienceWitness& w);

// Parsing. `where` is the input file name used in diagnostics; `field` paths
// look like "universe[2].support[0].p".
Rational rational_from_json(const json& j, const std::string& where, const std::string& field);
Trajectory trajectory_from_json(const json& j, const std::string& where,
                                const std::string& field);
PreferenceStructure structure_from_json(const json& j, const std::string& where);
ShutdownScenario scenario_from_json(const json& j, const std::string& where);
UtilityVector utility_vector_from_json(const json& j, const std::string& where,
                                       const std::string& field);
PatienceWitness patience_witness_from_json(const json& j, const std::string& where,
                                           const std::string& field);
CheckContext context_from_json(const json& j, const PreferenceStructure& s,
                               const std::string& where);

/// Reads and parses a JSON file; throws ParseError with file/line/field info.
json load_json_file(const std::string& path);

/// Lottery lookup by the id used in a structure's JSON document.
const Lottery& lottery_by_name(const PreferenceStructure& s, const std::string& id,
                               const std::string& where);

}  // namespace offswitch

#endif
