#ifndef CBP_JSON_IO_HPP
#define CBP_JSON_IO_HPP

#include "cbp/dynamics.hpp"
#include "cbp/equilibria.hpp"
#include "cbp/instances.hpp"
#include "cbp/model.hpp"
#include "cbp/oracle.hpp"

#include <json.hpp>

#include <string>

namespace cbp {

using Json = nlohmann::json;

// Instance format: {"m": int, "cost_model": "egalitarian"|"proportional",
//   "items": [{"id": int, "size": "p/q", "color": int}, ...]}
Json instance_to_json(const GameInstance& game);
GameInstance instance_from_json(const Json& j);

// Profile format: {"bins": [[id, ...], ...]}, bottom to top; trailing empty
// bins are implied. Loading revalidates against the instance.
Json profile_to_json(const Profile& profile);
Profile profile_from_json(const Json& j, const GameInstance& game);

Json case_to_json(const GeneratedCase& generated);
GeneratedCase case_from_json(const Json& j);

Json trace_to_json(const DynamicsTrace& trace);
Json cycle_to_json(const CycleSearchResult& result);
Json opt_to_json(const OptResult& result);
Json report_to_json(const RatioReport& report);
Json build_to_json(const EquilibriumBuild& build, const GameInstance& game,
                   const std::string& algorithm);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace cbp

#endif  // CBP_JSON_IO_HPP
