#pragma once
// JSON serialization for maps, graphs, observations, scenarios, episode
// logs, and evaluation outputs. Schemas are documented in the README.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "alpha/attention.hpp"
#include "alpha/eval.hpp"
#include "alpha/obs_bundle.hpp"

namespace alpha {

using Json = nlohmann::json;

Json map_to_json(const GridMap& map);          // {"width","height","rows":[...]}
GridMap map_from_json(const Json& j);

Json graph_to_json(const MapGraph& graph);     // {"nodes":[{x,y,kind}],"edges":[{a,b,len}]}

Json static_obs_to_json(const StaticGraphObs& obs);
Json intent_obs_to_json(const IntentGraphObs& obs);
Json local_obs_to_json(const LocalObs& obs);
Json bundle_to_json(const ObservationBundle& bundle);

// Scenario files: {"map": "<path>"|{...}, "starts":[[x,y],..], "goals":[...],
// "max_steps":n, "seed":s, "id"?: str, "plan"?: [[[x,y],..] per agent]}.
// A string map is resolved relative to base_dir.
Scenario scenario_from_json(const Json& j, const std::filesystem::path& base_dir,
                            const std::string& fallback_id);
Json scenario_to_json(const Scenario& sc);

Json episode_to_json(const EpisodeRecord& record);

Json aggregate_to_json(const AggregateMetrics& m);  // {"MS","SR","AR","EL"}
// One row per record: scenario_id,n_agents,map_size,status,makespan.
std::string results_csv(const std::vector<EpisodeRecord>& records,
                        const std::vector<Scenario>& scenarios);

Json attention_trace_to_json(const AttentionTrace& trace);

// Whole-file helpers.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace alpha
