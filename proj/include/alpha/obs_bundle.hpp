#pragma once
// Full per-agent observation: local FOV channels plus the two global graphs,
// all taken from the same environment snapshot.

#include <vector>

#include "alpha/env.hpp"
#include "alpha/intent_features.hpp"
#include "alpha/local_obs.hpp"
#include "alpha/skeleton.hpp"
#include "alpha/static_features.hpp"

namespace alpha {

struct ObservationBundle {
    int ego_id = 0;
    LocalObs local;
    StaticGraphObs static_graph;
    IntentGraphObs intent_graph;
};

// map_nodes is the cached node list for state.map (static across the
// episode); the detour features still vary per step because they depend on
// the ego's current position.
ObservationBundle observe(const EnvState& state, const std::vector<MapNode>& map_nodes,
                          int ego_id, int intent_horizon, int fov);

}  // namespace alpha
