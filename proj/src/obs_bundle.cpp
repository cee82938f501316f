#include "alpha/obs_bundle.hpp"

#include <stdexcept>

namespace alpha {

ObservationBundle observe(const EnvState& state, const std::vector<MapNode>& map_nodes,
                          int ego_id, int intent_horizon, int fov) {
    if (ego_id < 0 || ego_id >= state.num_agents())
        throw std::invalid_argument("observe: no such agent");

    ObservationBundle b;
    b.ego_id = ego_id;

    std::vector<AgentSnapshot> agents;
    agents.reserve(size_t(state.num_agents()));
    for (int i = 0; i < state.num_agents(); ++i)
        agents.push_back({state.positions[size_t(i)], state.goals[size_t(i)]});

    b.local = fov_channels(*state.map, agents, ego_id, fov);
    b.static_graph = build_static_graph(*state.map, map_nodes, state.positions[size_t(ego_id)],
                                        state.goals[size_t(ego_id)]);
    b.intent_graph = build_intent_graph(*state.map, state.positions, state.goals, intent_horizon);
    return b;
}

}  // namespace alpha
