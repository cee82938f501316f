#include "alpha/static_features.hpp"

#include <stdexcept>

namespace alpha {

namespace {

void require_free(const GridMap& map, Coord c, const char* what) {
    if (!map.in_bounds(c) || !map.is_free(c))
        throw std::invalid_argument(std::string(what) + " must be a free cell in bounds");
}

int dist_or_throw(const std::vector<int>& field, const GridMap& map, Coord to) {
    const int d = field[map.idx(to)];
    if (d < 0) throw std::runtime_error("static_features: cells are mutually unreachable");
    return d;
}

}  // namespace

int node_accessibility(const GridMap& map, Coord agent_pos, Coord node_pos) {
    require_free(map, agent_pos, "agent_pos");
    require_free(map, node_pos, "node_pos");
    const auto field = bfs_dist_field(map, agent_pos);
    return dist_or_throw(field, map, node_pos) - manhattan(agent_pos, node_pos);
}

int detour_to_goal(const GridMap& map, Coord goal_pos, Coord node_pos) {
    require_free(map, goal_pos, "goal_pos");
    require_free(map, node_pos, "node_pos");
    const auto field = bfs_dist_field(map, goal_pos);
    return dist_or_throw(field, map, node_pos) - manhattan(goal_pos, node_pos);
}

int off_route_degree(const GridMap& map, Coord agent_pos, Coord goal_pos, Coord node_pos) {
    require_free(map, agent_pos, "agent_pos");
    require_free(map, goal_pos, "goal_pos");
    require_free(map, node_pos, "node_pos");
    const auto from_agent = bfs_dist_field(map, agent_pos);
    const auto from_goal = bfs_dist_field(map, goal_pos);
    return dist_or_throw(from_agent, map, node_pos) + dist_or_throw(from_goal, map, node_pos) -
           dist_or_throw(from_agent, map, goal_pos);
}

StaticGraphObs build_static_graph(const GridMap& map, const std::vector<MapNode>& nodes,
                                  Coord agent_pos, Coord goal_pos) {
    require_free(map, agent_pos, "agent_pos");
    require_free(map, goal_pos, "goal_pos");

    const auto from_agent = bfs_dist_field(map, agent_pos);
    const auto from_goal = bfs_dist_field(map, goal_pos);
    const int agent_goal = from_agent[map.idx(goal_pos)];  // -1 when the pair is split

    const double nx = map.width() > 1 ? 1.0 / (map.width() - 1) : 0.0;
    const double ny = map.height() > 1 ? 1.0 / (map.height() - 1) : 0.0;
    auto coord_row = [&](Coord c) {
        StaticNodeRow r;
        r.x = c.x * nx;
        r.y = c.y * ny;
        return r;
    };

    StaticGraphObs obs;
    for (const MapNode& n : nodes) {
        const int da = from_agent[map.idx(n.pos)];
        const int dg = from_goal[map.idx(n.pos)];
        if (da < 0 || dg < 0 || agent_goal < 0) {
            ++obs.unreachable_excluded;
            continue;
        }
        StaticNodeRow r = coord_row(n.pos);
        r.d_na = da - manhattan(agent_pos, n.pos);
        r.d_dg = dg - manhattan(goal_pos, n.pos);
        r.d_od = da + dg - agent_goal;
        obs.rows.push_back(r);
    }

    StaticNodeRow ego = coord_row(agent_pos);
    StaticNodeRow goal = coord_row(goal_pos);
    if (agent_goal >= 0) {
        ego.d_dg = agent_goal - manhattan(goal_pos, agent_pos);
        goal.d_na = agent_goal - manhattan(agent_pos, goal_pos);
    }
    obs.rows.push_back(ego);
    obs.rows.push_back(goal);
    obs.ego_index = int(obs.rows.size()) - 2;
    obs.goal_index = int(obs.rows.size()) - 1;
    return obs;
}

}  // namespace alpha
