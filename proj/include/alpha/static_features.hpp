#pragma once
// Augmented static graph: per-node 5-dim features relative to one agent.
//
// Each row is (x, y, d_na, d_dg, d_od): normalized coordinates plus the
// three shortest-path detour features. The last two rows are the agent's
// own position and its goal. Distances are move counts from one BFS per
// endpoint, which equals the per-node A* length on a unit grid.

#include <vector>

#include "alpha/grid_map.hpp"
#include "alpha/skeleton.hpp"

namespace alpha {

struct StaticNodeRow {
    double x = 0;     // position / (dim - 1), in [0, 1]
    double y = 0;
    double d_na = 0;  // shortest-path minus manhattan, agent -> node
    double d_dg = 0;  // shortest-path minus manhattan, goal -> node
    double d_od = 0;  // detour of routing agent -> node -> goal
};

struct StaticGraphObs {
    std::vector<StaticNodeRow> rows;  // map nodes, then ego row, then goal row
    int ego_index = 0;
    int goal_index = 0;
    int unreachable_excluded = 0;  // map nodes dropped because no path exists
};

// Shortest-path excess over the manhattan distance from the agent to the
// node. Throws std::invalid_argument if a cell is blocked or out of bounds
// and std::runtime_error if the pair is unreachable; build_static_graph
// handles the unreachable case itself by exclusion.
int node_accessibility(const GridMap& map, Coord agent_pos, Coord node_pos);
int detour_to_goal(const GridMap& map, Coord goal_pos, Coord node_pos);
int off_route_degree(const GridMap& map, Coord agent_pos, Coord goal_pos, Coord node_pos);

// One row per reachable map node plus the ego and goal rows. Map nodes
// unreachable from the agent or the goal are excluded and counted in
// unreachable_excluded (their detour features are undefined).
StaticGraphObs build_static_graph(const GridMap& map, const std::vector<MapNode>& nodes,
                                  Coord agent_pos, Coord goal_pos);

}  // namespace alpha
